//! Graded modules over an algebra table, bounded complexes, and the
//! degree-scaling functors between them.

mod complex;
mod functors;
mod module;

pub use complex::{
    complex_direct_sum, koszul_complex, mapping_cone, ChainMap, ComplexTable, HomologyPiece,
};
pub use functors::{
    fractional_veronese, fractional_veronese_complex, homology_row, pushforward_complex,
    pushforward_module, veronese_algebra, veronese_piece, veronese_pieces, Pushforward,
};
pub use module::{block_diagonal, GradedMap, ModuleTable};
