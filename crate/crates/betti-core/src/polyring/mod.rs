//! Polynomial presentations: monomials, homogeneous polynomials, truncated
//! Groebner bases, and the degreewise multiplication tables built from them.

mod algebra;
mod groebner;
mod monomial;
mod polynomial;

pub use algebra::{AlgebraTable, Presentation};
pub use groebner::{buchberger, stanley_reisner_ring, GroebnerBasis, RingDesc};
pub use monomial::{monomials_of_exponent, Monomial};
pub use polynomial::{parse_polynomial, Polynomial};
