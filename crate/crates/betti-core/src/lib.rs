//! Exact homological computations for finitely generated graded modules over
//! quotients of polynomial rings by homogeneous ideals, over GF(p) or Q.
//!
//! The crate is organized bottom up:
//!
//! * [`linalg`] - exact row reduction, kernels, and span complements over
//!   GF(p) and Q, with a bit-packed GF(2) fast path,
//! * [`polyring`] - monomials, homogeneous polynomials, truncated Groebner
//!   bases, and finite multiplication tables for quotient algebras,
//! * [`gradedcat`] - graded modules and bounded complexes presented
//!   degreewise, with twist/shift, Veronese, regrading, and pushforward
//!   functors,
//! * [`resolve`] - minimal free and semi-free resolutions on a window,
//!   Betti tables, regularity verdicts, a bar-complex Tor oracle, derived
//!   tensor products, linear parts, and Koszulness verdicts,
//! * [`regmorph`] - homomorphisms that scale degrees by an order d
//!   (Frobenius in particular), Betti numbers and regularity over such a
//!   homomorphism, composition towers, and named verification suites.
//!
//! Every value is computed exactly. Window caps (`i_max`, `j_max`) bound the
//! homological index and the internal degree; all reported numbers are exact
//! within the window and flagged when they touch its boundary.

pub mod error;
pub mod gradedcat;
pub mod linalg;
pub mod par;
pub mod polyring;
pub mod regmorph;
pub mod resolve;

pub use error::Error;
