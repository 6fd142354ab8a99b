//! Polynomials in the exponent symbols over `K(x)` and exact determinants.

mod linalg;
mod poly;

pub use linalg::{
    det_bareiss, det_cofactor, det_fraction_free, mat_vec, signed_maximal_minors, Matrix, Ring,
};
pub use poly::{AlphaPoly, AlphaSymbol, Monomial};
