//! Exact arithmetic over `K = Q` or `F_p`: polynomials and rational functions in `x`
//! with the derivation `Dx = 1`.

mod content;
mod scalar;
mod xpoly;
mod xrat;

pub use content::content_primitive;
pub(crate) use content::rational_content;
pub use scalar::{is_prime, Field, Scalar, MAX_MODULUS};
pub use xpoly::XPoly;
pub use xrat::XRat;
