//! Exact computation of joint linear differential resolvents.
//!
//! Given monic polynomials `P_1, ..., P_L` over `K(x)` (with `Dx = 1`) and a
//! pseudopolynomial `y = sum_j a_j * prod_i u_i^{alpha_ij}` in their roots, the crate
//! finds linear differential operators with coefficients in `K(x)[alpha]` that
//! annihilate `y` for every choice of roots. Two independent engines are provided:
//!
//! * [`powersum`]: specialize the exponents to integers, sum over root choices with
//!   Newton powersums, and read the coefficient functions off signed maximal minors.
//! * [`elimination`]: differentiate `y` symbolically in the residue rings of the
//!   `P_i` and eliminate the basis monomials by a cofactor expansion.
//!
//! [`tower::apply_lodo`] checks any candidate operator symbolically.

#[macro_use]
mod macros;

pub mod alpha;
pub mod elimination;
pub mod error;
pub mod io;
pub mod kernel;
pub mod log_bell;
pub mod numeric;
pub mod powersum;
pub mod symmetric;
pub mod tower;

pub use error::{Error, Result};
