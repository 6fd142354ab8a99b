//! Algebraic extensions `K(x)[t]/(P_i)` with the induced derivation, tensor coordinates of
//! the derivatives of a pseudopolynomial, and differential operators acting on them.

mod lodo;
mod problem;
mod residue;
mod tensor;

pub use lodo::{apply_lodo, lodo_derive, Lodo};
pub use problem::{MonicPoly, ProblemSpec, PseudoTerm};
pub use residue::{invert_mod, log_derivative, root_derivative, Residue};
pub use tensor::{derivative_table, BasisIndex, DerivationContext, TensorVector};
