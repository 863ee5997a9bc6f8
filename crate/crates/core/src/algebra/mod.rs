//! Exact carriers of polyvector fields and polydifferential operators.

mod json;
pub mod multi_index;
pub mod polydiff;
pub mod polynomial;
pub mod polyvector;
pub mod rational;

pub use multi_index::{MultiIndex, VarIndex};
pub use polydiff::{OpTerm, PolyDiffOp};
pub use polynomial::Polynomial;
pub use polyvector::Polyvector;
pub use rational::Rational;
