//! Explicit A∞-quasi-isomorphism from polynomial polyvector fields to
//! polydifferential operators, built from bipartite graphs weighted by
//! integrals over configuration spaces of points on a line.
//!
//! * [`algebra`]: exact polynomials, polyvectors and polydifferential operators
//! * [`hochschild`]: cup product, Hochschild differential, HKR map
//! * [`graphs`]: `G(n, m)` and the operators `U_Γ`
//! * [`strata`]: configuration spaces and codimension-one boundary strata
//! * [`weights`]: exact and Monte Carlo graph weights
//! * [`formality`]: the components `F_n` and the A∞-relation residual

pub mod algebra;
pub mod combinatorics;
pub mod error;
pub mod formality;
pub mod graphs;
pub mod hochschild;
pub mod strata;
pub mod weights;

pub use error::{Error, Result};
