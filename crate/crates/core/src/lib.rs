//! Exact computer algebra for the quantum disc.
//!
//! The crate builds the `q`-deformed polynomial *-algebra of the disc, the
//! Hopf *-algebra `U_q(sl2)` acting on it, the braided product coming from the
//! R-matrix, the Fock representation, the invariant integral on finite
//! functions and the localized spherical subalgebra of quantum `SL2`. Every
//! identity is checked with exact arithmetic in `Q(q^(1/2))`.

pub mod flag;
pub mod fock;
pub mod integral;
pub mod linalg;
pub mod linear;
pub mod modalg;
pub mod ncpoly;
pub mod parse;
pub mod report;
pub mod rmatrix;
pub mod rootdata;
pub mod scalars;
pub mod uqsl2;
pub mod verify;

pub use linear::LinComb;
pub use scalars::Scalar;
