//! Exact computations in the quantum superalgebra `U_q(osp(1|2))`, over the
//! generic field `Q(q^{1/2})` and at roots of unity.

pub mod centre;
pub mod chebychev;
pub mod error;
pub mod exprparse;
pub mod pbw;
pub mod poly;
pub mod reps;
pub mod rootdata;
pub mod scalars;

pub use error::{Error, Result};
pub use pbw::{AlgebraElement, Monomial};
pub use rootdata::{compute_root_data, RootData};
pub use scalars::{Scalar, ScalarField};
