//! The `d`-dimensional `N = 2` construction: constraints on the vector field
//! `h₀`, its quadratic family, the resulting `F₂`, the reduction of gap
//! boundaries to critical points of `V`, and the `d = 2` null result.

mod critical;
mod f2;
mod family;
mod null2d;
mod nullspace;
mod polyd;

pub use critical::{critical_reduction, CriticalOptions, CriticalOutcome, CriticalPoint, CriticalResiduals};
pub use f2::{build_f2d, f2d_general, f2d_symbolic};
pub use family::{build_h0, check_constraints, fit_h0, param_count, H0Family, MultidimError};
pub use null2d::{null_result_2d, Null2dError, Null2dResult, D2_CASES};
pub use nullspace::{constraint_nullspace, Nullspace};
pub use polyd::{PolyD, VectorFieldD};
