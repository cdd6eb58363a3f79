//! Numerical ground truth for `−½φ″ + Vφ = Eφ`: two independent
//! eigensolvers, an RK4 integrator and the divergence-identity residual.

mod divergence;
mod fd;
mod ode;
mod shoot;
mod spectrum;

pub use divergence::{divergence_check, divergence_residuals, DivergenceResult};
pub use fd::eigensolve_fd;
pub use ode::{ode_solve, Trajectory, TrajectoryPoint};
pub use shoot::eigensolve_shoot;
pub use spectrum::{default_half_width, eigensolve, EigenFlag, Eigenvalue, Method, Spectrum};
