//! Certification of eigenvalue-free energy intervals: exact definiteness of
//! `F_N(·, E, λ)`, witness search over `λ`, energy scans and gap-boundary
//! solving.

mod bifurcation;
mod certify;
mod margin;
mod scan;
mod search;
mod sturm;

pub use bifurcation::{bifurcation_solve, BifurcationFailure, BifurcationOptions, BifurcationPoint};
pub use certify::{certify_ray_below, certify_ray_below_f64, certify_segment, certify_segment_f64};
pub use margin::{margin, normalized_signed_margin, poly_margin, real_roots};
pub use scan::{scan_gaps, GapInterval, ScanConfig, Segment};
pub use search::{find_lambda, CertFamily, SearchConfig, Witness};
pub use sturm::{count_real_roots, sturm_chain, sturm_sign, sturm_sign_f64, SignVerdict};
