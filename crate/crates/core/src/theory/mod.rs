//! Verification side of the solver: real reformulation of the bilinear
//! model, smoothness and curvature constants, and sampled inequality
//! checks.
//!
//! The pieces fit together as follows. [`real_lift`] rewrites each
//! cross-correlation measurement as a pair of real quadratic forms and
//! carries the corresponding least-squares objective. [`lipschitz`] turns
//! the per-term spectra into a gradient smoothness bound on a norm ball.
//! [`constants`] evaluates the closed-form chain from a restricted
//! isometry constant to the curvature parameters, and [`ric`] estimates
//! that isometry constant empirically on rank-one inputs. [`checks`]
//! samples the resulting inequalities against a live objective. [`mat`]
//! is the small dense-matrix kit the rest leans on.

mod checks;
mod constants;
mod lipschitz;
mod mat;
mod real_lift;
mod ric;

pub use checks::{
    check_pl, check_rc, estimate_top_curvature, pl_constant, CheckOutcome, RealObjective,
};
pub use constants::{ric_constants, RicConstants, DELTA1_MAX};
pub use lipschitz::{default_tau, lipschitz_bound, lipschitz_bound_from_parts, LipschitzPart};
pub use mat::DenseMat;
pub use real_lift::{from_real_stack, realify, to_real_stack, RealBlocks, RealLift};
pub use ric::{estimate_ric_rank1, PairLiftedOp, RicEstimate};
