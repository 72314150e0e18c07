//! Gradient smoothness bound for the realified objective.
//!
//! On the ball `‖xt‖² ≤ τ` the gradient of the weighted residual sum is
//! Lipschitz with constant
//!
//! ```text
//! L = Σ_t 2 w_t (d_R σmax(R_t) + d_I σmax(I_t) + 3 τ (σmax²(R_t) + σmax²(I_t)))
//! ```
//!
//! With the uniform weight `w = 1/(2S)` this is the familiar `(1/S) Σ_s`
//! form. The data values enter with their sign; negative components shrink
//! the bound, and the Monte Carlo pair check in the test suite guards the
//! regime where that matters.

use crate::error::{Error, Result};

use super::real_lift::{realify, RealLift};

/// Per-term ingredients of the smoothness bound.
#[derive(Debug, Clone, Copy)]
pub struct LipschitzPart {
    pub d_re: f64,
    pub d_im: f64,
    pub sigma_re: f64,
    pub sigma_im: f64,
    pub weight: f64,
}

/// Radius parameter for the ball that contains every iterate started from
/// `x0`: twice the starting norm in the complex domain, squared in the
/// real stack.
pub fn default_tau(reference_norm: f64) -> f64 {
    4.0 * reference_norm * reference_norm
}

fn check_tau(tau: f64) -> Result<()> {
    if !(tau > 0.0 && tau.is_finite()) {
        return Err(Error::InvalidParameter {
            name: "tau",
            reason: format!("ball radius parameter must be positive and finite, got {tau}"),
        });
    }
    Ok(())
}

/// Assembles the bound from precomputed per-term parts.
pub fn lipschitz_bound_from_parts(parts: &[LipschitzPart], tau: f64) -> Result<f64> {
    check_tau(tau)?;
    let mut total = 0.0;
    for (idx, part) in parts.iter().enumerate() {
        if !(part.weight > 0.0) || part.sigma_re < 0.0 || part.sigma_im < 0.0 {
            return Err(Error::InvalidParameter {
                name: "parts",
                reason: format!("part {idx} needs positive weight and nonnegative spectra"),
            });
        }
        let spectral = part.sigma_re * part.sigma_re + part.sigma_im * part.sigma_im;
        total += 2.0
            * part.weight
            * (part.d_re * part.sigma_re + part.d_im * part.sigma_im + 3.0 * tau * spectral);
    }
    Ok(total)
}

/// Computes the bound for a lifted objective, with the largest singular
/// values obtained by power iteration on the assembled quadratic forms.
pub fn lipschitz_bound(lift: &RealLift, tau: f64) -> Result<f64> {
    check_tau(tau)?;
    let mut parts = Vec::with_capacity(lift.num_terms());
    for (a, b, d, weight) in lift.term_parts() {
        let blocks = realify(a, b)?;
        parts.push(LipschitzPart {
            d_re: d.re,
            d_im: d.im,
            sigma_re: blocks.assemble_re().sigma_max()?,
            sigma_im: blocks.assemble_im().sigma_max()?,
            weight,
        });
    }
    lipschitz_bound_from_parts(&parts, tau)
}
