//! Closed-form chain from a rank-one restricted isometry constant to the
//! curvature and smoothness parameters of the sampled checks.
//!
//! Given `delta1`, the chain evaluates
//!
//! ```text
//! eps²   = (2 + delta1)(1 - sqrt(1 - delta1/(1 + delta1))) + delta1²/8
//! delta2 = sqrt(2) (2 + eps) delta1 / sqrt((1 - eps)(2 - eps))
//! c      = (2 + eps)(1 + eps)(1 + delta1)
//! h      = (1 - delta2)(1 - eps)(2 - eps)
//! ```
//!
//! The guarantees downstream hold only while `h > 0`, which caps the
//! admissible isometry constant at [`DELTA1_MAX`].

use crate::error::{Error, Result};

/// Largest isometry constant for which the curvature chain stays valid.
pub const DELTA1_MAX: f64 = 0.214;

/// Fraction of the curvature budget `h` consumed by the step pair from
/// [`RicConstants::admissible_pair`]; each of the two terms gets
/// `h / ADMISSIBLE_MARGIN`, leaving a strict slack.
const ADMISSIBLE_MARGIN: f64 = 2.125;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RicConstants {
    pub delta1: f64,
    pub epsilon: f64,
    pub delta2: f64,
    pub c: f64,
    pub h: f64,
}

/// Evaluates the constant chain at `delta1 ∈ [0, DELTA1_MAX]`.
pub fn ric_constants(delta1: f64) -> Result<RicConstants> {
    if !delta1.is_finite() || delta1 < 0.0 || delta1 > DELTA1_MAX {
        return Err(Error::InvalidParameter {
            name: "delta1",
            reason: format!("isometry constant must lie in [0, {DELTA1_MAX}], got {delta1}"),
        });
    }
    let epsilon = ((2.0 + delta1) * (1.0 - (1.0 - delta1 / (1.0 + delta1)).sqrt())
        + delta1 * delta1 / 8.0)
        .sqrt();
    let delta2 = std::f64::consts::SQRT_2 * (2.0 + epsilon) * delta1
        / ((1.0 - epsilon) * (2.0 - epsilon)).sqrt();
    let c = (2.0 + epsilon) * (1.0 + epsilon) * (1.0 + delta1);
    let h = (1.0 - delta2) * (1.0 - epsilon) * (2.0 - epsilon);
    Ok(RicConstants { delta1, epsilon, delta2, c, h })
}

impl RicConstants {
    /// A step pair `(alpha, beta)` scaled to the minimizer norm so that
    /// `1/(alpha ‖x‖²) + c² ‖x‖² / beta ≤ h` holds with a strict margin:
    /// each term takes `h / 2.125`, so the sum is `0.94 h`.
    pub fn admissible_pair(&self, x_norm: f64) -> Result<(f64, f64)> {
        if !(x_norm > 0.0 && x_norm.is_finite()) {
            return Err(Error::InvalidParameter {
                name: "x_norm",
                reason: format!("minimizer norm must be positive and finite, got {x_norm}"),
            });
        }
        let n2 = x_norm * x_norm;
        let alpha = ADMISSIBLE_MARGIN / (self.h * n2);
        let beta = ADMISSIBLE_MARGIN * self.c * self.c * n2 / self.h;
        Ok((alpha, beta))
    }

    /// Left-hand side of the admissibility inequality for a given pair;
    /// admissible when the result is at most `h`.
    pub fn admissibility_load(&self, alpha: f64, beta: f64, x_norm: f64) -> f64 {
        let n2 = x_norm * x_norm;
        1.0 / (alpha * n2) + self.c * self.c * n2 / beta
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_constant_collapses_the_chain() {
        let k = ric_constants(0.0).unwrap();
        assert_eq!(k.epsilon, 0.0);
        assert_eq!(k.delta2, 0.0);
        assert_eq!(k.c, 2.0);
        assert_eq!(k.h, 2.0);
    }

    #[test]
    fn endpoint_values_match_the_frozen_evaluation() {
        let k = ric_constants(DELTA1_MAX).unwrap();
        let expect = [
            (k.epsilon, 0.45860203177632525),
            (k.delta2, 0.814519161426071),
            (k.c, 4.353552009518316),
            (k.h, 0.15478556418842102),
        ];
        for (got, want) in expect {
            assert!((got - want).abs() <= 1e-12 * want, "got {got}, want {want}");
        }
    }

    #[test]
    fn chain_is_monotone_across_the_domain() {
        let grid: Vec<RicConstants> = (0..100)
            .map(|i| ric_constants(DELTA1_MAX * i as f64 / 99.0).unwrap())
            .collect();
        for pair in grid.windows(2) {
            assert!(pair[1].epsilon > pair[0].epsilon);
            assert!(pair[1].delta2 > pair[0].delta2);
            assert!(pair[1].c > pair[0].c);
            assert!(pair[1].h < pair[0].h);
        }
        for k in &grid {
            assert!(k.epsilon.is_finite() && k.h.is_finite() && k.h > 0.0);
        }
    }

    #[test]
    fn out_of_range_inputs_are_rejected() {
        assert!(ric_constants(-1e-9).is_err());
        assert!(ric_constants(0.2141).is_err());
        assert!(ric_constants(f64::NAN).is_err());
    }

    #[test]
    fn admissible_pair_stays_under_budget() {
        for delta1 in [0.0, 0.1, DELTA1_MAX] {
            let k = ric_constants(delta1).unwrap();
            for x_norm in [0.25, 1.0, 7.5] {
                let (alpha, beta) = k.admissible_pair(x_norm).unwrap();
                let load = k.admissibility_load(alpha, beta, x_norm);
                assert!(load <= k.h * (1.0 - 1e-12), "load {load} vs h {}", k.h);
                let broken = k.admissibility_load(alpha / 2.0, beta, x_norm);
                assert!(broken > k.h, "halved alpha must overload the budget");
            }
        }
    }

    #[test]
    fn degenerate_norms_are_rejected() {
        let k = ric_constants(0.1).unwrap();
        assert!(k.admissible_pair(0.0).is_err());
        assert!(k.admissible_pair(f64::INFINITY).is_err());
    }
}
