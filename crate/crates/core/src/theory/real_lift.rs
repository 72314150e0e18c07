//! Quadratic real forms of the bilinear measurements.
//!
//! With `xt = [Re x; Im x]`, each measurement `m = <a, x> conj(<b, x>)`
//! becomes a pair of quadratic forms: `Re m = xt^T R xt` and
//! `Im m = xt^T I xt`, where both matrices assemble from the two blocks
//!
//! ```text
//! A1 = Re(a) Re(b)^T + Im(a) Im(b)^T
//! A2 = Re(a) Im(b)^T - Im(a) Re(b)^T
//! R  = [[A1, A2], [-A2, A1]]       I = [[A2, -A1], [A1, A2]]
//! ```
//!
//! A weighted collection of such terms carries a least-squares objective
//! over the real stack together with its Euclidean gradient; both are
//! evaluated matrix-free through the inner products of each term.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::solver::Problem;

use super::mat::DenseMat;

/// Stacks a complex vector as `[Re x; Im x]`.
pub fn to_real_stack(x: &[Complex64]) -> Vec<f64> {
    let mut out = Vec::with_capacity(2 * x.len());
    out.extend(x.iter().map(|z| z.re));
    out.extend(x.iter().map(|z| z.im));
    out
}

/// Inverse of [`to_real_stack`].
pub fn from_real_stack(xt: &[f64]) -> Result<Vec<Complex64>> {
    if xt.len() % 2 != 0 {
        return Err(Error::DimensionMismatch {
            context: "real stack length",
            expected: xt.len() + 1,
            got: xt.len(),
        });
    }
    let k = xt.len() / 2;
    Ok((0..k).map(|idx| Complex64::new(xt[idx], xt[k + idx])).collect())
}

/// The two building blocks of one realified measurement.
#[derive(Debug, Clone)]
pub struct RealBlocks {
    pub a1: DenseMat,
    pub a2: DenseMat,
}

impl RealBlocks {
    /// `[[A1, A2], [-A2, A1]]`, the form of the real part.
    pub fn assemble_re(&self) -> DenseMat {
        self.assemble(1.0)
    }

    /// `[[A2, -A1], [A1, A2]]`, the form of the imaginary part.
    pub fn assemble_im(&self) -> DenseMat {
        let k = self.a1.rows();
        let mut m = DenseMat::zeros(2 * k, 2 * k);
        for r in 0..k {
            for c in 0..k {
                let v1 = self.a1.get(r, c);
                let v2 = self.a2.get(r, c);
                m.set(r, c, v2);
                m.set(r, k + c, -v1);
                m.set(k + r, c, v1);
                m.set(k + r, k + c, v2);
            }
        }
        m
    }

    fn assemble(&self, sign: f64) -> DenseMat {
        let k = self.a1.rows();
        let mut m = DenseMat::zeros(2 * k, 2 * k);
        for r in 0..k {
            for c in 0..k {
                let v1 = self.a1.get(r, c);
                let v2 = self.a2.get(r, c);
                m.set(r, c, v1);
                m.set(r, k + c, sign * v2);
                m.set(k + r, c, -sign * v2);
                m.set(k + r, k + c, v1);
            }
        }
        m
    }
}

/// Realifies the sampling pair `(a, b)` into its two quadratic-form blocks.
pub fn realify(a: &[Complex64], b: &[Complex64]) -> Result<RealBlocks> {
    if a.len() != b.len() {
        return Err(Error::DimensionMismatch {
            context: "realify pair lengths",
            expected: a.len(),
            got: b.len(),
        });
    }
    if a.is_empty() {
        return Err(Error::Empty("realify pair"));
    }
    let k = a.len();
    let mut a1 = DenseMat::zeros(k, k);
    let mut a2 = DenseMat::zeros(k, k);
    for r in 0..k {
        for c in 0..k {
            a1.set(r, c, a[r].re * b[c].re + a[r].im * b[c].im);
            a2.set(r, c, a[r].re * b[c].im - a[r].im * b[c].re);
        }
    }
    Ok(RealBlocks { a1, a2 })
}

#[derive(Debug, Clone)]
struct LiftTerm {
    a: Vec<Complex64>,
    b: Vec<Complex64>,
    d: Complex64,
    weight: f64,
}

/// A weighted sum of realified measurement residuals,
/// `sum_t w_t [(xt^T R_t xt - Re d_t)^2 + (xt^T I_t xt - Im d_t)^2]`.
#[derive(Debug, Clone)]
pub struct RealLift {
    k: usize,
    terms: Vec<LiftTerm>,
}

impl RealLift {
    pub fn new(k: usize) -> Self {
        Self { k, terms: Vec::new() }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn push_pair(
        &mut self,
        a: &[Complex64],
        b: &[Complex64],
        d: Complex64,
        weight: f64,
    ) -> Result<()> {
        if a.len() != self.k || b.len() != self.k {
            return Err(Error::DimensionMismatch {
                context: "lift term length",
                expected: self.k,
                got: if a.len() != self.k { a.len() } else { b.len() },
            });
        }
        if !(weight > 0.0) {
            return Err(Error::InvalidParameter {
                name: "weight",
                reason: format!("term weight must be positive, got {weight}"),
            });
        }
        self.terms.push(LiftTerm { a: a.to_vec(), b: b.to_vec(), d, weight });
        Ok(())
    }

    /// The lift of one agent's local objective.
    pub fn from_local(problem: &Problem, agent: usize) -> Result<Self> {
        if agent >= problem.num_agents() {
            return Err(Error::InvalidParameter {
                name: "agent",
                reason: format!("index {agent} out of range for {} agents", problem.num_agents()),
            });
        }
        let deg = problem.graph().degree(agent);
        if deg == 0 {
            return Err(Error::IsolatedAgent { agent });
        }
        let s_count = problem.num_samples();
        let weight = 1.0 / (2.0 * deg as f64 * s_count as f64);
        let mut lift = Self::new(problem.num_voxels());
        let own = &problem.sampling()[agent];
        for &j in problem.graph().neighbors(agent) {
            let other = &problem.sampling()[j];
            for s in 0..s_count {
                let d = problem.measurements().get(agent, j, s)?;
                lift.push_pair(&own.row_complex(s), &other.row_complex(s), d, weight)?;
            }
        }
        Ok(lift)
    }

    /// The lift of the summed network objective. Both orientations of an
    /// edge contribute the same residual, so each edge appears once with the
    /// two local weights combined.
    pub fn from_network(problem: &Problem) -> Result<Self> {
        let s_count = problem.num_samples();
        let graph = problem.graph();
        let mut lift = Self::new(problem.num_voxels());
        for (edge, &(i, j)) in graph.edges().iter().enumerate() {
            let weight = (1.0 / graph.degree(i) as f64 + 1.0 / graph.degree(j) as f64)
                / (2.0 * s_count as f64);
            let mi = &problem.sampling()[i];
            let mj = &problem.sampling()[j];
            let stored = problem.measurements().edge_slice(edge);
            for s in 0..s_count {
                lift.push_pair(&mi.row_complex(s), &mj.row_complex(s), stored[s], weight)?;
            }
        }
        Ok(lift)
    }

    /// Realified blocks of term `t`.
    pub fn blocks(&self, t: usize) -> Result<RealBlocks> {
        let term = self.terms.get(t).ok_or(Error::InvalidParameter {
            name: "term",
            reason: format!("index {t} out of range for {} terms", self.terms.len()),
        })?;
        realify(&term.a, &term.b)
    }

    /// Per-term view `(a, b, d, weight)`: the sampling pair, the stored
    /// measurement, and the term's weight in the objective. Lets callers
    /// re-evaluate the objective through an independent path, e.g. via the
    /// realified quadratic forms of [`Self::blocks`].
    pub fn term_parts(
        &self,
    ) -> impl Iterator<Item = (&[Complex64], &[Complex64], Complex64, f64)> + '_ {
        self.terms.iter().map(|t| (t.a.as_slice(), t.b.as_slice(), t.d, t.weight))
    }

    fn check_stack(&self, xt: &[f64]) -> Result<()> {
        if xt.len() != 2 * self.k {
            return Err(Error::DimensionMismatch {
                context: "real stack vs lift",
                expected: 2 * self.k,
                got: xt.len(),
            });
        }
        Ok(())
    }

    /// Objective value at a real stack.
    pub fn objective(&self, xt: &[f64]) -> Result<f64> {
        self.check_stack(xt)?;
        let x = from_real_stack(xt)?;
        Ok(self.complex_objective_unchecked(&x))
    }

    /// Objective value at the complex point, identical to [`Self::objective`]
    /// on the corresponding stack.
    pub fn complex_objective(&self, x: &[Complex64]) -> Result<f64> {
        if x.len() != self.k {
            return Err(Error::DimensionMismatch {
                context: "state vs lift",
                expected: self.k,
                got: x.len(),
            });
        }
        Ok(self.complex_objective_unchecked(x))
    }

    fn complex_objective_unchecked(&self, x: &[Complex64]) -> f64 {
        self.terms
            .iter()
            .map(|t| {
                let p: Complex64 = t.a.iter().zip(x).map(|(av, xv)| av.conj() * xv).sum();
                let q: Complex64 = t.b.iter().zip(x).map(|(bv, xv)| bv.conj() * xv).sum();
                let m = p * q.conj();
                let er = m.re - t.d.re;
                let ei = m.im - t.d.im;
                t.weight * (er * er + ei * ei)
            })
            .sum()
    }

    /// Euclidean gradient over the real stack. The symmetrized quadratic
    /// forms collapse to `2 w [e <b, x> a + conj(e) <a, x> b]` per term,
    /// restacked into real coordinates.
    pub fn gradient(&self, xt: &[f64]) -> Result<Vec<f64>> {
        self.check_stack(xt)?;
        let x = from_real_stack(xt)?;
        let mut acc = vec![Complex64::new(0.0, 0.0); self.k];
        for t in &self.terms {
            let p: Complex64 = t.a.iter().zip(&x).map(|(av, xv)| av.conj() * xv).sum();
            let q: Complex64 = t.b.iter().zip(&x).map(|(bv, xv)| bv.conj() * xv).sum();
            let e = p * q.conj() - t.d;
            let ca = e * q * (2.0 * t.weight);
            let cb = e.conj() * p * (2.0 * t.weight);
            for (idx, g) in acc.iter_mut().enumerate() {
                *g += ca * t.a[idx] + cb * t.b[idx];
            }
        }
        Ok(to_real_stack(&acc))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::AgentGraph;
    use crate::measurements::synthesize_measurements;
    use crate::scene::{ReflectivityImage, SamplingMatrix};
    use crate::solver::{local_objective, local_wirtinger_gradient};
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn cx(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn unit_pair_pins_the_sign_convention() {
        let blocks = realify(&[cx(1.0, 0.0)], &[cx(0.0, 1.0)]).unwrap();
        assert_eq!(blocks.a1.get(0, 0), 0.0);
        assert_eq!(blocks.a2.get(0, 0), 1.0);
        let re = blocks.assemble_re();
        assert_eq!((re.get(0, 0), re.get(0, 1), re.get(1, 0), re.get(1, 1)), (0.0, 1.0, -1.0, 0.0));
        let im = blocks.assemble_im();
        assert_eq!((im.get(0, 0), im.get(0, 1), im.get(1, 0), im.get(1, 1)), (1.0, 0.0, 0.0, 1.0));
    }

    #[test]
    fn scalar_forms_match_a_hand_measurement() {
        // a = 2 + i, b = 1 - i, x = 3 + 2i gives m = 13 - 39i.
        let blocks = realify(&[cx(2.0, 1.0)], &[cx(1.0, -1.0)]).unwrap();
        let xt = [3.0, 2.0];
        let re = blocks.assemble_re().bilinear(&xt, &xt);
        let im = blocks.assemble_im().bilinear(&xt, &xt);
        assert!((re - 13.0).abs() < 1e-12);
        assert!((im + 39.0).abs() < 1e-12);
    }

    #[test]
    fn real_self_pair_reduces_to_an_outer_product() {
        let u = [cx(0.5, 0.0), cx(-1.5, 0.0), cx(2.0, 0.0)];
        let blocks = realify(&u, &u).unwrap();
        for r in 0..3 {
            for c in 0..3 {
                assert_eq!(blocks.a1.get(r, c), u[r].re * u[c].re);
                assert_eq!(blocks.a2.get(r, c), 0.0);
            }
        }
    }

    #[test]
    fn swapping_the_pair_transposes_the_blocks() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let draw = |rng: &mut ChaCha8Rng| cx(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
        let a: Vec<Complex64> = (0..4).map(|_| draw(&mut rng)).collect();
        let b: Vec<Complex64> = (0..4).map(|_| draw(&mut rng)).collect();
        let fwd = realify(&a, &b).unwrap();
        let rev = realify(&b, &a).unwrap();
        for r in 0..4 {
            for c in 0..4 {
                assert!((fwd.a1.get(r, c) - rev.a1.get(c, r)).abs() < 1e-14);
                assert!((fwd.a2.get(r, c) + rev.a2.get(c, r)).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn mismatched_lengths_are_rejected() {
        assert!(realify(&[cx(1.0, 0.0)], &[cx(1.0, 0.0), cx(0.0, 1.0)]).is_err());
        let mut lift = RealLift::new(2);
        assert!(lift.push_pair(&[cx(1.0, 0.0)], &[cx(1.0, 0.0)], cx(0.0, 0.0), 1.0).is_err());
    }

    fn random_problem(seed: u64, n: usize, s: usize, k: usize) -> (Problem, Vec<Complex64>) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let draw = |rng: &mut ChaCha8Rng| cx(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        let sampling: Vec<SamplingMatrix> = (0..n)
            .map(|agent| {
                let rows = (0..s).map(|_| (0..k).map(|_| draw(&mut rng)).collect()).collect();
                SamplingMatrix::from_rows(agent, rows).unwrap()
            })
            .collect();
        let graph = AgentGraph::complete(n).unwrap();
        let truth: Vec<Complex64> = (0..k).map(|_| draw(&mut rng)).collect();
        let scene = ReflectivityImage::from_values(1, k, truth.clone()).unwrap();
        let m = synthesize_measurements(&sampling, &graph, &scene).unwrap();
        (Problem::new(sampling, graph, m).unwrap(), truth)
    }

    #[test]
    fn local_lift_reproduces_the_solver_objective() {
        let (problem, truth) = random_problem(7, 4, 3, 4);
        let x: Vec<Complex64> = truth.iter().map(|z| z * 1.3 + cx(0.1, -0.2)).collect();
        for agent in 0..4 {
            let lift = RealLift::from_local(&problem, agent).unwrap();
            let via_lift = lift.complex_objective(&x).unwrap();
            let via_solver = local_objective(&problem, agent, &x).unwrap();
            assert!((via_lift - via_solver).abs() < 1e-12 * (1.0 + via_solver));
            let stacked = lift.objective(&to_real_stack(&x)).unwrap();
            assert!((stacked - via_lift).abs() < 1e-14 * (1.0 + via_lift));
        }
    }

    #[test]
    fn network_lift_sums_the_local_objectives() {
        let (problem, truth) = random_problem(8, 5, 2, 3);
        let x: Vec<Complex64> = truth.iter().map(|z| z * 0.7).collect();
        let network = RealLift::from_network(&problem).unwrap().complex_objective(&x).unwrap();
        let summed: f64 =
            (0..5).map(|agent| local_objective(&problem, agent, &x).unwrap()).sum();
        assert!((network - summed).abs() < 1e-12 * (1.0 + summed));
    }

    #[test]
    fn real_gradient_is_twice_the_conjugate_gradient() {
        let (problem, truth) = random_problem(9, 4, 3, 5);
        let x: Vec<Complex64> = truth.iter().map(|z| z * 1.1 + cx(-0.05, 0.15)).collect();
        for agent in 0..4 {
            let lift = RealLift::from_local(&problem, agent).unwrap();
            let real = lift.gradient(&to_real_stack(&x)).unwrap();
            let wirt = local_wirtinger_gradient(&problem, agent, &x).unwrap();
            let scale: f64 = wirt.iter().map(|z| z.norm()).fold(0.0, f64::max);
            for idx in 0..5 {
                assert!((real[idx] - 2.0 * wirt[idx].re).abs() < 1e-10 * (1.0 + scale));
                assert!((real[5 + idx] - 2.0 * wirt[idx].im).abs() < 1e-10 * (1.0 + scale));
            }
        }
    }

    #[test]
    fn gradient_matches_finite_differences() {
        let (problem, truth) = random_problem(10, 3, 2, 3);
        let lift = RealLift::from_local(&problem, 1).unwrap();
        let xt = to_real_stack(&truth.iter().map(|z| z * 1.4).collect::<Vec<_>>());
        let grad = lift.gradient(&xt).unwrap();
        let h = 1e-6;
        for idx in 0..xt.len() {
            let mut plus = xt.clone();
            plus[idx] += h;
            let mut minus = xt.clone();
            minus[idx] -= h;
            let numeric =
                (lift.objective(&plus).unwrap() - lift.objective(&minus).unwrap()) / (2.0 * h);
            assert!((grad[idx] - numeric).abs() < 1e-6 * (1.0 + numeric.abs()), "coordinate {idx}");
        }
    }

    #[test]
    fn singular_values_are_the_norm_product() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let draw = |rng: &mut ChaCha8Rng| cx(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
        for k in [1usize, 3, 5] {
            let a: Vec<Complex64> = (0..k).map(|_| draw(&mut rng)).collect();
            let b: Vec<Complex64> = (0..k).map(|_| draw(&mut rng)).collect();
            let na: f64 = a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            let nb: f64 = b.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            let blocks = realify(&a, &b).unwrap();
            let sr = blocks.assemble_re().sigma_max().unwrap();
            let si = blocks.assemble_im().sigma_max().unwrap();
            assert!((sr - na * nb).abs() < 1e-8 * (1.0 + na * nb), "re k={k}");
            assert!((si - na * nb).abs() < 1e-8 * (1.0 + na * nb), "im k={k}");
        }
    }

    proptest! {
        #[test]
        fn quadratic_forms_reproduce_the_measurement(seed in 0u64..300) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let k = rng.gen_range(1..5);
            let draw = |rng: &mut ChaCha8Rng| cx(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
            let a: Vec<Complex64> = (0..k).map(|_| draw(&mut rng)).collect();
            let b: Vec<Complex64> = (0..k).map(|_| draw(&mut rng)).collect();
            let x: Vec<Complex64> = (0..k).map(|_| draw(&mut rng)).collect();
            let p: Complex64 = a.iter().zip(&x).map(|(av, xv)| av.conj() * xv).sum();
            let q: Complex64 = b.iter().zip(&x).map(|(bv, xv)| bv.conj() * xv).sum();
            let m = p * q.conj();
            let xt = to_real_stack(&x);
            let blocks = realify(&a, &b).unwrap();
            let re = blocks.assemble_re().bilinear(&xt, &xt);
            let im = blocks.assemble_im().bilinear(&xt, &xt);
            prop_assert!((re - m.re).abs() <= 1e-11 * (1.0 + m.re.abs()));
            prop_assert!((im - m.im).abs() <= 1e-11 * (1.0 + m.im.abs()));
        }
    }
}
