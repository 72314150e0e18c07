//! Spectral initialization from the lifted backprojection.
//!
//! Averaging `d_ij a_i a_j^H` and its Hermitian mirror over all edges and
//! frequencies concentrates around a matrix whose leading eigenvector is
//! aligned with the true scene. The initial estimate scales that
//! eigenvector by the square root of the leading eigenvalue.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::kernel::{axpy_conj, dot_conj, dot_plain, SplitVec};

use super::Problem;

/// Internal seed for the deterministic power-iteration start vector.
const START_SEED: u64 = 0x5EED_1217;

/// Relative Rayleigh-quotient tolerance for the leading eigenpair.
const EIG_TOL: f64 = 1e-10;
const EIG_MAX_ITERS: usize = 5000;

/// Result of the spectral initialization.
#[derive(Debug, Clone)]
pub struct SpectralInit {
    /// Initial estimate `sqrt(max(lambda, 0)) * v`.
    pub x0: Vec<Complex64>,
    /// Leading eigenvalue of the backprojection matrix (clamping happens in
    /// `x0`, not here).
    pub leading_eigenvalue: f64,
}

/// Hermitian backprojection matrix, row-major `K x K`: the degree- and
/// frequency-normalized average of `d_ij a_i a_j^H + conj(d_ij) a_j a_i^H`
/// over all measured pairs.
pub fn lifted_backprojection(problem: &Problem) -> Result<Vec<Complex64>> {
    let k = problem.num_voxels();
    let s_count = problem.num_samples();
    let n = problem.num_agents() as f64;
    let graph = problem.graph();
    let mut mat = SplitVec::zeros(k * k);
    for (edge, &(i, j)) in graph.edges().iter().enumerate() {
        if graph.degree(i) == 0 || graph.degree(j) == 0 {
            continue;
        }
        // Both endpoints observe this edge, each with its own normalizer.
        let w = (1.0 / graph.degree(i) as f64 + 1.0 / graph.degree(j) as f64)
            / (2.0 * n * s_count as f64);
        let stored = problem.measurements().edge_slice(edge);
        let mi = &problem.sampling()[i];
        let mj = &problem.sampling()[j];
        for s in 0..s_count {
            let d = stored[s] * w;
            let (ir, ii) = mi.row_planes(s);
            let (jr, ji) = mj.row_planes(s);
            for r in 0..k {
                let row = r * k;
                let ci = d * Complex64::new(ir[r], ii[r]);
                axpy_conj(ci, jr, ji, &mut mat.re[row..row + k], &mut mat.im[row..row + k]);
                let cj = d.conj() * Complex64::new(jr[r], ji[r]);
                axpy_conj(cj, ir, ii, &mut mat.re[row..row + k], &mut mat.im[row..row + k]);
            }
        }
    }
    Ok(mat.to_complex())
}

/// Leading algebraic eigenpair of a dense Hermitian matrix by shifted power
/// iteration. The start vector comes from a fixed internal seed, so results
/// are deterministic for a given matrix.
pub(crate) fn hermitian_leading_eigenpair(
    mat: &[Complex64],
    k: usize,
) -> Result<(f64, Vec<Complex64>)> {
    assert_eq!(mat.len(), k * k);
    let split = SplitVec::from_complex(mat);
    let frob = split.norm_sqr().sqrt();
    if frob == 0.0 {
        return Ok((0.0, vec![Complex64::new(0.0, 0.0); k]));
    }
    // Shifting past the Frobenius norm makes the matrix strictly positive
    // definite while preserving eigenvectors, so the top of the shifted
    // spectrum is the top of the algebraic spectrum. The margin keeps the
    // shift from exactly annihilating a negative rank-one matrix.
    let shift = 1.0625 * frob;
    let mut rng = ChaCha8Rng::seed_from_u64(START_SEED);
    let mut v = SplitVec {
        re: (0..k).map(|_| rng.gen_range(-1.0..1.0)).collect(),
        im: (0..k).map(|_| rng.gen_range(-1.0..1.0)).collect(),
    };
    normalize(&mut v)?;
    let mut w = SplitVec::zeros(k);
    let mut rayleigh = 0.0;
    let mut prev = f64::INFINITY;
    for iter in 0..EIG_MAX_ITERS {
        for r in 0..k {
            let row = r * k;
            let mv = dot_plain(&split.re[row..row + k], &split.im[row..row + k], &v.re, &v.im);
            w.re[r] = mv.re + shift * v.re[r];
            w.im[r] = mv.im + shift * v.im[r];
        }
        // Hermitian quadratic form; the imaginary part is rounding noise.
        rayleigh = dot_conj(&v.re, &v.im, &w.re, &w.im).re - shift;
        normalize(&mut w)?;
        std::mem::swap(&mut v, &mut w);
        if (rayleigh - prev).abs() <= EIG_TOL * rayleigh.abs().max(1e-300) && iter > 2 {
            return Ok((rayleigh, v.to_complex()));
        }
        prev = rayleigh;
    }
    let residual = (rayleigh - prev).abs() / rayleigh.abs().max(1e-300);
    Err(Error::NoConvergence { iterations: EIG_MAX_ITERS, residual })
}

fn normalize(v: &mut SplitVec) -> Result<()> {
    let norm = v.norm_sqr().sqrt();
    if norm == 0.0 {
        return Err(Error::NoConvergence { iterations: 0, residual: f64::INFINITY });
    }
    let inv = 1.0 / norm;
    for x in v.re.iter_mut().chain(v.im.iter_mut()) {
        *x *= inv;
    }
    Ok(())
}

/// Spectral initialization shared by every agent.
///
/// A zero measurement set yields the zero vector; a nonpositive leading
/// eigenvalue is clamped to zero with a warning, which also yields the zero
/// vector.
pub fn spectral_initialize(problem: &Problem) -> Result<SpectralInit> {
    let k = problem.num_voxels();
    let mat = lifted_backprojection(problem)?;
    if mat.iter().all(|z| *z == Complex64::new(0.0, 0.0)) {
        return Ok(SpectralInit { x0: vec![Complex64::new(0.0, 0.0); k], leading_eigenvalue: 0.0 });
    }
    let (lambda, v) = hermitian_leading_eigenpair(&mat, k)?;
    if lambda <= 0.0 {
        log::warn!("spectral initialization found a nonpositive leading eigenvalue {lambda:.3e}; starting from zero");
        return Ok(SpectralInit { x0: vec![Complex64::new(0.0, 0.0); k], leading_eigenvalue: lambda });
    }
    let scale = lambda.sqrt();
    Ok(SpectralInit { x0: v.into_iter().map(|z| z * scale).collect(), leading_eigenvalue: lambda })
}
