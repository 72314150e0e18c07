//! Minimal dense real matrices for the analysis paths.
//!
//! These run at reduced problem sizes, so clarity wins over blocking; the
//! only iterative piece is the largest singular value, obtained by power
//! iteration on the Gram operator.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

const SIGMA_SEED: u64 = 0x51_6A417;

/// Row-major dense real matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMat {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl DenseMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![0.0; rows * cols] }
    }

    pub fn from_rows(rows: Vec<Vec<f64>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in &rows {
            if row.len() != c {
                return Err(Error::DimensionMismatch {
                    context: "matrix row lengths",
                    expected: c,
                    got: row.len(),
                });
            }
            data.extend_from_slice(row);
        }
        Ok(Self { rows: r, cols: c, data })
    }

    /// Rank-one product `u v^T`.
    pub fn outer(u: &[f64], v: &[f64]) -> Self {
        let mut m = Self::zeros(u.len(), v.len());
        for (r, &ur) in u.iter().enumerate() {
            for (c, &vc) in v.iter().enumerate() {
                m.data[r * v.len() + c] = ur * vc;
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> f64 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: f64) {
        self.data[r * self.cols + c] = v;
    }

    pub fn add_at(&mut self, r: usize, c: usize, v: f64) {
        self.data[r * self.cols + c] += v;
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.data[r * self.cols + c];
            }
        }
        t
    }

    pub fn matvec(&self, v: &[f64]) -> Vec<f64> {
        assert_eq!(v.len(), self.cols, "matvec dimension mismatch");
        (0..self.rows)
            .map(|r| {
                let row = &self.data[r * self.cols..(r + 1) * self.cols];
                row.iter().zip(v).map(|(a, b)| a * b).sum()
            })
            .collect()
    }

    pub fn tr_matvec(&self, v: &[f64]) -> Vec<f64> {
        assert_eq!(v.len(), self.rows, "transposed matvec dimension mismatch");
        let mut out = vec![0.0; self.cols];
        for r in 0..self.rows {
            let row = &self.data[r * self.cols..(r + 1) * self.cols];
            for (o, a) in out.iter_mut().zip(row) {
                *o += a * v[r];
            }
        }
        out
    }

    /// Quadratic form `x^T M y`.
    pub fn bilinear(&self, x: &[f64], y: &[f64]) -> f64 {
        self.matvec(y).iter().zip(x).map(|(m, xv)| m * xv).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    /// `self += s * other`.
    pub fn add_scaled(&mut self, s: f64, other: &Self) {
        assert!(self.rows == other.rows && self.cols == other.cols);
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            *a += s * b;
        }
    }

    /// Largest singular value via power iteration on the Gram operator,
    /// started from a fixed internal seed.
    pub fn sigma_max(&self) -> Result<f64> {
        if self.data.iter().all(|&v| v == 0.0) {
            return Ok(0.0);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(SIGMA_SEED);
        let mut v: Vec<f64> = (0..self.cols).map(|_| rng.gen_range(-1.0..1.0)).collect();
        normalize(&mut v)?;
        let mut value = 0.0;
        let mut prev = f64::INFINITY;
        for iter in 0..20_000 {
            let u = self.matvec(&v);
            value = u.iter().map(|x| x * x).sum::<f64>();
            let mut w = self.tr_matvec(&u);
            normalize(&mut w)?;
            v = w;
            if (value - prev).abs() <= 1e-12 * value.max(1e-300) && iter > 2 {
                return Ok(value.sqrt());
            }
            prev = value;
        }
        let residual = (value - prev).abs() / value.max(1e-300);
        if residual < 1e-9 {
            Ok(value.sqrt())
        } else {
            Err(Error::NoConvergence { iterations: 20_000, residual })
        }
    }
}

fn normalize(v: &mut [f64]) -> Result<()> {
    let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    if norm == 0.0 {
        return Err(Error::NoConvergence { iterations: 0, residual: f64::INFINITY });
    }
    for x in v.iter_mut() {
        *x /= norm;
    }
    Ok(())
}
