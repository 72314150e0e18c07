//! Split-complex vector primitives.
//!
//! The solver's inner loops run over sampling vectors thousands of times per
//! iteration, so complex arrays are stored as separate real and imaginary
//! planes. Keeping the planes separate lets the compiler vectorize the
//! multiply-accumulate chains; `num_complex` values appear only at the API
//! boundary.

use num_complex::Complex64;

/// A complex vector stored as parallel real and imaginary planes.
#[derive(Debug, Clone, PartialEq)]
pub struct SplitVec {
    pub re: Vec<f64>,
    pub im: Vec<f64>,
}

impl SplitVec {
    pub fn zeros(n: usize) -> Self {
        Self { re: vec![0.0; n], im: vec![0.0; n] }
    }

    pub fn from_complex(v: &[Complex64]) -> Self {
        Self {
            re: v.iter().map(|z| z.re).collect(),
            im: v.iter().map(|z| z.im).collect(),
        }
    }

    pub fn to_complex(&self) -> Vec<Complex64> {
        self.re
            .iter()
            .zip(&self.im)
            .map(|(&r, &i)| Complex64::new(r, i))
            .collect()
    }

    pub fn len(&self) -> usize {
        self.re.len()
    }

    pub fn is_empty(&self) -> bool {
        self.re.is_empty()
    }

    pub fn norm_sqr(&self) -> f64 {
        let own: f64 = self.re.iter().map(|r| r * r).sum();
        let img: f64 = self.im.iter().map(|i| i * i).sum();
        own + img
    }

    pub fn fill_zero(&mut self) {
        self.re.fill(0.0);
        self.im.fill(0.0);
    }

    pub fn copy_from(&mut self, src: &Self) {
        self.re.copy_from_slice(&src.re);
        self.im.copy_from_slice(&src.im);
    }

    /// `self += s * other` with a real scalar.
    pub fn axpy_real(&mut self, s: f64, other: &Self) {
        for (y, x) in self.re.iter_mut().zip(&other.re) {
            *y += s * x;
        }
        for (y, x) in self.im.iter_mut().zip(&other.im) {
            *y += s * x;
        }
    }

    /// `self -= other`.
    pub fn sub_assign(&mut self, other: &Self) {
        for (y, x) in self.re.iter_mut().zip(&other.re) {
            *y -= x;
        }
        for (y, x) in self.im.iter_mut().zip(&other.im) {
            *y -= x;
        }
    }

    /// `self += other`.
    pub fn add_assign(&mut self, other: &Self) {
        for (y, x) in self.re.iter_mut().zip(&other.re) {
            *y += x;
        }
        for (y, x) in self.im.iter_mut().zip(&other.im) {
            *y += x;
        }
    }

    pub fn is_finite(&self) -> bool {
        self.re.iter().all(|v| v.is_finite()) && self.im.iter().all(|v| v.is_finite())
    }
}

/// Conjugated inner product `sum_k conj(a_k) x_k` over split planes.
///
/// Four independent accumulator pairs keep the reduction chains short enough
/// for the vectorizer; every call site in the crate funnels through this one
/// summation order.
pub fn dot_conj(ar: &[f64], ai: &[f64], xr: &[f64], xi: &[f64]) -> Complex64 {
    let n = ar.len();
    assert!(ai.len() == n && xr.len() == n && xi.len() == n, "dot_conj length mismatch");
    let m = n - n % 4;
    let (mut re0, mut re1, mut re2, mut re3) = (0.0f64, 0.0, 0.0, 0.0);
    let (mut im0, mut im1, mut im2, mut im3) = (0.0f64, 0.0, 0.0, 0.0);
    let mut k = 0;
    while k < m {
        re0 += ar[k] * xr[k] + ai[k] * xi[k];
        im0 += ar[k] * xi[k] - ai[k] * xr[k];
        re1 += ar[k + 1] * xr[k + 1] + ai[k + 1] * xi[k + 1];
        im1 += ar[k + 1] * xi[k + 1] - ai[k + 1] * xr[k + 1];
        re2 += ar[k + 2] * xr[k + 2] + ai[k + 2] * xi[k + 2];
        im2 += ar[k + 2] * xi[k + 2] - ai[k + 2] * xr[k + 2];
        re3 += ar[k + 3] * xr[k + 3] + ai[k + 3] * xi[k + 3];
        im3 += ar[k + 3] * xi[k + 3] - ai[k + 3] * xr[k + 3];
        k += 4;
    }
    for k in m..n {
        re0 += ar[k] * xr[k] + ai[k] * xi[k];
        im0 += ar[k] * xi[k] - ai[k] * xr[k];
    }
    Complex64::new((re0 + re1) + (re2 + re3), (im0 + im1) + (im2 + im3))
}

/// `y += c * a` with a complex scalar over split planes.
pub fn axpy(c: Complex64, ar: &[f64], ai: &[f64], yr: &mut [f64], yi: &mut [f64]) {
    let n = ar.len();
    assert!(ai.len() == n && yr.len() == n && yi.len() == n, "axpy length mismatch");
    for k in 0..n {
        yr[k] += c.re * ar[k] - c.im * ai[k];
        yi[k] += c.re * ai[k] + c.im * ar[k];
    }
}

/// `y += c * conj(a)` with a complex scalar over split planes.
pub fn axpy_conj(c: Complex64, ar: &[f64], ai: &[f64], yr: &mut [f64], yi: &mut [f64]) {
    let n = ar.len();
    assert!(ai.len() == n && yr.len() == n && yi.len() == n, "axpy_conj length mismatch");
    for k in 0..n {
        yr[k] += c.re * ar[k] + c.im * ai[k];
        yi[k] += c.im * ar[k] - c.re * ai[k];
    }
}

/// Unconjugated product sum `sum_k a_k x_k` over split planes.
pub fn dot_plain(ar: &[f64], ai: &[f64], xr: &[f64], xi: &[f64]) -> Complex64 {
    let n = ar.len();
    assert!(ai.len() == n && xr.len() == n && xi.len() == n, "dot_plain length mismatch");
    let mut re = 0.0;
    let mut im = 0.0;
    for k in 0..n {
        re += ar[k] * xr[k] - ai[k] * xi[k];
        im += ar[k] * xi[k] + ai[k] * xr[k];
    }
    Complex64::new(re, im)
}
