//! Float-mode matrix check of `exp(tx) = exp(χ₊(tx)) exp(−χ₋(tx))` on `gl(n)`
//! with the triangular r-matrix. The Magnus terms are computed exactly and
//! only then converted to floats.

use std::sync::Arc;

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::{gl, gl_triangular, GVector};
use crate::error::{Error, Result};
use crate::factor::RMatrixSetting;
use crate::scalar;

/// Largest matrix size accepted by the float checks.
pub const MAX_MATRIX_SIZE: usize = 6;

const EXPM_TOL: f64 = 1e-12;
const MAX_TAYLOR: usize = 40;

/// A square float matrix with a residual tolerance.
#[derive(Clone, Debug, PartialEq)]
pub struct MatrixGroupElement {
    pub m: DMatrix<f64>,
    pub tol: f64,
}

impl MatrixGroupElement {
    pub fn new(m: DMatrix<f64>) -> Result<Self> {
        if !m.is_square() || m.nrows() == 0 || m.nrows() > MAX_MATRIX_SIZE {
            return Err(Error::Precondition(format!(
                "expected a square matrix of size 1..={MAX_MATRIX_SIZE}, got {}x{}",
                m.nrows(),
                m.ncols()
            )));
        }
        Ok(MatrixGroupElement { m, tol: EXPM_TOL })
    }

    /// `exp` of the stored matrix; fails unless the result is invertible
    /// within tolerance.
    pub fn exp(&self) -> Result<Self> {
        let e = expm(&self.m)?;
        let inv = e
            .clone()
            .try_inverse()
            .ok_or_else(|| Error::MatrixExp("singular exponential".into()))?;
        let cond = e.norm() * inv.norm();
        if !cond.is_finite() || cond > 1e12 {
            return Err(Error::MatrixExp(format!("condition number {cond:e}")));
        }
        Ok(MatrixGroupElement {
            m: e,
            tol: self.tol,
        })
    }

    pub fn frobenius_distance(&self, other: &Self) -> f64 {
        (&self.m - &other.m).norm()
    }
}

/// Matrix exponential by scaling and squaring around a Taylor kernel.
pub fn expm(a: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    if !a.is_square() {
        return Err(Error::MatrixExp("non-square input".into()));
    }
    let norm = a.norm();
    if !norm.is_finite() {
        return Err(Error::MatrixExp("non-finite input".into()));
    }
    let n = a.nrows();
    let s = if norm > 0.5 {
        (norm / 0.5).log2().ceil() as i32
    } else {
        0
    };
    if s > 60 {
        return Err(Error::MatrixExp(format!("norm {norm:e} too large")));
    }
    let scaled = a / 2f64.powi(s);
    let mut term = DMatrix::<f64>::identity(n, n);
    let mut sum = term.clone();
    let mut converged = false;
    for k in 1..=MAX_TAYLOR {
        term = &term * &scaled / k as f64;
        sum += &term;
        if term.norm() <= f64::EPSILON * 1e-2 * sum.norm() {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::MatrixExp("Taylor kernel did not converge".into()));
    }
    for _ in 0..s {
        sum = &sum * &sum;
    }
    if sum.iter().any(|v| !v.is_finite()) {
        return Err(Error::MatrixExp("overflow while squaring".into()));
    }
    Ok(sum)
}

/// Seeded `n×n` matrix with entries `k/100`, `k ∈ [−100, 100]`.
pub fn random_matrix(n: usize, seed: u64) -> DMatrix<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    DMatrix::from_fn(n, n, |_, _| rng.gen_range(-100i64..=100) as f64 / 100.0)
}

/// Strictly upper triangular seeded matrix.
pub fn random_strictly_upper(n: usize, seed: u64) -> DMatrix<f64> {
    let mut m = random_matrix(n, seed);
    for i in 0..n {
        for j in 0..=i {
            m[(i, j)] = 0.0;
        }
    }
    m
}

fn to_gvector(m: &DMatrix<f64>) -> Result<GVector> {
    let n = m.nrows();
    let mut v = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            v.push(scalar::from_f64(m[(i, j)])?);
        }
    }
    Ok(GVector::new(v))
}

fn to_matrix(v: &GVector, n: usize) -> DMatrix<f64> {
    let c = v.to_f64();
    DMatrix::from_fn(n, n, |i, j| c[i * n + j])
}

/// One row of the error table.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ErrorRow {
    pub t: f64,
    pub error: f64,
    /// `E(t)/E(t/2)`; absent when `E(t/2)` vanishes.
    pub ratio: Option<f64>,
}

/// Magnus terms of `x ∈ gl(n)` in float form, projected by `R±`.
pub struct MatrixFactorization {
    n: usize,
    x: DMatrix<f64>,
    plus: Vec<DMatrix<f64>>,
    minus: Vec<DMatrix<f64>>,
}

impl MatrixFactorization {
    /// Computes `χ₁..χ_N` of `x` exactly in `U(gl(n))`.
    pub fn new(x: &DMatrix<f64>, order: usize) -> Result<Self> {
        let g = MatrixGroupElement::new(x.clone())?;
        let n = g.m.nrows();
        let setting = RMatrixSetting::new(Arc::new(gl(n)), gl_triangular(n), order.max(1))?;
        let (p, m) = setting.exp_factorize(&to_gvector(x)?, order)?;
        Ok(MatrixFactorization {
            n,
            x: g.m,
            plus: p.iter().map(|v| to_matrix(v, n)).collect(),
            minus: m.iter().map(|v| to_matrix(v, n)).collect(),
        })
    }

    fn eval(terms: &[DMatrix<f64>], t: f64, n: usize) -> DMatrix<f64> {
        let mut out = DMatrix::zeros(n, n);
        for (k, c) in terms.iter().enumerate() {
            out += c * t.powi(k as i32);
        }
        out
    }

    /// `E(t) = ‖exp(tx) − exp(χ₊(t)) exp(−χ₋(t))‖_F`.
    pub fn error(&self, t: f64) -> Result<f64> {
        let lhs = expm(&(&self.x * t))?;
        let gp = expm(&Self::eval(&self.plus, t, self.n))?;
        let gm = expm(&(-Self::eval(&self.minus, t, self.n)))?;
        Ok((lhs - gp * gm).norm())
    }

    pub fn table(&self, ts: &[f64]) -> Result<Vec<ErrorRow>> {
        ts.iter()
            .map(|&t| {
                let error = self.error(t)?;
                let half = self.error(t / 2.0)?;
                let ratio = (half > 0.0).then(|| error / half);
                Ok(ErrorRow { t, error, ratio })
            })
            .collect()
    }
}

/// Error table for `x` at each `t`, with `χ` truncated at `order`.
pub fn matrix_factor_check(x: &DMatrix<f64>, ts: &[f64], order: usize) -> Result<Vec<ErrorRow>> {
    MatrixFactorization::new(x, order)?.table(ts)
}

/// Errors below this are treated as exact agreement, where no decay ratio
/// is meaningful.
pub const EXACT_TOL: f64 = 1e-10;

/// Whether every row either agrees to [`EXACT_TOL`] or has its ratio in
/// `[lo, hi]`.
pub fn ratios_within(rows: &[ErrorRow], lo: f64, hi: f64) -> bool {
    rows.iter()
        .all(|r| r.error <= EXACT_TOL || r.ratio.is_some_and(|q| (lo..=hi).contains(&q)))
}

/// Parses a JSON array of number rows.
pub fn parse_matrix(text: &str) -> Result<DMatrix<f64>> {
    let rows: Vec<Vec<f64>> =
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("matrix: {e}")))?;
    let n = rows.len();
    if n == 0 || rows.iter().any(|r| r.len() != n) {
        return Err(Error::Parse("matrix must be square and non-empty".into()));
    }
    Ok(DMatrix::from_fn(n, n, |i, j| rows[i][j]))
}
