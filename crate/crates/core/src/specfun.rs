//! Real dilogarithm and logarithm helpers.
//!
//! `Li₂(x) = Σ_{k≥1} x^k / k²` is summed directly for `x ≤ 1/2`. Above that
//! the reflection `Li₂(x) = π²/6 − ln(x)·ln(1−x) − Li₂(1−x)` moves the
//! argument back into the fast regime, so at most ~50 terms are ever needed
//! for double precision.

use std::f64::consts::PI;

use thiserror::Error;

/// Tolerance used when the caller does not ask for one.
pub const DEFAULT_DILOG_TOL: f64 = 1e-13;

/// `π²/6 = Li₂(1)`.
pub const LI2_ONE: f64 = PI * PI / 6.0;

const MAX_TERMS: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum SpecfunError {
    #[error("dilog argument {0} outside [0, 1]")]
    Domain(f64),
    #[error("dilog tolerance must be positive and finite, got {0}")]
    BadTolerance(f64),
    #[error("dilog series did not reach tolerance {tol:e} within {terms} terms")]
    NonConvergence { tol: f64, terms: usize },
}

/// A dilogarithm value together with the certified truncation bound of the
/// series that produced it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DilogResult {
    pub value: f64,
    pub terms_used: usize,
    pub tail_bound: f64,
}

/// `ln(1 − x)` without cancellation for small `x`.
#[inline]
pub fn ln_one_minus(x: f64) -> f64 {
    (-x).ln_1p()
}

/// `ln(1 / (1 − x))`.
#[inline]
pub fn ln_inv_one_minus(x: f64) -> f64 {
    -(-x).ln_1p()
}

/// Dilogarithm on `[0, 1]` with truncation error at most `tol`.
pub fn dilog(x: f64, tol: f64) -> Result<DilogResult, SpecfunError> {
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(SpecfunError::BadTolerance(tol));
    }
    if !(0.0..=1.0).contains(&x) {
        return Err(SpecfunError::Domain(x));
    }
    if x == 1.0 {
        return Ok(DilogResult { value: LI2_ONE, terms_used: 0, tail_bound: 0.0 });
    }
    if x <= 0.5 {
        return direct_series(x, tol);
    }
    let y = 1.0 - x;
    let inner = direct_series(y, tol)?;
    Ok(DilogResult {
        value: LI2_ONE - x.ln() * y.ln() - inner.value,
        ..inner
    })
}

/// `dilog(x, DEFAULT_DILOG_TOL)`, value only.
pub fn li2(x: f64) -> Result<f64, SpecfunError> {
    dilog(x, DEFAULT_DILOG_TOL).map(|d| d.value)
}

fn direct_series(x: f64, tol: f64) -> Result<DilogResult, SpecfunError> {
    if x == 0.0 {
        return Ok(DilogResult { value: 0.0, terms_used: 0, tail_bound: 0.0 });
    }
    let mut sum = 0.0;
    let mut power = 1.0;
    for k in 1..=MAX_TERMS {
        power *= x;
        let kf = k as f64;
        sum += power / (kf * kf);
        // Σ_{j>k} x^j/j² ≤ x^{k+1} / ((k+1)² (1−x))
        let next = kf + 1.0;
        let tail = power * x / (next * next * (1.0 - x));
        if tail <= tol {
            return Ok(DilogResult { value: sum, terms_used: k, tail_bound: tail });
        }
    }
    Err(SpecfunError::NonConvergence { tol, terms: MAX_TERMS })
}
