//! Bracketed root finding and the radius equations built on it.

use serde::Serialize;
use thiserror::Error;

use crate::lambda::{EvalError, LambdaExpr};
use crate::specfun::ln_inv_one_minus;
use crate::sums::{
    capital_phi_gamma, koebe_majorant_closed, koebe_square_sum_closed, lk_square_sum_closed,
    SumError,
};

/// Default bracket-width tolerance for the radius solvers.
pub const DEFAULT_ROOT_TOL: f64 = 1e-12;
pub const DEFAULT_MAX_ITER: usize = 200;
/// Radius equations are searched on `[SEARCH_LO, SEARCH_HI]`.
pub const SEARCH_LO: f64 = 1e-9;
pub const SEARCH_HI: f64 = 1.0 - 1e-9;
/// Points in the sign scans used for uniqueness checks and root location.
pub const SCAN_POINTS: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SolveError {
    #[error("no sign change on [{lo}, {hi}]: f(lo) = {f_lo}, f(hi) = {f_hi}")]
    Bracket { lo: f64, hi: f64, f_lo: f64, f_hi: f64 },
    #[error("no sign change found on a {points}-point scan of [{lo}, {hi}]")]
    NoRoot { lo: f64, hi: f64, points: usize },
    #[error("bisection did not converge within {0} iterations")]
    NonConvergence(usize),
    #[error("function value at {x} is not finite ({fx})")]
    NotFinite { x: f64, fx: f64 },
    #[error("parameter {name} = {value} outside {range}")]
    Parameter { name: &'static str, value: f64, range: &'static str },
    #[error(transparent)]
    Lambda(#[from] EvalError),
    #[error(transparent)]
    Series(#[from] SumError),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RootResult {
    pub root: f64,
    /// `f(root)`.
    pub residual: f64,
    pub iterations: usize,
    pub bracket_lo: f64,
    pub bracket_hi: f64,
    /// Sign changes of the defining function on the full search interval,
    /// when a uniqueness scan was run. Anything other than `Some(1)` means
    /// the root may not be the only one.
    pub sign_changes: Option<usize>,
}

impl RootResult {
    pub fn is_unique(&self) -> bool {
        self.sign_changes == Some(1)
    }
}

fn eval_finite<E>(f: &mut impl FnMut(f64) -> Result<f64, E>, x: f64) -> Result<f64, SolveError>
where
    E: Into<SolveError>,
{
    let fx = f(x).map_err(Into::into)?;
    if fx.is_nan() {
        return Err(SolveError::NotFinite { x, fx });
    }
    Ok(fx)
}

/// Bisection for a fallible function.
///
/// Stops once the bracket is narrower than `tol` and `|f(mid)| ≤ tol`, or
/// when the bracket cannot be split further in double precision.
pub fn try_bisect_root<E>(
    mut f: impl FnMut(f64) -> Result<f64, E>,
    lo: f64,
    hi: f64,
    tol: f64,
    max_iter: usize,
) -> Result<RootResult, SolveError>
where
    E: Into<SolveError>,
{
    // negated so that NaN inputs are rejected too
    #[allow(clippy::neg_cmp_op_on_partial_ord)]
    if !(tol > 0.0) || !(lo < hi) {
        return Err(SolveError::Parameter { name: "tol/bracket", value: tol, range: "tol > 0, lo < hi" });
    }
    let (mut lo, mut hi) = (lo, hi);
    let f_lo = eval_finite(&mut f, lo)?;
    let f_hi = eval_finite(&mut f, hi)?;
    if f_lo == 0.0 || f_hi == 0.0 || f_lo.signum() == f_hi.signum() {
        return Err(SolveError::Bracket { lo, hi, f_lo, f_hi });
    }
    let lo_negative = f_lo < 0.0;
    for iter in 1..=max_iter {
        let mid = lo + (hi - lo) / 2.0;
        let fm = eval_finite(&mut f, mid)?;
        let collapsed = mid <= lo || mid >= hi;
        if fm == 0.0 || collapsed || (hi - lo <= tol && fm.abs() <= tol) {
            return Ok(RootResult {
                root: mid,
                residual: fm,
                iterations: iter,
                bracket_lo: lo,
                bracket_hi: hi,
                sign_changes: None,
            });
        }
        if (fm < 0.0) == lo_negative {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Err(SolveError::NonConvergence(max_iter))
}

/// Bisection for an infallible function.
pub fn bisect_root(
    mut f: impl FnMut(f64) -> f64,
    lo: f64,
    hi: f64,
    tol: f64,
    max_iter: usize,
) -> Result<RootResult, SolveError> {
    try_bisect_root(|x| Ok::<_, SolveError>(f(x)), lo, hi, tol, max_iter)
}

fn linspace(lo: f64, hi: f64, points: usize) -> impl Iterator<Item = f64> {
    let step = (hi - lo) / (points - 1) as f64;
    (0..points).map(move |i| if i + 1 == points { hi } else { lo + step * i as f64 })
}

/// Sign changes of `f` between consecutive points of a uniform grid of
/// `grid` points on `[lo, hi]`. Zeros carry the previous sign.
pub fn try_count_sign_changes<E>(
    mut f: impl FnMut(f64) -> Result<f64, E>,
    lo: f64,
    hi: f64,
    grid: usize,
) -> Result<usize, E> {
    assert!(grid >= 2, "grid must have at least 2 points");
    let mut last = 0.0f64;
    let mut changes = 0;
    for x in linspace(lo, hi, grid) {
        let v = f(x)?;
        if v == 0.0 || v.is_nan() {
            continue;
        }
        if last != 0.0 && v.signum() != last.signum() {
            changes += 1;
        }
        last = v;
    }
    Ok(changes)
}

pub fn count_sign_changes(mut f: impl FnMut(f64) -> f64, lo: f64, hi: f64, grid: usize) -> usize {
    match try_count_sign_changes(|x| Ok::<_, ()>(f(x)), lo, hi, grid) {
        Ok(n) => n,
        Err(()) => unreachable!(),
    }
}

/// `(1 + γ)/(3 + γ)`, the Bohr radius of functions bounded by one on `Ω_γ`.
pub fn classical_radius(gamma: f64) -> Result<f64, SolveError> {
    if !(0.0..1.0).contains(&gamma) {
        return Err(SolveError::Parameter { name: "gamma", value: gamma, range: "[0, 1)" });
    }
    Ok((1.0 + gamma) / (3.0 + gamma))
}

/// `−2 ln(1 − r) + λ(r)·4(Li₂(r²) − r²) − 1`.
pub fn lk_radius_equation(lambda: &LambdaExpr, r: f64) -> Result<f64, SolveError> {
    let w = lambda.eval(r)?;
    let squares = if w == 0.0 { 0.0 } else { w * lk_square_sum_closed(r) };
    Ok(2.0 * ln_inv_one_minus(r) + squares - 1.0)
}

/// `r/(1 − r)² + λ(r)·r⁴(r⁴ − 3r² + 4)/(1 − r²)³ − 1`.
pub fn s_radius_equation(lambda: &LambdaExpr, r: f64) -> Result<f64, SolveError> {
    let w = lambda.eval(r)?;
    let squares = if w == 0.0 { 0.0 } else { w * koebe_square_sum_closed(r) };
    Ok(koebe_majorant_closed(r) + squares - 1.0)
}

fn solve_with_uniqueness(
    mut g: impl FnMut(f64) -> Result<f64, SolveError>,
    tol: f64,
) -> Result<RootResult, SolveError> {
    let mut root = try_bisect_root(&mut g, SEARCH_LO, SEARCH_HI, tol, DEFAULT_MAX_ITER)?;
    root.sign_changes = Some(try_count_sign_changes(&mut g, SEARCH_LO, SEARCH_HI, SCAN_POINTS)?);
    Ok(root)
}

/// Refined Bohr radius of the log-derivative family of convex maps.
pub fn refined_radius_lk(lambda: &LambdaExpr, tol: f64) -> Result<RootResult, SolveError> {
    solve_with_uniqueness(|r| lk_radius_equation(lambda, r), tol)
}

/// Refined Bohr radius of the univalent class (extremal: Koebe).
pub fn refined_radius_s(lambda: &LambdaExpr, tol: f64) -> Result<RootResult, SolveError> {
    solve_with_uniqueness(|r| s_radius_equation(lambda, r), tol)
}

/// Smallest zero of `Φ_γ` in `(0, 1)`: located on a uniform scan of the
/// search interval, then refined by bisection.
pub fn laplace_radius(gamma: f64, tol: f64) -> Result<RootResult, SolveError> {
    if !(0.0..1.0).contains(&gamma) {
        return Err(SolveError::Parameter { name: "gamma", value: gamma, range: "[0, 1)" });
    }
    let phi = |r: f64| capital_phi_gamma(gamma, r).map_err(SolveError::from);
    let mut prev: Option<(f64, f64)> = None;
    let mut bracket = None;
    for x in linspace(SEARCH_LO, SEARCH_HI, SCAN_POINTS) {
        let v = phi(x)?;
        if let Some((px, pv)) = prev {
            if v == 0.0 {
                bracket = Some((px, x));
                break;
            }
            if pv.signum() != v.signum() {
                bracket = Some((px, x));
                break;
            }
        }
        prev = Some((x, v));
    }
    let Some((lo, hi)) = bracket else {
        return Err(SolveError::NoRoot { lo: SEARCH_LO, hi: SEARCH_HI, points: SCAN_POINTS });
    };
    let mut root = if phi(hi)? == 0.0 {
        RootResult { root: hi, residual: 0.0, iterations: 0, bracket_lo: lo, bracket_hi: hi, sign_changes: None }
    } else {
        try_bisect_root(phi, lo, hi, tol, DEFAULT_MAX_ITER)?
    };
    root.sign_changes = Some(try_count_sign_changes(phi, SEARCH_LO, SEARCH_HI, SCAN_POINTS)?);
    Ok(root)
}
