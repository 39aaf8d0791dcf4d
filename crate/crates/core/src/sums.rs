//! Majorant-type series with certified truncation, and the closed forms
//! they are compared against.
//!
//! Every summation keeps adding terms until a rigorous bound on the dropped
//! tail is at most the requested tolerance. Running out of the term budget
//! is an error, never a silent partial result.

use thiserror::Error;

use crate::coefficients::{CoefficientSequence, F0Params};
use crate::lambda::{EvalError, LambdaExpr};
use crate::specfun::{dilog, ln_inv_one_minus, ln_one_minus, SpecfunError};

pub const DEFAULT_MAX_TERMS: usize = 1_000_000;
pub const DEFAULT_SERIES_TOL: f64 = 1e-13;

/// Tolerance passed to the dilogarithm inside closed forms.
const CLOSED_FORM_DILOG_TOL: f64 = 1e-15;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SumError {
    #[error("radius r = {0} outside [0, 1)")]
    Radius(f64),
    #[error("tolerance must be positive and finite, got {0}")]
    Tolerance(f64),
    #[error("series did not reach tolerance {tol:e} within {terms} terms (tail bound {tail:e})")]
    NonConvergence { tol: f64, terms: usize, tail: f64 },
    #[error("square series must start at n = 1 or n = 2, got {0}")]
    SquareStart(u32),
    #[error(transparent)]
    Lambda(#[from] EvalError),
    #[error(transparent)]
    Specfun(#[from] SpecfunError),
}

/// Stopping rule for a series: dropped tail `≤ tol`, at most `max_terms` terms.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Truncation {
    pub tol: f64,
    pub max_terms: usize,
}

impl Truncation {
    pub fn new(tol: f64) -> Self {
        Truncation { tol, max_terms: DEFAULT_MAX_TERMS }
    }

    pub fn with_max_terms(self, max_terms: usize) -> Self {
        Truncation { max_terms, ..self }
    }
}

impl Default for Truncation {
    fn default() -> Self {
        Truncation::new(DEFAULT_SERIES_TOL)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesEvaluation {
    pub value: f64,
    pub tail_bound: f64,
    pub terms_used: usize,
}

/// First index of the squared series in the refined sum.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SquareStart {
    One,
    Two,
}

impl SquareStart {
    fn index(self) -> usize {
        match self {
            SquareStart::One => 1,
            SquareStart::Two => 2,
        }
    }
}

impl TryFrom<u32> for SquareStart {
    type Error = SumError;

    fn try_from(v: u32) -> Result<Self, SumError> {
        match v {
            1 => Ok(SquareStart::One),
            2 => Ok(SquareStart::Two),
            other => Err(SumError::SquareStart(other)),
        }
    }
}

fn check_inputs(r: f64, trunc: Truncation) -> Result<(), SumError> {
    if !(0.0..1.0).contains(&r) {
        return Err(SumError::Radius(r));
    }
    if !(trunc.tol > 0.0 && trunc.tol.is_finite()) {
        return Err(SumError::Tolerance(trunc.tol));
    }
    Ok(())
}

/// Upper bound for `Σ_{n>last} n^degree x^n`, given `x_next = x^{last+1}`.
fn power_tail(degree: u32, last: usize, x: f64, x_next: f64) -> f64 {
    if x_next == 0.0 {
        return 0.0;
    }
    let n1 = last as f64 + 1.0;
    match degree {
        0 => x_next / (1.0 - x),
        // exact: Σ_{n>N} n x^n = x^{N+1}(N+1 − N x)/(1−x)²
        1 => x_next * (n1 - (n1 - 1.0) * x) / ((1.0 - x) * (1.0 - x)),
        d => {
            // consecutive-term ratio is at most ((N+2)/(N+1))^d · x for n > N
            let ratio = ((n1 + 1.0) / n1).powi(d as i32) * x;
            if ratio >= 1.0 {
                f64::INFINITY
            } else {
                n1.powi(d as i32) * x_next / (1.0 - ratio)
            }
        }
    }
}

/// Tail of `Σ |a_n| x^n` beyond index `last`, using the sequence's growth bound.
fn coefficient_tail(seq: &CoefficientSequence, last: usize, x: f64, x_next: f64) -> f64 {
    if seq.support_len().is_some_and(|len| last + 1 >= len) {
        return 0.0;
    }
    let g = seq.growth();
    g.scale * power_tail(g.degree, last, x, x_next)
}

/// Tail of `Σ s_n x^n` beyond `last`, where `s_n = Σ_{k≤n} |a_k|` and
/// `partial = s_last`.
fn partial_sum_tail(
    seq: &CoefficientSequence,
    last: usize,
    partial: f64,
    x: f64,
    x_next: f64,
) -> f64 {
    if let Some(total) = seq.total_modulus() {
        return total.max(partial) * x_next / (1.0 - x);
    }
    // s_n ≤ s_N + scale · n^{d+1} for n > N
    let g = seq.growth();
    partial * x_next / (1.0 - x) + g.scale * power_tail(g.degree + 1, last, x, x_next)
}

/// Drives `step(n)`, which returns the `n`-th term and a bound on the tail
/// beyond it, until the tail certifies the requested tolerance.
fn certified_sum(
    trunc: Truncation,
    mut step: impl FnMut(usize) -> (f64, f64),
) -> Result<SeriesEvaluation, SumError> {
    let mut sum = 0.0;
    let mut last_tail = f64::INFINITY;
    for n in 0..trunc.max_terms {
        let (term, tail) = step(n);
        sum += term;
        last_tail = tail;
        if tail <= trunc.tol {
            return Ok(SeriesEvaluation { value: sum, tail_bound: tail, terms_used: n + 1 });
        }
    }
    Err(SumError::NonConvergence { tol: trunc.tol, terms: trunc.max_terms, tail: last_tail })
}

/// `M(r) = Σ_{n≥0} |a_n| r^n`.
pub fn majorant_sum(
    seq: &CoefficientSequence,
    r: f64,
    trunc: Truncation,
) -> Result<SeriesEvaluation, SumError> {
    check_inputs(r, trunc)?;
    let mut power = 1.0;
    certified_sum(trunc, |n| {
        let t = seq.modulus(n) * power;
        power *= r;
        (t, coefficient_tail(seq, n, r, power))
    })
}

/// `Σ_{n≥start} |a_n|² x^n` evaluated at `x = r²`.
fn square_sum(
    seq: &CoefficientSequence,
    r: f64,
    start: SquareStart,
    trunc: Truncation,
) -> Result<SeriesEvaluation, SumError> {
    let x = r * r;
    let first = start.index();
    let g = seq.growth();
    let mut power = 1.0;
    certified_sum(trunc, |n| {
        let t = if n >= first { seq.modulus(n).powi(2) * power } else { 0.0 };
        power *= x;
        let tail = if seq.support_len().is_some_and(|len| n + 1 >= len) {
            0.0
        } else {
            g.scale * g.scale * power_tail(2 * g.degree, n, x, power)
        };
        (t, tail)
    })
}

/// Refined Bohr sum `Σ_{n≥0}|a_n| r^n + λ(r) Σ_{n≥start} |a_n|² r^{2n}`.
///
/// When `λ(r) = 0` this returns exactly what [`majorant_sum`] returns.
pub fn refined_sum(
    seq: &CoefficientSequence,
    r: f64,
    lambda: &LambdaExpr,
    start: SquareStart,
    trunc: Truncation,
) -> Result<SeriesEvaluation, SumError> {
    check_inputs(r, trunc)?;
    let weight = lambda.eval(r)?;
    if weight == 0.0 {
        return majorant_sum(seq, r, trunc);
    }
    let half = Truncation { tol: trunc.tol / 2.0, ..trunc };
    let linear = majorant_sum(seq, r, half)?;
    let squares =
        square_sum(seq, r, start, Truncation { tol: half.tol / weight.abs(), ..trunc })?;
    Ok(SeriesEvaluation {
        value: linear.value + weight * squares.value,
        tail_bound: linear.tail_bound + weight.abs() * squares.tail_bound,
        terms_used: linear.terms_used.max(squares.terms_used),
    })
}

/// Majorant of the discrete Fourier transform of the coefficients:
/// `F(r) = Σ_n (Σ_{k≤n} |a_k|) r^n` (the kernel has unit modulus).
pub fn fourier_majorant(
    seq: &CoefficientSequence,
    r: f64,
    trunc: Truncation,
) -> Result<SeriesEvaluation, SumError> {
    check_inputs(r, trunc)?;
    let mut partial = 0.0;
    let mut power = 1.0;
    certified_sum(trunc, |n| {
        partial += seq.modulus(n);
        let t = partial * power;
        power *= r;
        (t, partial_sum_tail(seq, n, partial, r, power))
    })
}

/// `c_n = Σ_{k=0}^{n} |a_k| / (n+1)^{k+1}`.
fn laplace_coefficient(seq: &CoefficientSequence, n: usize) -> f64 {
    let w = 1.0 / (n as f64 + 1.0);
    let mut weight = w;
    let mut acc = 0.0;
    for k in 0..=n {
        acc += seq.modulus(k) * weight;
        weight *= w;
        if weight == 0.0 {
            break;
        }
    }
    acc
}

/// Majorant of the discrete Laplace transform:
/// `L(r) = Σ_n (Σ_{k≤n} |a_k| / (n+1)^{k+1}) r^n`.
pub fn laplace_majorant(
    seq: &CoefficientSequence,
    r: f64,
    trunc: Truncation,
) -> Result<SeriesEvaluation, SumError> {
    check_inputs(r, trunc)?;
    let mut partial = 0.0;
    let mut power = 1.0;
    certified_sum(trunc, |n| {
        partial += seq.modulus(n);
        let t = laplace_coefficient(seq, n) * power;
        power *= r;
        // c_n ≤ s_n / (n+1) ≤ s_n, so the Fourier tail dominates
        (t, partial_sum_tail(seq, n, partial, r, power))
    })
}

/// `Σ_{n≥2} (2/n)² r^{2n} = 4(Li₂(r²) − r²)`.
pub fn lk_square_sum_closed(r: f64) -> f64 {
    let x = r * r;
    match dilog(x, CLOSED_FORM_DILOG_TOL) {
        Ok(d) => 4.0 * (d.value - x),
        Err(_) => f64::NAN,
    }
}

/// `Σ_{n≥2} n² r^{2n} = r⁴(r⁴ − 3r² + 4)/(1 − r²)³`.
pub fn koebe_square_sum_closed(r: f64) -> f64 {
    let x = r * r;
    x * x * (x * x - 3.0 * x + 4.0) / (1.0 - x).powi(3)
}

/// `Σ_{n≥1} 2/n · r^n = −2 ln(1 − r)`.
pub fn lk_majorant_closed(r: f64) -> f64 {
    2.0 * ln_inv_one_minus(r)
}

/// `Σ_{n≥1} n r^n = r/(1 − r)²`.
pub fn koebe_majorant_closed(r: f64) -> f64 {
    r / ((1.0 - r) * (1.0 - r))
}

/// `1/(1 − r)`, the Fourier-majorant bound.
pub fn fourier_bound(r: f64) -> f64 {
    1.0 / (1.0 - r)
}

/// `(1/r) ln(1/(1 − r))`, the Laplace-majorant bound (`1` at `r = 0`).
pub fn laplace_bound(r: f64) -> f64 {
    if r == 0.0 {
        1.0
    } else {
        ln_inv_one_minus(r) / r
    }
}

/// `Σ_{n≥1} r^n/(n(n+1)) = 1 + ((1 − r)/r) ln(1 − r)`.
pub fn laplace_weight_closed(r: f64) -> f64 {
    1.0 + (1.0 - r) / r * ln_one_minus(r)
}

/// `Φ^γ_a(r)`, defined through `F_{f₀}(r) = (1 − Φ^γ_a(r))/(1 − r)`:
///
/// `Φ = 1 − |A₀| − B r + B q r (1 − r)/(1 − q r)` with
/// `B = (1+a)(1−γ)/(1−aγ)` and `q = a(1−γ)/(1−aγ)`.
pub fn phi_gamma_a(gamma: f64, a: f64, r: f64) -> f64 {
    let s = 1.0 - a * gamma;
    let b = (1.0 + a) * (1.0 - gamma) / s;
    let q = a * (1.0 - gamma) / s;
    let a0 = (a - gamma).abs() / s;
    1.0 - a0 - b * r + b * q * r * (1.0 - r) / (1.0 - q * r)
}

/// `Φ^γ_a` at the classical radius, `2(1−a)²(1+γ)²/((1−aγ)(3 − a + γ − 3aγ))`.
pub fn phi_gamma_a_at_classical_radius(gamma: f64, a: f64) -> f64 {
    2.0 * (1.0 - a).powi(2) * (1.0 + gamma).powi(2)
        / ((1.0 - a * gamma) * (3.0 - a + gamma - 3.0 * a * gamma))
}

/// `Φ_γ(r) = ((1+γ)/r) ln(1−r) + (2/r)(ln(1/(1−r)) − Li₂(r))`, whose first
/// zero delimits where the Laplace-majorant bound holds.
pub fn capital_phi_gamma(gamma: f64, r: f64) -> Result<f64, SumError> {
    if !(r > 0.0 && r < 1.0) {
        return Err(SumError::Radius(r));
    }
    let li = dilog(r, CLOSED_FORM_DILOG_TOL)?.value;
    let l = ln_one_minus(r);
    Ok((1.0 + gamma) / r * l + 2.0 / r * (-l - li))
}

/// `Ψ_{γ,r}(x) = x/(1−r) + (1 − x²) r / ((1+γ)(1−r)²)`.
pub fn fourier_upper_envelope(gamma: f64, r: f64, x: f64) -> f64 {
    let c = 1.0 - r;
    x / c + (1.0 - x * x) * r / ((1.0 + gamma) * c * c)
}

/// `Φ^γ(r) = (2r − 2 − (1+γ)) ln(1−r) − 2r`.
pub fn laplace_phi_small(gamma: f64, r: f64) -> f64 {
    (2.0 * r - 2.0 - (1.0 + gamma)) * ln_one_minus(r) - 2.0 * r
}

/// `F_{γ,r}(a) = (a/r) ln(1/(1−r)) + ((1−a²)/(1+γ)) ((1/r) ln(1/(1−r)) − Li₂(r)/r)`,
/// an upper bound for the Laplace majorant of any `f` with `|f(0)| = a`.
pub fn laplace_upper_bound_fn(gamma: f64, r: f64, a: f64) -> Result<f64, SumError> {
    if !(r > 0.0 && r < 1.0) {
        return Err(SumError::Radius(r));
    }
    let li = dilog(r, CLOSED_FORM_DILOG_TOL)?.value;
    let l = ln_inv_one_minus(r) / r;
    Ok(a * l + (1.0 - a * a) / (1.0 + gamma) * (l - li / r))
}

/// Closed form of the Fourier majorant of `f₀(a, γ)`.
pub fn f0_fourier_closed(p: &F0Params, r: f64) -> f64 {
    (1.0 - phi_gamma_a(p.gamma, p.a, r)) / (1.0 - r)
}
