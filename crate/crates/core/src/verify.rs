//! Numerical checks of the Bohr-type inequalities and of their sharpness.
//!
//! Checks only use coefficient families that are known members of the
//! class in question (the `f₀` family, constants and the extremal
//! sequences), so a failing report is a genuine violation and not an
//! artefact of a coefficient vector that lies outside the class.

use serde::Serialize;
use thiserror::Error;

use crate::coefficients::{f0_sequence, lemma_a_bound, CoeffError, CoefficientSequence, F0Params};
use crate::lambda::LambdaExpr;
use crate::solver::{classical_radius, SolveError};
use crate::sums::{
    fourier_bound, fourier_majorant, laplace_bound, laplace_majorant, refined_sum, SquareStart,
    SumError, Truncation,
};

/// Slack separating genuine violations from rounding and truncation noise.
pub const DEFAULT_SLACK: f64 = 1e-9;
/// Required closeness of the Laplace ratio to 1 in the sharpness sweep.
pub const DEFAULT_SHARPNESS_EPS: f64 = 0.01;
pub const DEFAULT_A_GRID: [f64; 4] = [0.9, 0.99, 0.999, 0.9999];

#[derive(Debug, Clone, PartialEq, Error)]
pub enum VerifyError {
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error(transparent)]
    Series(#[from] SumError),
    #[error(transparent)]
    Coefficients(#[from] CoeffError),
    #[error(transparent)]
    Solver(#[from] SolveError),
}

/// How `value` is compared with `bound`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Sense {
    /// `value ≤ bound`; `margin = bound − value`, pass iff `margin ≥ −slack`.
    AtMost,
    /// `value ≥ bound`; `margin = value − bound`, pass iff `margin ≥ −slack`.
    AtLeast,
    /// `value > bound`; `margin = value − bound`, pass iff `margin > slack`.
    Exceeds,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct Witness {
    pub a: Option<f64>,
    pub gamma: Option<f64>,
    pub r: Option<f64>,
    pub lambda: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub claim: String,
    pub value: f64,
    pub bound: f64,
    pub margin: f64,
    pub pass: bool,
    pub sense: Sense,
    pub slack: f64,
    pub witness: Option<Witness>,
}

impl VerificationReport {
    pub fn new(claim: impl Into<String>, sense: Sense, value: f64, bound: f64, slack: f64) -> Self {
        let margin = match sense {
            Sense::AtMost => bound - value,
            Sense::AtLeast | Sense::Exceeds => value - bound,
        };
        let pass = match sense {
            Sense::AtMost | Sense::AtLeast => margin >= -slack,
            Sense::Exceeds => margin > slack,
        };
        VerificationReport {
            claim: claim.into(),
            value,
            bound,
            margin,
            pass,
            sense,
            slack,
            witness: None,
        }
    }

    pub fn with_witness(mut self, witness: Witness) -> Self {
        self.witness = Some(witness);
        self
    }
}

fn series_trunc() -> Truncation {
    Truncation::new(1e-13)
}

fn check_gamma(gamma: f64) -> Result<(), VerifyError> {
    if (0.0..1.0).contains(&gamma) {
        Ok(())
    } else {
        Err(VerifyError::Precondition(format!("gamma = {gamma} outside [0, 1)")))
    }
}

fn seq_a(seq: &CoefficientSequence) -> Option<f64> {
    match seq {
        CoefficientSequence::F0(F0Params { a, .. }) => Some(*a),
        _ => None,
    }
}

/// `F_f(r) ≤ 1/(1 − r)`.
pub fn verify_fourier_inequality(
    gamma: f64,
    seq: &CoefficientSequence,
    r: f64,
) -> Result<VerificationReport, VerifyError> {
    check_gamma(gamma)?;
    let f = fourier_majorant(seq, r, series_trunc())?;
    let witness = Witness { a: seq_a(seq), gamma: Some(gamma), r: Some(r), lambda: None };
    Ok(VerificationReport::new("fourier", Sense::AtMost, f.value, fourier_bound(r), DEFAULT_SLACK)
        .with_witness(witness))
}

/// `L_f(r) ≤ (1/r) ln(1/(1 − r))`.
pub fn verify_laplace_inequality(
    gamma: f64,
    seq: &CoefficientSequence,
    r: f64,
) -> Result<VerificationReport, VerifyError> {
    check_gamma(gamma)?;
    if !(r > 0.0 && r < 1.0) {
        return Err(VerifyError::Precondition(format!("r = {r} outside (0, 1)")));
    }
    let l = laplace_majorant(seq, r, series_trunc())?;
    let witness = Witness { a: seq_a(seq), gamma: Some(gamma), r: Some(r), lambda: None };
    Ok(VerificationReport::new("laplace", Sense::AtMost, l.value, laplace_bound(r), DEFAULT_SLACK)
        .with_witness(witness))
}

/// Scans `a_grid` for the first `f₀(a, γ)` violating the Fourier bound at a
/// radius `r` above the classical one. Passing means a witness was found.
pub fn sharpness_sweep_fourier(
    gamma: f64,
    r: f64,
    a_grid: &[f64],
) -> Result<VerificationReport, VerifyError> {
    let radius = classical_radius(gamma)?;
    if !(r > radius && r < 1.0) {
        return Err(VerifyError::Precondition(format!(
            "r = {r} must lie above the classical radius {radius} and below 1"
        )));
    }
    let mut last = None;
    for &a in a_grid {
        let rep = verify_fourier_inequality(gamma, &f0_sequence(a, gamma)?, r)?;
        if !rep.pass {
            return Ok(exceeds_report("sharpness-fourier", rep));
        }
        last = Some(rep);
    }
    match last {
        Some(rep) => Ok(exceeds_report("sharpness-fourier", rep)),
        None => Err(VerifyError::Precondition("empty a grid".into())),
    }
}

fn exceeds_report(claim: &str, rep: VerificationReport) -> VerificationReport {
    let out = VerificationReport::new(claim, Sense::Exceeds, rep.value, rep.bound, DEFAULT_SLACK);
    match rep.witness {
        Some(w) => out.with_witness(w),
        None => out,
    }
}

/// `L_{f₀(a,γ)}(r)` divided by the Laplace bound at `r`.
pub fn laplace_ratio(gamma: f64, a: f64, r: f64) -> Result<f64, VerifyError> {
    if !(r > 0.0 && r < 1.0) {
        return Err(VerifyError::Precondition(format!("r = {r} outside (0, 1)")));
    }
    let l = laplace_majorant(&f0_sequence(a, gamma)?, r, series_trunc())?;
    Ok(l.value / laplace_bound(r))
}

/// Passes when the Laplace ratio at the largest `a` of the grid exceeds
/// `1 − eps`. The ratio increases with `a`, so this is also the supremum
/// over the grid.
pub fn sharpness_sweep_laplace(
    gamma: f64,
    r: f64,
    a_grid: &[f64],
    eps: f64,
) -> Result<VerificationReport, VerifyError> {
    check_gamma(gamma)?;
    let Some(a) = a_grid.iter().copied().reduce(f64::max) else {
        return Err(VerifyError::Precondition("empty a grid".into()));
    };
    let ratio = laplace_ratio(gamma, a, r)?;
    let witness = Witness { a: Some(a), gamma: Some(gamma), r: Some(r), lambda: None };
    Ok(VerificationReport::new("sharpness-laplace", Sense::Exceeds, ratio, 1.0 - eps, 0.0)
        .with_witness(witness))
}

/// `|A_n| ≤ (1 − |A_0|²)/(1 + γ)` for `f₀(a, γ)`, `n = 1 … n_max`. The report
/// keeps the tightest index.
pub fn lemma_a_check(gamma: f64, a: f64, n_max: usize) -> Result<VerificationReport, VerifyError> {
    if n_max < 1 {
        return Err(VerifyError::Precondition("n_max must be at least 1".into()));
    }
    let seq = f0_sequence(a, gamma)?;
    let bound = lemma_a_bound(gamma, seq.modulus(0))?;
    let (mut worst_n, mut worst) = (1, seq.modulus(1));
    for n in 2..=n_max {
        let v = seq.modulus(n);
        if v > worst {
            worst = v;
            worst_n = n;
        }
    }
    let witness = Witness { a: Some(a), gamma: Some(gamma), r: None, lambda: None };
    let mut rep = VerificationReport::new(
        format!("lemma-a(n={worst_n})"),
        Sense::AtMost,
        worst,
        bound,
        DEFAULT_SLACK,
    );
    rep.witness = Some(witness);
    Ok(rep)
}

/// The two linearly invariant families with known extremal functions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilyClass {
    /// Log-derivatives of convex maps; extremal coefficients `2/n`.
    Lk,
    /// Univalent functions; extremal coefficients `n`.
    S,
}

impl FamilyClass {
    pub fn extremal(self) -> CoefficientSequence {
        match self {
            FamilyClass::Lk => CoefficientSequence::lk_extremal(),
            FamilyClass::S => CoefficientSequence::koebe(),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            FamilyClass::Lk => "lk",
            FamilyClass::S => "s",
        }
    }
}

/// Refined sum of the class's extremal function at `r` against 1,
/// evaluated by direct summation (independent of the closed forms used by
/// the radius solvers).
pub fn verify_refined_inequality(
    class: FamilyClass,
    lambda: &LambdaExpr,
    r: f64,
) -> Result<VerificationReport, VerifyError> {
    let v = refined_sum(&class.extremal(), r, lambda, SquareStart::Two, series_trunc())?;
    let witness = Witness { a: None, gamma: None, r: Some(r), lambda: Some(lambda.to_string()) };
    Ok(VerificationReport::new(
        format!("refined-{}", class.name()),
        Sense::AtMost,
        v.value,
        1.0,
        DEFAULT_SLACK,
    )
    .with_witness(witness))
}
