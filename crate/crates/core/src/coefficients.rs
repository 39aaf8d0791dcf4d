//! Coefficient moduli `|a_n|` of the extremal function families, the
//! `Ω_γ` membership test and the coefficient bound for functions bounded
//! by one on `Ω_γ`.

use num_complex::Complex64;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CoeffError {
    #[error("coefficient index {0} out of range (n must be >= 1)")]
    Index(i64),
    #[error("parameter {name} = {value} outside {range}")]
    Parameter { name: &'static str, value: f64, range: &'static str },
    #[error("coefficient list entry {index} = {value} is not a finite non-negative real")]
    BadListEntry { index: usize, value: f64 },
    #[error("series division by zero (constant term of the denominator vanishes)")]
    ZeroDenominator,
}

fn check_gamma(gamma: f64) -> Result<(), CoeffError> {
    if (0.0..1.0).contains(&gamma) {
        Ok(())
    } else {
        Err(CoeffError::Parameter { name: "gamma", value: gamma, range: "[0, 1)" })
    }
}

fn check_a(a: f64) -> Result<(), CoeffError> {
    if a > 0.0 && a < 1.0 {
        Ok(())
    } else {
        Err(CoeffError::Parameter { name: "a", value: a, range: "(0, 1)" })
    }
}

/// `2/n`: coefficients of `log(1 − z)^{-2}`, extremal in the log-derivative
/// family of convex maps.
pub fn lk_extremal_coeff(n: i64) -> Result<f64, CoeffError> {
    if n < 1 {
        return Err(CoeffError::Index(n));
    }
    Ok(2.0 / n as f64)
}

/// `n`: coefficients of the Koebe function `z/(1 − z)²`.
pub fn koebe_coeff(n: i64) -> Result<f64, CoeffError> {
    if n < 1 {
        return Err(CoeffError::Index(n));
    }
    Ok(n as f64)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilyTag {
    Koebe,
    LkExtremal,
    F0,
    Constant,
    FiniteList,
}

/// Parameters of the Möbius family `f₀(z) = (a − γ − (1−γ)z) / (1 − aγ − a(1−γ)z)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct F0Params {
    pub a: f64,
    pub gamma: f64,
    /// `|A₀| = |a − γ| / (1 − aγ)`
    pub a0: f64,
    /// `(1 − a²) / (a(1 − aγ))`
    pub scale: f64,
    /// `a(1 − γ) / (1 − aγ)`, the geometric ratio of `A_n`.
    pub ratio: f64,
}

impl F0Params {
    pub fn new(a: f64, gamma: f64) -> Result<Self, CoeffError> {
        check_a(a)?;
        check_gamma(gamma)?;
        let s = 1.0 - a * gamma;
        Ok(F0Params {
            a,
            gamma,
            a0: (a - gamma).abs() / s,
            scale: (1.0 - a * a) / (a * s),
            ratio: a * (1.0 - gamma) / s,
        })
    }

    /// `A_n = scale · ratio^n` for `n ≥ 1`.
    pub fn coeff(&self, n: usize) -> f64 {
        if n == 0 {
            self.a0
        } else {
            self.scale * self.ratio.powi(n.min(i32::MAX as usize) as i32)
        }
    }

    /// Closed-form value of `f₀(z)`.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        let (a, g) = (self.a, self.gamma);
        (a - g - (1.0 - g) * z) / (1.0 - a * g - a * (1.0 - g) * z)
    }
}

/// A source of coefficient moduli `n ↦ |a_n|`.
#[derive(Debug, Clone, PartialEq)]
pub enum CoefficientSequence {
    /// `|a_0| = 0`, `|a_n| = n`.
    Koebe,
    /// `|a_0| = 0`, `|a_n| = 2/n`.
    LkExtremal,
    F0(F0Params),
    /// `|a_0| = |c|`, everything else zero.
    Constant(f64),
    /// Explicit moduli; indices past the end are zero.
    FiniteList(Vec<f64>),
}

/// `|a_n| ≤ scale · n^degree` for every `n ≥ 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GrowthBound {
    pub scale: f64,
    pub degree: u32,
}

impl CoefficientSequence {
    pub fn koebe() -> Self {
        CoefficientSequence::Koebe
    }

    pub fn lk_extremal() -> Self {
        CoefficientSequence::LkExtremal
    }

    pub fn constant(c: f64) -> Result<Self, CoeffError> {
        if !c.is_finite() {
            return Err(CoeffError::BadListEntry { index: 0, value: c });
        }
        Ok(CoefficientSequence::Constant(c.abs()))
    }

    pub fn finite_list(values: Vec<f64>) -> Result<Self, CoeffError> {
        if let Some((index, &value)) =
            values.iter().enumerate().find(|(_, v)| !(v.is_finite() && **v >= 0.0))
        {
            return Err(CoeffError::BadListEntry { index, value });
        }
        Ok(CoefficientSequence::FiniteList(values))
    }

    pub fn tag(&self) -> FamilyTag {
        match self {
            CoefficientSequence::Koebe => FamilyTag::Koebe,
            CoefficientSequence::LkExtremal => FamilyTag::LkExtremal,
            CoefficientSequence::F0(_) => FamilyTag::F0,
            CoefficientSequence::Constant(_) => FamilyTag::Constant,
            CoefficientSequence::FiniteList(_) => FamilyTag::FiniteList,
        }
    }

    /// `|a_n|`.
    pub fn modulus(&self, n: usize) -> f64 {
        match self {
            CoefficientSequence::Koebe => n as f64,
            CoefficientSequence::LkExtremal if n == 0 => 0.0,
            CoefficientSequence::LkExtremal => 2.0 / n as f64,
            CoefficientSequence::F0(p) => p.coeff(n),
            CoefficientSequence::Constant(c) if n == 0 => *c,
            CoefficientSequence::Constant(_) => 0.0,
            CoefficientSequence::FiniteList(v) => v.get(n).copied().unwrap_or(0.0),
        }
    }

    pub fn growth(&self) -> GrowthBound {
        match self {
            CoefficientSequence::Koebe => GrowthBound { scale: 1.0, degree: 1 },
            CoefficientSequence::LkExtremal => GrowthBound { scale: 2.0, degree: 0 },
            // A_n is decreasing, so A_1 dominates
            CoefficientSequence::F0(p) => GrowthBound { scale: p.coeff(1), degree: 0 },
            CoefficientSequence::Constant(_) => GrowthBound { scale: 0.0, degree: 0 },
            CoefficientSequence::FiniteList(v) => GrowthBound {
                scale: v.iter().skip(1).copied().fold(0.0, f64::max),
                degree: 0,
            },
        }
    }

    /// `Σ_{n≥0} |a_n|` when it is finite and known in closed form.
    pub fn total_modulus(&self) -> Option<f64> {
        match self {
            CoefficientSequence::Koebe | CoefficientSequence::LkExtremal => None,
            CoefficientSequence::F0(p) => Some(p.a0 + p.scale * p.ratio / (1.0 - p.ratio)),
            CoefficientSequence::Constant(c) => Some(*c),
            CoefficientSequence::FiniteList(v) => Some(v.iter().sum()),
        }
    }

    /// Number of leading entries outside of which every modulus is zero.
    pub fn support_len(&self) -> Option<usize> {
        match self {
            CoefficientSequence::Constant(_) => Some(1),
            CoefficientSequence::FiniteList(v) => Some(v.len()),
            _ => None,
        }
    }
}

/// The `f₀(a, γ)` sequence.
pub fn f0_sequence(a: f64, gamma: f64) -> Result<CoefficientSequence, CoeffError> {
    F0Params::new(a, gamma).map(CoefficientSequence::F0)
}

/// First `N + 1` signed Taylor coefficients of `f₀(a, γ)`, obtained by long
/// division of the numerator `p − qz` by the denominator `s − tz`.
///
/// Test-only route: the sequence accessor uses the closed form instead.
pub fn f0_taylor_oracle(a: f64, gamma: f64, terms: usize) -> Result<Vec<f64>, CoeffError> {
    let num = [a - gamma, -(1.0 - gamma)];
    let den = [1.0 - a * gamma, -a * (1.0 - gamma)];
    series_quotient(&num, &den, terms + 1)
}

/// Power-series quotient `num / den` truncated to `len` coefficients.
pub fn series_quotient(num: &[f64], den: &[f64], len: usize) -> Result<Vec<f64>, CoeffError> {
    let lead = den.first().copied().unwrap_or(0.0);
    if lead == 0.0 {
        return Err(CoeffError::ZeroDenominator);
    }
    let mut out: Vec<f64> = Vec::with_capacity(len);
    for n in 0..len {
        let mut acc = num.get(n).copied().unwrap_or(0.0);
        for (j, d) in den.iter().enumerate().skip(1).take(n) {
            acc -= d * out[n - j];
        }
        out.push(acc / lead);
    }
    Ok(out)
}

/// `z ∈ Ω_γ`, i.e. `|z + γ/(1−γ)| < 1/(1−γ)`.
pub fn omega_contains(gamma: f64, z: Complex64) -> bool {
    let c = 1.0 - gamma;
    (z + gamma / c).norm() < 1.0 / c
}

/// `(1 − |a₀|²) / (1 + γ)`.
pub fn lemma_a_bound(gamma: f64, a0_modulus: f64) -> Result<f64, CoeffError> {
    check_gamma(gamma)?;
    if !(0.0..1.0).contains(&a0_modulus) {
        return Err(CoeffError::Parameter { name: "|a0|", value: a0_modulus, range: "[0, 1)" });
    }
    Ok((1.0 - a0_modulus * a0_modulus) / (1.0 + gamma))
}
