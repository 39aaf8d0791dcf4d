use std::fmt;

use bohr_core::coefficients::CoeffError;
use bohr_core::lambda::{EvalError, ParseError};
use bohr_core::solver::SolveError;
use bohr_core::specfun::SpecfunError;
use bohr_core::sums::SumError;
use bohr_core::verify::VerifyError;

pub const EXIT_USAGE: u8 = 1;
pub const EXIT_LAMBDA: u8 = 2;
pub const EXIT_NUMERIC: u8 = 3;
pub const EXIT_VERIFY: u8 = 4;

#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> Self {
        CliError { code: EXIT_USAGE, message: message.into() }
    }

    fn numeric(message: impl fmt::Display) -> Self {
        CliError { code: EXIT_NUMERIC, message: message.to_string() }
    }

    /// Parse failure, with the source echoed and a caret under the offending
    /// position.
    pub fn lambda_parse(source: &str, e: &ParseError) -> Self {
        let col = source.get(..e.pos).map_or(e.pos, |s| s.chars().count());
        CliError {
            code: EXIT_LAMBDA,
            message: format!("invalid lambda: {e}\n  {source}\n  {}^", " ".repeat(col)),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl From<EvalError> for CliError {
    fn from(e: EvalError) -> Self {
        CliError { code: EXIT_LAMBDA, message: e.to_string() }
    }
}

impl From<SpecfunError> for CliError {
    fn from(e: SpecfunError) -> Self {
        match e {
            SpecfunError::NonConvergence { .. } => CliError::numeric(e),
            _ => CliError::usage(e.to_string()),
        }
    }
}

impl From<SumError> for CliError {
    fn from(e: SumError) -> Self {
        match e {
            SumError::NonConvergence { .. } => CliError::numeric(e),
            SumError::Lambda(e) => e.into(),
            SumError::Specfun(e) => e.into(),
            _ => CliError::usage(e.to_string()),
        }
    }
}

impl From<SolveError> for CliError {
    fn from(e: SolveError) -> Self {
        match e {
            SolveError::Parameter { .. } => CliError::usage(e.to_string()),
            SolveError::Lambda(e) => e.into(),
            SolveError::Series(e) => e.into(),
            _ => CliError::numeric(e),
        }
    }
}

impl From<CoeffError> for CliError {
    fn from(e: CoeffError) -> Self {
        CliError::usage(e.to_string())
    }
}

impl From<VerifyError> for CliError {
    fn from(e: VerifyError) -> Self {
        match e {
            VerifyError::Precondition(_) => CliError::usage(e.to_string()),
            VerifyError::Series(e) => e.into(),
            VerifyError::Coefficients(e) => e.into(),
            VerifyError::Solver(e) => e.into(),
        }
    }
}
