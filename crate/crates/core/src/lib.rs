//! Bohr radii of bounded analytic function families.
//!
//! * [`specfun`]: the real dilogarithm and logarithm helpers.
//! * [`lambda`]: parser and evaluator for weight functions `λ(r)`.
//! * [`coefficients`]: coefficient moduli of the extremal families, the
//!   domain `Ω_γ` and the coefficient bound on it.
//! * [`sums`]: majorant, refined, Fourier and Laplace sums with certified
//!   truncation, plus their closed forms.
//! * [`solver`]: bisection and the radius equations.
//! * [`verify`]: inequality and sharpness checks.
//! * [`tables`]: the published refined-radius tables.

pub mod coefficients;
pub mod lambda;
pub mod solver;
pub mod specfun;
pub mod sums;
pub mod tables;
pub mod verify;

pub use coefficients::{f0_sequence, CoefficientSequence, FamilyTag};
pub use lambda::{parse_lambda, LambdaExpr, ParseError};
pub use solver::{
    classical_radius, laplace_radius, refined_radius_lk, refined_radius_s, RootResult, SolveError,
};
pub use specfun::{dilog, DilogResult};
pub use sums::{SeriesEvaluation, SquareStart, SumError, Truncation};
pub use verify::{FamilyClass, VerificationReport, VerifyError, Witness};
