use bohr_core::coefficients::{f0_sequence, CoefficientSequence};
use bohr_core::lambda::{parse_lambda, LambdaExpr};
use bohr_core::solver::{
    classical_radius, laplace_radius, refined_radius_lk, refined_radius_s, RootResult,
};
use bohr_core::specfun::dilog;
use bohr_core::sums::{
    fourier_majorant, laplace_majorant, majorant_sum, refined_sum, SeriesEvaluation, SquareStart,
    Truncation,
};
use bohr_core::tables::{reproduce_table, TableId};
use bohr_core::verify::{
    lemma_a_check, sharpness_sweep_fourier, sharpness_sweep_laplace, verify_fourier_inequality,
    verify_laplace_inequality, verify_refined_inequality, FamilyClass, VerificationReport,
    DEFAULT_A_GRID,
};

use crate::args::{
    ClassArg, Cli, Command, EvalCmd, FamilyArg, RadiusCmd, RefinedArgs, SeriesArg, TableName,
    VerifyCmd,
};
use crate::error::{CliError, EXIT_NUMERIC, EXIT_VERIFY};
use crate::output::{render, round9, EvalRecord, Record, TableRecord};

/// Rendered output plus the exit code to report after writing it.
pub struct Outcome {
    pub text: String,
    pub code: u8,
}

pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Radius(cmd) => radius(cmd, cli),
        Command::Table(args) => table(args.table, args.tol.tol, cli),
        Command::Verify(cmd) => verify(cmd, cli),
        Command::Eval(cmd) => eval(cmd, cli),
    }
}

fn lambda(source: &str) -> Result<LambdaExpr, CliError> {
    parse_lambda(source).map_err(|e| CliError::lambda_parse(source, &e))
}

fn warn_if_not_unique(root: &RootResult) {
    if !root.is_unique() {
        eprintln!(
            "warning: defining function changes sign {} times on the search interval",
            root.sign_changes.map_or_else(|| "an unknown number of".into(), |n| n.to_string())
        );
    }
}

fn root_record(problem: &str, gamma: Option<f64>, lam: Option<&str>, root: &RootResult) -> Record {
    warn_if_not_unique(root);
    Record {
        problem: problem.into(),
        gamma,
        lambda: lam.map(str::to_string),
        radius: Some(round9(root.root)),
        residual: Some(round9(root.residual)),
        iterations: Some(root.iterations),
        ..Record::default()
    }
}

fn radius(cmd: &RadiusCmd, cli: &Cli) -> Result<Outcome, CliError> {
    let rec = match cmd {
        RadiusCmd::Classical(g) => Record {
            problem: "radius-classical".into(),
            gamma: Some(g.gamma),
            radius: Some(round9(classical_radius(g.gamma)?)),
            residual: Some(0.0),
            iterations: Some(0),
            ..Record::default()
        },
        RadiusCmd::RefinedLk(RefinedArgs { lambda: src, tol }) => {
            let root = refined_radius_lk(&lambda(src)?, tol.tol)?;
            root_record("radius-refined-lk", None, Some(src), &root)
        }
        RadiusCmd::RefinedS(RefinedArgs { lambda: src, tol }) => {
            let root = refined_radius_s(&lambda(src)?, tol.tol)?;
            root_record("radius-refined-s", None, Some(src), &root)
        }
        RadiusCmd::Laplace { gamma, tol } => {
            let root = laplace_radius(gamma.gamma, tol.tol)?;
            root_record("radius-laplace", Some(gamma.gamma), None, &root)
        }
    };
    Ok(Outcome { text: render(&[rec], cli.format)?, code: 0 })
}

fn table(name: TableName, tol: f64, cli: &Cli) -> Result<Outcome, CliError> {
    let id = match name {
        TableName::T1 => TableId::T1,
        TableName::T2 => TableId::T2,
    };
    let mut code = 0;
    let records: Vec<TableRecord> = reproduce_table(id, tol)
        .into_iter()
        .map(|row| {
            let flag = if let Some(e) = &row.error {
                eprintln!("error: row {}: {e}", row.lambda_source);
                code = EXIT_NUMERIC;
                "unsolved"
            } else if row.flagged {
                "ambiguous-label"
            } else if !row.matched {
                "mismatch"
            } else {
                ""
            };
            TableRecord {
                lambda_source: row.lambda_source,
                computed_radius: row.computed_radius.map(round9),
                paper_value: row.paper_value,
                abs_diff: row.abs_diff.map(round9),
                flag: flag.into(),
            }
        })
        .collect();
    Ok(Outcome { text: render(&records, cli.format)?, code })
}

/// Default a-grid for the Fourier sweep: fine enough that the first
/// witness lies close to the threshold `a = (1/r − 1)/2`.
fn fine_a_grid() -> Vec<f64> {
    (1..100).map(|i| i as f64 / 100.0).chain([0.999, 0.9999]).collect()
}

fn report_record(problem: &str, gamma: Option<f64>, lam: Option<&str>, rep: &VerificationReport) -> Record {
    if !rep.pass {
        eprintln!(
            "verification failed: {} (value {}, bound {}, margin {:e})",
            rep.claim, rep.value, rep.bound, rep.margin
        );
    }
    Record {
        problem: problem.into(),
        gamma,
        lambda: lam.map(str::to_string),
        pass: Some(rep.pass),
        margin: Some(round9(rep.margin)),
        witness_a: rep.witness.as_ref().and_then(|w| w.a).map(round9),
        ..Record::default()
    }
}

fn verify(cmd: &VerifyCmd, cli: &Cli) -> Result<Outcome, CliError> {
    let rec = match cmd {
        VerifyCmd::Fourier(p) => {
            let seq = f0_sequence(p.a, p.gamma.gamma)?;
            let rep = verify_fourier_inequality(p.gamma.gamma, &seq, p.r)?;
            report_record("verify-fourier", Some(p.gamma.gamma), None, &rep)
        }
        VerifyCmd::Laplace(p) => {
            let seq = f0_sequence(p.a, p.gamma.gamma)?;
            let rep = verify_laplace_inequality(p.gamma.gamma, &seq, p.r)?;
            report_record("verify-laplace", Some(p.gamma.gamma), None, &rep)
        }
        VerifyCmd::Refined { class, lambda: src, r } => {
            let class = match class {
                ClassArg::Lk => FamilyClass::Lk,
                ClassArg::S => FamilyClass::S,
            };
            let rep = verify_refined_inequality(class, &lambda(src)?, *r)?;
            report_record(&format!("verify-refined-{}", class.name()), None, Some(src), &rep)
        }
        VerifyCmd::LemmaA { gamma, a, n_max } => {
            let rep = lemma_a_check(gamma.gamma, *a, *n_max)?;
            report_record("verify-lemma-a", Some(gamma.gamma), None, &rep)
        }
        VerifyCmd::SharpnessFourier(s) => {
            let grid = s.a_grid.clone().unwrap_or_else(fine_a_grid);
            let rep = sharpness_sweep_fourier(s.gamma.gamma, s.r, &grid)?;
            report_record("verify-sharpness-fourier", Some(s.gamma.gamma), None, &rep)
        }
        VerifyCmd::SharpnessLaplace { sweep: s, eps } => {
            let grid = s.a_grid.clone().unwrap_or_else(|| DEFAULT_A_GRID.to_vec());
            let rep = sharpness_sweep_laplace(s.gamma.gamma, s.r, &grid, *eps)?;
            report_record("verify-sharpness-laplace", Some(s.gamma.gamma), None, &rep)
        }
    };
    let code = if rec.pass == Some(true) { 0 } else { EXIT_VERIFY };
    Ok(Outcome { text: render(&[rec], cli.format)?, code })
}

fn sequence(
    family: Option<FamilyArg>,
    coeffs: &Option<Vec<f64>>,
    a: Option<f64>,
    gamma: f64,
) -> Result<CoefficientSequence, CliError> {
    let family = match (family, coeffs) {
        (Some(f), _) => f,
        (None, Some(_)) => FamilyArg::List,
        (None, None) => return Err(CliError::usage("eval sum needs --family or --coeffs")),
    };
    match family {
        FamilyArg::Koebe => Ok(CoefficientSequence::koebe()),
        FamilyArg::Lk => Ok(CoefficientSequence::lk_extremal()),
        FamilyArg::F0 => {
            let a = a.ok_or_else(|| CliError::usage("--family f0 needs --a"))?;
            Ok(f0_sequence(a, gamma)?)
        }
        FamilyArg::List => {
            let values = coeffs.clone().ok_or_else(|| CliError::usage("--family list needs --coeffs"))?;
            Ok(CoefficientSequence::finite_list(values)?)
        }
    }
}

fn eval(cmd: &EvalCmd, cli: &Cli) -> Result<Outcome, CliError> {
    let rec = match cmd {
        EvalCmd::Dilog { r, tol } => {
            let d = dilog(*r, tol.tol)?;
            eval_record("eval-dilog", *r, d.value, d.tail_bound, d.terms_used)
        }
        EvalCmd::Sum {
            series,
            family,
            coeffs,
            a,
            gamma,
            r,
            lambda: src,
            square_start,
            tol,
            max_terms,
        } => {
            let seq = sequence(*family, coeffs, *a, gamma.gamma)?;
            let trunc = Truncation::new(tol.tol).with_max_terms(*max_terms);
            let v: SeriesEvaluation = match series {
                SeriesArg::Majorant => majorant_sum(&seq, *r, trunc)?,
                SeriesArg::Fourier => fourier_majorant(&seq, *r, trunc)?,
                SeriesArg::Laplace => laplace_majorant(&seq, *r, trunc)?,
                SeriesArg::Refined => {
                    let src = src.as_deref().ok_or_else(|| CliError::usage("--series refined needs --lambda"))?;
                    let start = SquareStart::try_from(*square_start)?;
                    refined_sum(&seq, *r, &lambda(src)?, start, trunc)?
                }
            };
            eval_record("eval-sum", *r, v.value, v.tail_bound, v.terms_used)
        }
    };
    Ok(Outcome { text: render(&[rec], cli.format)?, code: 0 })
}

fn eval_record(problem: &str, r: f64, value: f64, tail: f64, terms: usize) -> EvalRecord {
    EvalRecord {
        problem: problem.into(),
        r,
        value: round9(value),
        tail_bound: round9(tail),
        terms_used: terms,
    }
}
