//! Record types and their JSON-lines, CSV and text renderings.
//!
//! Every float is rounded to 9 significant digits before it is stored, so
//! all three formats are byte-for-byte reproducible.

use serde::Serialize;
use serde_json::{Map, Value};

use crate::args::Format;
use crate::error::CliError;

pub fn round9(x: f64) -> f64 {
    if !x.is_finite() {
        return x;
    }
    format!("{x:.8e}").parse().unwrap_or(x)
}

/// Radius and verification result.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct Record {
    pub problem: String,
    pub gamma: Option<f64>,
    pub lambda: Option<String>,
    pub radius: Option<f64>,
    pub residual: Option<f64>,
    pub iterations: Option<usize>,
    pub pass: Option<bool>,
    pub margin: Option<f64>,
    pub witness_a: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TableRecord {
    pub lambda_source: String,
    pub computed_radius: Option<f64>,
    pub paper_value: f64,
    pub abs_diff: Option<f64>,
    /// `ambiguous-label` for rows whose label is known to be misprinted,
    /// `unsolved` when the row failed, `mismatch` when it disagrees with the
    /// published value by more than the table tolerance; empty otherwise.
    pub flag: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EvalRecord {
    pub problem: String,
    pub r: f64,
    pub value: f64,
    pub tail_bound: f64,
    pub terms_used: usize,
}

fn objects<T: Serialize>(records: &[T]) -> Result<Vec<Map<String, Value>>, CliError> {
    records
        .iter()
        .map(|r| match serde_json::to_value(r) {
            Ok(Value::Object(m)) => Ok(m),
            Ok(other) => Err(CliError::usage(format!("record is not an object: {other}"))),
            Err(e) => Err(CliError::usage(format!("cannot serialize record: {e}"))),
        })
        .collect()
}

fn cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        Value::Number(n) if n.is_f64() => {
            let x = n.as_f64().unwrap_or(f64::NAN);
            let a = x.abs();
            if x == 0.0 || (1e-4..1e9).contains(&a) {
                format!("{x}")
            } else {
                format!("{x:e}")
            }
        }
        other => other.to_string(),
    }
}

pub fn render<T: Serialize>(records: &[T], format: Format) -> Result<String, CliError> {
    let rows = objects(records)?;
    let header: Vec<String> = rows.first().map(|m| m.keys().cloned().collect()).unwrap_or_default();
    let body: Vec<Vec<String>> = rows.iter().map(|m| m.values().map(cell).collect()).collect();
    match format {
        Format::Json => {
            let mut out = String::new();
            for m in rows {
                out.push_str(&Value::Object(m).to_string());
                out.push('\n');
            }
            Ok(out)
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            let io = |e: csv::Error| CliError::usage(format!("cannot write csv: {e}"));
            w.write_record(&header).map_err(io)?;
            for row in &body {
                w.write_record(row).map_err(io)?;
            }
            let bytes = w.into_inner().map_err(|e| CliError::usage(e.to_string()))?;
            String::from_utf8(bytes).map_err(|e| CliError::usage(e.to_string()))
        }
        Format::Text => Ok(text_table(&header, &body)),
    }
}

fn text_table(header: &[String], body: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for row in body {
        for (w, c) in widths.iter_mut().zip(row) {
            *w = (*w).max(c.chars().count().max(1));
        }
    }
    let line = |cells: &[String]| {
        let padded: Vec<String> = cells
            .iter()
            .zip(&widths)
            .map(|(c, &w)| {
                let c = if c.is_empty() { "-" } else { c.as_str() };
                format!("{c:<w$}")
            })
            .collect();
        padded.join("  ").trim_end().to_string() + "\n"
    };
    let mut out = line(header);
    for row in body {
        out.push_str(&line(row));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rounding_keeps_nine_digits() {
        assert_eq!(round9(1.0 / 3.0), 0.333333333);
        assert_eq!(round9(0.3904997), 0.3904997);
        assert_eq!(round9(123456789.987), 123456790.0);
        assert!(round9(f64::NAN).is_nan());
    }

    #[test]
    fn field_order_is_declaration_order() {
        let rec = Record { problem: "p".into(), radius: Some(0.5), ..Record::default() };
        let json = render(std::slice::from_ref(&rec), Format::Json).unwrap();
        assert_eq!(
            json,
            "{\"problem\":\"p\",\"gamma\":null,\"lambda\":null,\"radius\":0.5,\"residual\":null,\
             \"iterations\":null,\"pass\":null,\"margin\":null,\"witness_a\":null}\n"
        );
        let csv = render(&[rec], Format::Csv).unwrap();
        assert_eq!(
            csv,
            "problem,gamma,lambda,radius,residual,iterations,pass,margin,witness_a\np,,,0.5,,,,,\n"
        );
    }

    #[test]
    fn small_numbers_use_exponent_form() {
        assert_eq!(cell(&serde_json::json!(1.5e-12)), "1.5e-12");
        assert_eq!(cell(&serde_json::json!(0.0)), "0");
        assert_eq!(cell(&serde_json::json!(0.390504)), "0.390504");
        assert_eq!(cell(&serde_json::json!(7)), "7");
    }

    #[test]
    fn text_is_aligned() {
        let rows = vec![
            TableRecord {
                lambda_source: "r".into(),
                computed_radius: Some(0.39),
                paper_value: 0.39,
                abs_diff: Some(0.0),
                flag: String::new(),
            },
            TableRecord {
                lambda_source: "r/(1-r)^2".into(),
                computed_radius: None,
                paper_value: 0.36,
                abs_diff: None,
                flag: "unsolved".into(),
            },
        ];
        let text = render(&rows, Format::Text).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 3);
        assert!(lines[0].starts_with("lambda_source  computed_radius"));
        assert!(lines[2].starts_with("r/(1-r)^2      -"));
    }
}
