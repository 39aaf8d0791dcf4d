//! Weight functions `λ(r)` written as small arithmetic expressions.
//!
//! Grammar (whitespace is ignored):
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor (('*' | '/') factor)*
//! factor := base ('^' integer)?
//! base   := number | 'r' | func '(' expr ')' | '(' expr ')'
//! func   := 'exp' | 'sin' | 'ln'
//! ```
//!
//! Numbers are plain decimal literals (`2`, `0.5`, `.25`); exponents are
//! non-negative integer literals.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::verify::{Sense, VerificationReport, Witness};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Func {
    Exp,
    Sin,
    Ln,
}

impl Func {
    fn from_name(name: &str) -> Option<Func> {
        match name {
            "exp" => Some(Func::Exp),
            "sin" => Some(Func::Sin),
            "ln" => Some(Func::Ln),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Func::Exp => "exp",
            Func::Sin => "sin",
            Func::Ln => "ln",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl BinOp {
    fn symbol(self) -> char {
        match self {
            BinOp::Add => '+',
            BinOp::Sub => '-',
            BinOp::Mul => '*',
            BinOp::Div => '/',
        }
    }

    fn precedence(self) -> u8 {
        match self {
            BinOp::Add | BinOp::Sub => 1,
            BinOp::Mul | BinOp::Div => 2,
        }
    }
}

/// Expression tree over the single variable `r`.
#[derive(Debug, Clone, PartialEq)]
pub enum LambdaExpr {
    Num(f64),
    Var,
    Call(Func, Box<LambdaExpr>),
    Binary(BinOp, Box<LambdaExpr>, Box<LambdaExpr>),
    Pow(Box<LambdaExpr>, u32),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    Empty,
    UnexpectedChar(char),
    UnknownIdentifier(String),
    UnexpectedToken(String),
    UnexpectedEnd,
    UnbalancedParen,
    BadNumber(String),
    NonIntegerExponent(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{kind} at position {pos}")]
pub struct ParseError {
    /// Byte offset into the source text.
    pub pos: usize,
    pub kind: ParseErrorKind,
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseErrorKind::Empty => write!(f, "empty expression"),
            ParseErrorKind::UnexpectedChar(c) => write!(f, "unexpected character '{c}'"),
            ParseErrorKind::UnknownIdentifier(name) => {
                write!(f, "unknown identifier \"{name}\" (expected r, exp, sin or ln)")
            }
            ParseErrorKind::UnexpectedToken(t) => write!(f, "unexpected {t}"),
            ParseErrorKind::UnexpectedEnd => write!(f, "unexpected end of input"),
            ParseErrorKind::UnbalancedParen => write!(f, "unbalanced parenthesis"),
            ParseErrorKind::BadNumber(s) => write!(f, "invalid number \"{s}\""),
            ParseErrorKind::NonIntegerExponent(s) => {
                write!(f, "exponent must be a non-negative integer, got \"{s}\"")
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum EvalErrorKind {
    #[error("division by zero")]
    DivisionByZero,
    #[error("logarithm of non-positive argument {0}")]
    LogDomain(f64),
    #[error("non-finite result")]
    NonFinite,
}

#[derive(Debug, Clone, Copy, PartialEq, Error)]
#[error("cannot evaluate lambda at r = {r}: {kind}")]
pub struct EvalError {
    pub r: f64,
    pub kind: EvalErrorKind,
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(String),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Num(s) => format!("number {s}"),
            Tok::Ident(s) => format!("identifier {s}"),
            Tok::Plus => "'+'".into(),
            Tok::Minus => "'-'".into(),
            Tok::Star => "'*'".into(),
            Tok::Slash => "'/'".into(),
            Tok::Caret => "'^'".into(),
            Tok::LParen => "'('".into(),
            Tok::RParen => "')'".into(),
        }
    }
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = src[i..].chars().next().unwrap();
        let start = i;
        if c.is_whitespace() {
            i += c.len_utf8();
            continue;
        }
        let tok = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '0'..='9' | '.' => {
                while i < bytes.len() && (bytes[i].is_ascii_digit() || bytes[i] == b'.') {
                    i += 1;
                }
                out.push((start, Tok::Num(src[start..i].to_string())));
                continue;
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((start, Tok::Ident(src[start..i].to_string())));
                continue;
            }
            other => {
                return Err(ParseError { pos: start, kind: ParseErrorKind::UnexpectedChar(other) })
            }
        };
        i += c.len_utf8();
        out.push((start, tok));
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    idx: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.idx).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.idx).map_or(self.end, |(p, _)| *p)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.idx).map(|(_, t)| t.clone());
        self.idx += 1;
        t
    }

    fn err<T>(&self, kind: ParseErrorKind) -> Result<T, ParseError> {
        Err(ParseError { pos: self.pos(), kind })
    }

    fn expr(&mut self) -> Result<LambdaExpr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            let op = match self.peek() {
                Some(Tok::Plus) => BinOp::Add,
                Some(Tok::Minus) => BinOp::Sub,
                _ => return Ok(lhs),
            };
            self.bump();
            let rhs = self.term()?;
            lhs = LambdaExpr::Binary(op, Box::new(lhs), Box::new(rhs));
        }
    }

    fn term(&mut self) -> Result<LambdaExpr, ParseError> {
        let mut lhs = self.factor()?;
        loop {
            let op = match self.peek() {
                Some(Tok::Star) => BinOp::Mul,
                Some(Tok::Slash) => BinOp::Div,
                _ => return Ok(lhs),
            };
            self.bump();
            let rhs = self.factor()?;
            lhs = LambdaExpr::Binary(op, Box::new(lhs), Box::new(rhs));
        }
    }

    fn factor(&mut self) -> Result<LambdaExpr, ParseError> {
        let base = self.base()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        self.bump();
        let pos = self.pos();
        match self.bump() {
            Some(Tok::Num(s)) => match s.parse::<u32>() {
                Ok(n) if s.bytes().all(|b| b.is_ascii_digit()) => {
                    Ok(LambdaExpr::Pow(Box::new(base), n))
                }
                _ => Err(ParseError { pos, kind: ParseErrorKind::NonIntegerExponent(s) }),
            },
            Some(t) => Err(ParseError { pos, kind: ParseErrorKind::NonIntegerExponent(t.describe()) }),
            None => Err(ParseError { pos, kind: ParseErrorKind::UnexpectedEnd }),
        }
    }

    fn base(&mut self) -> Result<LambdaExpr, ParseError> {
        let pos = self.pos();
        match self.bump() {
            Some(Tok::Num(s)) => match s.parse::<f64>() {
                Ok(v) if v.is_finite() => Ok(LambdaExpr::Num(v)),
                _ => Err(ParseError { pos, kind: ParseErrorKind::BadNumber(s) }),
            },
            Some(Tok::Ident(name)) if name == "r" => Ok(LambdaExpr::Var),
            Some(Tok::Ident(name)) => {
                let Some(func) = Func::from_name(&name) else {
                    return Err(ParseError { pos, kind: ParseErrorKind::UnknownIdentifier(name) });
                };
                if self.peek() != Some(&Tok::LParen) {
                    return match self.peek() {
                        Some(t) => self.err(ParseErrorKind::UnexpectedToken(t.describe())),
                        None => self.err(ParseErrorKind::UnexpectedEnd),
                    };
                }
                let inner = self.group()?;
                Ok(LambdaExpr::Call(func, Box::new(inner)))
            }
            Some(Tok::LParen) => {
                self.idx -= 1;
                self.group()
            }
            Some(Tok::RParen) => Err(ParseError { pos, kind: ParseErrorKind::UnbalancedParen }),
            Some(t) => Err(ParseError { pos, kind: ParseErrorKind::UnexpectedToken(t.describe()) }),
            None => Err(ParseError { pos, kind: ParseErrorKind::UnexpectedEnd }),
        }
    }

    /// `'(' expr ')'`, with the cursor on the opening parenthesis.
    fn group(&mut self) -> Result<LambdaExpr, ParseError> {
        let open = self.pos();
        self.bump();
        let inner = self.expr()?;
        match self.peek() {
            Some(Tok::RParen) => {
                self.bump();
                Ok(inner)
            }
            None => Err(ParseError { pos: open, kind: ParseErrorKind::UnbalancedParen }),
            Some(t) => self.err(ParseErrorKind::UnexpectedToken(t.describe())),
        }
    }
}

/// Parse a weight function from its text form.
pub fn parse_lambda(source: &str) -> Result<LambdaExpr, ParseError> {
    let toks = lex(source)?;
    if toks.is_empty() {
        return Err(ParseError { pos: 0, kind: ParseErrorKind::Empty });
    }
    let mut p = Parser { toks, idx: 0, end: source.len() };
    let expr = p.expr()?;
    match p.peek() {
        None => Ok(expr),
        Some(Tok::RParen) => p.err(ParseErrorKind::UnbalancedParen),
        Some(t) => p.err(ParseErrorKind::UnexpectedToken(t.describe())),
    }
}

impl FromStr for LambdaExpr {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_lambda(s)
    }
}

impl LambdaExpr {
    /// Value of the expression at `r`.
    pub fn eval(&self, r: f64) -> Result<f64, EvalError> {
        let fail = |kind| EvalError { r, kind };
        let v = match self {
            LambdaExpr::Num(v) => *v,
            LambdaExpr::Var => r,
            LambdaExpr::Call(func, arg) => {
                let x = arg.eval(r)?;
                match func {
                    Func::Exp => x.exp(),
                    Func::Sin => x.sin(),
                    Func::Ln if x > 0.0 => x.ln(),
                    Func::Ln => return Err(fail(EvalErrorKind::LogDomain(x))),
                }
            }
            LambdaExpr::Binary(op, lhs, rhs) => {
                let (a, b) = (lhs.eval(r)?, rhs.eval(r)?);
                match op {
                    BinOp::Add => a + b,
                    BinOp::Sub => a - b,
                    BinOp::Mul => a * b,
                    BinOp::Div if b == 0.0 => return Err(fail(EvalErrorKind::DivisionByZero)),
                    BinOp::Div => a / b,
                }
            }
            LambdaExpr::Pow(base, n) => {
                let b = base.eval(r)?;
                b.powi((*n).min(i32::MAX as u32) as i32)
            }
        };
        if v.is_finite() {
            Ok(v)
        } else {
            Err(fail(EvalErrorKind::NonFinite))
        }
    }

    /// True when the expression is the literal `0`.
    pub fn is_zero_literal(&self) -> bool {
        matches!(self, LambdaExpr::Num(v) if *v == 0.0)
    }

    fn fmt_prec(&self, f: &mut fmt::Formatter<'_>, parent: u8, right: bool) -> fmt::Result {
        match self {
            LambdaExpr::Num(v) => write!(f, "{v}"),
            LambdaExpr::Var => write!(f, "r"),
            LambdaExpr::Call(func, arg) => {
                write!(f, "{}(", func.name())?;
                arg.fmt_prec(f, 0, false)?;
                write!(f, ")")
            }
            LambdaExpr::Pow(base, n) => {
                match **base {
                    LambdaExpr::Binary(..) | LambdaExpr::Pow(..) => {
                        write!(f, "(")?;
                        base.fmt_prec(f, 0, false)?;
                        write!(f, ")")?;
                    }
                    _ => base.fmt_prec(f, 3, false)?,
                }
                write!(f, "^{n}")
            }
            LambdaExpr::Binary(op, lhs, rhs) => {
                let prec = op.precedence();
                // left-associative: a right operand of equal precedence needs parentheses
                let paren = prec < parent || (right && prec == parent);
                if paren {
                    write!(f, "(")?;
                }
                lhs.fmt_prec(f, prec, false)?;
                write!(f, " {} ", op.symbol())?;
                rhs.fmt_prec(f, prec, true)?;
                if paren {
                    write!(f, ")")?;
                }
                Ok(())
            }
        }
    }
}

impl fmt::Display for LambdaExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_prec(f, 0, false)
    }
}

/// Evaluate `λ` at `r`.
pub fn eval_lambda(expr: &LambdaExpr, r: f64) -> Result<f64, EvalError> {
    expr.eval(r)
}

/// Check `λ ≥ 0` on the grid `r_i = i / grid_size`, `i = 0 … grid_size − 1`.
///
/// The report carries the minimum value seen; the witness is the first grid
/// point where that minimum occurs.
pub fn check_nonnegative(
    expr: &LambdaExpr,
    grid_size: usize,
) -> Result<VerificationReport, EvalError> {
    assert!(grid_size >= 2, "grid_size must be at least 2");
    let mut min = f64::INFINITY;
    let mut argmin = 0.0;
    for i in 0..grid_size {
        let r = i as f64 / grid_size as f64;
        let v = expr.eval(r)?;
        if v < min {
            min = v;
            argmin = r;
        }
    }
    let witness = Witness { r: Some(argmin), lambda: Some(expr.to_string()), ..Witness::default() };
    Ok(VerificationReport::new("lambda-nonnegative", Sense::AtLeast, min, 0.0, 0.0)
        .with_witness(witness))
}
