//! A small expression language for classes, bundles and integrals.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := atom ('^' nat)?
//! atom   := ident | rational | '(' expr ')' | func '(' expr (',' expr)* ')'
//! ```
//!
//! A leading `-` in an expression reads as `0 - term`. Rationals are written
//! `p` or `p/q`; there is no division operator.

mod eval;
mod parser;

use std::fmt;

pub use eval::{evaluate, evaluate_str, Value};
pub use parser::parse;

use crate::ring::Scalar;

/// Functions recognised by the parser.
pub const FUNCTIONS: [&str; 21] = [
    "pull_p",
    "push_p",
    "pull_f1",
    "pull_f2",
    "pull_delta",
    "pull_iota",
    "push_iota",
    "push_beta",
    "pull_beta",
    "integrate",
    "todd",
    "ch",
    "chern",
    "sym",
    "wedge",
    "dual",
    "twist",
    "grade",
    "coeff_n",
    "line",
    "rank",
];

/// Source location: byte range plus 1-based line and column of the start.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Span {
    pub start: usize,
    pub end: usize,
    pub line: usize,
    pub column: usize,
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum ExprKind {
    Ident(String),
    /// Non-negative rational literal.
    Rational(Scalar),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
    Call(String, Vec<Expr>),
}

/// A syntax tree node. Equality ignores spans.
#[derive(Clone, Debug)]
pub struct Expr {
    pub kind: ExprKind,
    pub span: Span,
}

impl PartialEq for Expr {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
    }
}

impl Expr {
    pub fn new(kind: ExprKind) -> Self {
        Expr {
            kind,
            span: Span::default(),
        }
    }

    pub fn ident(name: &str) -> Self {
        Self::new(ExprKind::Ident(name.to_string()))
    }

    pub fn rational(value: Scalar) -> Self {
        Self::new(ExprKind::Rational(value))
    }

    pub fn add(a: Expr, b: Expr) -> Self {
        Self::new(ExprKind::Add(Box::new(a), Box::new(b)))
    }

    pub fn sub(a: Expr, b: Expr) -> Self {
        Self::new(ExprKind::Sub(Box::new(a), Box::new(b)))
    }

    pub fn mul(a: Expr, b: Expr) -> Self {
        Self::new(ExprKind::Mul(Box::new(a), Box::new(b)))
    }

    pub fn pow(a: Expr, e: u32) -> Self {
        Self::new(ExprKind::Pow(Box::new(a), e))
    }

    pub fn call(name: &str, args: Vec<Expr>) -> Self {
        Self::new(ExprKind::Call(name.to_string(), args))
    }

    fn precedence(&self) -> u8 {
        match self.kind {
            ExprKind::Add(..) | ExprKind::Sub(..) => 1,
            ExprKind::Mul(..) => 2,
            ExprKind::Pow(..) => 3,
            _ => 4,
        }
    }

    fn write_at(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        if self.precedence() < min {
            f.write_str("(")?;
            self.write_at(f, 0)?;
            return f.write_str(")");
        }
        match &self.kind {
            ExprKind::Ident(name) => f.write_str(name),
            ExprKind::Rational(q) => write!(f, "{q}"),
            ExprKind::Add(a, b) | ExprKind::Sub(a, b) => {
                let op = if matches!(self.kind, ExprKind::Add(..)) { "+" } else { "-" };
                a.write_at(f, 1)?;
                write!(f, " {op} ")?;
                b.write_at(f, 2)
            }
            ExprKind::Mul(a, b) => {
                a.write_at(f, 2)?;
                f.write_str("*")?;
                b.write_at(f, 3)
            }
            ExprKind::Pow(a, e) => {
                a.write_at(f, 4)?;
                write!(f, "^{e}")
            }
            ExprKind::Call(name, args) => {
                write!(f, "{name}(")?;
                for (i, arg) in args.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    arg.write_at(f, 0)?;
                }
                f.write_str(")")
            }
        }
    }
}

/// Canonical printing with the fewest parentheses that reparse to the same tree.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_at(f, 0)
    }
}
