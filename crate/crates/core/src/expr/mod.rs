//! Algebraic expressions over the generators: parsing, printing and
//! evaluation into a presented algebra.
//!
//! Grammar:
//!
//! ```text
//! expr     := term { ("+" | "-") term }
//! term     := factor { ["*"] factor }
//! factor   := atom [ "^" integer ]
//! atom     := ident | rational | "q" | "l" integer | "(" expr ")"
//!           | "ad" "(" integer "," expr ")"
//! rational := integer [ "/" positive-integer ]
//! ```
//!
//! Unary minus is accepted at the head of an expression and after "(".

mod eval;
mod parse;

pub use eval::{multidegree, Bindings, Scope};
pub use parse::parse;

use std::fmt;

use num_rational::BigRational;
use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Ident(String),
    Rational(BigRational),
    Q,
    Lambda(usize),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i64),
    Ad(usize, Box<Expr>),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExprError {
    #[error("syntax error at {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown identifier `{0}`")]
    UnknownIdentifier(String),
    #[error("exponent on non-atom at {0}")]
    ExponentOnNonAtom(usize),
    #[error("negative exponent on a non-invertible element")]
    NegativeExponent,
    #[error("ad of an inhomogeneous element")]
    Inhomogeneous,
    #[error("generator index {0} out of range")]
    BadIndex(usize),
    #[error("recursive binding `{0}`")]
    Recursive(String),
    #[error(transparent)]
    Rewrite(#[from] crate::ncpoly::RewriteError),
}

impl Expr {
    pub fn ident(name: &str) -> Self {
        Expr::Ident(name.to_string())
    }

    pub fn int(n: i64) -> Self {
        Expr::Rational(BigRational::from_integer(n.into()))
    }

    pub fn pow(self, e: i64) -> Self {
        Expr::Pow(Box::new(self), e)
    }

    pub fn ad(i: usize, e: Expr) -> Self {
        Expr::Ad(i, Box::new(e))
    }

    pub fn add(self, o: Expr) -> Self {
        Expr::Add(Box::new(self), Box::new(o))
    }

    pub fn sub(self, o: Expr) -> Self {
        Expr::Sub(Box::new(self), Box::new(o))
    }

    pub fn mul(self, o: Expr) -> Self {
        Expr::Mul(Box::new(self), Box::new(o))
    }

    /// Identifiers occurring in the expression, in order of first use.
    pub fn identifiers(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.collect_idents(&mut out);
        out
    }

    fn collect_idents(&self, out: &mut Vec<String>) {
        match self {
            Expr::Ident(n) => {
                if !out.contains(n) {
                    out.push(n.clone())
                }
            }
            Expr::Rational(_) | Expr::Q | Expr::Lambda(_) => {}
            Expr::Neg(a) | Expr::Pow(a, _) | Expr::Ad(_, a) => a.collect_idents(out),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) => {
                a.collect_idents(out);
                b.collect_idents(out);
            }
        }
    }

    /// Top-level summands with their signs.
    pub fn summands(&self) -> Vec<(bool, &Expr)> {
        let mut out = Vec::new();
        self.push_summands(false, &mut out);
        out
    }

    fn push_summands<'a>(&'a self, neg: bool, out: &mut Vec<(bool, &'a Expr)>) {
        match self {
            Expr::Add(a, b) => {
                a.push_summands(neg, out);
                b.push_summands(neg, out);
            }
            Expr::Sub(a, b) => {
                a.push_summands(neg, out);
                b.push_summands(!neg, out);
            }
            Expr::Neg(a) => a.push_summands(!neg, out),
            e => out.push((neg, e)),
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => 1,
            Expr::Neg(_) => 2,
            Expr::Mul(..) => 3,
            Expr::Pow(..) => 4,
            Expr::Rational(r) if r < &BigRational::from_integer(0.into()) => 2,
            Expr::Rational(r) if !r.is_integer() => 3,
            _ => 5,
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wrap = |f: &mut fmt::Formatter<'_>, e: &Expr, min: u8| -> fmt::Result {
            if e.precedence() < min {
                write!(f, "({e})")
            } else {
                write!(f, "{e}")
            }
        };
        match self {
            Expr::Ident(n) => write!(f, "{n}"),
            Expr::Rational(r) => write!(f, "{r}"),
            Expr::Q => write!(f, "q"),
            Expr::Lambda(k) => write!(f, "l{k}"),
            Expr::Neg(a) => {
                write!(f, "-")?;
                wrap(f, a, 3)
            }
            Expr::Add(a, b) => {
                write!(f, "{a} + ")?;
                wrap(f, b, 3)
            }
            Expr::Sub(a, b) => {
                write!(f, "{a} - ")?;
                wrap(f, b, 3)
            }
            Expr::Mul(a, b) => {
                wrap(f, a, 3)?;
                write!(f, "*")?;
                wrap(f, b, 4)
            }
            Expr::Pow(a, e) => {
                wrap(f, a, 5)?;
                write!(f, "^{e}")
            }
            Expr::Ad(i, a) => write!(f, "ad({i}, {a})"),
        }
    }
}
