use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::{Expr, ExprError};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Sym(char),
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>, ExprError> {
    let mut out = Vec::new();
    let chars: Vec<(usize, char)> = src.char_indices().collect();
    let mut i = 0;
    while i < chars.len() {
        let (pos, c) = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].1.is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().map(|p| p.1).collect();
            out.push((pos, Tok::Num(s.parse().expect("digits"))));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].1.is_ascii_alphanumeric() || chars[i].1 == '_') {
                i += 1;
            }
            out.push((
                pos,
                Tok::Ident(chars[start..i].iter().map(|p| p.1).collect()),
            ));
        } else if "+-*^(),/".contains(c) {
            out.push((pos, Tok::Sym(c)));
            i += 1;
        } else {
            return Err(ExprError::Syntax {
                pos,
                msg: format!("unexpected character `{c}`"),
            });
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
}

/// Parses an expression. Identifiers are resolved later, at evaluation.
pub fn parse(src: &str) -> Result<Expr, ExprError> {
    let mut p = Parser {
        toks: lex(src)?,
        at: 0,
        end: src.len(),
    };
    let e = p.expr()?;
    if p.at < p.toks.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(e)
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|t| &t.1)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map(|t| t.0).unwrap_or(self.end)
    }

    fn error(&self, msg: &str) -> ExprError {
        ExprError::Syntax {
            pos: self.pos(),
            msg: msg.to_string(),
        }
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ExprError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(&format!("expected `{c}`")))
        }
    }

    fn integer(&mut self) -> Result<BigInt, ExprError> {
        match self.peek() {
            Some(Tok::Num(n)) => {
                let n = n.clone();
                self.at += 1;
                Ok(n)
            }
            _ => Err(self.error("expected an integer")),
        }
    }

    fn small(&mut self) -> Result<i64, ExprError> {
        let pos = self.pos();
        let n = self.integer()?;
        i64::try_from(&n).map_err(|_| ExprError::Syntax {
            pos,
            msg: "integer too large".into(),
        })
    }

    fn expr(&mut self) -> Result<Expr, ExprError> {
        let mut e = if self.eat('-') {
            Expr::Neg(Box::new(self.term()?))
        } else {
            self.term()?
        };
        loop {
            if self.eat('+') {
                e = e.add(self.term()?);
            } else if self.eat('-') {
                e = e.sub(self.term()?);
            } else {
                return Ok(e);
            }
        }
    }

    fn starts_factor(&self) -> bool {
        matches!(
            self.peek(),
            Some(Tok::Num(_)) | Some(Tok::Ident(_)) | Some(Tok::Sym('('))
        )
    }

    fn term(&mut self) -> Result<Expr, ExprError> {
        let mut e = self.factor()?;
        loop {
            // juxtaposition multiplies, as in "2q" or "l1 l2"
            if self.eat('*') || self.starts_factor() {
                e = e.mul(self.factor()?);
            } else {
                return Ok(e);
            }
        }
    }

    fn factor(&mut self) -> Result<Expr, ExprError> {
        let a = self.atom()?;
        if !self.eat('^') {
            return Ok(a);
        }
        let neg = self.eat('-');
        let k = self.small()?;
        if self.peek() == Some(&Tok::Sym('^')) {
            return Err(ExprError::ExponentOnNonAtom(self.pos()));
        }
        Ok(a.pow(if neg { -k } else { k }))
    }

    fn atom(&mut self) -> Result<Expr, ExprError> {
        let pos = self.pos();
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.at += 1;
                if self.eat('/') {
                    let dpos = self.pos();
                    let d = self.integer()?;
                    if d.is_zero() || d.is_negative() {
                        return Err(ExprError::Syntax {
                            pos: dpos,
                            msg: "denominator must be positive".into(),
                        });
                    }
                    Ok(Expr::Rational(BigRational::new(n, d)))
                } else {
                    Ok(Expr::Rational(BigRational::from_integer(n)))
                }
            }
            Some(Tok::Ident(name)) => {
                self.at += 1;
                if name == "q" {
                    return Ok(Expr::Q);
                }
                if name == "ad" && self.peek() == Some(&Tok::Sym('(')) {
                    self.at += 1;
                    let ipos = self.pos();
                    let i = self.small()?;
                    if i < 1 {
                        return Err(ExprError::Syntax {
                            pos: ipos,
                            msg: "generator index must be positive".into(),
                        });
                    }
                    self.expect(',')?;
                    let e = self.expr()?;
                    self.expect(')')?;
                    return Ok(Expr::ad(i as usize, e));
                }
                if let Some(k) = name.strip_prefix('l') {
                    if !k.is_empty() && k.bytes().all(|b| b.is_ascii_digit()) {
                        let k: usize = k.parse().map_err(|_| ExprError::Syntax {
                            pos,
                            msg: "parameter index too large".into(),
                        })?;
                        if k == 0 {
                            return Err(ExprError::Syntax {
                                pos,
                                msg: "parameters are numbered from 1".into(),
                            });
                        }
                        return Ok(Expr::Lambda(k));
                    }
                }
                Ok(Expr::Ident(name))
            }
            Some(Tok::Sym('(')) => {
                self.at += 1;
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Some(Tok::Sym(c)) => Err(self.error(&format!("unexpected `{c}`"))),
            None => Err(self.error("unexpected end of input")),
        }
    }
}
