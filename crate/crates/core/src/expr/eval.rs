use std::cell::RefCell;
use std::collections::HashMap;

use num_traits::One;

use crate::braided::Realization;
use crate::ncpoly::{Block, Word};
use crate::{Coeff, Cyc, Poly, System};

use super::{parse, Expr, ExprError};

/// Named subexpressions, in definition order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Bindings {
    entries: Vec<(String, Expr)>,
}

impl Bindings {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, name: &str, expr: Expr) {
        match self.entries.iter_mut().find(|(n, _)| n == name) {
            Some(slot) => slot.1 = expr,
            None => self.entries.push((name.to_string(), expr)),
        }
    }

    /// Parses `name = expr` lines.
    pub fn from_lets<S: AsRef<str>>(lets: &[S]) -> Result<Self, ExprError> {
        let mut b = Self::new();
        for l in lets {
            let l = l.as_ref();
            let (name, body) = l.split_once('=').ok_or_else(|| ExprError::Syntax {
                pos: 0,
                msg: format!("expected `name = expr` in `{l}`"),
            })?;
            let name = name.trim();
            if name.is_empty() || !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
                return Err(ExprError::Syntax {
                    pos: 0,
                    msg: format!("bad binding name `{name}`"),
                });
            }
            let offset = name.len() + 1;
            let expr = parse(body).map_err(|e| match e {
                ExprError::Syntax { pos, msg } => ExprError::Syntax {
                    pos: pos + offset,
                    msg,
                },
                e => e,
            })?;
            b.insert(name, expr);
        }
        Ok(b)
    }

    pub fn get(&self, name: &str) -> Option<&Expr> {
        self.entries.iter().find(|(n, _)| n == name).map(|(_, e)| e)
    }

    pub fn entries(&self) -> &[(String, Expr)] {
        &self.entries
    }

    /// `name = expr` lines, the inverse of [`Bindings::from_lets`].
    pub fn to_lets(&self) -> Vec<String> {
        self.entries
            .iter()
            .map(|(n, e)| format!("{n} = {e}"))
            .collect()
    }

    /// The binding whose name is `x<suffix>` or exactly `suffix`.
    fn by_suffix(&self, suffix: &str) -> Option<(&str, &Expr)> {
        self.entries
            .iter()
            .find(|(n, _)| n.strip_prefix('x').unwrap_or(n) == suffix)
            .map(|(n, e)| (n.as_str(), e))
    }
}

/// An evaluation context: a target algebra, the images of the generators,
/// and the bindings visible to identifiers.
///
/// Besides generator and binding names, identifiers may carry a block
/// prefix: with generator `x1` and binding `x12`, the names `a1`, `y12`
/// denote the same elements written in the a- or y-letters of the target,
/// and `g12` is the group-like g₁g₂ of the binding's multidegree.
pub struct Scope<'a> {
    real: &'a Realization,
    bindings: &'a Bindings,
    system: &'a System,
    images: Vec<Poly>,
    cache: RefCell<HashMap<String, Poly>>,
    active: RefCell<Vec<String>>,
}

impl<'a> Scope<'a> {
    /// Generators map to the letters of `block` in the target alphabet.
    pub fn block(
        real: &'a Realization,
        bindings: &'a Bindings,
        system: &'a System,
        block: Block,
    ) -> Self {
        let images = block_letters(real, system, block);
        Self::with_images(real, bindings, system, images)
    }

    /// Generators map to the given polynomials.
    pub fn with_images(
        real: &'a Realization,
        bindings: &'a Bindings,
        system: &'a System,
        images: Vec<Poly>,
    ) -> Self {
        Scope {
            real,
            bindings,
            system,
            images,
            cache: RefCell::new(HashMap::new()),
            active: RefCell::new(Vec::new()),
        }
    }

    pub fn system(&self) -> &System {
        self.system
    }

    fn groups(&self) -> usize {
        self.system.groups()
    }

    fn constant(&self, c: Coeff) -> Poly {
        Poly::constant(c, self.groups())
    }

    pub fn eval_str(&self, src: &str) -> Result<Poly, ExprError> {
        self.eval(&parse(src)?)
    }

    pub fn eval(&self, e: &Expr) -> Result<Poly, ExprError> {
        let n = self.real.order();
        Ok(match e {
            Expr::Rational(r) => self.constant(Coeff::constant(Cyc::from_rational(1, r.clone()))),
            Expr::Q => self.constant(Coeff::constant(Cyc::zeta_pow(n, 1))),
            Expr::Lambda(k) => self.constant(Coeff::param(*k)),
            Expr::Neg(a) => self.eval(a)?.neg(),
            Expr::Add(a, b) => self.eval(a)?.add(&self.eval(b)?),
            Expr::Sub(a, b) => self.eval(a)?.sub(&self.eval(b)?),
            Expr::Mul(a, b) => self.system.multiply(&self.eval(a)?, &self.eval(b)?)?,
            Expr::Pow(a, k) => {
                let base = self.eval(a)?;
                if *k >= 0 {
                    self.system.pow(&base, *k as u32)?
                } else {
                    let inv = invert_unit(&base).ok_or(ExprError::NegativeExponent)?;
                    self.system.pow(&inv, k.unsigned_abs() as u32)?
                }
            }
            Expr::Ad(i, a) => {
                let d = self.multidegree(a)?;
                let xi = self.image(*i)?;
                let v = self.eval(a)?;
                let k = self.real.character_exponent(&d, *i);
                let c = Coeff::constant(Cyc::zeta_pow(n, k));
                let mut out = self.system.multiply(&xi, &v)?;
                out.sub_assign(&self.system.multiply(&v, &xi)?.scale(&c));
                out
            }
            Expr::Ident(name) => self.ident(name)?,
        })
    }

    fn image(&self, i: usize) -> Result<Poly, ExprError> {
        self.images
            .get(i.wrapping_sub(1))
            .cloned()
            .ok_or(ExprError::BadIndex(i))
    }

    fn ident(&self, name: &str) -> Result<Poly, ExprError> {
        if let Some(p) = self.cache.borrow().get(name) {
            return Ok(p.clone());
        }
        let v = self.resolve(name)?;
        self.cache.borrow_mut().insert(name.to_string(), v.clone());
        Ok(v)
    }

    fn resolve(&self, name: &str) -> Result<Poly, ExprError> {
        if let Some(i) = self.real.index_of_name(name) {
            return self.image(i);
        }
        if let Some(body) = self.bindings.get(name) {
            if self.active.borrow().iter().any(|n| n == name) {
                return Err(ExprError::Recursive(name.to_string()));
            }
            self.active.borrow_mut().push(name.to_string());
            let v = self.eval(body);
            self.active.borrow_mut().pop();
            return v;
        }
        let unknown = || ExprError::UnknownIdentifier(name.to_string());
        let mut chars = name.chars();
        let prefix = chars.next().ok_or_else(unknown)?;
        let suffix = chars.as_str();
        if prefix == 'g' {
            if self.groups() == 0 {
                return Err(unknown());
            }
            let d: Vec<u32> = if let Some(i) = self.real.index_of_suffix(suffix) {
                let mut d = vec![0; self.real.theta()];
                d[i - 1] = 1;
                d
            } else if let Some((_, body)) = self.bindings.by_suffix(suffix) {
                self.multidegree(body)?
            } else {
                return Err(unknown());
            };
            let exps: Vec<i32> = d.iter().map(|&e| e as i32).collect();
            return Ok(Poly::monomial(Word::new(&[], &exps), Coeff::one()));
        }
        let block = match prefix {
            'a' => Block::A,
            'y' => Block::Y,
            'x' => Block::X,
            _ => return Err(unknown()),
        };
        let alpha = self.system.alphabet();
        if alpha.find(block, 1).is_none() {
            return Err(unknown());
        }
        let images = block_letters(self.real, self.system, block);
        if let Some(i) = self.real.index_of_suffix(suffix) {
            return Ok(images[i - 1].clone());
        }
        if let Some((bname, _)) = self.bindings.by_suffix(suffix) {
            let sub = Scope::with_images(self.real, self.bindings, self.system, images);
            return sub.ident(bname);
        }
        Err(unknown())
    }

    /// Syntactic multidegree; identifiers with a block prefix count like the
    /// generator or binding they name, group-likes have degree zero.
    pub fn multidegree(&self, e: &Expr) -> Result<Vec<u32>, ExprError> {
        multidegree(e, self.real, self.bindings)
    }
}

fn block_letters(real: &Realization, system: &System, block: Block) -> Vec<Poly> {
    let alpha = system.alphabet();
    (1..=real.theta())
        .map(|i| match alpha.find(block, i) {
            Some(id) => Poly::monomial(Word::letter(id, alpha.group_count()), Coeff::one()),
            None => Poly::zero(),
        })
        .collect()
}

/// The inverse of c·g^e for a unit scalar c.
fn invert_unit(p: &Poly) -> Option<Poly> {
    if p.len() != 1 {
        return None;
    }
    let (w, c) = p.terms().next()?;
    if w.degree() != 0 {
        return None;
    }
    let inv = c.as_constant()?.inverse()?;
    let exps: Vec<i32> = w.group.iter().map(|e| -e).collect();
    Some(Poly::monomial(Word::new(&[], &exps), Coeff::constant(inv)))
}

/// Multidegree of an expression over the generators of `real`.
pub fn multidegree(
    e: &Expr,
    real: &Realization,
    bindings: &Bindings,
) -> Result<Vec<u32>, ExprError> {
    let theta = real.theta();
    let zero = || vec![0u32; theta];
    Ok(match e {
        Expr::Rational(_) | Expr::Q | Expr::Lambda(_) => zero(),
        Expr::Neg(a) => multidegree(a, real, bindings)?,
        Expr::Add(a, b) | Expr::Sub(a, b) => {
            let da = multidegree(a, real, bindings)?;
            let db = multidegree(b, real, bindings)?;
            if da != db {
                return Err(ExprError::Inhomogeneous);
            }
            da
        }
        Expr::Mul(a, b) => {
            let da = multidegree(a, real, bindings)?;
            let db = multidegree(b, real, bindings)?;
            da.iter().zip(&db).map(|(x, y)| x + y).collect()
        }
        Expr::Pow(a, k) => {
            let da = multidegree(a, real, bindings)?;
            if *k < 0 && da.iter().any(|&x| x != 0) {
                return Err(ExprError::NegativeExponent);
            }
            da.iter().map(|x| x * k.unsigned_abs() as u32).collect()
        }
        Expr::Ad(i, a) => {
            if *i == 0 || *i > theta {
                return Err(ExprError::BadIndex(*i));
            }
            let mut d = multidegree(a, real, bindings)?;
            d[i - 1] += 1;
            d
        }
        Expr::Ident(name) => ident_degree(name, real, bindings, 0)?,
    })
}

fn ident_degree(
    name: &str,
    real: &Realization,
    bindings: &Bindings,
    depth: usize,
) -> Result<Vec<u32>, ExprError> {
    if depth > 64 {
        return Err(ExprError::Recursive(name.to_string()));
    }
    let theta = real.theta();
    let unit = |i: usize| {
        let mut d = vec![0u32; theta];
        d[i - 1] = 1;
        d
    };
    if let Some(i) = real.index_of_name(name) {
        return Ok(unit(i));
    }
    if let Some(body) = bindings.get(name) {
        return multidegree(body, real, bindings);
    }
    let mut chars = name.chars();
    let prefix = chars.next();
    let suffix = chars.as_str();
    match prefix {
        Some('g') => Ok(vec![0; theta]),
        Some('a' | 'y' | 'x') => {
            if let Some(i) = real.index_of_suffix(suffix) {
                Ok(unit(i))
            } else if let Some((bname, _)) = bindings.by_suffix(suffix) {
                ident_degree(bname, real, bindings, depth + 1)
            } else {
                Err(ExprError::UnknownIdentifier(name.to_string()))
            }
        }
        _ => Err(ExprError::UnknownIdentifier(name.to_string())),
    }
}
