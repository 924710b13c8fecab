//! Polynomials in the deformation parameters λ₁, λ₂, … over a scalar ring.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use smallvec::SmallVec;

use crate::scalar::{Cyclotomic, Scalar};

/// Exponent vector over parameter indices; trailing zeros are always trimmed
/// so vectors of different lengths compare structurally.
pub type Exps = SmallVec<[u16; 8]>;

fn trim_exps(e: &mut Exps) {
    while e.last() == Some(&0) {
        e.pop();
    }
}

/// A polynomial in λ₁..λ_m with coefficients in `S`.
///
/// The zero polynomial is the empty map.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Coefficient<S> {
    terms: BTreeMap<Exps, S>,
}

impl<S: Scalar> Coefficient<S> {
    pub fn constant(c: S) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Exps::new(), c);
        }
        Coefficient { terms }
    }

    /// The parameter λ_index (1-based).
    pub fn param(index: usize) -> Self {
        Self::monomial(S::one(), &[(index, 1)])
    }

    pub fn monomial(c: S, powers: &[(usize, u16)]) -> Self {
        assert!(
            powers.iter().all(|&(i, _)| i >= 1),
            "parameters are 1-based"
        );
        let mut e = Exps::new();
        for &(i, p) in powers {
            if e.len() < i {
                e.resize(i, 0);
            }
            e[i - 1] += p;
        }
        trim_exps(&mut e);
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        Coefficient { terms }
    }

    pub fn from_terms(iter: impl IntoIterator<Item = (Exps, S)>) -> Self {
        let mut out = Coefficient {
            terms: BTreeMap::new(),
        };
        for (mut e, c) in iter {
            trim_exps(&mut e);
            out.add_term(e, &c);
        }
        out
    }

    fn add_term(&mut self, e: Exps, c: &S) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(v) => {
                v.add_assign_ref(c);
                if v.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c.clone());
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exps, &S)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// The scalar value if no parameter occurs.
    pub fn as_constant(&self) -> Option<S> {
        match self.terms.len() {
            0 => Some(S::zero()),
            1 => self.terms.get(&Exps::new()).cloned(),
            _ => None,
        }
    }

    pub fn is_constant(&self) -> bool {
        self.as_constant().is_some()
    }

    /// Largest parameter index that occurs (0 when constant).
    pub fn max_param(&self) -> usize {
        self.terms.keys().map(|e| e.len()).max().unwrap_or(0)
    }

    /// Smallest total λ-degree over the terms (None for zero).
    pub fn min_param_degree(&self) -> Option<u32> {
        self.terms
            .keys()
            .map(|e| e.iter().map(|&x| x as u32).sum())
            .min()
    }

    pub fn scale(&self, c: &S) -> Self {
        Self::from_terms(self.terms.iter().map(|(e, v)| (e.clone(), v.mul_ref(c))))
    }

    /// Substitutes values for some parameters; unassigned ones stay symbolic.
    pub fn substitute(&self, values: &BTreeMap<usize, S>) -> Self {
        let mut out = Coefficient {
            terms: BTreeMap::new(),
        };
        for (e, c) in &self.terms {
            let mut c = c.clone();
            let mut rest = Exps::new();
            for (i, &p) in e.iter().enumerate() {
                match values.get(&(i + 1)) {
                    Some(v) if p > 0 => {
                        c = c.mul_ref(&crate::scalar::pow(v, p as i64).expect("nonneg power"));
                        rest.push(0);
                    }
                    _ => rest.push(p),
                }
            }
            trim_exps(&mut rest);
            out.add_term(rest, &c);
        }
        out
    }

    /// Renames parameter indices; `map` sends old 1-based index to new.
    pub fn rename_params(&self, map: &dyn Fn(usize) -> usize) -> Self {
        Self::from_terms(self.terms.iter().map(|(e, c)| {
            let mut ne = Exps::new();
            for (i, &p) in e.iter().enumerate() {
                if p == 0 {
                    continue;
                }
                let j = map(i + 1);
                if ne.len() < j {
                    ne.resize(j, 0);
                }
                ne[j - 1] += p;
            }
            (ne, c.clone())
        }))
    }
}

impl<S: Scalar> Zero for Coefficient<S> {
    fn zero() -> Self {
        Coefficient {
            terms: BTreeMap::new(),
        }
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl<S: Scalar> One for Coefficient<S> {
    fn one() -> Self {
        Self::constant(S::one())
    }
}

impl<S: Scalar> Add for Coefficient<S> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        self.add_ref(&rhs)
    }
}

impl<S: Scalar> Sub for Coefficient<S> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self.add_ref(&(-rhs))
    }
}

impl<S: Scalar> Neg for Coefficient<S> {
    type Output = Self;
    fn neg(self) -> Self {
        Coefficient {
            terms: self.terms.into_iter().map(|(e, c)| (e, -c)).collect(),
        }
    }
}

impl<S: Scalar> Mul for Coefficient<S> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self.mul_ref(&rhs)
    }
}

impl<S: Scalar> fmt::Debug for Coefficient<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.terms.iter()).finish()
    }
}

impl<S: Scalar> Scalar for Coefficient<S> {
    fn try_inverse(&self) -> Option<Self> {
        let c = self.as_constant()?;
        Some(Self::constant(c.try_inverse()?))
    }

    fn from_integer(n: i64) -> Self {
        Self::constant(S::from_integer(n))
    }

    fn add_ref(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_assign_ref(other);
        out
    }

    fn add_assign_ref(&mut self, other: &Self) {
        for (e, c) in &other.terms {
            self.add_term(e.clone(), c);
        }
    }

    fn mul_ref(&self, other: &Self) -> Self {
        // fast paths for constants, which dominate rewriting
        if self.terms.len() == 1 {
            if let Some(c) = self.terms.get(&Exps::new()) {
                return other.scale(c);
            }
        }
        if other.terms.len() == 1 {
            if let Some(c) = other.terms.get(&Exps::new()) {
                return self.scale(c);
            }
        }
        let mut out = Coefficient {
            terms: BTreeMap::new(),
        };
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let n = e1.len().max(e2.len());
                let mut e: Exps = (0..n)
                    .map(|i| e1.get(i).copied().unwrap_or(0) + e2.get(i).copied().unwrap_or(0))
                    .collect();
                trim_exps(&mut e);
                out.add_term(e, &c1.mul_ref(c2));
            }
        }
        out
    }
}

impl<S: Cyclotomic> Cyclotomic for Coefficient<S> {
    fn root_of_unity(order: u32, k: i64) -> Self {
        Self::constant(S::root_of_unity(order, k))
    }
}

impl<S: Scalar + fmt::Display> fmt::Display for Coefficient<S> {
    /// `(-q - 2*q^2)*l1*l2^2 + 3*l4`; constants print bare.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // highest λ-degree first for readability
        let mut entries: Vec<_> = self.terms.iter().collect();
        entries.sort_by(|a, b| b.0.cmp(a.0));
        for (i, (e, c)) in entries.into_iter().enumerate() {
            let mono = monomial_string(e);
            let cs = c.to_string();
            let term = if mono.is_empty() {
                paren_if_sum(&cs)
            } else if cs == "1" {
                mono
            } else if cs == "-1" {
                format!("-{mono}")
            } else {
                format!("{}*{mono}", paren_if_sum(&cs))
            };
            match (i, term.strip_prefix('-')) {
                (0, _) => write!(f, "{term}")?,
                (_, Some(rest)) => write!(f, " - {rest}")?,
                (_, None) => write!(f, " + {term}")?,
            }
        }
        Ok(())
    }
}

/// Whether `s` has a top-level ` + ` or ` - ` outside parentheses.
pub(crate) fn is_top_level_sum(s: &str) -> bool {
    let bytes = s.as_bytes();
    let mut depth = 0i32;
    for (i, &b) in bytes.iter().enumerate() {
        match b {
            b'(' => depth += 1,
            b')' => depth -= 1,
            b'+' | b'-' if depth == 0 && i > 0 && bytes[i - 1] == b' ' => return true,
            _ => {}
        }
    }
    false
}

pub(crate) fn paren_if_sum(s: &str) -> String {
    if is_top_level_sum(s) {
        format!("({s})")
    } else {
        s.to_string()
    }
}

pub fn monomial_string(e: &Exps) -> String {
    let mut parts = Vec::new();
    for (i, &p) in e.iter().enumerate() {
        match p {
            0 => {}
            1 => parts.push(format!("l{}", i + 1)),
            _ => parts.push(format!("l{}^{}", i + 1, p)),
        }
    }
    parts.join("*")
}
