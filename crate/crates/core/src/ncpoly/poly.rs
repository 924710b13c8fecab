use std::collections::BTreeMap;

use crate::coeffs::{is_top_level_sum, paren_if_sum};
use crate::scalar::{Cyclotomic, Scalar};

use super::alphabet::{Alphabet, Block};
use super::word::Word;

/// Powers ζ^0..ζ^{N-1} in a given scalar ring.
#[derive(Clone, Debug)]
pub struct ZetaTable<S> {
    powers: Vec<S>,
}

impl<S: Cyclotomic> ZetaTable<S> {
    pub fn new(order: u32) -> Self {
        ZetaTable {
            powers: (0..order as i64)
                .map(|k| S::root_of_unity(order, k))
                .collect(),
        }
    }
}

impl<S> ZetaTable<S> {
    pub fn get(&self, k: i64) -> &S {
        &self.powers[k.rem_euclid(self.powers.len() as i64) as usize]
    }
}

/// A noncommutative polynomial: a finite sum of scalar multiples of words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NcPoly<S> {
    terms: BTreeMap<Word, S>,
}

impl<S> Default for NcPoly<S> {
    fn default() -> Self {
        NcPoly {
            terms: BTreeMap::new(),
        }
    }
}

impl<S: Scalar> NcPoly<S> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: S, groups: usize) -> Self {
        Self::monomial(Word::one(groups), c)
    }

    pub fn one(groups: usize) -> Self {
        Self::constant(S::one(), groups)
    }

    pub fn monomial(w: Word, c: S) -> Self {
        let mut p = Self::zero();
        p.add_term(w, c);
        p
    }

    pub fn from_terms(iter: impl IntoIterator<Item = (Word, S)>) -> Self {
        let mut p = Self::zero();
        for (w, c) in iter {
            p.add_term(w, c);
        }
        p
    }

    pub fn add_term(&mut self, w: Word, c: S) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&w) {
            Some(v) => {
                v.add_assign_ref(&c);
                if v.is_zero() {
                    self.terms.remove(&w);
                }
            }
            None => {
                self.terms.insert(w, c);
            }
        }
    }

    pub fn add_term_ref(&mut self, w: &Word, c: &S) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(w) {
            Some(v) => {
                v.add_assign_ref(c);
                if v.is_zero() {
                    self.terms.remove(w);
                }
            }
            None => {
                self.terms.insert(w.clone(), c.clone());
            }
        }
    }

    /// self += c · p · g^shift
    pub fn add_scaled_shifted(&mut self, p: &NcPoly<S>, c: &S, shift: &[i32]) {
        let unit = c.is_one();
        let plain = shift.iter().all(|&e| e == 0);
        for (w, v) in &p.terms {
            let coeff = if unit { v.clone() } else { v.mul_ref(c) };
            if plain {
                self.add_term_ref(w, &coeff);
            } else {
                let mut w = w.clone();
                w.shift_group(shift);
                self.add_term(w, coeff);
            }
        }
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Word, &S)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Word, S)> {
        self.terms.into_iter()
    }

    pub fn coefficient(&self, w: &Word) -> Option<&S> {
        self.terms.get(w)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest term in the monomial order.
    pub fn leading(&self) -> Option<(&Word, &S)> {
        self.terms.iter().next_back()
    }

    pub fn degree(&self) -> Option<usize> {
        self.leading().map(|(w, _)| w.degree())
    }

    pub fn min_degree(&self) -> Option<usize> {
        self.terms.keys().map(|w| w.degree()).min()
    }

    /// The scalar if every term is the empty word without group part.
    pub fn as_scalar(&self) -> Option<S> {
        match self.terms.len() {
            0 => Some(S::zero()),
            1 => {
                let (w, c) = self.terms.iter().next().unwrap();
                w.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn scale(&self, c: &S) -> Self {
        Self::from_terms(self.terms.iter().map(|(w, v)| (w.clone(), v.mul_ref(c))))
    }

    pub fn map_coeffs(&self, f: impl Fn(&S) -> S) -> Self {
        Self::from_terms(self.terms.iter().map(|(w, v)| (w.clone(), f(v))))
    }

    pub fn map_words(&self, f: impl Fn(&Word) -> Word) -> Self {
        Self::from_terms(self.terms.iter().map(|(w, v)| (f(w), v.clone())))
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn add_assign(&mut self, other: &Self) {
        for (w, c) in &other.terms {
            self.add_term_ref(w, c);
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.sub_assign(other);
        out
    }

    pub fn sub_assign(&mut self, other: &Self) {
        for (w, c) in &other.terms {
            self.add_term(w.clone(), -c.clone());
        }
    }

    pub fn neg(&self) -> Self {
        Self::from_terms(self.terms.iter().map(|(w, c)| (w.clone(), -c.clone())))
    }

    /// Product in the free algebra: concatenation, with the left factor's
    /// group part moved to the right end.
    pub fn mul_free(&self, other: &Self, alphabet: &Alphabet, zeta: &ZetaTable<S>) -> Self {
        let mut out = Self::zero();
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                let (w, k) = concat(u, v, alphabet);
                let c = a.mul_ref(b);
                let c = if k == 0 { c } else { c.mul_ref(zeta.get(k)) };
                out.add_term(w, c);
            }
        }
        out
    }

    /// The terms whose degree in `block` equals `d`.
    pub fn component_by_block_degree(&self, alphabet: &Alphabet, block: Block, d: usize) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .filter(|(w, _)| w.block_degree(alphabet, block) == d)
                .map(|(w, c)| (w.clone(), c.clone())),
        )
    }

    pub fn max_block_degree(&self, alphabet: &Alphabet, block: Block) -> Option<usize> {
        self.terms
            .keys()
            .map(|w| w.block_degree(alphabet, block))
            .max()
    }

    /// Common multidegree of all terms, or `None` if inhomogeneous or zero.
    pub fn multidegree(&self, alphabet: &Alphabet, theta: usize) -> Option<Vec<u32>> {
        let mut it = self.terms.keys().map(|w| w.multidegree(alphabet, theta));
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }
}

/// Concatenates two words, returning the product word and the ζ-exponent
/// from moving the left group part past the right letters.
pub fn concat(u: &Word, v: &Word, alphabet: &Alphabet) -> (Word, i64) {
    let k = alphabet.word_exchange_exponent(&v.letters, &u.group);
    let mut w = u.clone();
    w.letters.extend_from_slice(&v.letters);
    w.shift_group(&v.group);
    (w, k)
}

impl<S: Scalar + std::fmt::Display> NcPoly<S> {
    /// Terms in descending monomial order, coefficients printed with
    /// [`std::fmt::Display`] of the scalar.
    pub fn render(&self, alphabet: &Alphabet) -> String {
        render_terms(self.terms.iter().rev(), alphabet)
    }
}

/// Renders terms in the given order as a signed sum.
pub fn render_terms<'a, S: Scalar + std::fmt::Display + 'a>(
    terms: impl IntoIterator<Item = (&'a Word, &'a S)>,
    alphabet: &Alphabet,
) -> String {
    let mut out = String::new();
    for (i, (w, c)) in terms.into_iter().enumerate() {
        let cs = c.to_string();
        let (neg, body) = match cs.strip_prefix('-') {
            Some(b) if !is_top_level_sum(b) => (true, b.to_string()),
            _ => (false, cs.clone()),
        };
        if i > 0 {
            out.push_str(if neg { " - " } else { " + " });
        } else if neg {
            out.push('-');
        }
        let word = if w.is_one() {
            String::new()
        } else {
            w.render(alphabet)
        };
        if word.is_empty() {
            out.push_str(&paren_if_sum(&body));
        } else if body == "1" {
            out.push_str(&word);
        } else {
            out.push_str(&paren_if_sum(&body));
            out.push('*');
            out.push_str(&word);
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}
