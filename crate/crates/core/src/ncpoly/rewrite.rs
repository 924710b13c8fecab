use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap, VecDeque};
use std::sync::{Arc, Mutex};

use crate::scalar::{Cyclotomic, Scalar};

use super::alphabet::Alphabet;
use super::poly::{concat, NcPoly, ZetaTable};
use super::word::{Letters, Word};
use super::RewriteError;

/// An oriented relation `lhs → rhs`. The left side carries no group part.
#[derive(Clone, Debug)]
pub struct Rule<S> {
    pub lhs: Letters,
    pub rhs: NcPoly<S>,
}

impl<S: Scalar> Rule<S> {
    /// The relation `lhs − rhs` as a polynomial.
    pub fn as_poly(&self, groups: usize) -> NcPoly<S> {
        let mut p = self.rhs.neg();
        p.add_term(Word::new(&self.lhs, &vec![0; groups]), S::one());
        p
    }
}

/// A degree-truncated confluent rewriting system for a presented algebra.
///
/// Normal forms are memoized per letter word; the cache is internal and
/// the system can be shared between threads.
pub struct RewriteSystem<S> {
    alphabet: Arc<Alphabet>,
    zeta: Arc<ZetaTable<S>>,
    rules: Vec<Option<Rule<S>>>,
    lookup: HashMap<Letters, usize>,
    max_lhs: usize,
    degree_bound: usize,
    completed_up_to: usize,
    cache: Mutex<HashMap<Letters, Arc<NcPoly<S>>>>,
}

impl<S: Cyclotomic> Clone for RewriteSystem<S> {
    fn clone(&self) -> Self {
        RewriteSystem {
            alphabet: self.alphabet.clone(),
            zeta: self.zeta.clone(),
            rules: self.rules.clone(),
            lookup: self.lookup.clone(),
            max_lhs: self.max_lhs,
            degree_bound: self.degree_bound,
            completed_up_to: self.completed_up_to,
            cache: Mutex::new(HashMap::new()),
        }
    }
}

impl<S: Cyclotomic> std::fmt::Debug for RewriteSystem<S> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("RewriteSystem")
            .field("rules", &self.rule_count())
            .field("completed_up_to", &self.completed_up_to)
            .finish()
    }
}

impl<S: Cyclotomic> RewriteSystem<S> {
    /// The free algebra on the alphabet, valid up to `bound`.
    pub fn free(alphabet: Arc<Alphabet>, bound: usize) -> Self {
        let zeta = Arc::new(ZetaTable::new(alphabet.order()));
        RewriteSystem {
            alphabet,
            zeta,
            rules: Vec::new(),
            lookup: HashMap::new(),
            max_lhs: 0,
            degree_bound: bound,
            completed_up_to: bound,
            cache: Mutex::new(HashMap::new()),
        }
    }

    /// Orients and completes `relations` up to overlap degree `bound`.
    pub fn from_relations(
        alphabet: Arc<Alphabet>,
        relations: Vec<NcPoly<S>>,
        bound: usize,
    ) -> Result<Self, RewriteError> {
        Self::free(alphabet, bound).extend(relations, bound)
    }

    /// Installs rules verbatim without completing; only the completion
    /// entry points should be used to make the result trustworthy.
    pub fn from_rules_unchecked(
        alphabet: Arc<Alphabet>,
        rules: Vec<Rule<S>>,
        bound: usize,
    ) -> Self {
        let mut sys = Self::free(alphabet, bound);
        for r in rules {
            sys.install(r);
        }
        sys
    }

    /// Adds relations to an already completed system and completes again.
    /// Overlaps between old rules up to the old bound are not revisited.
    pub fn extend(&self, relations: Vec<NcPoly<S>>, bound: usize) -> Result<Self, RewriteError> {
        let mut c = Completion::new(self, bound);
        c.seed_all_pairs();
        for r in relations {
            c.pending.push_back(r);
        }
        c.run()?;
        Ok(c.finish())
    }

    /// Re-runs completion on the current rules up to a new bound.
    pub fn complete(&self, bound: usize) -> Result<Self, RewriteError> {
        let mut c = Completion::new(self, bound);
        c.seed_all_pairs();
        c.run()?;
        Ok(c.finish())
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn zeta(&self) -> &ZetaTable<S> {
        &self.zeta
    }

    pub fn groups(&self) -> usize {
        self.alphabet.group_count()
    }

    pub fn rules(&self) -> impl Iterator<Item = &Rule<S>> {
        self.rules.iter().flatten()
    }

    pub fn rule_count(&self) -> usize {
        self.rules.iter().flatten().count()
    }

    pub fn degree_bound(&self) -> usize {
        self.degree_bound
    }

    pub fn completed_up_to(&self) -> usize {
        self.completed_up_to
    }

    fn install(&mut self, rule: Rule<S>) -> usize {
        let id = self.rules.len();
        self.max_lhs = self.max_lhs.max(rule.lhs.len());
        self.lookup.insert(rule.lhs.clone(), id);
        self.rules.push(Some(rule));
        self.cache.get_mut().unwrap().clear();
        id
    }

    fn remove(&mut self, id: usize) -> Rule<S> {
        let rule = self.rules[id].take().expect("live rule");
        self.lookup.remove(&rule.lhs);
        self.cache.get_mut().unwrap().clear();
        rule
    }

    /// The rule whose left side is a suffix of `w`, lowest id first.
    fn match_suffix(&self, w: &[u8]) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for m in 1..=self.max_lhs.min(w.len()) {
            if let Some(&id) = self.lookup.get(&w[w.len() - m..]) {
                if best.is_none_or(|(b, _)| id < b) {
                    best = Some((id, m));
                }
            }
        }
        best
    }

    /// Whether any rule applies somewhere inside `w`.
    pub fn is_reducible(&self, w: &[u8]) -> bool {
        (1..=w.len()).any(|end| self.match_suffix(&w[..end]).is_some())
    }

    fn nf_letters(&self, w: &[u8]) -> Arc<NcPoly<S>> {
        if let Some(hit) = self.cache.lock().unwrap().get(w) {
            return hit.clone();
        }
        let result = Arc::new(self.compute_nf(w));
        self.cache
            .lock()
            .unwrap()
            .insert(Letters::from_slice(w), result.clone());
        result
    }

    fn compute_nf(&self, w: &[u8]) -> NcPoly<S> {
        let groups = self.groups();
        let zero_shift = vec![0i32; groups];
        if w.is_empty() {
            return NcPoly::one(groups);
        }
        let (prefix, &last) = (&w[..w.len() - 1], w.last().unwrap());
        let pre = self.nf_letters(prefix);
        let prefix_irreducible = pre.len() == 1 && {
            let (u, c) = pre.terms().next().unwrap();
            u.letters.as_slice() == prefix && !u.has_group() && c.is_one()
        };
        let mut out = NcPoly::zero();
        if prefix_irreducible {
            match self.match_suffix(w) {
                None => {
                    out.add_term(Word::new(w, &zero_shift), S::one());
                }
                Some((id, m)) => {
                    let rule = self.rules[id].as_ref().unwrap();
                    let head = &w[..w.len() - m];
                    for (t, c) in rule.rhs.terms() {
                        let mut cat = Letters::from_slice(head);
                        cat.extend_from_slice(&t.letters);
                        let sub = self.nf_letters(&cat);
                        out.add_scaled_shifted(&sub, c, &t.group);
                    }
                }
            }
        } else {
            for (u, c) in pre.terms() {
                let mut cat = u.letters.clone();
                cat.push(last);
                let k = self.alphabet.exchange_exponent(last, &u.group);
                let sub = self.nf_letters(&cat);
                if k == 0 {
                    out.add_scaled_shifted(&sub, c, &u.group);
                } else {
                    out.add_scaled_shifted(&sub, &c.mul_ref(self.zeta.get(k)), &u.group);
                }
            }
        }
        out
    }

    fn check_degree(&self, p: &NcPoly<S>) -> Result<(), RewriteError> {
        match p.degree() {
            Some(d) if d > self.completed_up_to => Err(RewriteError::DegreeExceeded {
                degree: d,
                bound: self.completed_up_to,
            }),
            _ => Ok(()),
        }
    }

    fn reduce_unchecked(&self, p: &NcPoly<S>) -> NcPoly<S> {
        let mut out = NcPoly::zero();
        for (w, c) in p.terms() {
            let sub = self.nf_letters(&w.letters);
            out.add_scaled_shifted(&sub, c, &w.group);
        }
        out
    }

    /// The irreducible representative of `p`.
    pub fn normal_form(&self, p: &NcPoly<S>) -> Result<NcPoly<S>, RewriteError> {
        self.check_degree(p)?;
        Ok(self.reduce_unchecked(p))
    }

    /// Normal form of a single word.
    pub fn normal_form_word(&self, w: &Word) -> Result<NcPoly<S>, RewriteError> {
        self.normal_form(&NcPoly::monomial(w.clone(), S::one()))
    }

    /// Product followed by reduction; both factors may be arbitrary.
    pub fn multiply(&self, p: &NcPoly<S>, r: &NcPoly<S>) -> Result<NcPoly<S>, RewriteError> {
        if let (Some(a), Some(b)) = (p.degree(), r.degree()) {
            if a + b > self.completed_up_to {
                return Err(RewriteError::DegreeExceeded {
                    degree: a + b,
                    bound: self.completed_up_to,
                });
            }
        }
        let mut out = NcPoly::zero();
        for (u, a) in p.terms() {
            for (v, b) in r.terms() {
                let (w, k) = concat(u, v, &self.alphabet);
                let mut c = a.mul_ref(b);
                if k != 0 {
                    c = c.mul_ref(self.zeta.get(k));
                }
                let sub = self.nf_letters(&w.letters);
                out.add_scaled_shifted(&sub, &c, &w.group);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, p: &NcPoly<S>, e: u32) -> Result<NcPoly<S>, RewriteError> {
        let mut acc = NcPoly::one(self.groups());
        for _ in 0..e {
            acc = self.multiply(&acc, p)?;
        }
        Ok(acc)
    }

    /// Every irreducible letter word of exactly `degree` letters.
    pub fn irreducible_words(&self, degree: usize) -> Vec<Letters> {
        let n = self.alphabet.letters().len() as u8;
        let mut layer: Vec<Letters> = vec![Letters::new()];
        for _ in 0..degree {
            let mut next = Vec::new();
            for w in &layer {
                for l in 0..n {
                    let mut v = w.clone();
                    v.push(l);
                    if self.match_suffix(&v).is_none() {
                        next.push(v);
                    }
                }
            }
            layer = next;
        }
        layer
    }
}

/// State of one truncated Buchberger run.
struct Completion<S> {
    sys: RewriteSystem<S>,
    bound: usize,
    old_bound: usize,
    old_rules: usize,
    pending: VecDeque<NcPoly<S>>,
    pairs: BinaryHeap<Reverse<(usize, usize, usize, usize)>>,
}

impl<S: Cyclotomic> Completion<S> {
    fn new(base: &RewriteSystem<S>, bound: usize) -> Self {
        let mut sys = base.clone();
        sys.degree_bound = bound;
        Completion {
            old_bound: base.completed_up_to.min(bound),
            old_rules: sys.rules.len(),
            sys,
            bound,
            pending: VecDeque::new(),
            pairs: BinaryHeap::new(),
        }
    }

    fn seed_all_pairs(&mut self) {
        let live: Vec<usize> = (0..self.sys.rules.len())
            .filter(|&i| self.sys.rules[i].is_some())
            .collect();
        for &i in &live {
            for &j in &live {
                if j <= i {
                    self.push_pairs(i, j);
                }
            }
        }
    }

    /// Queues all overlaps between rules `i` and `j` (both directions).
    fn push_pairs(&mut self, i: usize, j: usize) {
        let (li, lj) = {
            let a = self.sys.rules[i].as_ref().unwrap();
            let b = self.sys.rules[j].as_ref().unwrap();
            (a.lhs.clone(), b.lhs.clone())
        };
        self.push_directed(i, &li, j, &lj);
        if i != j {
            self.push_directed(j, &lj, i, &li);
        }
    }

    /// Overlaps where a proper suffix of `l1` equals a proper prefix of `l2`.
    fn push_directed(&mut self, i: usize, l1: &[u8], j: usize, l2: &[u8]) {
        let max_k = l1.len().min(l2.len()) - 1;
        for k in 1..=max_k {
            let len = l1.len() + l2.len() - k;
            if len > self.bound {
                continue;
            }
            if i < self.old_rules && j < self.old_rules && len <= self.old_bound {
                continue;
            }
            if l1[l1.len() - k..] == l2[..k] {
                self.pairs.push(Reverse((len, i, j, k)));
            }
        }
    }

    fn run(&mut self) -> Result<(), RewriteError> {
        loop {
            if let Some(p) = self.pending.pop_front() {
                self.insert(p)?;
                continue;
            }
            let Some(Reverse((_, i, j, k))) = self.pairs.pop() else {
                break;
            };
            let (Some(r1), Some(r2)) = (&self.sys.rules[i], &self.sys.rules[j]) else {
                continue;
            };
            let groups = self.sys.groups();
            let zero = vec![0i32; groups];
            let tail = Word::new(&r2.lhs[k..], &zero);
            let head = Word::new(&r1.lhs[..r1.lhs.len() - k], &zero);
            let tail_p = NcPoly::monomial(tail, S::one());
            let head_p = NcPoly::monomial(head, S::one());
            let left = r1.rhs.mul_free(&tail_p, &self.sys.alphabet, &self.sys.zeta);
            let right = head_p.mul_free(&r2.rhs, &self.sys.alphabet, &self.sys.zeta);
            let s = left.sub(&right);
            let s = self.sys.reduce_unchecked(&s);
            if !s.is_zero() {
                self.pending.push_back(s);
            }
        }
        Ok(())
    }

    /// Reduces, splits by character and orients one relation.
    fn insert(&mut self, p: NcPoly<S>) -> Result<(), RewriteError> {
        let p = self.sys.reduce_unchecked(&p);
        if p.is_zero() {
            return Ok(());
        }
        let parts = split_by_character(&p, &self.sys.alphabet);
        if parts.len() > 1 {
            self.pending.extend(parts);
            return Ok(());
        }
        let (lead, _) = p.leading().unwrap();
        if lead.letters.is_empty() {
            return Err(RewriteError::Inconsistent(format!(
                "a nonzero element of degree zero lies in the ideal ({} terms)",
                p.len()
            )));
        }
        let lead_letters = lead.letters.clone();
        let tops: Vec<(&Word, &S)> = p
            .terms()
            .filter(|(w, _)| w.letters == lead_letters)
            .collect();
        if tops.len() > 1 {
            return Err(RewriteError::CannotOrient(format!(
                "leading word occurs with {} group parts",
                tops.len()
            )));
        }
        let (lead_word, lead_c) = (tops[0].0.clone(), tops[0].1.clone());
        let inv = lead_c
            .try_inverse()
            .ok_or_else(|| RewriteError::NonUnitLeading(format!("{:?}", lead_c)))?;
        let unshift: Vec<i32> = lead_word.group.iter().map(|e| -e).collect();
        let mut rhs = NcPoly::zero();
        for (w, c) in p.terms() {
            if w.letters == lead_letters {
                continue;
            }
            let mut w = w.clone();
            w.shift_group(&unshift);
            rhs.add_term(w, -(c.mul_ref(&inv)));
        }
        // interreduce: older rules whose lhs contains the new lhs go back to the queue
        let mut displaced = Vec::new();
        for id in 0..self.sys.rules.len() {
            if let Some(r) = &self.sys.rules[id] {
                if contains(&r.lhs, &lead_letters) {
                    displaced.push(id);
                }
            }
        }
        let groups = self.sys.groups();
        for id in displaced {
            let r = self.sys.remove(id);
            self.pending.push_back(r.as_poly(groups));
        }
        let id = self.sys.install(Rule {
            lhs: lead_letters,
            rhs,
        });
        let live: Vec<usize> = (0..self.sys.rules.len())
            .filter(|&j| self.sys.rules[j].is_some())
            .collect();
        for j in live {
            self.push_pairs(id, j);
        }
        Ok(())
    }

    fn finish(mut self) -> RewriteSystem<S> {
        // bring every right-hand side into normal form
        let ids: Vec<usize> = (0..self.sys.rules.len())
            .filter(|&i| self.sys.rules[i].is_some())
            .collect();
        for id in ids {
            let rhs = self.sys.rules[id].as_ref().unwrap().rhs.clone();
            let reduced = self.sys.reduce_unchecked(&rhs);
            if reduced != rhs {
                self.sys.rules[id].as_mut().unwrap().rhs = reduced;
                self.sys.cache.get_mut().unwrap().clear();
            }
        }
        // compact ids, keeping their relative order
        let live: Vec<Rule<S>> = self.sys.rules.drain(..).flatten().collect();
        self.sys.lookup.clear();
        self.sys.max_lhs = 0;
        for r in live {
            self.sys.install(r);
        }
        self.sys.completed_up_to = self.bound;
        self.sys
    }
}

fn contains(hay: &[u8], needle: &[u8]) -> bool {
    needle.len() <= hay.len() && hay.windows(needle.len()).any(|w| w == needle)
}

/// Splits a relation into parts on which every group generator acts by a
/// single scalar; conjugating by g_i shows each part lies in the ideal.
fn split_by_character<S: Scalar>(p: &NcPoly<S>, alphabet: &Alphabet) -> Vec<NcPoly<S>> {
    if alphabet.group_count() == 0 {
        return vec![p.clone()];
    }
    let mut classes: Vec<(Vec<i64>, NcPoly<S>)> = Vec::new();
    for (w, c) in p.terms() {
        let chi = alphabet.word_character(&w.letters);
        match classes.iter_mut().find(|(k, _)| *k == chi) {
            Some((_, q)) => q.add_term(w.clone(), c.clone()),
            None => classes.push((chi, NcPoly::monomial(w.clone(), c.clone()))),
        }
    }
    classes.into_iter().map(|(_, q)| q).collect()
}
