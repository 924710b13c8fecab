//! Independent reference computations shared by the integration tests.
#![allow(dead_code)]

use std::collections::{BTreeMap, HashMap};

use braidlift::catalog::{nichols_stage, ProblemSpec};
use braidlift::expr::{parse, Scope};
use braidlift::ncpoly::{Block, Word};
use braidlift::{Coeff, Cyc, Poly, System};
use num_traits::Zero;

/// Reference reducer: per multidegree, spans the ideal by all products u·r·v
/// of the defining relations, row-reduces densely and strips pivot words.
pub struct DenseReducer {
    relations: Vec<(Vec<u32>, Poly)>,
    pivots: HashMap<Vec<u32>, BTreeMap<Word, BTreeMap<Word, Cyc>>>,
}

fn words_of(md: &[u32]) -> Vec<Vec<u8>> {
    let total: u32 = md.iter().sum();
    let mut out = vec![Vec::new()];
    for _ in 0..total {
        let mut next = Vec::new();
        for w in &out {
            for l in 0..md.len() as u8 {
                let mut v = w.clone();
                v.push(l);
                next.push(v);
            }
        }
        out = next;
    }
    out.retain(|w| {
        (0..md.len()).all(|i| w.iter().filter(|&&l| l as usize == i).count() as u32 == md[i])
    });
    out
}

fn letter_md(w: &[u8], theta: usize) -> Vec<u32> {
    (0..theta)
        .map(|i| w.iter().filter(|&&l| l as usize == i).count() as u32)
        .collect()
}

pub fn dense(p: &Poly) -> BTreeMap<Word, Cyc> {
    p.terms()
        .map(|(w, c)| (w.clone(), c.as_constant().expect("constant coefficients")))
        .collect()
}

impl DenseReducer {
    pub fn new(relations: &[Poly], theta: usize) -> Self {
        let relations = relations
            .iter()
            .map(|r| (letter_md(&r.leading().unwrap().0.letters, theta), r.clone()))
            .collect();
        DenseReducer {
            relations,
            pivots: HashMap::new(),
        }
    }

    fn basis(&mut self, md: &[u32]) -> &BTreeMap<Word, BTreeMap<Word, Cyc>> {
        if !self.pivots.contains_key(md) {
            let mut pivots: BTreeMap<Word, BTreeMap<Word, Cyc>> = BTreeMap::new();
            for (rmd, r) in &self.relations {
                if rmd.iter().zip(md).any(|(a, b)| a > b) {
                    continue;
                }
                let rest: Vec<u32> = md.iter().zip(rmd).map(|(a, b)| a - b).collect();
                let total: u32 = rest.iter().sum();
                for uv in words_of(&rest) {
                    for cut in 0..=total as usize {
                        let mut row: BTreeMap<Word, Cyc> = BTreeMap::new();
                        for (w, c) in dense(r) {
                            let mut l = uv[..cut].to_vec();
                            l.extend_from_slice(&w.letters);
                            l.extend_from_slice(&uv[cut..]);
                            row.insert(Word::new(&l, &[]), c);
                        }
                        reduce(&mut row, &pivots);
                        if let Some((lead, c)) = row.iter().next_back() {
                            let (lead, inv) = (lead.clone(), c.inverse().unwrap());
                            let row = row.into_iter().map(|(w, x)| (w, x * inv.clone())).collect();
                            pivots.insert(lead, row);
                        }
                    }
                }
            }
            self.pivots.insert(md.to_vec(), pivots);
        }
        &self.pivots[md]
    }

    pub fn normal_form(&mut self, p: &Poly, theta: usize) -> BTreeMap<Word, Cyc> {
        let mut parts: BTreeMap<Vec<u32>, BTreeMap<Word, Cyc>> = BTreeMap::new();
        for (w, c) in dense(p) {
            parts
                .entry(letter_md(&w.letters, theta))
                .or_default()
                .insert(w, c);
        }
        let mut out = BTreeMap::new();
        for (md, mut part) in parts {
            reduce(&mut part, self.basis(&md));
            out.extend(part);
        }
        out
    }
}

fn reduce(row: &mut BTreeMap<Word, Cyc>, pivots: &BTreeMap<Word, BTreeMap<Word, Cyc>>) {
    let mut cursor: Option<Word> = None;
    loop {
        let next = match &cursor {
            None => row.keys().next_back().cloned(),
            Some(c) => row.range(..c.clone()).next_back().map(|(w, _)| w.clone()),
        };
        let Some(w) = next else { break };
        if let Some(p) = pivots.get(&w) {
            let f = row[&w].clone();
            for (pw, pc) in p {
                let v = row.remove(pw).unwrap_or_else(Cyc::zero) - pc.clone() * f.clone();
                if !v.is_zero() {
                    row.insert(pw.clone(), v);
                }
            }
        }
        cursor = Some(w);
    }
}

/// Which tensor factor a family of pinned letters goes to.
#[derive(Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// One component of the braided coproduct of `expr` in the Serre quotient,
/// expanded word by word in the free algebra.
///
/// Exactly `count` occurrences of the letter `pinned` go to `side`, every
/// other letter goes to the opposite factor, whose sum is returned reduced
/// modulo the Serre relations. Group-likes are normal-ordered to the right
/// of the left factor.
pub fn shuffle_component(
    spec: &ProblemSpec,
    expr: &str,
    pinned: &str,
    count: u32,
    side: Side,
) -> Poly {
    let p = &spec.problem;
    let stage = nichols_stage(spec, 1).unwrap();
    let alpha = stage.alphabet().clone();
    let free = System::free(alpha.clone(), stage.degree_bound());
    let r = Scope::block(&p.real, &p.bindings, &free, Block::X)
        .eval(&parse(expr).unwrap())
        .unwrap();
    let idx = |l: u8| alpha.letter(l).index;
    let pin = (0..alpha.letters().len() as u8)
        .find(|&l| alpha.letter(l).name == pinned)
        .unwrap();
    let mut other = Poly::zero();
    for (w, c) in r.terms() {
        let c = c.as_constant().unwrap();
        let len = w.letters.len();
        let slots: Vec<usize> = (0..len).filter(|&i| w.letters[i] == pin).collect();
        for mask in 0u32..(1 << slots.len()) {
            if mask.count_ones() != count {
                continue;
            }
            let mut left = vec![side == Side::Right; len];
            for (b, &i) in slots.iter().enumerate() {
                if mask >> b & 1 == 1 {
                    left[i] = side == Side::Left;
                }
            }
            // g from a right-going letter passes every later left-going letter
            let mut e: i64 = 0;
            for i in (0..len).filter(|&i| !left[i]) {
                for j in (i + 1..len).filter(|&j| left[j]) {
                    e += p.real.exponent(idx(w.letters[i]), idx(w.letters[j]));
                }
            }
            let keep: Vec<u8> = (0..len)
                .filter(|&i| left[i] != (side == Side::Left))
                .map(|i| w.letters[i])
                .collect();
            other.add_term(
                Word::new(&keep, &[]),
                Coeff::constant(c.clone() * Cyc::zeta_pow(p.real.order(), e)),
            );
        }
    }
    stage.normal_form(&other).unwrap()
}

/// The scalar c with `p = c * target` in the Serre quotient, if `p` is a multiple of `target`.
pub fn multiple_of(spec: &ProblemSpec, p: &Poly, target: &str) -> Option<Cyc> {
    let stage = nichols_stage(spec, 1).unwrap();
    let sp = &spec.problem;
    let t = Scope::block(&sp.real, &sp.bindings, &stage, Block::X)
        .eval(&parse(target).unwrap())
        .unwrap();
    let (lw, lc) = t.leading()?;
    let c = p.coefficient(lw)?.as_constant()? * lc.as_constant()?.inverse()?;
    p.sub(&t.scale(&Coeff::constant(c.clone())))
        .is_zero()
        .then_some(c)
}

/// The same component read off the engine's Δ(base^exponent): terms whose
/// `side` factor is exactly the pinned letter to the power `count`, with the
/// opposite factor moved back onto x-letters.
pub fn engine_component(
    spec: &ProblemSpec,
    base: &str,
    exponent: u32,
    pinned: usize,
    count: u32,
    side: Side,
) -> Poly {
    use braidlift::braided::coproduct_root_power;
    let p = &spec.problem;
    let stage = nichols_stage(spec, 1).unwrap();
    let (ca, d) = coproduct_root_power(
        &p.real,
        &p.bindings,
        &stage,
        &parse(base).unwrap(),
        exponent,
    )
    .unwrap();
    let alpha = ca.alphabet();
    let xa = stage.alphabet();
    let (fixed, moved) = match side {
        Side::Left => (Block::A, Block::Y),
        Side::Right => (Block::Y, Block::A),
    };
    let mut out = Poly::zero();
    for (w, c) in d.terms() {
        let part = |b: Block| {
            w.letters
                .iter()
                .copied()
                .filter(|&l| alpha.letter(l).block == b)
                .collect::<Vec<u8>>()
        };
        let f = part(fixed);
        if f.len() != count as usize || f.iter().any(|&l| alpha.letter(l).index != pinned) {
            continue;
        }
        let m: Vec<u8> = part(moved)
            .iter()
            .map(|&l| xa.find(Block::X, alpha.letter(l).index).unwrap())
            .collect();
        out.add_term(Word::new(&m, &[]), c.clone());
    }
    stage.normal_form(&out).unwrap()
}
