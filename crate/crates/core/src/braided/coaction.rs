use std::collections::HashMap;
use std::sync::Arc;

use num_traits::One;

use crate::expr::{Bindings, Expr, Scope};
use crate::ncpoly::{Alphabet, Block, Letters, Rule, Word};
use crate::{Coeff, Cyc, Poly, System};

use super::{BraidedError, Realization};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    /// F = E ⊗̂ B on y- and x-letters, y_i ↦ y_i + x_i.
    RhoHat,
    /// E = L ⊗ A on a-, g- and y-letters, y_i ↦ a_i + g_i y_i.
    Delta,
}

impl Mode {
    fn blocks(self) -> (Block, Block) {
        match self {
            Mode::RhoHat => (Block::Y, Block::X),
            Mode::Delta => (Block::A, Block::Y),
        }
    }
}

/// Two presentations glued by cross rules, with the images of the
/// generators under the coaction.
#[derive(Clone, Debug)]
pub struct CoactionAlgebra {
    pub mode: Mode,
    pub system: System,
    pub images: Vec<Poly>,
}

/// Rewrites `p` into the alphabet `to`, sending each letter to the letter of
/// the same index in `block(letter.block)`.
pub fn translate(
    p: &Poly,
    from: &Alphabet,
    to: &Alphabet,
    block: impl Fn(Block) -> Block,
) -> Result<Poly, BraidedError> {
    let groups = to.group_count();
    let mut out = Poly::zero();
    for (w, c) in p.terms() {
        out.add_term(translate_word(w, from, to, &block, groups)?, c.clone());
    }
    Ok(out)
}

fn translate_word(
    w: &Word,
    from: &Alphabet,
    to: &Alphabet,
    block: &impl Fn(Block) -> Block,
    groups: usize,
) -> Result<Word, BraidedError> {
    let mut letters = Letters::new();
    for &l in &w.letters {
        let src = from.letter(l);
        let id = to
            .find(block(src.block), src.index)
            .ok_or_else(|| BraidedError::Untranslatable(src.name.clone()))?;
        letters.push(id);
    }
    let mut group = vec![0i32; groups];
    for (i, &e) in w.group.iter().enumerate() {
        if e != 0 {
            *group
                .get_mut(i)
                .ok_or_else(|| BraidedError::Untranslatable(from.groups()[i].clone()))? = e;
        }
    }
    Ok(Word::new(&letters, &group))
}

fn translate_rules(
    sys: &System,
    to: &Alphabet,
    target: Block,
) -> Result<Vec<Rule<Coeff>>, BraidedError> {
    let from = sys.alphabet();
    let map = |_| target;
    sys.rules()
        .map(|r| {
            let lhs = translate_word(&Word::new(&r.lhs, &[]), from, to, &map, 0)?.letters;
            Ok(Rule {
                lhs,
                rhs: translate(&r.rhs, from, to, map)?,
            })
        })
        .collect()
}

fn letter(alpha: &Alphabet, block: Block, i: usize) -> Poly {
    let id = alpha.find(block, i).expect("letter in alphabet");
    Poly::monomial(Word::letter(id, alpha.group_count()), Coeff::one())
}

impl CoactionAlgebra {
    /// Glues `left` and `right` (each on a single block, the left one possibly
    /// with group-likes) into the coaction algebra of `mode`, completed up to
    /// `bound`. The letters of each side are moved to the blocks of the mode.
    pub fn build(
        real: &Realization,
        left: &System,
        right: &System,
        mode: Mode,
        bound: usize,
    ) -> Result<Self, BraidedError> {
        let theta = real.theta();
        let (lb, rb) = mode.blocks();
        let alpha = match mode {
            Mode::RhoHat => real.alphabet(&[(Block::Y, false), (Block::X, false)], false),
            Mode::Delta => real.alphabet(&[(Block::A, true), (Block::Y, false)], true),
        };
        let mut rules = translate_rules(left, &alpha, lb)?;
        rules.extend(translate_rules(right, &alpha, rb)?);
        let done = left
            .completed_up_to()
            .min(right.completed_up_to())
            .min(bound);
        let base = System::from_rules_unchecked(alpha.clone(), rules, done);
        let groups = alpha.group_count();
        let mut cross = Vec::new();
        for i in 1..=theta {
            for j in 1..=theta {
                let (lhs, rhs) = match mode {
                    Mode::RhoHat => {
                        let x = alpha.find(Block::X, i).unwrap();
                        let y = alpha.find(Block::Y, j).unwrap();
                        (
                            vec![x, y],
                            Poly::monomial(Word::new(&[y, x], &[]), Coeff::constant(real.q(i, j))),
                        )
                    }
                    Mode::Delta => {
                        let y = alpha.find(Block::Y, i).unwrap();
                        let a = alpha.find(Block::A, j).unwrap();
                        let zero = vec![0; groups];
                        (
                            vec![y, a],
                            Poly::monomial(Word::new(&[a, y], &zero), Coeff::one()),
                        )
                    }
                };
                let mut rel = rhs.neg();
                rel.add_term(Word::new(&lhs, &vec![0; groups]), Coeff::one());
                cross.push(rel);
            }
        }
        let system = base.extend(cross, bound)?;
        let images = (1..=theta)
            .map(|i| match mode {
                Mode::RhoHat => letter(&alpha, Block::Y, i).add(&letter(&alpha, Block::X, i)),
                Mode::Delta => {
                    let mut g = vec![0i32; theta];
                    g[i - 1] = 1;
                    let y = alpha.find(Block::Y, i).unwrap();
                    letter(&alpha, Block::A, i)
                        .add(&Poly::monomial(Word::new(&[y], &g), Coeff::one()))
                }
            })
            .collect();
        Ok(CoactionAlgebra {
            mode,
            system,
            images,
        })
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        self.system.alphabet()
    }

    /// Evaluates `e` with every generator replaced by its coaction image.
    pub fn apply_expr(
        &self,
        real: &Realization,
        bindings: &Bindings,
        e: &Expr,
    ) -> Result<Poly, BraidedError> {
        let scope = Scope::with_images(real, bindings, &self.system, self.images.clone());
        Ok(scope.eval(e)?)
    }

    /// Evaluates `e` on the letters of one block of the algebra.
    pub fn eval_in_block(
        &self,
        real: &Realization,
        bindings: &Bindings,
        e: &Expr,
        block: Block,
    ) -> Result<Poly, BraidedError> {
        let scope = Scope::block(real, bindings, &self.system, block);
        Ok(scope.eval(e)?)
    }

    /// The coaction of a polynomial written over `from` (group parts are not
    /// allowed): every letter is replaced by the image of its index.
    pub fn apply(&self, p: &Poly, from: &Alphabet) -> Result<Poly, BraidedError> {
        substitute(p, from, &self.system, &self.images)
    }
}

/// Replaces each letter of index i by `images[i-1]` and multiplies out in
/// `sys`. Products over shared prefixes are computed once.
pub fn substitute(
    p: &Poly,
    from: &Alphabet,
    sys: &System,
    images: &[Poly],
) -> Result<Poly, BraidedError> {
    let groups = sys.groups();
    let mut memo: HashMap<Letters, Poly> = HashMap::new();
    memo.insert(Letters::new(), Poly::one(groups));
    let mut out = Poly::zero();
    for (w, c) in p.terms() {
        if w.has_group() {
            return Err(BraidedError::Untranslatable(from.groups().join(",")));
        }
        for n in 1..=w.letters.len() {
            if memo.contains_key(&w.letters[..n]) {
                continue;
            }
            let prev = &memo[&w.letters[..n - 1]];
            let idx = from.letter(w.letters[n - 1]).index;
            let next = sys.multiply(prev, &images[idx - 1])?;
            memo.insert(Letters::from_slice(&w.letters[..n]), next);
        }
        out.add_assign(&memo[&w.letters[..]].scale(c));
    }
    Ok(out)
}

/// x_i·p − χ_d(g_i)·p·x_i for p homogeneous of multidegree d, with x_i the
/// letter of index i in `block`.
pub fn ad_c(
    real: &Realization,
    sys: &System,
    block: Block,
    i: usize,
    p: &Poly,
) -> Result<Poly, BraidedError> {
    let alpha = sys.alphabet();
    if p.is_zero() {
        return Ok(Poly::zero());
    }
    let d = p
        .multidegree(alpha, real.theta())
        .ok_or(BraidedError::Inhomogeneous)?;
    let xi = letter(alpha, block, i);
    let c = Coeff::constant(Cyc::zeta_pow(real.order(), real.character_exponent(&d, i)));
    let mut out = sys.multiply(&xi, p)?;
    out.sub_assign(&sys.multiply(p, &xi)?.scale(&c));
    Ok(out)
}

/// Whether `r` is primitive in the algebra presented by `stage`:
/// ρ̂(r) = r ⊗ 1 + 1 ⊗ r in stage ⊗̂ stage.
pub fn check_primitive(
    real: &Realization,
    bindings: &Bindings,
    stage: &System,
    r: &Expr,
) -> Result<bool, BraidedError> {
    let deg = crate::expr::multidegree(r, real, bindings)?
        .iter()
        .sum::<u32>() as usize;
    let stage = if stage.completed_up_to() < deg {
        stage.complete(deg)?
    } else {
        stage.clone()
    };
    let ca = CoactionAlgebra::build(real, &stage, &stage, Mode::RhoHat, deg)?;
    let image = ca.apply_expr(real, bindings, r)?;
    let left = ca.eval_in_block(real, bindings, r, Block::Y)?;
    let right = ca.eval_in_block(real, bindings, r, Block::X)?;
    Ok(image.sub(&left).sub(&right).is_zero())
}

/// Δ(α^n) in the bosonization of the algebra presented by `stage`, written
/// in the flattened tensor algebra: a-letters for the left factor, then the
/// group-likes, then y-letters for the right factor.
pub fn coproduct_root_power(
    real: &Realization,
    bindings: &Bindings,
    stage: &System,
    alpha: &Expr,
    exponent: u32,
) -> Result<(CoactionAlgebra, Poly), BraidedError> {
    let deg: u32 = crate::expr::multidegree(alpha, real, bindings)?
        .iter()
        .sum();
    let bound = (deg * exponent) as usize;
    let stage = if stage.completed_up_to() < bound {
        stage.complete(bound)?
    } else {
        stage.clone()
    };
    let ca = CoactionAlgebra::build(real, &stage, &stage, Mode::Delta, bound)?;
    let p = ca.apply_expr(real, bindings, &alpha.clone().pow(exponent as i64))?;
    Ok((ca, p))
}
