use num_traits::{One, Zero};

use crate::braided::{
    substitute, translate, CoactionAlgebra, Mode, Presentation, PresentedRelation, Realization,
};
use crate::expr::{multidegree, Bindings, Scope};
use crate::ncpoly::{Block, Word};
use crate::{Coeff, Poly};

use super::{LiftingError, LiftingProblem, RelationSpec};

/// One iteration of the section correction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceRecord {
    pub relation: String,
    pub stage: usize,
    pub iteration: usize,
    pub top_degree: usize,
    pub subtracted: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConsistencyCheck {
    /// χ_r(g_r) = 1.
    Trivial { relation: String },
    /// γ(r)^order reduced to the given scalar, which vanishes after the quotient.
    Checked { relation: String, order: u32 },
    /// r^order is nonzero in the stage, so the power of γ(r) carries no constraint.
    NotNilpotent { relation: String, order: u32 },
    Skipped {
        relation: String,
        order: u32,
        degree: usize,
    },
}

/// The presentations after k strata: B_k on x-letters, 𝓔_k on y-letters
/// and 𝓛_k on a- and g-letters.
#[derive(Clone, Debug)]
pub struct LiftingState {
    pub real: Realization,
    pub bindings: Bindings,
    pub bound: usize,
    pub stage: usize,
    pub nichols: Presentation,
    pub cleft: Presentation,
    pub lifting: Presentation,
}

impl LiftingState {
    pub fn initial(problem: &LiftingProblem, bound: usize) -> Self {
        let real = &problem.real;
        LiftingState {
            real: real.clone(),
            bindings: problem.bindings.clone(),
            bound,
            stage: 0,
            nichols: Presentation::free(real.alphabet(&[(Block::X, false)], false), bound),
            cleft: Presentation::free(real.alphabet(&[(Block::Y, false)], false), bound),
            lifting: Presentation::free(real.alphabet(&[(Block::A, true)], true), bound),
        }
    }

    /// F = 𝓔_k ⊗̂ B_k with d_i = y_i + x_i.
    pub fn rho_hat_algebra(&self) -> Result<CoactionAlgebra, LiftingError> {
        Ok(CoactionAlgebra::build(
            &self.real,
            &self.cleft.system,
            &self.nichols.system,
            Mode::RhoHat,
            self.bound,
        )?)
    }

    /// E = 𝓛_k ⊗ 𝓔_k with e_i = a_i + g_i y_i.
    pub fn delta_algebra(&self) -> Result<CoactionAlgebra, LiftingError> {
        Ok(CoactionAlgebra::build(
            &self.real,
            &self.lifting.system,
            &self.cleft.system,
            Mode::Delta,
            self.bound,
        )?)
    }

    fn degree(&self, rel: &RelationSpec) -> Result<Vec<u32>, LiftingError> {
        Ok(multidegree(&rel.expr, &self.real, &self.bindings)?)
    }

    /// r written in the letters of `block` of `pres`, reduced.
    pub fn eval_in(
        &self,
        pres: &Presentation,
        rel: &RelationSpec,
        block: Block,
    ) -> Result<Poly, LiftingError> {
        Ok(Scope::block(&self.real, &self.bindings, &pres.system, block).eval(&rel.expr)?)
    }
}

/// Task one: the correction γ(r) ∈ 𝓔_k with ρ̂(γ(r)) = γ(r) ⊗ 1 + 1 ⊗ r.
///
/// Returns γ(r) on the y-letters of 𝓔_k together with the subtracted part
/// r(y) − γ(r).
pub fn gamma_compute(
    state: &LiftingState,
    f: &CoactionAlgebra,
    rel: &RelationSpec,
    trace: &mut Vec<TraceRecord>,
) -> Result<(Poly, Poly), LiftingError> {
    let real = &state.real;
    let alpha = f.alphabet().clone();
    let deg: usize = state.degree(rel)?.iter().sum::<u32>() as usize;
    let image = f.apply_expr(real, &state.bindings, &rel.expr)?;
    let ry = f.eval_in_block(real, &state.bindings, &rel.expr, Block::Y)?;
    let rx = f.eval_in_block(real, &state.bindings, &rel.expr, Block::X)?;
    let mut defect = image.sub(&ry).sub(&rx);
    let mut correction = Poly::zero();
    let mut iteration = 0;
    while !defect.is_zero() {
        iteration += 1;
        if iteration > deg {
            return Err(LiftingError::IterationCap(deg));
        }
        let top = defect.max_block_degree(&alpha, Block::X).unwrap_or(0);
        let comp = defect.component_by_block_degree(&alpha, Block::X, top);
        trace.push(TraceRecord {
            relation: rel.label.clone(),
            stage: state.stage,
            iteration,
            top_degree: top,
            subtracted: comp.len(),
        });
        if top == 0 || comp.max_block_degree(&alpha, Block::Y) != Some(0) {
            return Err(LiftingError::NonScalarDefect { iteration });
        }
        let t = translate(&comp, &alpha, &alpha, |_| Block::Y)?;
        let t = f.system.normal_form(&t)?;
        defect.sub_assign(&f.apply(&t, &alpha)?.sub(&t));
        correction.add_assign(&t);
    }
    let e_alpha = state.cleft.alphabet();
    let gamma = translate(&ry.sub(&correction), &alpha, e_alpha, |b| b)?;
    let correction = translate(&correction, &alpha, e_alpha, |b| b)?;
    Ok((gamma, correction))
}

/// The λ-parameter of a relation as a coefficient, zero when forced.
pub(crate) fn lambda(param: Option<usize>) -> Coeff {
    param.map(Coeff::param).unwrap_or_else(Coeff::zero)
}

/// 𝓔_{k+1} = 𝓔_k / ⟨γ(r) − λ_r⟩, with the nilpotency check on each γ(r).
pub fn extend_cleft(
    state: &LiftingState,
    stratum: &[(&RelationSpec, Option<usize>, Poly)],
    checks: &mut Vec<ConsistencyCheck>,
) -> Result<Presentation, LiftingError> {
    let mut rels = Vec::new();
    for (rel, param, gamma) in stratum {
        let d = state.degree(rel)?;
        checks.push(quotient_check(state, rel, &d, gamma, *param)?);
        let mut poly = gamma.clone();
        poly.sub_assign(&Poly::constant(lambda(*param), 0));
        rels.push(PresentedRelation {
            label: rel.label.clone(),
            poly,
            degree: d,
            param: *param,
        });
    }
    Ok(state.cleft.extend(rels, state.bound)?)
}

fn quotient_check(
    state: &LiftingState,
    rel: &RelationSpec,
    d: &[u32],
    gamma: &Poly,
    param: Option<usize>,
) -> Result<ConsistencyCheck, LiftingError> {
    let relation = rel.label.clone();
    let order = state.real.self_braiding_order(d);
    if order == 1 {
        return Ok(ConsistencyCheck::Trivial { relation });
    }
    let degree = d.iter().sum::<u32>() as usize * order as usize;
    if state.nichols.system.rule_count() == 0 {
        return Ok(ConsistencyCheck::NotNilpotent { relation, order });
    }
    if degree > state.bound {
        return Ok(ConsistencyCheck::Skipped {
            relation,
            order,
            degree,
        });
    }
    let rx = state.eval_in(&state.nichols, rel, Block::X)?;
    if !state.nichols.system.pow(&rx, order)?.is_zero() {
        return Ok(ConsistencyCheck::NotNilpotent { relation, order });
    }
    let power = state.cleft.system.pow(gamma, order)?;
    let scalar = power
        .as_scalar()
        .ok_or(LiftingError::QuotientInconsistent { order })?;
    // in the quotient γ(r) = λ_r, so the scalar must equal λ_r^order
    let mut l = Coeff::one();
    for _ in 0..order {
        l = l * lambda(param);
    }
    if scalar != l {
        return Err(LiftingError::QuotientInconsistent { order });
    }
    Ok(ConsistencyCheck::Checked { relation, order })
}

/// Task two: r̃ = ψ(e) − g_r·ψ(y), which lies in 𝓛_k.
pub fn rtilde_compute(
    state: &LiftingState,
    e: &CoactionAlgebra,
    rel: &RelationSpec,
    gamma: &Poly,
) -> Result<Poly, LiftingError> {
    let alpha = e.alphabet().clone();
    let from = state.cleft.alphabet();
    let psi = substitute(gamma, from, &e.system, &e.images)?;
    let gy = translate(gamma, from, &alpha, |b| b)?;
    let exps: Vec<i32> = state.degree(rel)?.iter().map(|&x| x as i32).collect();
    let gr = Poly::monomial(Word::new(&[], &exps), Coeff::one());
    let rt = psi.sub(&e.system.multiply(&gr, &gy)?);
    let impure = rt
        .terms()
        .filter(|(w, _)| w.block_degree(&alpha, Block::Y) > 0)
        .count();
    if impure > 0 {
        return Err(LiftingError::Impure(impure));
    }
    Ok(translate(&rt, &alpha, state.lifting.alphabet(), |b| b)?)
}

/// λ_r(1 − g_r) in the lifting alphabet.
pub(crate) fn lambda_one_minus_g(state: &LiftingState, d: &[u32], param: Option<usize>) -> Poly {
    let groups = state.lifting.alphabet().group_count();
    let exps: Vec<i32> = d.iter().map(|&x| x as i32).collect();
    let l = lambda(param);
    let mut p = Poly::constant(l.clone(), groups);
    p.add_term(Word::new(&[], &exps), -l);
    p
}

/// 𝓛_{k+1} = 𝓛_k / ⟨r̃ − λ_r(1 − g_r)⟩.
pub fn extend_lifting(
    state: &LiftingState,
    stratum: &[(&RelationSpec, Option<usize>, Poly)],
) -> Result<Presentation, LiftingError> {
    let mut rels = Vec::new();
    for (rel, param, rt) in stratum {
        let d = state.degree(rel)?;
        let poly = rt.sub(&lambda_one_minus_g(state, &d, *param));
        rels.push(PresentedRelation {
            label: rel.label.clone(),
            poly,
            degree: d,
            param: *param,
        });
    }
    Ok(state.lifting.extend(rels, state.bound)?)
}
