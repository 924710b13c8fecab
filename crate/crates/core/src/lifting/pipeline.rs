use std::collections::BTreeMap;
use std::sync::Arc;

use crate::braided::{check_primitive, Presentation, PresentedRelation, Realization};
use crate::expr::{Bindings, Expr};
use crate::ncpoly::{render_terms, Alphabet, Block};
use num_traits::Zero;

use crate::{Cyc, Poly, System};

use super::state::{lambda, lambda_one_minus_g};
use super::{
    extend_cleft, extend_lifting, gamma_compute, rtilde_compute, ConsistencyCheck, LiftingError,
    LiftingProblem, LiftingState, ParameterRegistry, RelationSpec, TraceRecord,
};

/// A relation in the solved form `lhs = lead + tail`, where `lead` is
/// λ_r(1 − g_r) for liftings and λ_r for cleft objects.
#[derive(Clone, Debug)]
pub struct SolvedRelation {
    pub label: String,
    pub lhs: String,
    /// The left side expanded in the stage before the relation was added.
    pub lhs_poly: Poly,
    pub param: Option<usize>,
    /// Stage before the relation was added.
    pub stage: usize,
    pub lead: Poly,
    pub tail: Poly,
    pub alphabet: Arc<Alphabet>,
}

impl SolvedRelation {
    pub fn rhs(&self) -> Poly {
        self.lead.add(&self.tail)
    }

    /// The right-hand side as text: λ-part first, then the tail in
    /// descending order.
    pub fn render_rhs(&self) -> String {
        let mut lead: Vec<_> = self.lead.terms().collect();
        lead.sort_by_key(|(w, _)| w.has_group());
        render_terms(
            lead.into_iter().chain(self.tail.terms().rev()),
            &self.alphabet,
        )
    }

    pub fn render(&self) -> String {
        format!("{} = {}", self.lhs, self.render_rhs())
    }

    /// lhs − rhs, the relation as a single polynomial.
    pub fn relation(&self) -> Poly {
        self.lhs_poly.sub(&self.rhs())
    }
}

#[derive(Clone, Debug)]
pub struct LiftingOutput {
    pub problem: String,
    pub order: u32,
    pub bound: usize,
    pub registry: ParameterRegistry,
    /// Presentations of 𝓔_k and 𝓛_k for k = 0..=strata.
    pub cleft_stages: Vec<Presentation>,
    pub lifting_stages: Vec<Presentation>,
    pub cleft_solved: Vec<SolvedRelation>,
    pub lifting_solved: Vec<SolvedRelation>,
    pub trace: Vec<TraceRecord>,
    pub consistency: Vec<ConsistencyCheck>,
    pub warnings: Vec<String>,
}

impl LiftingOutput {
    pub fn cleft(&self) -> &Presentation {
        self.cleft_stages.last().expect("at least one stage")
    }

    pub fn lifting(&self) -> &Presentation {
        self.lifting_stages.last().expect("at least one stage")
    }

    pub fn solved_lifting(&self, label: &str) -> Option<&SolvedRelation> {
        self.lifting_solved.iter().find(|s| s.label == label)
    }

    pub fn solved_cleft(&self, label: &str) -> Option<&SolvedRelation> {
        self.cleft_solved.iter().find(|s| s.label == label)
    }
}

/// Renames the x-prefixed identifiers of `e` to the block prefix `p`.
pub(crate) fn relabel(e: &Expr, p: char) -> Expr {
    let r = |a: &Expr| Box::new(relabel(a, p));
    match e {
        Expr::Ident(n) => match n.strip_prefix('x') {
            Some(rest) => Expr::Ident(format!("{p}{rest}")),
            None => e.clone(),
        },
        Expr::Neg(a) => Expr::Neg(r(a)),
        Expr::Add(a, b) => Expr::Add(r(a), r(b)),
        Expr::Sub(a, b) => Expr::Sub(r(a), r(b)),
        Expr::Mul(a, b) => Expr::Mul(r(a), r(b)),
        Expr::Pow(a, k) => Expr::Pow(r(a), *k),
        Expr::Ad(i, a) => Expr::Ad(*i, r(a)),
        _ => e.clone(),
    }
}

/// Runs every stratum: Task one, the cleft extension, Task two and the
/// lifting extension, in stratification order.
pub fn run_pipeline(problem: &LiftingProblem) -> Result<LiftingOutput, LiftingError> {
    problem.validate()?;
    let registry = ParameterRegistry::admissibility(problem)?;
    let bound = problem.working_bound()?;
    let mut warnings = Vec::new();
    let strata = problem.strata_count();
    if strata > 4 {
        warnings.push(format!(
            "{strata} strata; diagonal type expects at most four"
        ));
    }
    let mut state = LiftingState::initial(problem, bound);
    let mut out = LiftingOutput {
        problem: problem.name.clone(),
        order: problem.real.order(),
        bound,
        registry: registry.clone(),
        cleft_stages: vec![state.cleft.clone()],
        lifting_stages: vec![state.lifting.clone()],
        cleft_solved: Vec::new(),
        lifting_solved: Vec::new(),
        trace: Vec::new(),
        consistency: Vec::new(),
        warnings,
    };
    let order = problem.ordered();
    for k in 0..strata {
        state.stage = k;
        let rels: Vec<&RelationSpec> = order
            .iter()
            .map(|&i| &problem.relations[i])
            .filter(|r| r.stratum == k)
            .collect();
        let param = |r: &RelationSpec| {
            let e = registry.for_relation(&r.label).expect("registered");
            e.is_free().then_some(e.id)
        };
        for r in &rels {
            let ok = check_primitive(&state.real, &state.bindings, &state.nichols.system, &r.expr)
                .map_err(|e| LiftingError::from(e).at(k, &r.label))?;
            if !ok {
                return Err(LiftingError::NotPrimitive.at(k, &r.label));
            }
        }

        let f = state.rho_hat_algebra().map_err(|e| e.at(k, "rho_hat"))?;
        let mut gammas = Vec::new();
        for r in &rels {
            let (gamma, corr) =
                gamma_compute(&state, &f, r, &mut out.trace).map_err(|e| e.at(k, &r.label))?;
            out.cleft_solved.push(SolvedRelation {
                label: r.label.clone(),
                lhs: relabel(&r.expr, 'y').to_string(),
                lhs_poly: state.eval_in(&state.cleft, r, Block::Y)?,
                param: param(r),
                stage: k,
                lead: Poly::constant(lambda(param(r)), 0),
                tail: corr,
                alphabet: state.cleft.alphabet().clone(),
            });
            gammas.push((*r, param(r), gamma));
        }
        drop(f);
        let cleft =
            extend_cleft(&state, &gammas, &mut out.consistency).map_err(|e| e.at(k, "cleft"))?;

        let e = state.delta_algebra().map_err(|e| e.at(k, "delta"))?;
        let mut rts = Vec::new();
        for (r, p, gamma) in &gammas {
            let rt = rtilde_compute(&state, &e, r, gamma).map_err(|e| e.at(k, &r.label))?;
            let ra = state.eval_in(&state.lifting, r, Block::A)?;
            let rest = state.lifting.normal_form(&rt)?.sub(&ra);
            let d = problem.degree(order_index(problem, r))?;
            out.lifting_solved.push(SolvedRelation {
                label: r.label.clone(),
                lhs: relabel(&r.expr, 'a').to_string(),
                lhs_poly: ra,
                param: *p,
                stage: k,
                lead: lambda_one_minus_g(&state, &d, *p),
                tail: rest.neg(),
                alphabet: state.lifting.alphabet().clone(),
            });
            rts.push((*r, *p, rt));
        }
        drop(e);
        let lifting = extend_lifting(&state, &rts).map_err(|e| e.at(k, "lifting"))?;

        let mut xs = Vec::new();
        for r in &rels {
            xs.push(PresentedRelation {
                label: r.label.clone(),
                poly: state.eval_in(&state.nichols, r, Block::X)?,
                degree: problem.degree(order_index(problem, r))?,
                param: None,
            });
        }
        state.nichols = state
            .nichols
            .extend(xs, bound)
            .map_err(|e| LiftingError::from(e).at(k, "nichols"))?;
        state.cleft = cleft;
        state.lifting = lifting;
        out.cleft_stages.push(state.cleft.clone());
        out.lifting_stages.push(state.lifting.clone());
    }
    Ok(out)
}

fn order_index(problem: &LiftingProblem, r: &RelationSpec) -> usize {
    problem
        .relations
        .iter()
        .position(|s| s.label == r.label)
        .expect("relation of the problem")
}

/// Substitutes values for the parameters and recompletes.
pub fn specialize(
    pres: &Presentation,
    values: &BTreeMap<usize, Cyc>,
    bound: usize,
) -> Result<Presentation, LiftingError> {
    let relations: Vec<PresentedRelation> = pres
        .relations
        .iter()
        .map(|r| PresentedRelation {
            poly: r.poly.map_coeffs(|c| c.substitute(values)),
            ..r.clone()
        })
        .collect();
    let polys = relations.iter().map(|r| r.poly.clone()).collect();
    let system = System::from_relations(pres.alphabet().clone(), polys, bound)?;
    Ok(Presentation { relations, system })
}

/// Whether 𝔲(0) and the bosonization of the Nichols algebra have the same
/// relation ideal up to the working bound.
pub fn degenerate_to_nichols(
    problem: &LiftingProblem,
    out: &LiftingOutput,
) -> Result<bool, LiftingError> {
    let zeros: BTreeMap<usize, Cyc> = out
        .registry
        .entries
        .iter()
        .map(|e| (e.id, Cyc::zero()))
        .collect();
    let special = specialize(out.lifting(), &zeros, out.bound)?;
    let alpha = out.lifting().alphabet().clone();
    let free = System::free(alpha.clone(), out.bound);
    let scope = crate::expr::Scope::block(&problem.real, &problem.bindings, &free, Block::A);
    let mut nichols = Vec::new();
    for r in &problem.relations {
        nichols.push(scope.eval(&r.expr)?);
    }
    let reference = System::from_relations(alpha, nichols.clone(), out.bound)?;
    for r in &special.relations {
        if !reference.normal_form(&r.poly)?.is_zero() {
            return Ok(false);
        }
    }
    for p in &nichols {
        if !special.system.normal_form(p)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

fn reindex(e: &Expr, map: &dyn Fn(usize) -> Option<usize>) -> Option<Expr> {
    let r = |a: &Expr| reindex(a, map).map(Box::new);
    Some(match e {
        Expr::Neg(a) => Expr::Neg(r(a)?),
        Expr::Add(a, b) => Expr::Add(r(a)?, r(b)?),
        Expr::Sub(a, b) => Expr::Sub(r(a)?, r(b)?),
        Expr::Mul(a, b) => Expr::Mul(r(a)?, r(b)?),
        Expr::Pow(a, k) => Expr::Pow(r(a)?, *k),
        Expr::Ad(i, a) => Expr::Ad(map(*i)?, r(a)?),
        _ => e.clone(),
    })
}

/// The problem for the generators in `subset`: relations supported there,
/// with their original parameter indices.
pub fn restrict_subdiagram(
    problem: &LiftingProblem,
    subset: &[usize],
) -> Result<LiftingProblem, LiftingError> {
    let real: Realization = problem.real.restrict(subset)?;
    let registry = ParameterRegistry::admissibility(problem)?;
    let map = |i: usize| subset.iter().position(|&j| j == i).map(|p| p + 1);
    let mut bindings = Bindings::new();
    for (name, body) in problem.bindings.entries() {
        if let Some(b) = reindex(body, &map) {
            bindings.insert(name, b);
        }
    }
    let mut relations = Vec::new();
    for (i, r) in problem.relations.iter().enumerate() {
        let d = problem.degree(i)?;
        let supported = d
            .iter()
            .enumerate()
            .all(|(j, &x)| x == 0 || subset.contains(&(j + 1)));
        if !supported {
            continue;
        }
        let expr = reindex(&r.expr, &map)
            .ok_or_else(|| LiftingError::Problem(format!("cannot restrict {}", r.label)))?;
        relations.push(RelationSpec {
            expr,
            param: registry.for_relation(&r.label).map(|e| e.id),
            ..r.clone()
        });
    }
    let mut strata: Vec<usize> = relations.iter().map(|r| r.stratum).collect();
    strata.sort();
    strata.dedup();
    for r in &mut relations {
        r.stratum = strata.iter().position(|&s| s == r.stratum).unwrap();
    }
    let names: Vec<&str> = subset
        .iter()
        .map(|&i| problem.real.names()[i - 1].as_str())
        .collect();
    Ok(LiftingProblem {
        name: format!("{}|{}", problem.name, names.join(",")),
        real,
        bindings,
        relations,
        degree_bound: problem.degree_bound,
    })
}

impl LiftingOutput {
    /// Substitutes values for some parameters in the solved relations.
    pub fn specialized(
        &self,
        values: &BTreeMap<usize, Cyc>,
    ) -> Result<LiftingOutput, LiftingError> {
        for (&id, v) in values {
            let entry = self
                .registry
                .get(id)
                .ok_or_else(|| LiftingError::Problem(format!("no parameter l{id}")))?;
            if !entry.is_free() && !v.is_zero() {
                return Err(LiftingError::Problem(format!("l{id} is forced to zero")));
            }
        }
        let sub = |p: &Poly| p.map_coeffs(|c| c.substitute(values));
        let map = |s: &SolvedRelation| SolvedRelation {
            lhs_poly: sub(&s.lhs_poly),
            lead: sub(&s.lead),
            tail: sub(&s.tail),
            ..s.clone()
        };
        Ok(LiftingOutput {
            cleft_solved: self.cleft_solved.iter().map(map).collect(),
            lifting_solved: self.lifting_solved.iter().map(map).collect(),
            ..self.clone()
        })
    }
}
