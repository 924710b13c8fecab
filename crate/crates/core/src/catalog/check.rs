use std::collections::BTreeMap;

use crate::braided::{coproduct_root_power, CoactionAlgebra, Mode};
use crate::coeffs::{monomial_string, Exps};
use crate::expr::{parse, Scope};
use crate::lifting::{LiftingError, LiftingOutput};
use crate::ncpoly::{Alphabet, Block, Word};
use crate::{Coeff, Poly, System};

use super::{ProblemSpec, Reference, ReferenceKind};

/// A signature whose parts differ between computation and reference.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TermMismatch {
    /// λ-monomial and group-like, e.g. `l1*l2 g1*g2^2`.
    pub signature: String,
    pub computed: String,
    pub expected: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub reference: Reference,
    pub matched: bool,
    /// Number of (λ-monomial, group-like) signatures compared.
    pub signatures: usize,
    pub mismatches: Vec<TermMismatch>,
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReferenceReport {
    pub problem: String,
    pub outcomes: Vec<Outcome>,
}

impl ReferenceReport {
    pub fn all_match(&self) -> bool {
        self.outcomes.iter().all(|o| o.matched)
    }

    pub fn render(&self) -> String {
        let mut s = String::new();
        for o in &self.outcomes {
            let kind = match &o.reference.kind {
                ReferenceKind::Lifting => "lifting",
                ReferenceKind::Cleft => "cleft",
                ReferenceKind::Deformed => "deformed",
                ReferenceKind::Coaction { .. } => "coaction",
                ReferenceKind::Coproduct { .. } => "coproduct",
            };
            let verdict = if o.matched { "match" } else { "MISMATCH" };
            s.push_str(&format!(
                "{verdict:8} {kind:9} {} ({} signatures)\n",
                o.reference.label, o.signatures
            ));
            if let Some(note) = &o.reference.note {
                s.push_str(&format!("         note: {note}\n"));
            }
            if let Some(e) = &o.error {
                s.push_str(&format!("         error: {e}\n"));
            }
            for m in &o.mismatches {
                s.push_str(&format!(
                    "         [{}] computed {} expected {}\n",
                    m.signature, m.computed, m.expected
                ));
            }
        }
        s
    }
}

type Signature = (Exps, Vec<i32>);

/// Splits a polynomial by λ-monomial and group-like part; the values keep
/// the letters with constant coefficients.
fn project(p: &Poly) -> BTreeMap<Signature, Poly> {
    let mut out: BTreeMap<Signature, Poly> = BTreeMap::new();
    for (w, c) in p.terms() {
        for (e, v) in c.terms() {
            let letters = Word::new(&w.letters, &vec![0; w.group.len()]);
            out.entry((e.clone(), w.group.to_vec()))
                .or_insert_with(Poly::zero)
                .add_term(letters, Coeff::constant(v.clone()));
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

fn signature_string(sig: &Signature, alpha: &Alphabet) -> String {
    let lam = monomial_string(&sig.0);
    let g = Word::new(&[], &sig.1);
    let g = if g.has_group() {
        g.render(alpha)
    } else {
        String::new()
    };
    match (lam.is_empty(), g.is_empty()) {
        (true, true) => "1".into(),
        (false, true) => lam,
        (true, false) => g,
        (false, false) => format!("{lam} {g}"),
    }
}

fn compare(reference: &Reference, computed: &Poly, expected: &Poly, alpha: &Alphabet) -> Outcome {
    let a = project(computed);
    let b = project(expected);
    let mut keys: Vec<&Signature> = a.keys().chain(b.keys()).collect();
    keys.sort();
    keys.dedup();
    let zero = Poly::zero();
    let mut mismatches = Vec::new();
    for k in &keys {
        let x = a.get(*k).unwrap_or(&zero);
        let y = b.get(*k).unwrap_or(&zero);
        if x != y {
            mismatches.push(TermMismatch {
                signature: signature_string(k, alpha),
                computed: x.render(alpha),
                expected: y.render(alpha),
            });
        }
    }
    Outcome {
        reference: reference.clone(),
        matched: computed.sub(expected).is_zero(),
        signatures: keys.len(),
        mismatches,
        error: None,
    }
}

fn failed(reference: &Reference, e: impl ToString) -> Outcome {
    Outcome {
        reference: reference.clone(),
        matched: false,
        signatures: 0,
        mismatches: Vec::new(),
        error: Some(e.to_string()),
    }
}

/// Compares every reference display of `spec` against the pipeline output.
///
/// Both sides are reduced in the algebra the display lives in, then split
/// by (λ-monomial, group-like) signature for the term report.
pub fn reference_check(spec: &ProblemSpec, out: &LiftingOutput) -> ReferenceReport {
    let outcomes = spec
        .references
        .iter()
        .map(|r| check_one(spec, Some(out), r).unwrap_or_else(|e| failed(r, e)))
        .collect();
    ReferenceReport {
        problem: spec.name.clone(),
        outcomes,
    }
}

/// Checks only the coproduct displays of `spec`; these need no pipeline run.
pub fn coproduct_check(spec: &ProblemSpec) -> ReferenceReport {
    let outcomes = spec
        .references
        .iter()
        .filter(|r| matches!(r.kind, ReferenceKind::Coproduct { .. }))
        .map(|r| check_one(spec, None, r).unwrap_or_else(|e| failed(r, e)))
        .collect();
    ReferenceReport {
        problem: spec.name.clone(),
        outcomes,
    }
}

fn missing(label: &str) -> LiftingError {
    LiftingError::Problem(format!("no computed relation `{label}`"))
}

fn check_one(
    spec: &ProblemSpec,
    out: Option<&LiftingOutput>,
    r: &Reference,
) -> Result<Outcome, LiftingError> {
    let p = &spec.problem;
    let need = || out.ok_or_else(|| LiftingError::Problem("pipeline output required".into()));
    let (real, b) = (&p.real, &p.bindings);
    match &r.kind {
        ReferenceKind::Lifting | ReferenceKind::Deformed => {
            let out = need()?;
            let s = out
                .solved_lifting(&r.label)
                .ok_or_else(|| missing(&r.label))?;
            let pres = &out.lifting_stages[s.stage];
            let scope = Scope::block(real, b, &pres.system, Block::A);
            let computed = if r.kind == ReferenceKind::Lifting {
                s.rhs()
            } else {
                let rel = p
                    .relations
                    .iter()
                    .find(|x| x.label == r.label)
                    .ok_or_else(|| missing(&r.label))?;
                scope.eval(&rel.expr)?.sub(&s.tail)
            };
            let expected = scope.eval(&parse(&r.expected)?)?;
            Ok(compare(r, &computed, &expected, pres.alphabet()))
        }
        ReferenceKind::Cleft => {
            let out = need()?;
            let s = out
                .solved_cleft(&r.label)
                .ok_or_else(|| missing(&r.label))?;
            let pres = &out.cleft_stages[s.stage];
            let expected =
                Scope::block(real, b, &pres.system, Block::Y).eval(&parse(&r.expected)?)?;
            Ok(compare(r, &s.rhs(), &expected, pres.alphabet()))
        }
        ReferenceKind::Coaction { expr, stage } => {
            let out = need()?;
            let l = &out.lifting_stages[*stage];
            let e = &out.cleft_stages[*stage];
            let ca = CoactionAlgebra::build(real, &l.system, &e.system, Mode::Delta, out.bound)?;
            let computed = ca.apply_expr(real, b, &parse(expr)?)?;
            let expected =
                Scope::block(real, b, &ca.system, Block::A).eval(&parse(&r.expected)?)?;
            Ok(compare(r, &computed, &expected, ca.alphabet()))
        }
        ReferenceKind::Coproduct {
            base,
            exponent,
            stage,
        } => {
            let stage = nichols_stage(spec, *stage)?;
            let (ca, computed) = coproduct_root_power(real, b, &stage, &parse(base)?, *exponent)?;
            let expected =
                Scope::block(real, b, &ca.system, Block::A).eval(&parse(&r.expected)?)?;
            Ok(compare(r, &computed, &expected, ca.alphabet()))
        }
    }
}

/// B_k: the x-letter algebra modulo the relations of strata below k.
pub fn nichols_stage(spec: &ProblemSpec, k: usize) -> Result<System, LiftingError> {
    let p = &spec.problem;
    let alpha = p.real.alphabet(&[(Block::X, false)], false);
    let bound = p.working_bound()?;
    let free = System::free(alpha.clone(), bound);
    let scope = Scope::block(&p.real, &p.bindings, &free, Block::X);
    let mut rels = Vec::new();
    for r in p.relations.iter().filter(|r| r.stratum < k) {
        rels.push(scope.eval(&r.expr)?);
    }
    Ok(System::from_relations(alpha, rels, bound)?)
}
