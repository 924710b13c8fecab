//! Text and JSON renderings of a pipeline result.

use serde::Serialize;
use serde_json::{json, Value};

use crate::coeffs::Exps;
use crate::lifting::{LiftingOutput, SolvedRelation, TraceRecord};
use crate::ncpoly::Alphabet;
use crate::{Coeff, Cyc, Poly};

fn generators(alpha: &Alphabet) -> Vec<String> {
    alpha
        .letters()
        .iter()
        .map(|l| l.name.clone())
        .chain(alpha.groups().iter().cloned())
        .collect()
}

fn section_alphabet(rels: &[SolvedRelation]) -> Option<&Alphabet> {
    rels.last().map(|s| &*s.alphabet)
}

/// Solved-form relations, one per line, after a header with the parameters.
pub fn text(out: &LiftingOutput, trace: bool) -> String {
    let mut s = format!(
        "problem: {}\norder: {}\nparameters:\n",
        out.problem, out.order
    );
    for e in &out.registry.entries {
        s.push_str(&format!("  l{} {} {}\n", e.id, e.relation, e.reason()));
    }
    for (title, rels) in [
        ("E(lambda)", &out.cleft_solved),
        ("u(lambda)", &out.lifting_solved),
    ] {
        let gens = section_alphabet(rels).map(generators).unwrap_or_default();
        s.push_str(&format!("{title} on {}:\n", gens.join(", ")));
        for r in rels {
            s.push_str(&format!("  {}\n", r.render()));
        }
    }
    if trace {
        s.push_str("trace:\n");
        for t in &out.trace {
            s.push_str(&format!(
                "  {} stage {} iteration {}: top degree {}, {} terms subtracted\n",
                t.relation, t.stage, t.iteration, t.top_degree, t.subtracted
            ));
        }
        for c in &out.consistency {
            s.push_str(&format!("  {c:?}\n"));
        }
    }
    s
}

#[derive(Serialize)]
struct CycJson {
    order: u32,
    coords: Vec<String>,
}

fn cyc_json(c: &Cyc) -> CycJson {
    CycJson {
        order: c.order(),
        coords: c.coords().iter().map(|r| r.to_string()).collect(),
    }
}

fn coeff_json(c: &Coeff) -> Value {
    Value::Array(
        c.terms()
            .map(|(e, v): (&Exps, &Cyc)| json!({ "exps": e.to_vec(), "value": cyc_json(v) }))
            .collect(),
    )
}

/// Terms in descending monomial order.
pub fn poly_json(p: &Poly, alpha: &Alphabet) -> Value {
    Value::Array(
        p.terms()
            .rev()
            .map(|(w, c)| json!({ "coeff": coeff_json(c), "word": w.factor_names(alpha) }))
            .collect(),
    )
}

fn section_json(rels: &[SolvedRelation]) -> Value {
    let gens = section_alphabet(rels).map(generators).unwrap_or_default();
    json!({
        "generators": gens,
        "relations": rels.iter().map(|r| poly_json(&r.relation(), &r.alphabet)).collect::<Vec<_>>(),
        "display": rels.iter().map(|r| r.render()).collect::<Vec<_>>(),
    })
}

fn trace_json(t: &TraceRecord) -> Value {
    json!({
        "relation": t.relation,
        "stage": t.stage,
        "iteration": t.iteration,
        "top_degree": t.top_degree,
        "subtracted": t.subtracted,
    })
}

pub fn json(out: &LiftingOutput, trace: bool) -> Value {
    let params: Vec<Value> = out
        .registry
        .entries
        .iter()
        .map(|e| {
            json!({
                "id": e.id,
                "relation": e.relation,
                "forced_zero": !e.is_free(),
                "reason": e.reason(),
            })
        })
        .collect();
    let trace: Vec<Value> = if trace {
        out.trace.iter().map(trace_json).collect()
    } else {
        Vec::new()
    };
    json!({
        "problem": out.problem,
        "order": out.order,
        "parameters": params,
        "E_lambda": section_json(&out.cleft_solved),
        "u_lambda": section_json(&out.lifting_solved),
        "trace": trace,
    })
}

pub fn json_string(out: &LiftingOutput, trace: bool) -> String {
    let mut s = serde_json::to_string_pretty(&json(out, trace)).expect("json values serialize");
    s.push('\n');
    s
}
