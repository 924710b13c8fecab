//! Built-in lifting problems with their reference displays.

mod check;

pub use check::{
    coproduct_check, nichols_stage, reference_check, Outcome, ReferenceReport, TermMismatch,
};

use thiserror::Error;

use crate::braided::Realization;
use crate::expr::{parse, Bindings};
use crate::lifting::{LiftingProblem, RelationSpec};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("unknown builtin `{0}`")]
    Unknown(String),
    #[error("builtin `{name}` does not accept N = {n}")]
    Incompatible { name: String, n: u32 },
}

/// Where a reference display lives.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ReferenceKind {
    /// Right-hand side of the solved lifting relation.
    Lifting,
    /// Right-hand side of the solved cleft relation.
    Cleft,
    /// The deformed relation r̃ before solving.
    Deformed,
    /// δ_k applied to `expr` in the y-letters, in 𝓛_k ⊗ 𝓔_k.
    Coaction { expr: String, stage: usize },
    /// Δ(base^exponent) in the bosonization of the Nichols stage `stage`.
    Coproduct {
        base: String,
        exponent: u32,
        stage: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reference {
    /// The relation label for the first three kinds, a description otherwise.
    pub label: String,
    pub kind: ReferenceKind,
    /// The expected value in the expression grammar.
    pub expected: String,
    /// False when a coefficient was corrected from the printed display.
    pub verbatim: bool,
    pub note: Option<String>,
}

impl Reference {
    fn new(label: &str, kind: ReferenceKind, expected: String) -> Self {
        Reference {
            label: label.to_string(),
            kind,
            expected,
            verbatim: true,
            note: None,
        }
    }
}

/// A built-in problem: the pipeline input plus the reference outputs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProblemSpec {
    pub name: String,
    pub n: u32,
    /// N for odd N, N/2 for even N.
    pub m: u32,
    pub problem: LiftingProblem,
    pub references: Vec<Reference>,
}

pub const BUILTINS: [&str; 4] = ["toy", "B2-even", "B2-odd", "B2-N5"];

/// Default order for each builtin.
pub fn default_order(name: &str) -> Option<u32> {
    match name {
        "toy" => Some(5),
        "B2-even" => Some(8),
        "B2-odd" => Some(7),
        "B2-N5" => Some(5),
        _ => None,
    }
}

pub fn builtin(name: &str, n: Option<u32>) -> Result<ProblemSpec, CatalogError> {
    let n = n
        .or_else(|| default_order(name))
        .ok_or_else(|| CatalogError::Unknown(name.into()))?;
    let bad = || CatalogError::Incompatible {
        name: name.into(),
        n,
    };
    match name {
        "toy" if n >= 2 => Ok(toy(n)),
        "B2-even" if n >= 4 && n % 2 == 0 => Ok(b2_even(n)),
        "B2-odd" if n >= 5 && n % 2 == 1 => Ok(b2_odd(n)),
        "B2-N5" if n == 5 => Ok(b2_n5()),
        "toy" | "B2-even" | "B2-odd" | "B2-N5" => Err(bad()),
        _ => Err(CatalogError::Unknown(name.into())),
    }
}

fn rel(label: &str, src: &str, stratum: usize) -> RelationSpec {
    RelationSpec::new(label, parse(src).expect("builtin relation parses"), stratum)
}

fn toy(n: u32) -> ProblemSpec {
    let real = Realization::rank_one(n, 1).expect("rank one");
    let label = format!("x1^{n}");
    let problem = LiftingProblem {
        name: "toy".into(),
        real,
        bindings: Bindings::new(),
        relations: vec![rel(&label, &label, 0)],
        degree_bound: None,
    };
    let references = vec![
        Reference::new(&label, ReferenceKind::Lifting, format!("l1*(1 - g1^{n})")),
        Reference::new(&label, ReferenceKind::Cleft, "l1".into()),
    ];
    ProblemSpec {
        name: "toy".into(),
        n,
        m: n,
        problem,
        references,
    }
}

const ROOT_VECTORS: [&str; 5] = [
    "x12 = ad(1, x2)",
    "x112 = ad(1, x12)",
    "x1112 = ad(1, x112)",
    "x21 = ad(2, x1)",
    "x221 = ad(2, x21)",
];

fn b2_problem(
    name: &str,
    n: u32,
    e: [[i64; 2]; 2],
    powers: [(&str, u32, usize); 4],
) -> LiftingProblem {
    let real = Realization::new(
        n,
        e.iter().map(|r| r.to_vec()).collect(),
        vec!["x1".into(), "x2".into()],
    )
    .expect("B2 realization");
    let mut lets: Vec<String> = ROOT_VECTORS.iter().map(|s| s.to_string()).collect();
    for i in 1..=2 {
        for j in 1..=2 {
            lets.push(format!("q{i}{j} = q^{}", real.exponent(i, j)));
        }
    }
    let bindings = Bindings::from_lets(&lets).expect("builtin bindings");
    let mut relations = vec![rel("x1112", "x1112", 0), rel("x221", "x221", 0)];
    for (base, k, stratum) in powers {
        let s = format!("{base}^{k}");
        relations.push(rel(&s, &s, stratum));
    }
    LiftingProblem {
        name: name.into(),
        real,
        bindings,
        relations,
        degree_bound: None,
    }
}

fn spec(
    name: &str,
    n: u32,
    m: u32,
    problem: LiftingProblem,
    references: Vec<Reference>,
) -> ProblemSpec {
    ProblemSpec {
        name: name.into(),
        n,
        m,
        problem,
        references,
    }
}

fn coproduct(base: &str, exponent: u32, expected: String) -> Reference {
    Reference::new(
        &format!("coproduct {base}^{exponent}"),
        ReferenceKind::Coproduct {
            base: base.into(),
            exponent,
            stage: 1,
        },
        expected,
    )
}

fn b2_even(n: u32) -> ProblemSpec {
    let m = n / 2;
    let m2 = 2 * m;
    let problem = b2_problem(
        "B2-even",
        n,
        [[1, -2], [0, 2]],
        [("x1", m2, 1), ("x2", m, 1), ("x112", m, 2), ("x12", n, 3)],
    );
    let l = ReferenceKind::Lifting;
    let c = ReferenceKind::Cleft;
    let refs = vec![
        Reference::new("x1112", l.clone(), "0".into()),
        Reference::new("x221", l.clone(), "0".into()),
        Reference::new(&format!("x1^{m2}"), l.clone(), format!("l3*(1 - g1^{m2})")),
        Reference::new(&format!("x2^{m}"), l.clone(), format!("l4*(1 - g2^{m})")),
        Reference::new(
            &format!("x112^{m}"),
            l.clone(),
            format!("l5*(1 - g1^{m2}*g2^{m}) - (1 - q^-1)^{m}*(1 - q^-2)^{m}*l3*l4*(1 - g1^{m2})*g2^{m}"),
        ),
        Reference::new(
            &format!("x12^{n}"),
            l,
            format!(
                "l6*(1 - g1^{n}*g2^{n}) - (1 - q^-2)^{m2}*l3*l4^2*(1 - g1^{m2})*g2^{m2} \
                 + (1 - q^-2)^{m2}*(1 - q^-1)^{m}*l3*l4^2*(1 - g1^{m2})*g2^{m2} \
                 - (1 - q^-2)^{m}*l4*l5*(1 - g1^{m2}*g2^{m})*g2^{m}"
            ),
        ),
        Reference::new("x1112", c.clone(), "0".into()),
        Reference::new("x221", c.clone(), "0".into()),
        Reference::new(&format!("x1^{m2}"), c.clone(), "l3".into()),
        Reference::new(&format!("x2^{m}"), c.clone(), "l4".into()),
        Reference::new(&format!("x112^{m}"), c.clone(), "l5".into()),
        Reference::new(&format!("x12^{n}"), c, "l6".into()),
        Reference::new(
            &format!("x112^{m}"),
            ReferenceKind::Deformed,
            format!("a112^{m} + (1 - q^-1)^{m}*(1 - q^-2)^{m}*l4*a1^{m2}*g2^{m}"),
        ),
        Reference::new(
            &format!("x12^{n}"),
            ReferenceKind::Deformed,
            format!("a12^{n} + (1 - q^-2)^{n}*l4^2*a1^{n}*g2^{n} + (1 - q^-2)^{m}*l4*a112^{m}*g2^{m}"),
        ),
        coproduct("x1", n, format!("a1^{n} + g1^{n}*y1^{n}")),
        coproduct("x2", m, format!("a2^{m} + g2^{m}*y2^{m}")),
        coproduct(
            "x12",
            n,
            format!(
                "a12^{n} + g12^{n}*y12^{n} + (1 - q^-2)^{n}*q21^{}*a1^{n}*g2^{n}*y2^{n} \
                 + (1 - q^-2)^{m}*q21^{}*a112^{m}*g2^{m}*y2^{m}",
                m * (n - 1),
                m * m
            ),
        ),
        coproduct(
            "x112",
            m,
            format!(
                "a112^{m} + g112^{m}*y112^{m} + (1 - q^-1)^{m}*(1 - q^-2)^{m}*q21^{}*a1^{n}*g2^{m}*y2^{m}",
                m * (m - 1)
            ),
        ),
    ];
    let mut refs = refs;
    refs.last_mut().unwrap().note = Some(format!("group-like read as g112^{m}"));
    spec("B2-even", n, m, problem, refs)
}

fn b2_odd(n: u32) -> ProblemSpec {
    let problem = b2_problem(
        "B2-odd",
        n,
        [[1, -1], [-1, 2]],
        [("x1", n, 1), ("x2", n, 1), ("x12", n, 2), ("x112", n, 3)],
    );
    let l = ReferenceKind::Lifting;
    let c = ReferenceKind::Cleft;
    let t = n * (n - 1) / 2;
    let refs = vec![
        Reference::new("x1112", l.clone(), "0".into()),
        Reference::new("x221", l.clone(), "0".into()),
        Reference::new(&format!("x1^{n}"), l.clone(), format!("l3*(1 - g1^{n})")),
        Reference::new(&format!("x2^{n}"), l.clone(), format!("l4*(1 - g2^{n})")),
        Reference::new(
            &format!("x12^{n}"),
            l.clone(),
            format!("l5*(1 - g1^{n}*g2^{n}) - (1 - q^-2)^{n}*l3*l4*(1 - g1^{n})*g2^{n}"),
        ),
        Reference::new(
            &format!("x112^{n}"),
            l,
            format!(
                "l6*(1 - g1^{}*g2^{n}) - (1 - q^-1)^{n}*(1 - q^-2)^{n}*l3^2*l4*(1 - g1^{n})^2*g2^{n} \
                 - 2*(1 - q^-1)^{n}*(1 + q)^{n}*l3*l5*(1 - g1^{n})*g12^{n}",
                2 * n
            ),
        ),
        Reference::new("x1112", c.clone(), "0".into()),
        Reference::new("x221", c.clone(), "0".into()),
        Reference::new(&format!("x1^{n}"), c.clone(), "l3".into()),
        Reference::new(&format!("x2^{n}"), c.clone(), "l4".into()),
        Reference::new(&format!("x12^{n}"), c.clone(), "l5".into()),
        Reference::new(&format!("x112^{n}"), c, "l6".into()),
        coproduct("x1", n, format!("a1^{n} + g1^{n}*y1^{n}")),
        coproduct("x2", n, format!("a2^{n} + g2^{n}*y2^{n}")),
        coproduct(
            "x12",
            n,
            format!("a12^{n} + g12^{n}*y12^{n} + (1 - q^-2)^{n}*q21^{t}*a1^{n}*g2^{n}*y2^{n}"),
        ),
        coproduct(
            "x112",
            n,
            format!(
                "a112^{n} + g112^{n}*y112^{n} + (1 - q^-1)^{n}*(1 - q^-2)^{n}*q21^{}*a1^{}*g2^{n}*y2^{n} \
                 + 2*(1 - q^-1)^{n}*(1 + q)^{n}*q11^{t}*q21^{t}*a1^{n}*g12^{n}*y12^{n}",
                2 * t,
                2 * n
            ),
        ),
    ];
    spec("B2-odd", n, n, problem, refs)
}

const S12: [&str; 6] = [
    "(-q - 2*q^2 - 3*q^3 - 4*q^4)*l1*l2*g2^2*g1*a2*a12",
    "(2*q + 2*q^2 + q^4)*l1*l2^2",
    "(-10*q - 5*q^2 + 5*q^3 + 10*q^4)*l3*l4*g2^5*g1^5",
    "(10*q + 5*q^2 - 5*q^3 - 10*q^4)*l3*l4*g2^5",
    "(-2*q^2 - q^3 - 2*q^4)*l1*l2^2*g2^4*g1^2",
    "(-2*q + q^3 + q^4)*l1*l2^2*g2^2*g1",
];

const S112: [&str; 9] = [
    "(5*q + 5*q^2 + 10*q^3 + 5*q^4)*l1*l2*g221*a112^2*a1^2",
    "(5*q + 5*q^2 + 5*q^4)*l1^2*l2*g221*g1112*a112*a1",
    "(-5*q - 10*q^2 - 10*q^3 - 5*q^4)*l1^2*l2*g221*a112*a1",
    "((3*q + q^2 - q^3 + 2*q^4)*l1^3*l2 + (15*q + 5*q^2 + 20*q^3 + 10*q^4)*l1*l2^2*l3 \
     + (25*q - 25*q^2 - 25*q^3 + 25*q^4)*l3^2*l4 + (-10*q + 20*q^2 - 20*q^3 + 10*q^4)*l3*l5)*g2^5*g1^10",
    "((-15*q - 5*q^2 - 20*q^3 - 10*q^4)*l1*l2^2*l3 + (-50*q + 50*q^2 + 50*q^3 - 50*q^4)*l3^2*l4 \
     + (10*q - 20*q^2 + 20*q^3 - 10*q^4)*l3*l5)*g2^5*g1^5",
    "(-8*q - 6*q^2 - 4*q^3 - 2*q^4)*l1^3*l2*g2^3*g1^4",
    "(2*q - q^2 + q^3 - 2*q^4)*l1^3*l2*g2^4*g1^7",
    "(25*q - 25*q^2 - 25*q^3 + 25*q^4)*l3^2*l4*g2^5",
    "(3*q + 6*q^2 + 4*q^3 + 2*q^4)*l1^3*l2*g2^2*g1",
];

/// The summands of s₁₂ and s₁₁₂ for the degenerate order-five problem.
pub fn n5_tails() -> (&'static [&'static str], &'static [&'static str]) {
    (&S12, &S112)
}

fn b2_n5() -> ProblemSpec {
    let problem = b2_problem(
        "B2-N5",
        5,
        [[1, 2], [1, 2]],
        [("x1", 5, 1), ("x2", 5, 1), ("x12", 5, 2), ("x112", 5, 3)],
    );
    let l = ReferenceKind::Lifting;
    let c = ReferenceKind::Cleft;
    let refs = vec![
        Reference::new("x1112", l.clone(), "l1*(1 - g1112)".into()),
        Reference::new("x221", l.clone(), "l2*(1 - g221)".into()),
        Reference::new("x1^5", l.clone(), "l3*(1 - g1^5)".into()),
        Reference::new("x2^5", l.clone(), "l4*(1 - g2^5)".into()),
        Reference::new(
            "x12^5",
            l.clone(),
            format!("l5*(1 - g12^5) - ({})", S12.join(" + ")),
        ),
        Reference::new(
            "x112^5",
            l,
            format!("l6*(1 - g112^5) - ({})", S112.join(" + ")),
        ),
        Reference::new("x1112", c.clone(), "l1".into()),
        Reference::new("x221", c.clone(), "l2".into()),
        Reference::new("x1^5", c.clone(), "l3".into()),
        Reference::new("x2^5", c, "l4".into()),
        Reference::new(
            "delta y12",
            ReferenceKind::Coaction {
                expr: "x12".into(),
                stage: 2,
            },
            "a12 + g12*y12 + (1 - q^-2)*a1*g2*y2".into(),
        ),
        Reference {
            verbatim: false,
            note: Some("coefficient of a1^2*g2*y2 printed as 2 + 2*q + q^2".into()),
            ..Reference::new(
                "delta y112",
                ReferenceKind::Coaction {
                    expr: "x112".into(),
                    stage: 3,
                },
                "a112 + g112*y112 + q*(1 - q^-2)*a1*g12*y12 + (2 + q + 2*q^2)*a1^2*g2*y2".into(),
            )
        },
        coproduct("x1", 5, "a1^5 + g1^5*y1^5".into()),
        coproduct("x2", 5, "a2^5 + g2^5*y2^5".into()),
    ];
    spec("B2-N5", 5, 5, problem, refs)
}
