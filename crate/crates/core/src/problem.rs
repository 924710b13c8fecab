//! The TOML problem file.
//!
//! ```toml
//! name = "toy"
//!
//! [realization]
//! order = 4
//! theta = 1
//! braiding = [[1]]
//! names = ["x1"]
//!
//! [bindings]
//! let = []
//!
//! [relations]
//! relations = [{ expr = "x1^4", stratum = 0, param = "auto" }]
//!
//! [options]
//! trace = false
//! ```

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::braided::{BraidedError, Realization};
use crate::expr::{parse, Bindings, ExprError};
use crate::lifting::{LiftingError, LiftingProblem, RelationSpec};

#[derive(Debug, Error)]
pub enum ProblemError {
    #[error("problem file: {0}")]
    Toml(#[from] toml::de::Error),
    #[error("problem file: {0}")]
    Serialize(#[from] toml::ser::Error),
    #[error("theta is {theta} but {what} has length {len}")]
    Shape {
        theta: usize,
        what: &'static str,
        len: usize,
    },
    #[error("strata must form a contiguous range from 0; stratum {0} is empty")]
    Strata(usize),
    #[error("relation `{expr}`: {source}")]
    Expr { expr: String, source: ExprError },
    #[error(transparent)]
    Bindings(ExprError),
    #[error(transparent)]
    Realization(#[from] BraidedError),
    #[error(transparent)]
    Lifting(#[from] LiftingError),
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ParamMode {
    #[default]
    Auto,
    Zero,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RealizationSection {
    pub order: u32,
    pub theta: usize,
    pub braiding: Vec<Vec<i64>>,
    pub names: Vec<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BindingsSection {
    #[serde(rename = "let", default)]
    pub lets: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationEntry {
    pub expr: String,
    pub stratum: usize,
    #[serde(default)]
    pub param: ParamMode,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationsSection {
    pub relations: Vec<RelationEntry>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct OptionsSection {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree_bound: Option<usize>,
    #[serde(default)]
    pub trace: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProblemFile {
    #[serde(default = "default_name")]
    pub name: String,
    pub realization: RealizationSection,
    #[serde(default)]
    pub bindings: BindingsSection,
    pub relations: RelationsSection,
    #[serde(default)]
    pub options: OptionsSection,
}

fn default_name() -> String {
    "problem".into()
}

impl ProblemFile {
    pub fn from_toml(src: &str) -> Result<Self, ProblemError> {
        Ok(toml::from_str(src)?)
    }

    pub fn to_toml(&self) -> Result<String, ProblemError> {
        Ok(toml::to_string(self)?)
    }

    pub fn to_problem(&self) -> Result<LiftingProblem, ProblemError> {
        let r = &self.realization;
        let theta = r.theta;
        if r.names.len() != theta {
            return Err(ProblemError::Shape {
                theta,
                what: "names",
                len: r.names.len(),
            });
        }
        if r.braiding.len() != theta || r.braiding.iter().any(|row| row.len() != theta) {
            return Err(ProblemError::Shape {
                theta,
                what: "braiding",
                len: r.braiding.len(),
            });
        }
        let real = Realization::new(r.order, r.braiding.clone(), r.names.clone())?;
        let bindings = Bindings::from_lets(&self.bindings.lets).map_err(ProblemError::Bindings)?;
        let mut relations = Vec::new();
        for e in &self.relations.relations {
            let expr = parse(&e.expr).map_err(|source| ProblemError::Expr {
                expr: e.expr.clone(),
                source,
            })?;
            let mut spec =
                RelationSpec::new(e.label.as_deref().unwrap_or(&e.expr), expr, e.stratum);
            spec.force_zero = e.param == ParamMode::Zero;
            relations.push(spec);
        }
        let top = relations.iter().map(|r| r.stratum).max().unwrap_or(0);
        if let Some(s) = (0..=top).find(|s| !relations.iter().any(|r| r.stratum == *s)) {
            return Err(ProblemError::Strata(s));
        }
        Ok(LiftingProblem {
            name: self.name.clone(),
            real,
            bindings,
            relations,
            degree_bound: self.options.degree_bound,
        })
    }

    pub fn from_problem(p: &LiftingProblem, trace: bool) -> Self {
        let real = &p.real;
        let theta = real.theta();
        ProblemFile {
            name: p.name.clone(),
            realization: RealizationSection {
                order: real.order(),
                theta,
                braiding: (1..=theta)
                    .map(|i| (1..=theta).map(|j| real.exponent(i, j)).collect())
                    .collect(),
                names: real.names().to_vec(),
            },
            bindings: BindingsSection {
                lets: p.bindings.to_lets(),
            },
            relations: RelationsSection {
                relations: p
                    .relations
                    .iter()
                    .map(|r| {
                        let expr = r.expr.to_string();
                        RelationEntry {
                            label: (r.label != expr).then(|| r.label.clone()),
                            expr,
                            stratum: r.stratum,
                            param: if r.force_zero {
                                ParamMode::Zero
                            } else {
                                ParamMode::Auto
                            },
                        }
                    })
                    .collect(),
            },
            options: OptionsSection {
                degree_bound: p.degree_bound,
                trace,
            },
        }
    }
}
