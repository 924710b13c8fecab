//! The stratified recursion: section corrections γ(r), deformed relations r̃,
//! and the presentations of the cleft objects 𝓔(λ) and liftings 𝔲(λ).

mod params;
mod pipeline;
mod problem;
mod state;

pub use params::{Admissibility, ForceReason, ParameterEntry, ParameterRegistry};
pub use pipeline::{
    degenerate_to_nichols, restrict_subdiagram, run_pipeline, specialize, LiftingOutput,
    SolvedRelation,
};
pub use problem::{LiftingProblem, RelationSpec};
pub use state::{
    extend_cleft, extend_lifting, gamma_compute, rtilde_compute, ConsistencyCheck, LiftingState,
    TraceRecord,
};

use thiserror::Error;

use crate::braided::BraidedError;
use crate::expr::ExprError;
use crate::ncpoly::RewriteError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LiftingError {
    #[error("stage {stage}, relation {relation}: {source}")]
    At {
        stage: usize,
        relation: String,
        source: Box<LiftingError>,
    },
    #[error("top defect component has letters on the cleft side at iteration {iteration}")]
    NonScalarDefect { iteration: usize },
    #[error("section correction did not converge within {0} iterations")]
    IterationCap(usize),
    #[error("deformed relation keeps {0} terms on the cleft side")]
    Impure(usize),
    #[error("relation is not primitive in its stage")]
    NotPrimitive,
    #[error("the power γ(r)^{order} is not a scalar or does not vanish in the quotient")]
    QuotientInconsistent { order: u32 },
    #[error("problem: {0}")]
    Problem(String),
    #[error(transparent)]
    Braided(#[from] BraidedError),
}

impl From<RewriteError> for LiftingError {
    fn from(e: RewriteError) -> Self {
        LiftingError::Braided(e.into())
    }
}

impl From<ExprError> for LiftingError {
    fn from(e: ExprError) -> Self {
        LiftingError::Braided(e.into())
    }
}

impl LiftingError {
    pub(crate) fn at(self, stage: usize, relation: &str) -> Self {
        LiftingError::At {
            stage,
            relation: relation.to_string(),
            source: Box::new(self),
        }
    }
}
