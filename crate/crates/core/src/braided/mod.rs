//! Braiding data, presented algebras and the two coaction algebras used by
//! the lifting recursion.
//!
//! Presentations live on fixed blocks: pre-Nichols stages on the x-letters,
//! cleft objects on the y-letters, and the liftings on the a-letters
//! together with the group-likes. A coaction algebra glues two presentations
//! with cross rules; in `RhoHat` mode x_i y_j = q_ij y_j x_i, in `Delta`
//! mode y_i a_j = a_j y_i while g_i a_j = q_ij a_j g_i.

mod coaction;
mod presentation;
mod realization;

pub use coaction::{
    ad_c, check_primitive, coproduct_root_power, substitute, translate, CoactionAlgebra, Mode,
};
pub use presentation::{Presentation, PresentedRelation};
pub use realization::{DegreeVector, Realization};

use thiserror::Error;

use crate::expr::ExprError;
use crate::ncpoly::RewriteError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BraidedError {
    #[error("realization: {0}")]
    Realization(String),
    #[error("element is not homogeneous")]
    Inhomogeneous,
    #[error("letter {0} has no counterpart in the target alphabet")]
    Untranslatable(String),
    #[error(transparent)]
    Rewrite(#[from] RewriteError),
    #[error(transparent)]
    Expr(#[from] ExprError),
}
