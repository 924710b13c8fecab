//! Noncommutative polynomials over a block-partitioned alphabet and the
//! degree-truncated rewriting kernel.
//!
//! The monomial order is graded by degree, then compares letters left to
//! right with block precedence A < G < Y < X and index inside a block. Group
//! letters are kept as a commuting Laurent monomial at the right end of each
//! word; moving them past a letter multiplies by a root of unity.

mod alphabet;
mod poly;
mod rewrite;
mod word;

pub use alphabet::{Alphabet, Block, Letter, Symbol};
pub use poly::{concat, render_terms, NcPoly, ZetaTable};
pub use rewrite::{RewriteSystem, Rule};
pub use word::{GroupExps, Letters, Word};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RewriteError {
    #[error("degree {degree} exceeds the completed bound {bound}")]
    DegreeExceeded { degree: usize, bound: usize },
    #[error("leading coefficient {0} is not a unit")]
    NonUnitLeading(String),
    #[error("the presented algebra is zero: {0}")]
    Inconsistent(String),
    #[error("cannot orient relation: {0}")]
    CannotOrient(String),
    #[error("alphabet: {0}")]
    Alphabet(String),
}
