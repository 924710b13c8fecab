use crate::braided::Realization;
use crate::expr::{multidegree, Bindings, Expr};

use super::LiftingError;

/// One defining relation of the Nichols algebra with its stratum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationSpec {
    pub label: String,
    pub expr: Expr,
    pub stratum: usize,
    /// Forces λ_r = 0 regardless of the character test.
    pub force_zero: bool,
    /// Explicit parameter index; assigned in stratification order otherwise.
    pub param: Option<usize>,
}

impl RelationSpec {
    pub fn new(label: &str, expr: Expr, stratum: usize) -> Self {
        RelationSpec {
            label: label.to_string(),
            expr,
            stratum,
            force_zero: false,
            param: None,
        }
    }
}

/// Everything the pipeline needs: braiding, named subexpressions and the
/// stratified relations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftingProblem {
    pub name: String,
    pub real: Realization,
    pub bindings: Bindings,
    pub relations: Vec<RelationSpec>,
    pub degree_bound: Option<usize>,
}

impl LiftingProblem {
    /// Multidegree of relation `i`.
    pub fn degree(&self, i: usize) -> Result<Vec<u32>, LiftingError> {
        Ok(multidegree(
            &self.relations[i].expr,
            &self.real,
            &self.bindings,
        )?)
    }

    pub fn total_degree(&self, i: usize) -> Result<usize, LiftingError> {
        Ok(self.degree(i)?.iter().sum::<u32>() as usize)
    }

    pub fn strata_count(&self) -> usize {
        self.relations
            .iter()
            .map(|r| r.stratum + 1)
            .max()
            .unwrap_or(0)
    }

    /// Relation indices in stratification order.
    pub fn ordered(&self) -> Vec<usize> {
        let mut idx: Vec<usize> = (0..self.relations.len()).collect();
        idx.sort_by_key(|&i| (self.relations[i].stratum, i));
        idx
    }

    /// The working degree bound: the user's value, or one more than the
    /// largest relation degree.
    pub fn working_bound(&self) -> Result<usize, LiftingError> {
        let mut top = 0;
        for i in 0..self.relations.len() {
            top = top.max(self.total_degree(i)?);
        }
        Ok(self.degree_bound.unwrap_or(top + 1).max(top))
    }

    pub fn validate(&self) -> Result<(), LiftingError> {
        if self.relations.is_empty() {
            return Err(LiftingError::Problem("no relations".into()));
        }
        let k = self.strata_count();
        for s in 0..k {
            if !self.relations.iter().any(|r| r.stratum == s) {
                return Err(LiftingError::Problem(format!("stratum {s} is empty")));
            }
        }
        for i in 0..self.relations.len() {
            if self.total_degree(i)? == 0 {
                return Err(LiftingError::Problem(format!(
                    "relation {} has degree zero",
                    self.relations[i].label
                )));
            }
        }
        Ok(())
    }
}
