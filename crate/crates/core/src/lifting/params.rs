use crate::braided::Realization;

use super::{LiftingError, LiftingProblem};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ForceReason {
    /// χ_r(g_j) ≠ 1 for this j.
    Character {
        generator: usize,
    },
    Override,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Admissibility {
    Free,
    ForcedZero(ForceReason),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParameterEntry {
    pub id: usize,
    pub relation: String,
    pub status: Admissibility,
}

impl ParameterEntry {
    pub fn is_free(&self) -> bool {
        self.status == Admissibility::Free
    }

    pub fn reason(&self) -> String {
        match &self.status {
            Admissibility::Free => "free".into(),
            Admissibility::ForcedZero(ForceReason::Character { generator }) => {
                format!("character nontrivial on g{generator}")
            }
            Admissibility::ForcedZero(ForceReason::Override) => "override".into(),
        }
    }
}

/// One parameter λ_r per relation, in stratification order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ParameterRegistry {
    pub entries: Vec<ParameterEntry>,
}

impl ParameterRegistry {
    /// Assigns parameters and marks λ_r = 0 when χ_r is nontrivial on some
    /// g_j or the relation carries an override.
    pub fn admissibility(problem: &LiftingProblem) -> Result<Self, LiftingError> {
        let real: &Realization = &problem.real;
        let mut entries = Vec::new();
        let mut next = 1;
        for i in problem.ordered() {
            let rel = &problem.relations[i];
            let d = problem.degree(i)?;
            let id = rel.param.unwrap_or(next);
            next = next.max(id) + 1;
            let status = if rel.force_zero {
                Admissibility::ForcedZero(ForceReason::Override)
            } else if let Some(j) =
                (1..=real.theta()).find(|&j| real.character_exponent(&d, j) != 0)
            {
                Admissibility::ForcedZero(ForceReason::Character { generator: j })
            } else {
                Admissibility::Free
            };
            entries.push(ParameterEntry {
                id,
                relation: rel.label.clone(),
                status,
            });
        }
        Ok(ParameterRegistry { entries })
    }

    pub fn for_relation(&self, label: &str) -> Option<&ParameterEntry> {
        self.entries.iter().find(|e| e.relation == label)
    }

    pub fn get(&self, id: usize) -> Option<&ParameterEntry> {
        self.entries.iter().find(|e| e.id == id)
    }
}
