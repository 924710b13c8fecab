use std::sync::Arc;

use crate::ncpoly::Alphabet;
use crate::{Poly, System};

use super::{BraidedError, DegreeVector};

#[derive(Clone, Debug)]
pub struct PresentedRelation {
    pub label: String,
    pub poly: Poly,
    pub degree: DegreeVector,
    pub param: Option<usize>,
}

/// A finitely presented algebra with its completed rewriting system.
#[derive(Clone, Debug)]
pub struct Presentation {
    pub relations: Vec<PresentedRelation>,
    pub system: System,
}

impl Presentation {
    /// The free algebra on `alphabet`.
    pub fn free(alphabet: Arc<Alphabet>, bound: usize) -> Self {
        Presentation {
            relations: Vec::new(),
            system: System::free(alphabet, bound),
        }
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        self.system.alphabet()
    }

    /// Appends relations and recompletes up to `bound`.
    pub fn extend(
        &self,
        relations: Vec<PresentedRelation>,
        bound: usize,
    ) -> Result<Self, BraidedError> {
        let polys = relations.iter().map(|r| r.poly.clone()).collect();
        let system = self
            .system
            .extend(polys, bound.max(self.system.completed_up_to()))?;
        let mut all = self.relations.clone();
        all.extend(relations);
        Ok(Presentation {
            relations: all,
            system,
        })
    }

    pub fn normal_form(&self, p: &Poly) -> Result<Poly, BraidedError> {
        Ok(self.system.normal_form(p)?)
    }
}
