use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::ncpoly::{Alphabet, Block, Letter};
use crate::Cyc;

use super::BraidedError;

/// Multidegree in x₁..x_θ.
pub type DegreeVector = Vec<u32>;

/// A braiding matrix of diagonal type with entries q_ij = ζ_N^{e_ij},
/// together with display names of the generators.
///
/// The principal realization is implicit: g_i and χ_i with χ_j(g_i) = q_ij.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Realization {
    order: u32,
    braiding: Vec<Vec<i64>>,
    names: Vec<String>,
}

impl Realization {
    pub fn new(
        order: u32,
        braiding: Vec<Vec<i64>>,
        names: Vec<String>,
    ) -> Result<Self, BraidedError> {
        let theta = braiding.len();
        if order < 2 {
            return Err(BraidedError::Realization(format!(
                "order {order} is too small"
            )));
        }
        if theta == 0 || braiding.iter().any(|row| row.len() != theta) {
            return Err(BraidedError::Realization(
                "braiding matrix must be square".into(),
            ));
        }
        if names.len() != theta {
            return Err(BraidedError::Realization(format!(
                "{} names for rank {theta}",
                names.len()
            )));
        }
        let n = order as i64;
        let braiding: Vec<Vec<i64>> = braiding
            .into_iter()
            .map(|row| row.into_iter().map(|e| e.rem_euclid(n)).collect())
            .collect();
        for (i, row) in braiding.iter().enumerate() {
            if row[i] == 0 {
                return Err(BraidedError::Realization(format!("q_{0}{0} = 1", i + 1)));
            }
        }
        Ok(Realization {
            order,
            braiding,
            names,
        })
    }

    /// Rank-one braiding c(x⊗x) = ζ_N x⊗x.
    pub fn rank_one(order: u32, exponent: i64) -> Result<Self, BraidedError> {
        Self::new(order, vec![vec![exponent]], vec!["x1".into()])
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn theta(&self) -> usize {
        self.braiding.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn braiding(&self) -> &[Vec<i64>] {
        &self.braiding
    }

    /// Exponent e_ij with q_ij = ζ^{e_ij} (1-based indices).
    pub fn exponent(&self, i: usize, j: usize) -> i64 {
        self.braiding[i - 1][j - 1]
    }

    pub fn q(&self, i: usize, j: usize) -> Cyc {
        Cyc::zeta_pow(self.order, self.exponent(i, j))
    }

    /// Name with a leading `x` removed; used to derive y-, a- and g-names.
    pub fn suffix(&self, i: usize) -> &str {
        let n = &self.names[i - 1];
        n.strip_prefix('x').unwrap_or(n)
    }

    pub fn index_of_suffix(&self, suffix: &str) -> Option<usize> {
        (1..=self.theta()).find(|&i| self.suffix(i) == suffix)
    }

    pub fn index_of_name(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name).map(|p| p + 1)
    }

    /// Exponent of χ_d(g_j) = ∏_i q_ji^{d_i}, reduced mod N.
    pub fn character_exponent(&self, d: &[u32], j: usize) -> i64 {
        let k: i64 = d
            .iter()
            .enumerate()
            .map(|(i, &di)| self.braiding[j - 1][i] * di as i64)
            .sum();
        k.rem_euclid(self.order as i64)
    }

    /// χ_d(g_j), the value of the character of a multidegree-d element on g_j.
    pub fn character_eval(&self, d: &[u32], j: usize) -> Cyc {
        Cyc::zeta_pow(self.order, self.character_exponent(d, j))
    }

    /// Exponent of χ_d(g_e) for group element g_e = ∏ g_j^{e_j}.
    pub fn character_on_group(&self, d: &[u32], e: &[u32]) -> i64 {
        let k: i64 = e
            .iter()
            .enumerate()
            .map(|(j, &ej)| self.character_exponent(d, j + 1) * ej as i64)
            .sum();
        k.rem_euclid(self.order as i64)
    }

    /// Whether χ_d is trivial on every g_j.
    pub fn character_trivial(&self, d: &[u32]) -> bool {
        (1..=self.theta()).all(|j| self.character_exponent(d, j) == 0)
    }

    /// Multiplicative order of χ_d(g_d).
    pub fn self_braiding_order(&self, d: &[u32]) -> u32 {
        let k = self.character_on_group(d, d);
        let n = self.order as i64;
        (n / num_integer::gcd(k, n)) as u32
    }

    /// Restriction to the generators in `subset` (1-based, ascending).
    pub fn restrict(&self, subset: &[usize]) -> Result<Self, BraidedError> {
        let braiding = subset
            .iter()
            .map(|&i| subset.iter().map(|&j| self.exponent(i, j)).collect())
            .collect();
        let names = subset.iter().map(|&i| self.names[i - 1].clone()).collect();
        Self::new(self.order, braiding, names)
    }

    /// An alphabet with one copy of the generators for each listed block.
    /// Blocks flagged `true` exchange with the group letters through the
    /// braiding (g_i·ℓ_j = q_ij ℓ_j·g_i); the others commute with them.
    pub fn alphabet(&self, blocks: &[(Block, bool)], with_groups: bool) -> Arc<Alphabet> {
        let theta = self.theta();
        let groups: Vec<String> = if with_groups {
            (1..=theta)
                .map(|i| format!("g{}", self.suffix(i)))
                .collect()
        } else {
            Vec::new()
        };
        let mut letters = Vec::new();
        for &(block, braided) in blocks {
            for j in 1..=theta {
                let chi = if with_groups {
                    (1..=theta)
                        .map(|i| if braided { self.exponent(i, j) } else { 0 })
                        .collect()
                } else {
                    Vec::new()
                };
                letters.push(Letter {
                    name: format!("{}{}", block.prefix(), self.suffix(j)),
                    block,
                    index: j,
                    chi,
                });
            }
        }
        Arc::new(Alphabet::new(self.order, letters, groups).expect("well-formed alphabet"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b2_n5() -> Realization {
        Realization::new(
            5,
            vec![vec![1, 2], vec![1, 2]],
            vec!["x1".into(), "x2".into()],
        )
        .unwrap()
    }

    #[test]
    fn unit_vector_gives_matrix_entry() {
        let r = b2_n5();
        assert_eq!(r.character_eval(&[1, 0], 2), r.q(2, 1));
        assert_eq!(r.character_eval(&[0, 1], 1), r.q(1, 2));
    }

    #[test]
    fn degenerate_serre_character_is_trivial() {
        let r = b2_n5();
        assert!(r.character_trivial(&[3, 1]));
        assert!(r.character_trivial(&[1, 2]));
    }

    #[test]
    fn order_seven_serre_character_is_not_trivial() {
        let r = Realization::new(
            7,
            vec![vec![1, -1], vec![-1, 2]],
            vec!["x1".into(), "x2".into()],
        )
        .unwrap();
        assert!(!r.character_trivial(&[3, 1]));
        assert!(!r.character_trivial(&[1, 2]));
    }

    #[test]
    fn trivial_diagonal_is_rejected() {
        assert!(Realization::new(4, vec![vec![0]], vec!["x1".into()]).is_err());
    }
}
