use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::RewriteError;

/// Generator blocks, listed in monomial-order precedence.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Block {
    A,
    G,
    Y,
    X,
}

impl Block {
    /// Display prefix used when a base name is moved into this block.
    pub fn prefix(self) -> char {
        match self {
            Block::A => 'a',
            Block::G => 'g',
            Block::Y => 'y',
            Block::X => 'x',
        }
    }
}

impl fmt::Display for Block {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.prefix())
    }
}

/// A non-group generator of degree one.
///
/// `chi[i]` is the exponent k in the exchange rule g_i·ℓ = ζ^k ℓ·g_i.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Letter {
    pub name: String,
    pub block: Block,
    pub index: usize,
    pub chi: Vec<i64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Symbol {
    Letter(u8),
    Group(usize),
}

/// A block-partitioned alphabet: degree-one letters (blocks A, Y, X) plus
/// commuting invertible group generators (block G).
///
/// Letter ids are assigned in (block, index) order, so comparing ids
/// compares generators in the monomial order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Alphabet {
    order: u32,
    letters: Vec<Letter>,
    groups: Vec<String>,
    by_name: HashMap<String, Symbol>,
}

impl Alphabet {
    pub fn new(
        order: u32,
        mut letters: Vec<Letter>,
        groups: Vec<String>,
    ) -> Result<Self, RewriteError> {
        if letters.len() > u8::MAX as usize {
            return Err(RewriteError::Alphabet("too many letters".into()));
        }
        letters.sort_by_key(|l| (l.block, l.index));
        let mut by_name = HashMap::new();
        for (id, l) in letters.iter().enumerate() {
            if l.block == Block::G {
                return Err(RewriteError::Alphabet(format!(
                    "{} must be a group generator",
                    l.name
                )));
            }
            if l.chi.len() != groups.len() {
                return Err(RewriteError::Alphabet(format!(
                    "{} has a malformed character",
                    l.name
                )));
            }
            if by_name
                .insert(l.name.clone(), Symbol::Letter(id as u8))
                .is_some()
            {
                return Err(RewriteError::Alphabet(format!("duplicate name {}", l.name)));
            }
        }
        for (i, g) in groups.iter().enumerate() {
            if by_name.insert(g.clone(), Symbol::Group(i)).is_some() {
                return Err(RewriteError::Alphabet(format!("duplicate name {g}")));
            }
        }
        Ok(Alphabet {
            order,
            letters,
            groups,
            by_name,
        })
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn letter(&self, id: u8) -> &Letter {
        &self.letters[id as usize]
    }

    pub fn groups(&self) -> &[String] {
        &self.groups
    }

    pub fn group_count(&self) -> usize {
        self.groups.len()
    }

    pub fn lookup(&self, name: &str) -> Option<Symbol> {
        self.by_name.get(name).copied()
    }

    pub fn find(&self, block: Block, index: usize) -> Option<u8> {
        self.letters
            .iter()
            .position(|l| l.block == block && l.index == index)
            .map(|p| p as u8)
    }

    /// Exponent of ζ picked up when g^exps moves right past letter `id`.
    pub fn exchange_exponent(&self, id: u8, exps: &[i32]) -> i64 {
        let chi = &self.letters[id as usize].chi;
        let k: i64 = chi.iter().zip(exps).map(|(&c, &e)| c * e as i64).sum();
        k.rem_euclid(self.order as i64)
    }

    /// Exponent of ζ picked up when g^exps moves right past a whole word.
    pub fn word_exchange_exponent(&self, letters: &[u8], exps: &[i32]) -> i64 {
        if exps.iter().all(|&e| e == 0) {
            return 0;
        }
        let k: i64 = letters
            .iter()
            .map(|&l| self.exchange_exponent(l, exps))
            .sum();
        k.rem_euclid(self.order as i64)
    }

    /// Character of a word as a vector of ζ-exponents, one per group generator.
    pub fn word_character(&self, letters: &[u8]) -> Vec<i64> {
        let n = self.order as i64;
        (0..self.groups.len())
            .map(|i| {
                letters
                    .iter()
                    .map(|&l| self.letters[l as usize].chi[i])
                    .sum::<i64>()
                    .rem_euclid(n)
            })
            .collect()
    }
}
