use std::cmp::Ordering;

use smallvec::SmallVec;

use super::alphabet::{Alphabet, Block};

pub type Letters = SmallVec<[u8; 24]>;
pub type GroupExps = SmallVec<[i32; 4]>;

/// A monomial `ℓ₁⋯ℓ_m · g^e`: degree-one letters followed by a Laurent
/// monomial in the commuting group generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Word {
    pub letters: Letters,
    pub group: GroupExps,
}

impl Word {
    pub fn one(groups: usize) -> Self {
        Word {
            letters: Letters::new(),
            group: smallvec::smallvec![0; groups],
        }
    }

    pub fn new(letters: &[u8], group: &[i32]) -> Self {
        Word {
            letters: Letters::from_slice(letters),
            group: GroupExps::from_slice(group),
        }
    }

    pub fn letter(id: u8, groups: usize) -> Self {
        let mut w = Self::one(groups);
        w.letters.push(id);
        w
    }

    pub fn degree(&self) -> usize {
        self.letters.len()
    }

    pub fn is_one(&self) -> bool {
        self.letters.is_empty() && self.group.iter().all(|&e| e == 0)
    }

    pub fn has_group(&self) -> bool {
        self.group.iter().any(|&e| e != 0)
    }

    pub fn block_degree(&self, alphabet: &Alphabet, block: Block) -> usize {
        if block == Block::G {
            return self.group.iter().map(|e| e.unsigned_abs() as usize).sum();
        }
        self.letters
            .iter()
            .filter(|&&l| alphabet.letter(l).block == block)
            .count()
    }

    /// Multidegree over generator indices 1..=theta, ignoring blocks.
    pub fn multidegree(&self, alphabet: &Alphabet, theta: usize) -> Vec<u32> {
        let mut d = vec![0u32; theta];
        for &l in &self.letters {
            let i = alphabet.letter(l).index;
            if i >= 1 && i <= theta {
                d[i - 1] += 1;
            }
        }
        d
    }

    /// Right multiplication by a group element.
    pub fn shift_group(&mut self, exps: &[i32]) {
        for (e, f) in self.group.iter_mut().zip(exps) {
            *e += f;
        }
    }

    /// Renders the word with powers collapsed, letters of block A first,
    /// then the group part, then the remaining letters. The group part stays
    /// at the end when it does not commute with the trailing letters.
    pub fn render(&self, alphabet: &Alphabet) -> String {
        let split = self
            .letters
            .iter()
            .position(|&l| alphabet.letter(l).block != Block::A)
            .unwrap_or(self.letters.len());
        let (head, tail) = self.letters.split_at(split);
        let mut parts = Vec::new();
        push_powers(&mut parts, head, alphabet);
        let group_commutes = alphabet.word_exchange_exponent(tail, &self.group) == 0
            && tail
                .iter()
                .all(|&l| alphabet.letter(l).chi.iter().all(|&c| c == 0));
        if group_commutes {
            push_group(&mut parts, &self.group, alphabet);
            push_powers(&mut parts, tail, alphabet);
        } else {
            push_powers(&mut parts, tail, alphabet);
            push_group(&mut parts, &self.group, alphabet);
        }
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }

    /// Names of the factors in print order; group powers appear as `g1^k`.
    pub fn factor_names(&self, alphabet: &Alphabet) -> Vec<String> {
        let mut out: Vec<String> = Vec::new();
        let split = self
            .letters
            .iter()
            .position(|&l| alphabet.letter(l).block != Block::A)
            .unwrap_or(self.letters.len());
        for &l in &self.letters[..split] {
            out.push(alphabet.letter(l).name.clone());
        }
        for (i, &e) in self.group.iter().enumerate() {
            match e {
                0 => {}
                1 => out.push(alphabet.groups()[i].clone()),
                _ => out.push(format!("{}^{}", alphabet.groups()[i], e)),
            }
        }
        for &l in &self.letters[split..] {
            out.push(alphabet.letter(l).name.clone());
        }
        out
    }
}

fn push_powers(parts: &mut Vec<String>, letters: &[u8], alphabet: &Alphabet) {
    let mut i = 0;
    while i < letters.len() {
        let mut j = i;
        while j < letters.len() && letters[j] == letters[i] {
            j += 1;
        }
        let name = &alphabet.letter(letters[i]).name;
        if j - i == 1 {
            parts.push(name.clone());
        } else {
            parts.push(format!("{name}^{}", j - i));
        }
        i = j;
    }
}

fn push_group(parts: &mut Vec<String>, exps: &[i32], alphabet: &Alphabet) {
    for (i, &e) in exps.iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(alphabet.groups()[i].clone()),
            _ => parts.push(format!("{}^{}", alphabet.groups()[i], e)),
        }
    }
}

impl Ord for Word {
    /// Degree first, then letters left to right, then group exponents.
    fn cmp(&self, other: &Self) -> Ordering {
        self.letters
            .len()
            .cmp(&other.letters.len())
            .then_with(|| self.letters.cmp(&other.letters))
            .then_with(|| self.group.cmp(&other.group))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
