//! Words over named generators and their evaluation in a representation.
//!
//! Words are written over generator names with primed inverses, either
//! whitespace-separated (`"a b' c"`) or compact when all names are single
//! characters (`"ab'c"`).

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::form::AmbientIsometry;

/// One letter of a word: a generator index and whether it is inverted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct Letter {
    pub gen: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn inverted(self) -> Letter {
        Letter { gen: self.gen, inverse: !self.inverse }
    }
}

/// A reduced or unreduced word over the generators of a [`GroupRep`].
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Default)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inverted()).collect())
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// Remove adjacent inverse pairs.
    pub fn reduced(&self) -> Word {
        let mut out: Vec<Letter> = Vec::with_capacity(self.0.len());
        for &l in &self.0 {
            if let Some(&last) = out.last() {
                if last.gen == l.gen && last.inverse != l.inverse {
                    out.pop();
                    continue;
                }
            }
            out.push(l);
        }
        Word(out)
    }

    /// Cyclically reduced form (conjugacy-class representative candidate).
    pub fn cyclically_reduced(&self) -> Word {
        let mut w = self.reduced().0;
        while w.len() >= 2 {
            let first = w[0];
            let last = *w.last().unwrap();
            if first.gen == last.gen && first.inverse != last.inverse {
                w.remove(0);
                w.pop();
            } else {
                break;
            }
        }
        Word(w)
    }

    /// Canonical key for the conjugacy class: the lexicographically smallest
    /// rotation of the cyclically reduced word.
    pub fn conjugacy_key(&self) -> Word {
        let w = self.cyclically_reduced();
        if w.0.len() <= 1 {
            return w;
        }
        let n = w.0.len();
        let mut best = w.clone();
        for k in 1..n {
            let rot = Word(w.0[k..].iter().chain(&w.0[..k]).cloned().collect());
            if rot < best {
                best = rot;
            }
        }
        best
    }
}

/// A homomorphism from a finitely generated group into the isometry group,
/// given on named generators.
#[derive(Debug, Clone)]
pub struct GroupRep {
    names: Vec<String>,
    mats: Vec<AmbientIsometry>,
    invs: Vec<AmbientIsometry>,
    relations: Vec<Word>,
}

impl GroupRep {
    pub fn new(generators: Vec<(String, AmbientIsometry)>) -> Result<Self> {
        if generators.is_empty() {
            return Err(Error::InvalidInput("representation needs generators"));
        }
        let dim = generators[0].1.dim();
        for (_, g) in &generators {
            if g.dim() != dim {
                return Err(Error::DimensionMismatch { expected: dim, got: g.dim() });
            }
        }
        let names = generators.iter().map(|(n, _)| n.clone()).collect();
        let mats: Vec<AmbientIsometry> = generators.into_iter().map(|(_, g)| g).collect();
        let invs = mats.iter().map(|g| g.inverse()).collect();
        Ok(GroupRep { names, mats, invs, relations: Vec::new() })
    }

    pub fn with_relations(mut self, relations: Vec<Word>) -> Self {
        self.relations = relations;
        self
    }

    pub fn dim(&self) -> usize {
        self.mats[0].dim()
    }

    pub fn generator_count(&self) -> usize {
        self.mats.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn relations(&self) -> &[Word] {
        &self.relations
    }

    pub fn generator(&self, idx: usize) -> &AmbientIsometry {
        &self.mats[idx]
    }

    fn name_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Parse a word string over the generator names.
    pub fn parse(&self, s: &str) -> Result<Word> {
        let mut letters = Vec::new();
        let tokens: Vec<&str> = s.split_whitespace().collect();
        if tokens.is_empty() {
            return Ok(Word(letters));
        }
        for tok in tokens {
            let trimmed = tok.trim_end_matches('\'');
            let primes = tok.len() - trimmed.len();
            if let Some(idx) = self.name_index(trimmed) {
                if primes > 1 {
                    return Err(Error::UnknownGenerator(tok.to_string()));
                }
                letters.push(Letter { gen: idx, inverse: primes == 1 });
                continue;
            }
            // Compact form: single-character names with optional primes.
            let chars: Vec<char> = tok.chars().collect();
            let mut i = 0;
            while i < chars.len() {
                let name = chars[i].to_string();
                let idx = self
                    .name_index(&name)
                    .ok_or_else(|| Error::UnknownGenerator(name.clone()))?;
                let mut inverse = false;
                if i + 1 < chars.len() && chars[i + 1] == '\'' {
                    inverse = true;
                    i += 1;
                }
                letters.push(Letter { gen: idx, inverse });
                i += 1;
            }
        }
        Ok(Word(letters))
    }

    /// Render a word back to the whitespace-separated string form.
    pub fn format(&self, w: &Word) -> String {
        let mut out = String::new();
        for (k, l) in w.0.iter().enumerate() {
            if k > 0 {
                out.push(' ');
            }
            out.push_str(&self.names[l.gen]);
            if l.inverse {
                out.push('\'');
            }
        }
        out
    }

    /// Evaluate the homomorphism on a word.
    pub fn evaluate(&self, w: &Word) -> AmbientIsometry {
        let mut m = AmbientIsometry::identity(self.dim());
        for l in &w.0 {
            let g = if l.inverse { &self.invs[l.gen] } else { &self.mats[l.gen] };
            m = m.compose(g);
        }
        m
    }

    /// Largest residual of the stored relations.
    pub fn relation_residual(&self) -> f64 {
        self.relations
            .iter()
            .map(|r| self.evaluate(r).matrix().distance_to_identity())
            .fold(0.0, f64::max)
    }

    /// All nonempty reduced words of length at most `max_len`.
    pub fn reduced_words(&self, max_len: usize) -> Vec<Word> {
        let mut out: Vec<Word> = Vec::new();
        let mut frontier: Vec<Word> = alloc::vec![Word::default()];
        for _ in 0..max_len {
            let mut next = Vec::new();
            for w in &frontier {
                for g in 0..self.mats.len() {
                    for inverse in [false, true] {
                        let l = Letter { gen: g, inverse };
                        if let Some(&last) = w.0.last() {
                            if last.gen == l.gen && last.inverse != l.inverse {
                                continue;
                            }
                        }
                        let mut v = w.0.clone();
                        v.push(l);
                        next.push(Word(v));
                    }
                }
            }
            out.extend(next.iter().cloned());
            frontier = next;
        }
        out
    }

    /// One representative per conjugacy-class key among reduced words of
    /// length at most `max_len`.
    pub fn conjugacy_representatives(&self, max_len: usize) -> Vec<Word> {
        let mut seen: alloc::collections::BTreeSet<Word> = alloc::collections::BTreeSet::new();
        let mut out = Vec::new();
        for w in self.reduced_words(max_len) {
            let key = w.conjugacy_key();
            if key.is_empty() {
                continue;
            }
            if seen.insert(key.clone()) {
                out.push(key);
            }
        }
        out
    }
}
