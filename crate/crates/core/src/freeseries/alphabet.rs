use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Generator {
    pub name: String,
    pub degree: i32,
}

impl Generator {
    pub fn new(name: impl Into<String>, degree: i32) -> Self {
        Generator { name: name.into(), degree }
    }
}

/// An ordered, nonempty list of graded generators. The order fixes the
/// canonical ordering of words.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Alphabet {
    generators: Vec<Generator>,
}

impl Alphabet {
    pub fn new(generators: Vec<Generator>) -> Result<Arc<Self>> {
        if generators.is_empty() || generators.len() > u8::MAX as usize {
            return Err(Error::AlphabetSize);
        }
        for (i, g) in generators.iter().enumerate() {
            if generators[..i].iter().any(|h| h.name == g.name) {
                return Err(Error::DuplicateGenerator(g.name.clone()));
            }
        }
        Ok(Arc::new(Alphabet { generators }))
    }

    /// Convenience constructor from `(name, degree)` pairs.
    pub fn from_pairs(pairs: &[(&str, i32)]) -> Result<Arc<Self>> {
        Self::new(pairs.iter().map(|&(n, d)| Generator::new(n, d)).collect())
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn generator(&self, letter: Letter) -> &Generator {
        &self.generators[letter.0 as usize]
    }

    pub fn degree(&self, letter: Letter) -> i32 {
        self.generators[letter.0 as usize].degree
    }

    pub fn letter(&self, name: &str) -> Result<Letter> {
        self.generators
            .iter()
            .position(|g| g.name == name)
            .map(|i| Letter(i as u8))
            .ok_or_else(|| Error::UnknownGenerator(name.to_string()))
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> {
        (0..self.generators.len()).map(|i| Letter(i as u8))
    }

    pub fn word_degree(&self, word: &Word) -> i32 {
        word.0.iter().map(|&l| self.degree(Letter(l))).sum()
    }

    pub fn word_names(&self, word: &Word) -> Vec<String> {
        word.0.iter().map(|&l| self.generators[l as usize].name.clone()).collect()
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, g) in self.generators.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}:{}", g.name, g.degree)?;
        }
        write!(f, "}}")
    }
}

/// Index of a generator within its alphabet.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter(pub u8);

/// A monomial of the tensor algebra. Ordered length first, then
/// lexicographically by letter index.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Word(pub Vec<u8>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letter(l: Letter) -> Self {
        Word(vec![l.0])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> + '_ {
        self.0.iter().map(|&l| Letter(l))
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.0.len() + other.0.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn count(&self, l: Letter) -> usize {
        self.0.iter().filter(|&&x| x == l.0).count()
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
