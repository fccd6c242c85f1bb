//! Letters, alphabets and words.
//!
//! A [`Letter`] is an index into an [`Alphabet`]; the alphabet owns the
//! printable names. Words are plain `Vec<Letter>` / `&[Letter]`.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter(pub u16);

impl Letter {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

pub type Word = Vec<Letter>;

/// Finite ordered alphabet of named symbols.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Alphabet {
    names: Vec<String>,
    lookup: HashMap<String, Letter>,
}

impl Alphabet {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Result<Self> {
        if names.is_empty() {
            return Err(Error::Alphabet("must not be empty".into()));
        }
        if names.len() > u16::MAX as usize {
            return Err(Error::Alphabet(format!("too many letters ({})", names.len())));
        }
        let mut lookup = HashMap::with_capacity(names.len());
        let mut owned = Vec::with_capacity(names.len());
        for (i, name) in names.iter().enumerate() {
            let name = name.as_ref();
            if name.is_empty() {
                return Err(Error::Alphabet("letter names must be nonempty".into()));
            }
            if lookup.insert(name.to_string(), Letter(i as u16)).is_some() {
                return Err(Error::Alphabet(format!("duplicate letter `{name}`")));
            }
            owned.push(name.to_string());
        }
        Ok(Alphabet { names: owned, lookup })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn letter(&self, name: &str) -> Result<Letter> {
        self.lookup
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownLetter(name.to_string()))
    }

    pub fn contains(&self, letter: Letter) -> bool {
        letter.index() < self.names.len()
    }

    pub fn name(&self, letter: Letter) -> &str {
        &self.names[letter.index()]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> + '_ {
        (0..self.names.len()).map(|i| Letter(i as u16))
    }

    /// Parses a word. Single-character alphabets accept a bare string such
    /// as `"baab"`; otherwise names are separated by commas or whitespace.
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        if self.single_char() && !text.contains([',', ' ']) {
            text.chars().map(|c| self.letter(c.encode_utf8(&mut [0; 4]))).collect()
        } else {
            text.split([',', ' '])
                .filter(|s| !s.is_empty())
                .map(|s| self.letter(s))
                .collect()
        }
    }

    pub fn render(&self, word: &[Letter]) -> String {
        let sep = if self.single_char() { "" } else { "," };
        word.iter()
            .map(|&l| self.name(l))
            .collect::<Vec<_>>()
            .join(sep)
    }

    fn single_char(&self) -> bool {
        self.names.iter().all(|n| n.chars().count() == 1)
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.names.join(", "))
    }
}
