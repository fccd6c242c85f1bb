//! Higher-block recoding and the constant-length substitution it induces.
//!
//! Sliding a window of `N` letters over a sequence gives a sequence over
//! the occurring windows. For a substitution fixed point and odd `N`, the
//! image of a window centered at `n` determines the windows centered at
//! `Q*n, ..., Q*n + Q - 1`, which defines a constant-length substitution on
//! window symbols.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::digits::DigitSystem;
use crate::error::{Error, Result};
use crate::fixed_point::{CentralPatches, PatchOptions, PositionedWord};
use crate::language::{complexity_profile, stabilize, ComplexityProfile};
use crate::substitution::{Configuration, GappedSubstitution, SubstitutionSpec};
use crate::word::{Alphabet, Letter, Word};

/// Canonical names for the eight binary windows of length 3. Each string
/// lists a window right to left, so the window `(x, y, z)` in sequence
/// order is named by `z y x`.
pub const CANONICAL_BINARY: [(&str, &str); 8] = [
    ("1", "aaa"),
    ("2", "baa"),
    ("3", "aba"),
    ("4", "bba"),
    ("5", "aab"),
    ("6", "bab"),
    ("7", "abb"),
    ("8", "bbb"),
];

/// Bijection between windows of a source alphabet and block-symbol labels.
/// Block letter `i` is the `i`-th entry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolTable {
    source: Alphabet,
    window: usize,
    labels: Vec<String>,
    windows: Vec<Word>,
    index: HashMap<Word, usize>,
}

impl SymbolTable {
    fn empty(source: Alphabet, window: usize) -> Self {
        SymbolTable {
            source,
            window,
            labels: Vec::new(),
            windows: Vec::new(),
            index: HashMap::new(),
        }
    }

    fn push(&mut self, label: String, window: Word) -> usize {
        let i = self.windows.len();
        self.index.insert(window.clone(), i);
        self.labels.push(label);
        self.windows.push(window);
        i
    }

    /// Labels `1, 2, ...` in order of first occurrence in `word`.
    pub fn by_first_occurrence(source: Alphabet, word: &[Letter], window: usize) -> Result<Self> {
        if window == 0 {
            return Err(Error::ZeroLength);
        }
        let mut table = SymbolTable::empty(source, window);
        for w in word.windows(window) {
            if !table.index.contains_key(w) {
                let label = (table.len() + 1).to_string();
                table.push(label, w.to_vec());
            }
        }
        Ok(table)
    }

    /// The canonical length-3 table when `source` is the alphabet `{a, b}`.
    pub fn canonical_binary(source: &Alphabet) -> Option<Self> {
        let mut names: Vec<&str> = source.names().iter().map(String::as_str).collect();
        names.sort_unstable();
        if names != ["a", "b"] {
            return None;
        }
        let mut table = SymbolTable::empty(source.clone(), 3);
        for (label, reversed) in CANONICAL_BINARY {
            let mut window = source.parse_word(reversed).expect("a/b letters");
            window.reverse();
            table.push(label.to_string(), window);
        }
        Some(table)
    }

    /// Keeps only the entries whose window satisfies `keep`, preserving labels.
    pub fn retain(&self, mut keep: impl FnMut(&[Letter]) -> bool) -> Self {
        let mut table = SymbolTable::empty(self.source.clone(), self.window);
        for (label, w) in self.labels.iter().zip(&self.windows) {
            if keep(w) {
                table.push(label.clone(), w.clone());
            }
        }
        table
    }

    pub fn window(&self) -> usize {
        self.window
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn source(&self) -> &Alphabet {
        &self.source
    }

    pub fn symbol(&self, window: &[Letter]) -> Option<Letter> {
        self.index.get(window).map(|&i| Letter(i as u16))
    }

    pub fn label(&self, symbol: Letter) -> &str {
        &self.labels[symbol.index()]
    }

    pub fn label_of(&self, window: &[Letter]) -> Option<&str> {
        self.symbol(window).map(|s| self.label(s))
    }

    pub fn window_of(&self, symbol: Letter) -> &[Letter] {
        &self.windows[symbol.index()]
    }

    pub fn entries(&self) -> impl Iterator<Item = (&str, &[Letter])> {
        self.labels.iter().map(String::as_str).zip(self.windows.iter().map(Vec::as_slice))
    }

    /// Alphabet of block symbols, named by label.
    pub fn block_alphabet(&self) -> Result<Alphabet> {
        Alphabet::new(&self.labels)
    }

    /// Recodes `word`; output symbol `i` stands for `word[i..i + N]`.
    pub fn recode(&self, word: &[Letter]) -> Result<Word> {
        if word.len() < self.window {
            return Err(Error::WordTooShort {
                length: word.len(),
                needed: self.window,
            });
        }
        word.windows(self.window)
            .map(|w| {
                self.symbol(w)
                    .ok_or_else(|| Error::UnknownWindow(self.source.render(w)))
            })
            .collect()
    }

    /// Label -> window (in sequence order).
    pub fn to_map(&self) -> BTreeMap<String, String> {
        self.entries()
            .map(|(l, w)| (l.to_string(), self.source.render(w)))
            .collect()
    }
}

/// The canonical `{a, b}` table for windows of length 3.
pub fn canonical_binary_labels() -> SymbolTable {
    let ab = Alphabet::new(&["a", "b"]).expect("valid");
    SymbolTable::canonical_binary(&ab).expect("binary alphabet")
}

/// Recodes `word` with windows of length `window` (any length >= 1),
/// labelling symbols by first occurrence.
pub fn higher_block_word(alphabet: &Alphabet, word: &[Letter], window: usize) -> Result<(Word, SymbolTable)> {
    if window == 0 {
        return Err(Error::ZeroLength);
    }
    if word.len() < window {
        return Err(Error::WordTooShort {
            length: word.len(),
            needed: window,
        });
    }
    let table = SymbolTable::by_first_occurrence(alphabet.clone(), word, window)?;
    let recoded = table.recode(word)?;
    Ok((recoded, table))
}

/// A centered higher-block recoding of a fixed point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockRecoding {
    table: SymbolTable,
    source: PositionedWord,
}

impl BlockRecoding {
    /// Recodes the fixed point of `sub` grown from `seed`. Uses the
    /// canonical table for `{a, b}` with `N = 3`, first-occurrence labels
    /// otherwise; either way only occurring windows get a symbol.
    pub fn of_fixed_point(sub: &GappedSubstitution, seed: Letter, window: usize) -> Result<Self> {
        check_odd(window)?;
        let profile = complexity_profile(sub, seed, window)?;
        Self::from_word(sub.alphabet(), profile.source, window)
    }

    /// Recodes a positioned word that contains every window of interest.
    pub fn from_word(alphabet: &Alphabet, source: PositionedWord, window: usize) -> Result<Self> {
        check_odd(window)?;
        if source.len() < window {
            return Err(Error::WordTooShort {
                length: source.len(),
                needed: window,
            });
        }
        let table = match SymbolTable::canonical_binary(alphabet).filter(|_| window == 3) {
            Some(canon) => {
                let occurring: BTreeSet<&[Letter]> = source.letters.windows(window).collect();
                canon.retain(|w| occurring.contains(w))
            }
            None => SymbolTable::by_first_occurrence(alphabet.clone(), &source.letters, window)?,
        };
        Ok(BlockRecoding { table, source })
    }

    pub fn table(&self) -> &SymbolTable {
        &self.table
    }

    pub fn window(&self) -> usize {
        self.table.window
    }

    pub fn source(&self) -> &PositionedWord {
        &self.source
    }

    fn half(&self) -> i64 {
        (self.table.window / 2) as i64
    }

    /// The recoded source. A symbol sits at the position of its window's
    /// center.
    pub fn recoded(&self) -> PositionedWord {
        let letters = self.table.recode(&self.source.letters).expect("table built from source");
        PositionedWord::new(self.source.start + self.half(), letters)
    }

    /// Derives the constant-length substitution on block symbols.
    pub fn derive(&self, sub: &GappedSubstitution) -> Result<BlockSubstitution> {
        let window = self.table.window;
        let half = self.half();
        let q = sub.modulus();
        let block_alphabet = self.table.block_alphabet()?;
        let mut rules = Vec::with_capacity(self.table.len());
        for (_, w) in self.table.entries() {
            let image = sub.substitute_config(&Configuration::from_word(-half, w))?;
            let (lo, hi) = (-half, q - 1 + half);
            let span = image.read(lo, hi).ok_or_else(|| Error::Coverage {
                window,
                missing: image.missing_in(lo, hi),
            })?;
            rules.push(self.table.recode(&span)?);
        }
        let substitution = GappedSubstitution::new(block_alphabet, DigitSystem::contiguous(q)?, rules)?;
        Ok(BlockSubstitution {
            substitution,
            recoding: self.clone(),
        })
    }
}

fn check_odd(window: usize) -> Result<()> {
    if window == 0 {
        Err(Error::ZeroLength)
    } else if window.is_multiple_of(2) {
        Err(Error::EvenWindow { window })
    } else {
        Ok(())
    }
}

/// Constant-length substitution on block symbols, with the recoding that
/// produced it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockSubstitution {
    substitution: GappedSubstitution,
    recoding: BlockRecoding,
}

impl BlockSubstitution {
    pub fn substitution(&self) -> &GappedSubstitution {
        &self.substitution
    }

    pub fn recoding(&self) -> &BlockRecoding {
        &self.recoding
    }

    pub fn table(&self) -> &SymbolTable {
        &self.recoding.table
    }

    pub fn symbol(&self, label: &str) -> Result<Letter> {
        self.substitution.alphabet().letter(label)
    }

    /// Image of the symbol named `label`, as labels.
    pub fn image_labels(&self, label: &str) -> Result<Vec<String>> {
        let x = self.symbol(label)?;
        Ok(self
            .substitution
            .rule(x)
            .iter()
            .map(|&y| self.table().label(y).to_string())
            .collect())
    }

    /// Block symbol sitting at position 0 of the recoded fixed point, when
    /// the source covers the whole window around the origin.
    pub fn origin_symbol(&self) -> Option<Letter> {
        self.recoding.recoded().get(0)
    }

    /// Consecutive symbols of every image overlap in `N - 1` letters, and so
    /// do the last symbol of `T(x)` and the first of `T(y)` whenever `x y`
    /// occurs in the recoded sequence.
    pub fn check_overlaps(&self) -> bool {
        let table = self.table();
        let n = table.window;
        let fits = |x: Letter, y: Letter| table.window_of(x)[1..] == table.window_of(y)[..n - 1];
        let inner = self
            .substitution
            .alphabet()
            .letters()
            .all(|x| self.substitution.rule(x).windows(2).all(|p| fits(p[0], p[1])));
        let recoded = self.recoding.recoded().letters;
        let across = recoded.windows(2).all(|p| {
            let left = *self.substitution.rule(p[0]).last().expect("nonempty rule");
            let right = self.substitution.rule(p[1])[0];
            fits(left, right)
        });
        inner && across
    }

    /// The derived rule file: the substitution plus window and symbol table.
    pub fn to_spec(&self) -> SubstitutionSpec {
        let mut spec = self.substitution.to_spec();
        spec.window = Some(self.table().window);
        spec.symbol_table = Some(self.table().to_map());
        spec
    }
}

pub fn derive_block_substitution(sub: &GappedSubstitution, seed: Letter, window: usize) -> Result<BlockSubstitution> {
    BlockRecoding::of_fixed_point(sub, seed, window)?.derive(sub)
}

/// Complexity of the width-`window` recoding of the fixed point, read from
/// recoded central patches with the same stabilization rule as the source.
pub fn recoded_profile(sub: &GappedSubstitution, seed: Letter, window: usize, n_max: usize) -> Result<ComplexityProfile> {
    if window == 0 {
        return Err(Error::ZeroLength);
    }
    let mut patches = CentralPatches::new(sub, seed, PatchOptions::default())?;
    let mut symbols: HashMap<Word, Letter> = HashMap::new();
    stabilize(
        || {
            let (level, patch) = patches.next_patch()?;
            let letters = patch
                .letters
                .windows(window)
                .map(|w| {
                    let next = Letter(symbols.len() as u16);
                    *symbols.entry(w.to_vec()).or_insert(next)
                })
                .collect();
            Ok((level, PositionedWord::new(patch.start, letters)))
        },
        n_max,
    )
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShiftCheck {
    pub window: usize,
    /// `p(n + N - 1)` of the source, for `n = 1..=n_max`.
    pub original: Vec<usize>,
    /// `p(n)` of the recoded sequence, for `n = 1..=n_max`.
    pub recoded: Vec<usize>,
}

impl ShiftCheck {
    pub fn holds(&self) -> bool {
        self.original == self.recoded
    }
}

/// Compares `p_recoded(n)` with `p(n + N - 1)` for `1 <= n <= n_max`.
pub fn verify_complexity_shift(
    sub: &GappedSubstitution,
    seed: Letter,
    window: usize,
    n_max: usize,
) -> Result<ShiftCheck> {
    if n_max == 0 || window == 0 {
        return Err(Error::ZeroLength);
    }
    let original = complexity_profile(sub, seed, n_max + window - 1)?;
    let recoded = recoded_profile(sub, seed, window, n_max)?;
    Ok(ShiftCheck {
        window,
        original: original.p[window - 1..].to_vec(),
        recoded: recoded.p,
    })
}
