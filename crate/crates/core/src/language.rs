//! Factor complexity `p(n)`, right special counts `s(n)` and right special
//! trees of substitution fixed points.
//!
//! Counts come from finite central patches. A profile is accepted once the
//! counts for every length up to `n_max + 1` agree across two consecutive
//! levels and the patch is at least `4 * n_max` letters long.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::factors::FactorStats;
use crate::fixed_point::{CentralPatches, PatchOptions, PositionedWord};
use crate::substitution::GappedSubstitution;
use crate::word::{Alphabet, Letter, Word};

/// Minimum patch length, as a multiple of `n_max`, before counts are trusted.
pub const LENGTH_MARGIN: usize = 4;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WordSet {
    pub length: usize,
    pub words: BTreeSet<Word>,
}

impl WordSet {
    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn contains(&self, word: &[Letter]) -> bool {
        self.words.contains(word)
    }
}

/// All distinct factors of length `n`.
pub fn words_of_length(word: &[Letter], n: usize) -> Result<WordSet> {
    if n == 0 {
        return Err(Error::ZeroLength);
    }
    if n > word.len() {
        return Err(Error::WordTooShort {
            length: word.len(),
            needed: n,
        });
    }
    Ok(WordSet {
        length: n,
        words: word.windows(n).map(<[Letter]>::to_vec).collect(),
    })
}

/// Continuation letters of each length-`n` prefix of a set of `n + 1` words.
fn extensions(words: &WordSet) -> BTreeMap<&[Letter], BTreeSet<Letter>> {
    let n = words.length - 1;
    let mut ext: BTreeMap<&[Letter], BTreeSet<Letter>> = BTreeMap::new();
    for w in &words.words {
        ext.entry(&w[..n]).or_default().insert(w[n]);
    }
    ext
}

/// Length-`n` prefixes of `words_n_plus_1` with at least two continuations.
pub fn right_special_words(words_n_plus_1: &WordSet) -> WordSet {
    let n = words_n_plus_1.length.saturating_sub(1);
    if n == 0 {
        return WordSet {
            length: 0,
            words: BTreeSet::new(),
        };
    }
    WordSet {
        length: n,
        words: extensions(words_n_plus_1)
            .into_iter()
            .filter(|(_, e)| e.len() >= 2)
            .map(|(w, _)| w.to_vec())
            .collect(),
    }
}

/// Sum of `(continuations - 1)` over the length-`n` prefixes.
pub fn extension_excess(words_n_plus_1: &WordSet) -> usize {
    extensions(words_n_plus_1).values().map(|e| e.len() - 1).sum()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexityProfile {
    /// `p[i]` is `p(i + 1)`.
    pub p: Vec<usize>,
    /// `s[i]` is `s(i + 1)`.
    pub s: Vec<usize>,
    /// `excess[i]` is the summed surplus continuations at length `i + 1`.
    pub excess: Vec<usize>,
    pub max_branching: usize,
    pub stabilized_at_level: u32,
    /// The patch the counts were read from.
    pub source: PositionedWord,
}

impl ComplexityProfile {
    pub fn n_max(&self) -> usize {
        self.p.len()
    }

    /// `p(n)` for `1 <= n <= n_max`.
    pub fn p_at(&self, n: usize) -> usize {
        self.p[n - 1]
    }

    pub fn s_at(&self, n: usize) -> usize {
        self.s[n - 1]
    }
}

/// Reads counts from successive levels until they stop changing.
///
/// `next_level` yields `(level, word)` with words that extend each other.
pub fn stabilize<F>(mut next_level: F, n_max: usize) -> Result<ComplexityProfile>
where
    F: FnMut() -> Result<(u32, PositionedWord)>,
{
    if n_max == 0 {
        return Err(Error::ZeroLength);
    }
    let mut previous: Option<(FactorStats, u32)> = None;
    loop {
        let (level, word) = match next_level() {
            Ok(x) => x,
            Err(e @ (Error::DepthCap { .. } | Error::Overflow { .. })) => {
                return Err(match previous {
                    Some((stats, level)) => Error::NotStabilized {
                        level,
                        lower_bound: stats.p[..n_max].to_vec(),
                    },
                    None => e,
                })
            }
            Err(e) => return Err(e),
        };
        if word.len() < n_max + 1 {
            previous = None;
            continue;
        }
        let stats = FactorStats::of(&word.letters, n_max + 1);
        let settled = previous
            .as_ref()
            .is_some_and(|(prev, _)| prev.p == stats.p && prev.s == stats.s);
        if settled && word.len() >= LENGTH_MARGIN * n_max {
            return Ok(ComplexityProfile {
                p: stats.p[..n_max].to_vec(),
                s: stats.s[..n_max].to_vec(),
                excess: stats.excess[..n_max].to_vec(),
                max_branching: stats.max_branching,
                stabilized_at_level: level,
                source: word,
            });
        }
        previous = Some((stats, level));
    }
}

pub fn complexity_profile(sub: &GappedSubstitution, seed: Letter, n_max: usize) -> Result<ComplexityProfile> {
    complexity_profile_with(sub, seed, n_max, PatchOptions::default())
}

pub fn complexity_profile_with(
    sub: &GappedSubstitution,
    seed: Letter,
    n_max: usize,
    options: PatchOptions,
) -> Result<ComplexityProfile> {
    let mut patches = CentralPatches::new(sub, seed, options)?;
    stabilize(|| patches.next_patch(), n_max)
}

/// Checks `p(n+1) = p(n) + s(n)` for `n < n_max` when `max_branching <= 2`,
/// otherwise `p(n+1) = p(n) + sum(continuations - 1)`.
pub fn check_special_identity(profile: &ComplexityProfile, max_branching: usize) -> bool {
    let increments = if max_branching <= 2 { &profile.s } else { &profile.excess };
    profile
        .p
        .windows(2)
        .zip(increments)
        .all(|(pair, &inc)| pair[1] == pair[0] + inc)
}

/// Right special words up to a depth, linked to their suffixes one letter
/// shorter.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RightSpecialTree {
    alphabet: Alphabet,
    /// `levels[i]` holds the right special words of length `i + 1`.
    levels: Vec<BTreeSet<Word>>,
}

impl RightSpecialTree {
    /// Builds the tree from a word long enough to contain every factor of
    /// length `depth + 1`.
    pub fn from_word(alphabet: Alphabet, word: &[Letter], depth: usize) -> Result<Self> {
        let levels = (1..=depth)
            .map(|n| Ok(right_special_words(&words_of_length(word, n + 1)?).words))
            .collect::<Result<Vec<_>>>()?;
        Ok(RightSpecialTree { alphabet, levels })
    }

    pub fn depth(&self) -> usize {
        self.levels.len()
    }

    /// Node counts per depth, i.e. `s(1), ..., s(depth)`.
    pub fn counts(&self) -> Vec<usize> {
        self.levels.iter().map(BTreeSet::len).collect()
    }

    pub fn nodes_at(&self, length: usize) -> &BTreeSet<Word> {
        &self.levels[length - 1]
    }

    pub fn is_empty(&self) -> bool {
        self.levels.iter().all(BTreeSet::is_empty)
    }

    /// `(child, parent)` pairs: each word of length `n >= 2` with its
    /// length-`n - 1` suffix.
    pub fn edges(&self) -> impl Iterator<Item = (&Word, &[Letter])> {
        self.levels.iter().skip(1).flatten().map(|w| (w, &w[1..]))
    }

    /// Every suffix of every node is itself a node.
    pub fn is_suffix_closed(&self) -> bool {
        self.edges()
            .all(|(w, parent)| self.levels[w.len() - 2].contains(parent))
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    /// Graphviz rendering: node ids are the words, labels their first
    /// letter, one rank per word length.
    pub fn to_dot(&self) -> String {
        let id = |w: &[Letter]| format!("\"{}\"", self.alphabet.render(w).replace('"', "\\\""));
        let mut out = String::from("graph right_special_tree {\n    rankdir=RL;\n    node [shape=plaintext];\n");
        for (i, level) in self.levels.iter().enumerate() {
            if level.is_empty() {
                continue;
            }
            let _ = write!(out, "    subgraph depth_{} {{\n        rank=same;\n", i + 1);
            for w in level {
                let label = self.alphabet.name(w[0]).replace('"', "\\\"");
                let _ = writeln!(out, "        {} [label=\"{}\"];", id(w), label);
            }
            out.push_str("    }\n");
        }
        for (w, parent) in self.edges() {
            let _ = writeln!(out, "    {} -- {};", id(w), id(parent));
        }
        out.push_str("}\n");
        out
    }
}

pub fn right_special_tree(sub: &GappedSubstitution, seed: Letter, depth: usize) -> Result<RightSpecialTree> {
    if depth == 0 {
        return Ok(RightSpecialTree {
            alphabet: sub.alphabet().clone(),
            levels: Vec::new(),
        });
    }
    let profile = complexity_profile(sub, seed, depth + 1)?;
    RightSpecialTree::from_word(sub.alphabet().clone(), &profile.source.letters, depth)
}

/// Picks `m >= 0` with `2^(m+1) < n <= 2^(m+2)`; `third` says whether `n`
/// lies in the lower part `(2*2^m, 3*2^m]`.
fn tm_branch(n: u64) -> (u64, bool) {
    debug_assert!(n >= 3);
    let m = 63 - (n - 1).leading_zeros() as u64 - 1;
    let pm = 1u64 << m;
    (pm, n <= 3 * pm)
}

/// Closed form of the Thue-Morse complexity function.
pub fn tm_complexity_closed_form(n: u64) -> u64 {
    match n {
        0 => 1,
        1 => 2,
        2 => 4,
        _ => match tm_branch(n) {
            (pm, true) => 4 * n - 2 * pm - 4,
            (pm, false) => 2 * n + 4 * pm - 2,
        },
    }
}

/// Closed form of the Thue-Morse right special function.
pub fn tm_special_closed_form(n: u64) -> u64 {
    match n {
        0 => 1,
        1 | 2 => 2,
        _ => match tm_branch(n) {
            (_, true) => 4,
            (_, false) => 2,
        },
    }
}
