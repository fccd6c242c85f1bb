//! Central patches of supertiles and the fixed points they converge to.
//!
//! The central patch at level `k` is the maximal run of consecutive
//! positions of `S^k(seed)` passing through the origin. When `seed` keeps
//! itself at digit 0, `S^k(seed)` is contained in `S^{k+1}(seed)`, so the
//! patches are nested and their limit is a fixed point.

use crate::error::{Error, Result};
use crate::substitution::{GappedSubstitution, Supertiles, DEFAULT_MAX_CELLS};
use crate::word::{Alphabet, Letter, Word};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PositionedWord {
    pub start: i64,
    pub letters: Word,
}

impl PositionedWord {
    pub fn new(start: i64, letters: Word) -> Self {
        PositionedWord { start, letters }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Position one past the last letter.
    pub fn end(&self) -> i64 {
        self.start + self.letters.len() as i64
    }

    pub fn get(&self, position: i64) -> Option<Letter> {
        let offset = usize::try_from(position - self.start).ok()?;
        self.letters.get(offset).copied()
    }

    /// True when `self` is a positioned sub-interval of `other` with
    /// matching letters.
    pub fn is_within(&self, other: &PositionedWord) -> bool {
        self.start >= other.start
            && self.end() <= other.end()
            && (self.start..self.end()).all(|p| self.get(p) == other.get(p))
    }

    pub fn render(&self, alphabet: &Alphabet) -> String {
        alphabet.render(&self.letters)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PatchOptions {
    /// Consecutive levels without strict growth before giving up.
    pub stall_levels: u32,
    pub max_cells: u128,
}

impl Default for PatchOptions {
    fn default() -> Self {
        PatchOptions {
            stall_levels: 3,
            max_cells: DEFAULT_MAX_CELLS,
        }
    }
}

pub fn central_patch(sub: &GappedSubstitution, seed: Letter, level: u32) -> Result<PositionedWord> {
    let tile = sub.supertile(seed, level)?;
    let (start, letters) = tile.run_through(0).ok_or(Error::MissingOrigin)?;
    Ok(PositionedWord::new(start, letters))
}

/// Closed-form central patch length for `Q = 3`, digits `{-1, 0, 4}`:
/// `d_k = 2*3^(k-1) - (3^k - 3)/2`, satisfying `d_1 = 2`, `d_{k+1} = 3(d_k - 1)`.
pub fn predicted_patch_length(sub: &GappedSubstitution, level: u32) -> Result<u64> {
    let system = sub.system();
    let mut digits = system.digits().to_vec();
    digits.sort_unstable();
    if system.modulus() != 3 || digits != [-1, 0, 4] {
        return Err(Error::Unsupported(
            "the closed-form patch length is only known for Q = 3, digits {-1, 0, 4}".into(),
        ));
    }
    patch_length_closed_form(level)
}

pub fn patch_length_closed_form(level: u32) -> Result<u64> {
    if level == 0 {
        return Err(Error::Unsupported("patch length is defined for levels k >= 1".into()));
    }
    let pow = |e: u32| 3u64.checked_pow(e).ok_or(Error::Overflow { level });
    let head = pow(level - 1)?.checked_mul(2).ok_or(Error::Overflow { level })?;
    Ok(head - (pow(level)? - 3) / 2)
}

/// Central patches of increasing level, with stall detection.
pub struct CentralPatches<'a> {
    tiles: Supertiles<'a>,
    options: PatchOptions,
    best: usize,
    best_level: u32,
}

impl<'a> CentralPatches<'a> {
    pub fn new(sub: &'a GappedSubstitution, seed: Letter, options: PatchOptions) -> Result<Self> {
        if !sub.is_seed(seed) {
            let name = if sub.alphabet().contains(seed) {
                sub.alphabet().name(seed).to_string()
            } else {
                format!("#{}", seed.0)
            };
            return Err(Error::NotASeed(name));
        }
        Ok(CentralPatches {
            tiles: sub.supertiles(seed).with_max_cells(options.max_cells),
            options,
            best: 1,
            best_level: 0,
        })
    }

    /// Next level and its central patch. Fails once the patch has not
    /// grown for `stall_levels` consecutive levels.
    pub fn next_patch(&mut self) -> Result<(u32, PositionedWord)> {
        let (level, tile) = self.tiles.advance()?;
        let (start, letters) = tile.run_through(0).ok_or(Error::MissingOrigin)?;
        if letters.len() > self.best {
            self.best = letters.len();
            self.best_level = level;
        } else if level - self.best_level >= self.options.stall_levels {
            return Err(Error::PatchStall {
                length: self.best,
                since: self.best_level,
            });
        }
        Ok((level, PositionedWord::new(start, letters)))
    }
}

pub fn fixed_prefix(sub: &GappedSubstitution, seed: Letter, min_length: usize) -> Result<PositionedWord> {
    fixed_prefix_with(sub, seed, min_length, PatchOptions::default())
}

/// First central patch with at least `min_length` letters.
pub fn fixed_prefix_with(
    sub: &GappedSubstitution,
    seed: Letter,
    min_length: usize,
    options: PatchOptions,
) -> Result<PositionedWord> {
    if min_length == 0 {
        return Err(Error::ZeroLength);
    }
    let mut patches = CentralPatches::new(sub, seed, options)?;
    loop {
        let (_, patch) = patches.next_patch()?;
        if patch.len() >= min_length {
            return Ok(patch);
        }
    }
}
