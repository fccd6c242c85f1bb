//! Gapped digit substitutions.
//!
//! A digit substitution over a digit system `(Q, D)` replaces a letter at
//! position `l` by letters at positions `Q*l + d` for `d` in `D`. When `D`
//! is not contiguous the images have holes. This crate iterates such
//! substitutions, extracts their fixed points from central patches,
//! measures factor complexity and right special words, and recodes gapped
//! substitutions into constant-length ones through higher-block codes.
//!
//! ```
//! use gapsub::{catalog, complexity_profile};
//!
//! let s = catalog::gapped_example();
//! let a = s.alphabet().letter("a").unwrap();
//! let profile = complexity_profile(&s, a, 10).unwrap();
//! assert_eq!(&profile.p[1..], &[4, 8, 14, 20, 28, 36, 44, 52, 60]);
//! ```

pub mod catalog;
pub mod digits;
pub mod error;
pub mod factors;
pub mod fixed_point;
pub mod language;
pub mod recoding;
pub mod substitution;
pub mod word;

pub use digits::DigitSystem;
pub use error::{Error, ErrorKind, Result};
pub use factors::{FactorStats, SuffixAutomaton};
pub use fixed_point::{
    central_patch, fixed_prefix, fixed_prefix_with, predicted_patch_length, CentralPatches, PatchOptions,
    PositionedWord,
};
pub use language::{
    check_special_identity, complexity_profile, complexity_profile_with, right_special_tree, right_special_words,
    tm_complexity_closed_form, tm_special_closed_form, words_of_length, ComplexityProfile, RightSpecialTree,
    WordSet,
};
pub use recoding::{
    canonical_binary_labels, derive_block_substitution, higher_block_word, recoded_profile,
    verify_complexity_shift, BlockRecoding, BlockSubstitution, ShiftCheck, SymbolTable,
};
pub use substitution::{
    validate_substitution, Cell, Configuration, GappedSubstitution, SubstitutionSpec, ValidationReport,
};
pub use word::{Alphabet, Letter, Word};

/// Validates a digit system given as modulus and digit list.
pub fn validate_digit_system(modulus: i64, digits: &[i64]) -> Result<DigitSystem> {
    DigitSystem::new(modulus, digits.to_vec())
}
