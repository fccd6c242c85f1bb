//! Ready-made substitutions.

use crate::substitution::GappedSubstitution;

/// Gapped digit set for `Q = 3`.
pub const GAPPED_DIGITS: [i64; 3] = [-1, 0, 4];
/// Contiguous counterpart of [`GAPPED_DIGITS`].
pub const CONTIGUOUS_DIGITS: [i64; 3] = [-1, 0, 1];

/// The eighteen `(a-rule, b-rule)` pairs of the binary `Q = 3` complexity
/// table, in print order. Each rule lists the letters at digits
/// `d_1, d_2, d_3` in order.
pub const TABLE_RULES: [(&str, &str); 18] = [
    ("aab", "aab"),
    ("aab", "aba"),
    ("aab", "abb"),
    ("aab", "baa"),
    ("aab", "bab"),
    ("aab", "bba"),
    ("baa", "aab"),
    ("baa", "aba"),
    ("baa", "abb"),
    ("baa", "baa"),
    ("baa", "bab"),
    ("baa", "bba"),
    ("bab", "aab"),
    ("bab", "aba"),
    ("bab", "abb"),
    ("bab", "baa"),
    ("bab", "bab"),
    ("bab", "bba"),
];

/// `0 -> 01`, `1 -> 10`.
pub fn thue_morse() -> GappedSubstitution {
    GappedSubstitution::from_names(2, &[0, 1], &["0", "1"], &["01", "10"]).expect("valid")
}

/// `a -> bab`, `b -> aba` on digits `{-1, 0, 4}`.
pub fn gapped_example() -> GappedSubstitution {
    binary_q3("bab", "aba", &GAPPED_DIGITS)
}

/// `a -> bab`, `b -> aba` on digits `{-1, 0, 1}`.
pub fn contiguous_example() -> GappedSubstitution {
    binary_q3("bab", "aba", &CONTIGUOUS_DIGITS)
}

/// Binary substitution over `{a, b}` with `Q = 3`.
///
/// Panics if the rules are not three letters from `{a, b}` or the digits
/// are not a complete residue system mod 3.
pub fn binary_q3(a_rule: &str, b_rule: &str, digits: &[i64]) -> GappedSubstitution {
    GappedSubstitution::from_names(3, digits, &["a", "b"], &[a_rule, b_rule]).expect("valid binary Q=3 rule")
}
