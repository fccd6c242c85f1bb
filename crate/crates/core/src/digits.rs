use crate::error::{Error, Result};

/// Expansion constant `Q` together with a digit set that is a complete
/// residue system mod `Q`. Digits keep the order they were given in; that
/// order pairs digits with rule letters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DigitSystem {
    modulus: i64,
    digits: Vec<i64>,
    // residue r -> index of the digit in that class
    by_residue: Vec<usize>,
}

impl DigitSystem {
    pub fn new(modulus: i64, digits: Vec<i64>) -> Result<Self> {
        if modulus < 2 {
            return Err(Error::ModulusTooSmall(modulus));
        }
        let q = usize::try_from(modulus).map_err(|_| Error::ModulusTooSmall(modulus))?;
        if digits.len() != q {
            return Err(Error::DigitCount {
                expected: q,
                actual: digits.len(),
            });
        }
        let mut by_residue = vec![usize::MAX; q];
        for (i, &d) in digits.iter().enumerate() {
            let r = d.rem_euclid(modulus) as usize;
            if by_residue[r] != usize::MAX {
                return Err(Error::DuplicateResidue {
                    first: digits[by_residue[r]],
                    second: d,
                    residue: r as i64,
                    modulus,
                });
            }
            by_residue[r] = i;
        }
        Ok(DigitSystem {
            modulus,
            digits,
            by_residue,
        })
    }

    /// The constant-length system `{0, 1, ..., Q-1}`.
    pub fn contiguous(modulus: i64) -> Result<Self> {
        Self::new(modulus, (0..modulus.max(0)).collect())
    }

    pub fn modulus(&self) -> i64 {
        self.modulus
    }

    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.digits.is_empty()
    }

    pub fn digits(&self) -> &[i64] {
        &self.digits
    }

    /// Index of the digit `0`, if the digit set contains it.
    pub fn zero_index(&self) -> Option<usize> {
        self.digits.iter().position(|&d| d == 0)
    }

    /// True when the digits are `{m, m+1, ..., m+Q-1}` for some `m`.
    pub fn is_contiguous(&self) -> bool {
        let min = self.digits.iter().min().copied().unwrap_or(0);
        let max = self.digits.iter().max().copied().unwrap_or(0);
        max - min + 1 == self.modulus
    }

    /// Writes `m = Q*j + d` with `d` in the digit set. Returns `(j, digit index)`.
    pub fn expand(&self, m: i64) -> (i64, usize) {
        let idx = self.by_residue[m.rem_euclid(self.modulus) as usize];
        let d = self.digits[idx];
        // m - d is divisible by Q by construction
        ((m - d).div_euclid(self.modulus), idx)
    }
}
