//! Gapped digit substitutions acting on sparse positioned configurations.
//!
//! A cell `(l, c)` is replaced by the `Q` cells `(Q*l + d_i, rules[c][i])`,
//! one per digit. Because the digits form a complete residue system mod `Q`,
//! the images of distinct positions never overlap.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::digits::DigitSystem;
use crate::error::{Error, Result};
use crate::word::{Alphabet, Letter, Word};

/// Upper bound on the number of cells a supertile may hold.
pub const DEFAULT_MAX_CELLS: u128 = 1 << 25;

/// On-disk description of a substitution.
///
/// `rules[c][i]` is the letter placed at `digits[i]` in the image of `c`.
/// Derived block substitutions also carry the window length and a symbol
/// table mapping each label to its window, written in sequence order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SubstitutionSpec {
    pub modulus: i64,
    pub digits: Vec<i64>,
    pub alphabet: Vec<String>,
    pub rules: BTreeMap<String, Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub window: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub symbol_table: Option<BTreeMap<String, String>>,
}

impl SubstitutionSpec {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("spec serializes")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    /// Letters whose image keeps them at digit 0, in alphabet order.
    pub seeds: Vec<String>,
    pub contiguous: bool,
}

pub fn validate_substitution(spec: &SubstitutionSpec) -> Result<ValidationReport> {
    let sub = GappedSubstitution::from_spec(spec)?;
    Ok(sub.report())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cell {
    pub position: i64,
    pub letter: Letter,
}

impl Cell {
    pub fn new(position: i64, letter: Letter) -> Self {
        Cell { position, letter }
    }
}

/// Finite set of cells with at most one letter per position, kept sorted.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Configuration {
    cells: Vec<Cell>,
}

impl Configuration {
    pub fn empty() -> Self {
        Configuration { cells: Vec::new() }
    }

    pub fn single(position: i64, letter: Letter) -> Self {
        Configuration {
            cells: vec![Cell::new(position, letter)],
        }
    }

    /// Builds a configuration, failing on two cells at one position.
    pub fn from_cells(mut cells: Vec<Cell>) -> Result<Self> {
        cells.sort_unstable_by_key(|c| c.position);
        if let Some(w) = cells.windows(2).find(|w| w[0].position == w[1].position) {
            return Err(Error::PositionConflict {
                position: w[0].position,
            });
        }
        Ok(Configuration { cells })
    }

    /// Contiguous word laid out from `start`.
    pub fn from_word(start: i64, word: &[Letter]) -> Self {
        Configuration {
            cells: word
                .iter()
                .enumerate()
                .map(|(i, &l)| Cell::new(start + i as i64, l))
                .collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn get(&self, position: i64) -> Option<Letter> {
        self.index_of(position).map(|i| self.cells[i].letter)
    }

    pub fn contains(&self, position: i64) -> bool {
        self.index_of(position).is_some()
    }

    pub fn support(&self) -> impl Iterator<Item = i64> + '_ {
        self.cells.iter().map(|c| c.position)
    }

    pub fn min_position(&self) -> Option<i64> {
        self.cells.first().map(|c| c.position)
    }

    pub fn max_position(&self) -> Option<i64> {
        self.cells.last().map(|c| c.position)
    }

    /// Letters at `lo..=hi`, or `None` if any position there is undefined.
    pub fn read(&self, lo: i64, hi: i64) -> Option<Word> {
        (lo..=hi).map(|p| self.get(p)).collect()
    }

    /// Positions in `lo..=hi` that carry no letter.
    pub fn missing_in(&self, lo: i64, hi: i64) -> Vec<i64> {
        (lo..=hi).filter(|&p| !self.contains(p)).collect()
    }

    /// Maximal run of consecutive positions containing `position`, as
    /// `(start, letters)`.
    pub fn run_through(&self, position: i64) -> Option<(i64, Word)> {
        let at = self.index_of(position)?;
        let mut lo = at;
        while lo > 0 && self.cells[lo - 1].position + 1 == self.cells[lo].position {
            lo -= 1;
        }
        let mut hi = at;
        while hi + 1 < self.cells.len() && self.cells[hi].position + 1 == self.cells[hi + 1].position {
            hi += 1;
        }
        let word = self.cells[lo..=hi].iter().map(|c| c.letter).collect();
        Some((self.cells[lo].position, word))
    }

    fn index_of(&self, position: i64) -> Option<usize> {
        self.cells.binary_search_by_key(&position, |c| c.position).ok()
    }
}

/// A substitution rule over a digit system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GappedSubstitution {
    alphabet: Alphabet,
    system: DigitSystem,
    rules: Vec<Word>,
}

impl GappedSubstitution {
    /// `rules[i]` is the image of the i-th alphabet letter, paired
    /// positionally with the digits.
    pub fn new(alphabet: Alphabet, system: DigitSystem, rules: Vec<Word>) -> Result<Self> {
        if rules.len() != alphabet.len() {
            return Err(Error::Rule(format!(
                "expected one rule per letter ({}), got {}",
                alphabet.len(),
                rules.len()
            )));
        }
        for (c, rule) in alphabet.letters().zip(&rules) {
            if rule.len() != system.len() {
                return Err(Error::Rule(format!(
                    "rule for `{}` has length {}, expected {}",
                    alphabet.name(c),
                    rule.len(),
                    system.len()
                )));
            }
            if let Some(bad) = rule.iter().find(|l| !alphabet.contains(**l)) {
                return Err(Error::Rule(format!(
                    "rule for `{}` uses letter index {} outside the alphabet",
                    alphabet.name(c),
                    bad.0
                )));
            }
        }
        Ok(GappedSubstitution {
            alphabet,
            system,
            rules,
        })
    }

    /// Convenience constructor from letter names, e.g.
    /// `from_names(3, &[-1, 0, 4], &["a", "b"], &["bab", "aba"])`.
    pub fn from_names(modulus: i64, digits: &[i64], alphabet: &[&str], rules: &[&str]) -> Result<Self> {
        let alphabet = Alphabet::new(alphabet)?;
        let system = DigitSystem::new(modulus, digits.to_vec())?;
        let rules = rules
            .iter()
            .map(|r| alphabet.parse_word(r))
            .collect::<Result<Vec<_>>>()?;
        Self::new(alphabet, system, rules)
    }

    pub fn from_spec(spec: &SubstitutionSpec) -> Result<Self> {
        let system = DigitSystem::new(spec.modulus, spec.digits.clone())?;
        let alphabet = Alphabet::new(&spec.alphabet)?;
        let mut rules = Vec::with_capacity(alphabet.len());
        for name in alphabet.names() {
            let rule = spec
                .rules
                .get(name)
                .ok_or_else(|| Error::Rule(format!("no rule for letter `{name}`")))?;
            let word = rule
                .iter()
                .map(|l| {
                    alphabet
                        .letter(l)
                        .map_err(|_| Error::Rule(format!("rule for `{name}` uses unknown letter `{l}`")))
                })
                .collect::<Result<Word>>()?;
            rules.push(word);
        }
        if let Some(extra) = spec.rules.keys().find(|k| alphabet.letter(k).is_err()) {
            return Err(Error::Rule(format!("rule given for unknown letter `{extra}`")));
        }
        Self::new(alphabet, system, rules)
    }

    pub fn to_spec(&self) -> SubstitutionSpec {
        SubstitutionSpec {
            modulus: self.system.modulus(),
            digits: self.system.digits().to_vec(),
            alphabet: self.alphabet.names().to_vec(),
            rules: self
                .alphabet
                .letters()
                .map(|c| {
                    let image = self.rule(c).iter().map(|&l| self.alphabet.name(l).to_string());
                    (self.alphabet.name(c).to_string(), image.collect())
                })
                .collect(),
            window: None,
            symbol_table: None,
        }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn system(&self) -> &DigitSystem {
        &self.system
    }

    pub fn modulus(&self) -> i64 {
        self.system.modulus()
    }

    pub fn rule(&self, letter: Letter) -> &[Letter] {
        &self.rules[letter.index()]
    }

    /// Letters `c` whose image carries `c` at digit 0.
    pub fn seeds(&self) -> Vec<Letter> {
        match self.system.zero_index() {
            Some(z) => self.alphabet.letters().filter(|&c| self.rule(c)[z] == c).collect(),
            None => Vec::new(),
        }
    }

    pub fn is_seed(&self, letter: Letter) -> bool {
        self.system
            .zero_index()
            .is_some_and(|z| self.alphabet.contains(letter) && self.rule(letter)[z] == letter)
    }

    pub fn report(&self) -> ValidationReport {
        ValidationReport {
            seeds: self
                .seeds()
                .into_iter()
                .map(|c| self.alphabet.name(c).to_string())
                .collect(),
            contiguous: self.system.is_contiguous(),
        }
    }

    pub fn substitute_cell(&self, cell: Cell) -> Result<Configuration> {
        if !self.alphabet.contains(cell.letter) {
            return Err(Error::UnknownLetter(format!("#{}", cell.letter.0)));
        }
        let mut out = Vec::with_capacity(self.system.len());
        self.push_image(cell, &mut out).ok_or(Error::Overflow { level: 1 })?;
        Configuration::from_cells(out)
    }

    pub fn substitute_config(&self, config: &Configuration) -> Result<Configuration> {
        self.substitute_at_level(config, 1)
    }

    fn substitute_at_level(&self, config: &Configuration, level: u32) -> Result<Configuration> {
        let mut out = Vec::with_capacity(config.len() * self.system.len());
        for &cell in config.cells() {
            if !self.alphabet.contains(cell.letter) {
                return Err(Error::UnknownLetter(format!("#{}", cell.letter.0)));
            }
            self.push_image(cell, &mut out).ok_or(Error::Overflow { level })?;
        }
        Configuration::from_cells(out)
    }

    fn push_image(&self, cell: Cell, out: &mut Vec<Cell>) -> Option<()> {
        let base = cell.position.checked_mul(self.system.modulus())?;
        for (&d, &l) in self.system.digits().iter().zip(self.rule(cell.letter)) {
            out.push(Cell::new(base.checked_add(d)?, l));
        }
        Some(())
    }

    /// `S^k` applied to `{(0, seed)}`.
    pub fn supertile(&self, seed: Letter, level: u32) -> Result<Configuration> {
        self.supertile_capped(seed, level, DEFAULT_MAX_CELLS)
    }

    pub fn supertile_capped(&self, seed: Letter, level: u32, max_cells: u128) -> Result<Configuration> {
        if !self.alphabet.contains(seed) {
            return Err(Error::UnknownLetter(format!("#{}", seed.0)));
        }
        let cells = (self.system.modulus() as u128).checked_pow(level);
        match cells {
            Some(c) if c <= max_cells => {}
            _ => {
                return Err(Error::DepthCap {
                    level,
                    cells: cells.unwrap_or(u128::MAX),
                    cap: max_cells,
                })
            }
        }
        let mut config = Configuration::single(0, seed);
        for k in 1..=level {
            config = self.substitute_at_level(&config, k)?;
        }
        Ok(config)
    }

    /// Successive supertiles `S^1(seed), S^2(seed), ...`.
    pub fn supertiles(&self, seed: Letter) -> Supertiles<'_> {
        Supertiles {
            sub: self,
            current: Configuration::single(0, seed),
            level: 0,
            max_cells: DEFAULT_MAX_CELLS,
        }
    }
}

pub struct Supertiles<'a> {
    sub: &'a GappedSubstitution,
    current: Configuration,
    level: u32,
    max_cells: u128,
}

impl Supertiles<'_> {
    pub fn with_max_cells(mut self, max_cells: u128) -> Self {
        self.max_cells = max_cells;
        self
    }

    /// Advances one level and returns `(level, supertile)`.
    pub fn advance(&mut self) -> Result<(u32, &Configuration)> {
        let level = self.level + 1;
        let cells = self.current.len() as u128 * self.sub.system.len() as u128;
        if cells > self.max_cells {
            return Err(Error::DepthCap {
                level,
                cells,
                cap: self.max_cells,
            });
        }
        self.current = self.sub.substitute_at_level(&self.current, level)?;
        self.level = level;
        Ok((level, &self.current))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gapped() -> GappedSubstitution {
        GappedSubstitution::from_names(3, &[-1, 0, 4], &["a", "b"], &["bab", "aba"]).unwrap()
    }

    fn cells(sub: &GappedSubstitution, spec: &[(i64, &str)]) -> Configuration {
        Configuration::from_cells(
            spec.iter()
                .map(|&(p, n)| Cell::new(p, sub.alphabet().letter(n).unwrap()))
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn single_cell_images() {
        let s = gapped();
        let a = s.alphabet().letter("a").unwrap();
        let b = s.alphabet().letter("b").unwrap();
        assert_eq!(
            s.substitute_cell(Cell::new(0, a)).unwrap(),
            cells(&s, &[(-1, "b"), (0, "a"), (4, "b")])
        );
        assert_eq!(
            s.substitute_cell(Cell::new(1, a)).unwrap(),
            cells(&s, &[(2, "b"), (3, "a"), (7, "b")])
        );
        assert_eq!(
            s.substitute_cell(Cell::new(0, b)).unwrap(),
            cells(&s, &[(-1, "a"), (0, "b"), (4, "a")])
        );
    }

    #[test]
    fn second_supertile() {
        let s = gapped();
        let a = s.alphabet().letter("a").unwrap();
        let expected = cells(
            &s,
            &[
                (-4, "a"),
                (-3, "b"),
                (-1, "b"),
                (0, "a"),
                (1, "a"),
                (4, "b"),
                (11, "a"),
                (12, "b"),
                (16, "a"),
            ],
        );
        assert_eq!(s.supertile(a, 2).unwrap(), expected);
        let once = s.supertile(a, 1).unwrap();
        assert_eq!(s.substitute_config(&once).unwrap(), expected);
        assert_eq!(s.supertile(a, 0).unwrap(), Configuration::single(0, a));
    }

    #[test]
    fn five_letter_word_covers_middle() {
        let s = gapped();
        let word = s.alphabet().parse_word("ababa").unwrap();
        let image = s.substitute_config(&Configuration::from_word(-2, &word)).unwrap();
        assert_eq!(image.len(), 15);
        // oracle: every 3l + d for l in -2..=2, d in {-1, 0, 4}
        let mut support: Vec<i64> = (-2..=2i64)
            .flat_map(|l| [-1, 0, 4].map(|d| 3 * l + d))
            .collect();
        support.sort();
        assert_eq!(image.support().collect::<Vec<_>>(), support);
        // -5 needs l = -3, so the run through 0 is [-4, 7]
        assert_eq!(image.run_through(0).map(|(start, w)| (start, w.len())), Some((-4, 12)));
    }

    #[test]
    fn third_supertile_near_origin() {
        let s = gapped();
        let a = s.alphabet().letter("a").unwrap();
        let t = s.supertile(a, 3).unwrap();
        assert_eq!(t.len(), 27);
        assert_eq!(s.alphabet().render(&t.read(-1, 4).unwrap()), "baabab");
    }

    #[test]
    fn spec_round_trip_and_seeds() {
        let json = r#"{"modulus": 3, "digits": [-1,0,4], "alphabet": ["a","b"],
                       "rules": {"a": ["b","a","b"], "b": ["a","b","a"]}}"#;
        let spec = SubstitutionSpec::from_json(json).unwrap();
        let report = validate_substitution(&spec).unwrap();
        assert_eq!(report.seeds, vec!["a", "b"]);
        assert!(!report.contiguous);
        let sub = GappedSubstitution::from_spec(&spec).unwrap();
        assert_eq!(sub, gapped());
        assert_eq!(sub.to_spec(), spec);
    }

    #[test]
    fn thue_morse_seeds() {
        let tm = GappedSubstitution::from_names(2, &[0, 1], &["0", "1"], &["01", "10"]).unwrap();
        assert_eq!(tm.report().seeds, vec!["0", "1"]);
    }

    #[test]
    fn malformed_rules_are_rejected() {
        let short = GappedSubstitution::from_names(3, &[-1, 0, 4], &["a", "b"], &["ba", "aba"]);
        assert!(matches!(short, Err(Error::Rule(m)) if m.contains("length 2")));

        let spec = SubstitutionSpec {
            modulus: 3,
            digits: vec![-1, 0, 4],
            alphabet: vec!["a".into(), "b".into()],
            rules: [
                ("a".to_string(), vec!["b".into(), "a".into(), "c".into()]),
                ("b".to_string(), vec!["a".into(), "b".into(), "a".into()]),
            ]
            .into_iter()
            .collect(),
            window: None,
            symbol_table: None,
        };
        assert!(matches!(validate_substitution(&spec), Err(Error::Rule(m)) if m.contains("`c`")));

        let bad_digits = SubstitutionSpec {
            digits: vec![0, 3, 1],
            ..spec.clone()
        };
        assert!(matches!(
            validate_substitution(&bad_digits),
            Err(Error::DuplicateResidue { .. })
        ));
        assert!(SubstitutionSpec::from_json(r#"{"modulus": 3}"#).is_err());
    }

    #[test]
    fn overflow_is_reported() {
        let s = gapped();
        let a = s.alphabet().letter("a").unwrap();
        let far = Configuration::single(i64::MAX / 2, a);
        assert!(matches!(s.substitute_config(&far), Err(Error::Overflow { .. })));
        assert!(matches!(s.supertile(a, 60), Err(Error::DepthCap { .. })));
    }

    #[test]
    fn conflicting_cells_fail() {
        let a = Letter(0);
        let r = Configuration::from_cells(vec![Cell::new(1, a), Cell::new(1, Letter(1))]);
        assert_eq!(r, Err(Error::PositionConflict { position: 1 }));
    }
}
