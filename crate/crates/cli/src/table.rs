//! The binary `Q = 3` complexity table: eighteen rule pairs, each measured
//! under the gapped digits `{-1, 0, 4}` and the contiguous `{-1, 0, 1}`.

use std::io::Write;

use gapsub::catalog::{self, CONTIGUOUS_DIGITS, GAPPED_DIGITS, TABLE_RULES};
use gapsub::{complexity_profile, Error, Letter};
use rayon::prelude::*;

/// Table columns are `p(2), ..., p(10)`.
pub const TABLE_MAX_N: usize = 10;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableRow {
    pub a_rule: String,
    pub b_rule: String,
    /// `p(2..=10)` under `{-1, 0, 4}`.
    pub gapped: Result<Vec<usize>, Error>,
    /// `p(2..=10)` under `{-1, 0, 1}`.
    pub contiguous: Result<Vec<usize>, Error>,
}

/// `p(2..=n_max)` of the fixed point seeded at `a`.
pub fn binary_complexity(a_rule: &str, b_rule: &str, digits: &[i64], n_max: usize) -> Result<Vec<usize>, Error> {
    let sub = catalog::binary_q3(a_rule, b_rule, digits);
    let a = sub.alphabet().letter("a")?;
    debug_assert_eq!(a, Letter(0));
    let profile = complexity_profile(&sub, a, n_max)?;
    Ok(profile.p[1..].to_vec())
}

/// Computes every row; rows run in parallel, output keeps print order.
pub fn run_table() -> Vec<TableRow> {
    TABLE_RULES
        .par_iter()
        .map(|&(a_rule, b_rule)| TableRow {
            a_rule: a_rule.to_string(),
            b_rule: b_rule.to_string(),
            gapped: binary_complexity(a_rule, b_rule, &GAPPED_DIGITS, TABLE_MAX_N),
            contiguous: binary_complexity(a_rule, b_rule, &CONTIGUOUS_DIGITS, TABLE_MAX_N),
        })
        .collect()
}

pub fn digits_field(digits: &[i64]) -> String {
    digits.iter().map(i64::to_string).collect::<Vec<_>>().join(" ")
}

pub fn csv_header(n_max: usize) -> Vec<String> {
    let mut header: Vec<String> = ["a1", "a2", "a3", "b1", "b2", "b3", "digits"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    header.extend((2..=n_max).map(|n| format!("p{n}")));
    header
}

pub fn csv_record(a_rule: &str, b_rule: &str, digits: &[i64], values: &[usize]) -> Vec<String> {
    a_rule
        .chars()
        .chain(b_rule.chars())
        .map(String::from)
        .chain(std::iter::once(digits_field(digits)))
        .chain(values.iter().map(usize::to_string))
        .collect()
}

/// Writes one CSV record per (rule pair, digit set). Failed rows are
/// skipped and returned as diagnostics.
pub fn write_table_csv<W: Write>(rows: &[TableRow], out: W) -> csv::Result<Vec<String>> {
    let mut writer = csv::Writer::from_writer(out);
    writer.write_record(csv_header(TABLE_MAX_N))?;
    let mut failures = Vec::new();
    for row in rows {
        for (digits, values) in [(&GAPPED_DIGITS, &row.gapped), (&CONTIGUOUS_DIGITS, &row.contiguous)] {
            match values {
                Ok(v) => writer.write_record(csv_record(&row.a_rule, &row.b_rule, digits, v))?,
                Err(e) => failures.push(format!(
                    "row {}|{} digits {}: {e}",
                    row.a_rule,
                    row.b_rule,
                    digits_field(digits)
                )),
            }
        }
    }
    writer.flush()?;
    Ok(failures)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_rows() {
        assert_eq!(
            binary_complexity("aab", "baa", &GAPPED_DIGITS, 10).unwrap(),
            [4, 7, 13, 22, 29, 37, 47, 57, 66]
        );
        assert_eq!(
            binary_complexity("aab", "baa", &CONTIGUOUS_DIGITS, 10).unwrap(),
            [4, 6, 9, 12, 15, 18, 21, 24, 27]
        );
        assert_eq!(binary_complexity("baa", "abb", &GAPPED_DIGITS, 10).unwrap(), [2; 9]);
        assert_eq!(binary_complexity("aab", "aab", &GAPPED_DIGITS, 10).unwrap(), [3; 9]);
        assert_eq!(binary_complexity("aab", "aab", &CONTIGUOUS_DIGITS, 10).unwrap(), [3; 9]);
    }

    #[test]
    fn csv_layout() {
        let rows = vec![TableRow {
            a_rule: "bab".into(),
            b_rule: "aba".into(),
            gapped: Ok(vec![4, 8, 14, 20, 28, 36, 44, 52, 60]),
            contiguous: Err(Error::MissingOrigin),
        }];
        let mut buf = Vec::new();
        let failures = write_table_csv(&rows, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next().unwrap(), "a1,a2,a3,b1,b2,b3,digits,p2,p3,p4,p5,p6,p7,p8,p9,p10");
        assert_eq!(lines.next().unwrap(), "b,a,b,a,b,a,-1 0 4,4,8,14,20,28,36,44,52,60");
        assert!(lines.next().is_none());
        assert_eq!(failures.len(), 1);
    }
}
