use std::collections::BTreeSet;

use gapsub::catalog::{self, CONTIGUOUS_DIGITS, GAPPED_DIGITS, TABLE_RULES};
use gapsub::fixed_point::patch_length_closed_form;
use gapsub::language::extension_excess;
use gapsub::recoding::recoded_profile;
use gapsub::{
    central_patch, check_special_identity, complexity_profile, derive_block_substitution, right_special_words,
    words_of_length, Alphabet, CentralPatches, Cell, Configuration, DigitSystem, FactorStats, GappedSubstitution,
    Letter, PatchOptions, RightSpecialTree,
};
use proptest::prelude::*;

/// Digit system with the residue-`r` digit shifted by `Q * shifts[r]`,
/// listed in a permuted order.
fn digit_system() -> impl Strategy<Value = (i64, Vec<i64>)> {
    (2i64..=12).prop_flat_map(|q| {
        (proptest::collection::vec(-3i64..=3, q as usize), Just(q)).prop_flat_map(|(shifts, q)| {
            let digits: Vec<i64> = shifts.iter().enumerate().map(|(r, k)| r as i64 + q * k).collect();
            (Just(q), Just(digits).prop_shuffle())
        })
    })
}

fn tm_word(len: usize) -> Vec<Letter> {
    (0..len).map(|i| Letter((i.count_ones() % 2) as u16)).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn unique_expansion((q, digits) in digit_system()) {
        let system = DigitSystem::new(q, digits.clone()).unwrap();
        for m in -10_000i64..=10_000 {
            let hits = digits.iter().filter(|&&d| (m - d).rem_euclid(q) == 0).count();
            prop_assert_eq!(hits, 1);
            let (j, i) = system.expand(m);
            prop_assert_eq!(q * j + digits[i], m);
        }
    }

    #[test]
    fn duplicate_residue_rejected((q, mut digits) in digit_system(), i in 0usize..12, j in 0usize..12) {
        let (i, j) = (i % digits.len(), j % digits.len());
        prop_assume!(i != j);
        digits[j] = digits[i] + q;
        prop_assert!(DigitSystem::new(q, digits).is_err());
    }

    #[test]
    fn substitution_is_conflict_free(
        (q, digits) in digit_system(),
        rule_bits in proptest::collection::vec(any::<bool>(), 24),
        raw in proptest::collection::btree_map(-100_000i64..100_000, any::<bool>(), 1..1000),
    ) {
        let al = Alphabet::new(&["a", "b"]).unwrap();
        let system = DigitSystem::new(q, digits).unwrap();
        let n = q as usize;
        let rules = vec![
            rule_bits[..n].iter().map(|&b| Letter(b as u16)).collect(),
            rule_bits[12..12 + n].iter().map(|&b| Letter(b as u16)).collect(),
        ];
        let sub = GappedSubstitution::new(al, system, rules).unwrap();
        let input = Configuration::from_cells(
            raw.iter().map(|(&p, &b)| Cell::new(p, Letter(b as u16))).collect(),
        ).unwrap();
        let out = sub.substitute_config(&input).unwrap();
        prop_assert_eq!(out.len(), n * input.len());
    }

    #[test]
    fn support_recursion((q, digits) in digit_system().prop_filter("small", |(q, _)| *q <= 4)) {
        let rules = vec![vec![Letter(0); q as usize]];
        let sub = GappedSubstitution::new(
            Alphabet::new(&["a"]).unwrap(),
            DigitSystem::new(q, digits.clone()).unwrap(),
            rules,
        ).unwrap();
        let max_k = if q <= 3 { 8 } else { 6 };
        for k in 0..max_k {
            let here: BTreeSet<i64> = sub.supertile(Letter(0), k).unwrap().support().collect();
            let next: BTreeSet<i64> = sub.supertile(Letter(0), k + 1).unwrap().support().collect();
            let expected: BTreeSet<i64> = here.iter().flat_map(|&p| digits.iter().map(move |&d| q * p + d)).collect();
            prop_assert_eq!(next, expected);
        }
    }

    #[test]
    fn sam_counts_match_word_sets(raw in proptest::collection::vec(0u16..3, 2..200), n in 1usize..10) {
        let w: Vec<Letter> = raw.into_iter().map(Letter).collect();
        prop_assume!(n < w.len());
        let stats = FactorStats::of(&w, n);
        let set = words_of_length(&w, n + 1).unwrap();
        prop_assert_eq!(stats.p[n - 1], words_of_length(&w, n).unwrap().len());
        prop_assert_eq!(stats.s[n - 1], right_special_words(&set).len());
        prop_assert_eq!(stats.excess[n - 1], extension_excess(&set));
    }
}

#[test]
fn constant_length_degeneration() {
    for q in 2..=4i64 {
        let names: Vec<String> = (0..q).map(|i| i.to_string()).collect();
        let al = Alphabet::new(&names).unwrap();
        let rules = (0..q)
            .map(|c| (0..q).map(|i| Letter(((c + i) % q) as u16)).collect())
            .collect();
        let sub = GappedSubstitution::new(al, DigitSystem::contiguous(q).unwrap(), rules).unwrap();
        for k in 0..6 {
            let tile = sub.supertile(Letter(0), k).unwrap();
            let span = q.pow(k);
            assert_eq!(tile.support().collect::<Vec<_>>(), (0..span).collect::<Vec<_>>());
        }
    }
    let tm = catalog::thue_morse();
    let tile = tm.supertile(Letter(0), 4).unwrap();
    assert_eq!(tm.alphabet().render(&tile.read(0, 15).unwrap()), "0110100110010110");
}

#[test]
fn central_patch_lemma_and_growth() {
    let s = catalog::gapped_example();
    let a = Letter(0);
    let mut previous: Option<gapsub::PositionedWord> = None;
    for k in 1..=12 {
        let tile = s.supertile(a, k).unwrap();
        assert!(!tile.contains(-2), "level {k}");
        let patch = central_patch(&s, a, k).unwrap();
        assert_eq!(patch.start, -1);
        assert_eq!(patch.len() as u64, patch_length_closed_form(k).unwrap());
        if let Some(prev) = previous {
            assert!(patch.letters.starts_with(&prev.letters));
            // j + 1 consecutive positions become at least 3j
            assert!(patch.len() >= 3 * (prev.len() - 1));
        }
        previous = Some(patch);
    }
}

#[test]
fn counts_never_shrink_across_levels() {
    for &(ra, rb) in &TABLE_RULES {
        let sub = catalog::binary_q3(ra, rb, &GAPPED_DIGITS);
        let mut patches = CentralPatches::new(&sub, Letter(0), PatchOptions::default()).unwrap();
        let mut last: Option<Vec<usize>> = None;
        for _ in 0..8 {
            let (_, patch) = patches.next_patch().unwrap();
            if patch.len() < 8 {
                continue;
            }
            let p = FactorStats::of(&patch.letters, 7).p;
            if let Some(prev) = &last {
                assert!(prev.iter().zip(&p).all(|(a, b)| a <= b), "{ra}|{rb}");
            }
            last = Some(p);
        }
    }
}

#[test]
fn special_identity_across_table_family() {
    for digits in [&GAPPED_DIGITS, &CONTIGUOUS_DIGITS] {
        for &(ra, rb) in &TABLE_RULES {
            let sub = catalog::binary_q3(ra, rb, digits);
            let prof = complexity_profile(&sub, Letter(0), 10).unwrap();
            assert!(check_special_identity(&prof, 2), "{ra}|{rb} {digits:?}");
            assert!(prof.max_branching <= 2);
        }
    }
}

#[test]
fn right_special_images_under_thue_morse() {
    let tm = catalog::thue_morse();
    let word = tm_word(1 << 14);
    let mut checked = 0;
    for n in 1..=12 {
        let specials = right_special_words(&words_of_length(&word, n + 1).unwrap());
        let image_specials = right_special_words(&words_of_length(&word, 2 * n + 1).unwrap());
        for w in &specials.words {
            let image: Vec<Letter> = w.iter().flat_map(|&c| tm.rule(c).to_vec()).collect();
            assert!(image_specials.contains(&image), "{}", tm.alphabet().render(w));
            checked += 1;
        }
    }
    assert!(checked > 30);
}

#[test]
fn trees_are_suffix_closed() {
    let tm = catalog::thue_morse();
    let tree = RightSpecialTree::from_word(tm.alphabet().clone(), &tm_word(1 << 12), 16).unwrap();
    assert!(tree.is_suffix_closed());
    for &(ra, rb) in &TABLE_RULES {
        let sub = catalog::binary_q3(ra, rb, &GAPPED_DIGITS);
        let tree = gapsub::right_special_tree(&sub, Letter(0), 8).unwrap();
        assert!(tree.is_suffix_closed(), "{ra}|{rb}");
    }
}

#[test]
fn recoded_sequence_branches_at_most_twice() {
    let s = catalog::gapped_example();
    let prof = recoded_profile(&s, Letter(0), 3, 20).unwrap();
    assert!(prof.max_branching <= 2);
    assert!(check_special_identity(&prof, 2));
    assert!(check_special_identity(&prof, 8));
}

#[test]
fn derived_substitutions_are_overlap_consistent() {
    let mut derived = 0;
    for &(ra, rb) in &TABLE_RULES {
        let sub = catalog::binary_q3(ra, rb, &GAPPED_DIGITS);
        let t = derive_block_substitution(&sub, Letter(0), 3).unwrap();
        assert!(t.check_overlaps(), "{ra}|{rb}");
        derived += 1;
    }
    assert_eq!(derived, 18);
}

#[test]
fn window_one_recovers_the_rules() {
    for sub in [catalog::thue_morse(), catalog::binary_q3("aab", "bab", &[0, 1, 2])] {
        let t = derive_block_substitution(&sub, Letter(0), 1).unwrap();
        let table = t.table();
        for x in t.substitution().alphabet().letters() {
            let source = table.window_of(x)[0];
            let image: Vec<Letter> = t.substitution().rule(x).iter().map(|&y| table.window_of(y)[0]).collect();
            assert_eq!(image, sub.rule(source));
        }
    }
}

#[test]
fn window_one_needs_contiguous_coverage() {
    let err = derive_block_substitution(&catalog::contiguous_example(), Letter(0), 1).unwrap_err();
    assert!(matches!(err, gapsub::Error::Coverage { window: 1, .. }));
}

#[test]
fn recoded_fixed_point_is_transported() {
    let s = catalog::gapped_example();
    let t = derive_block_substitution(&s, Letter(0), 3).unwrap();
    let seed = t.origin_symbol().unwrap();
    let recoded = t.recoding().recoded();
    assert_eq!(recoded.start, 0);
    let mut patches = CentralPatches::new(t.substitution(), seed, PatchOptions::default()).unwrap();
    let (_, fixed) = loop {
        let (k, p) = patches.next_patch().unwrap();
        if p.len() >= recoded.len() {
            break (k, p);
        }
    };
    assert_eq!(fixed.start, 0);
    assert!(fixed.letters.starts_with(&recoded.letters));
}
