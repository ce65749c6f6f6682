//! Randomized cross-checks of the fast paths against the brute-force oracle
//! and of the structural invariants the modules promise.

use proptest::prelude::*;

use palrich::complexity::{factor_complexity, palindromic_complexity};
use palrich::eertree::Eertree;
use palrich::richness::{analyze, characterization_matrix, complete_returns};
use palrich::word::{Alphabet, Word};
use palrich::oracle;

fn words(max_alphabet: u8, max_len: usize) -> impl Strategy<Value = Word> {
    (2..=max_alphabet).prop_flat_map(move |k| {
        prop::collection::vec(0..k, 0..=max_len)
            .prop_map(|v| v.into_iter().map(|d| b'a' + d).collect())
    })
}

fn ternary(max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(0..3u8, 0..=max_len)
        .prop_map(|v| v.into_iter().map(|d| b'a' + d).collect())
}

proptest! {
    #[test]
    fn eertree_palindrome_set_matches_oracle(w in words(4, 80)) {
        let tree = Eertree::from_word(&w);
        let brute = oracle::brute_distinct_palindromes(&w).unwrap();
        prop_assert_eq!(tree.palindrome_count(), brute.len());
        prop_assert_eq!(tree.distinct_palindromes(), brute);
    }

    #[test]
    fn each_push_creates_at_most_one_node(w in words(6, 150)) {
        let mut tree = Eertree::new(Alphabet::of_word(&w));
        let mut count = 1; // ε
        for &c in w.symbols() {
            let created = tree.push(c).unwrap();
            prop_assert!(created <= 1);
            count += created;
        }
        prop_assert_eq!(count, tree.palindrome_count());
        prop_assert!(count <= w.len() + 1);
    }

    #[test]
    fn incremental_build_matches_scratch(x in ternary(50), y in ternary(50)) {
        let mut split = Eertree::new(Alphabet::lowercase(3).unwrap());
        split.extend(&x).unwrap();
        split.extend(&y).unwrap();

        let whole: Word = x.symbols().iter().chain(y.symbols()).copied().collect();
        let scratch = {
            let mut t = Eertree::new(Alphabet::lowercase(3).unwrap());
            t.extend(&whole).unwrap();
            t
        };
        prop_assert_eq!(split.dump(), scratch.dump());
    }

    #[test]
    fn aggregated_occurrence_counts_match_scans(w in words(3, 60)) {
        let tree = Eertree::from_word(&w);
        let counts = tree.occurrence_counts();
        for id in 2..tree.node_count() {
            let pal = tree.palindrome_of(id);
            prop_assert_eq!(counts[id], w.occurrences(&pal).unwrap().len());
        }
    }

    #[test]
    fn lps_is_the_reverse_conjugate_of_lpp(w in words(4, 60)) {
        prop_assert_eq!(
            w.longest_palindromic_suffix(),
            w.reverse().longest_palindromic_prefix().reverse()
        );
    }

    #[test]
    fn defect_is_monotone_and_tracks_novelty(w in words(3, 60)) {
        let report = analyze(&w);
        let mut defect = 0;
        for (i, step) in report.lps_trace.iter().enumerate() {
            // each non-novel step costs exactly one palindrome
            defect += usize::from(!step.novel);
            prop_assert_eq!(analyze(&w.factor(0..i + 1)).defect, defect);
        }
        prop_assert_eq!(report.defect, defect);
        prop_assert_eq!(report.is_rich, defect == 0);
        prop_assert_eq!(report.is_rich, report.lps_trace.iter().all(|s| s.novel));
    }

    #[test]
    fn rich_words_have_rich_factors(w in words(3, 40)) {
        if analyze(&w).is_rich {
            for factor in w.distinct_factors() {
                prop_assert!(analyze(&factor).is_rich);
            }
        }
    }

    #[test]
    fn complete_returns_to_palindromes_are_palindromes_in_rich_words(w in words(3, 50)) {
        if analyze(&w).is_rich {
            let tree = Eertree::from_word(&w);
            for id in 2..tree.node_count() {
                let pal = tree.palindrome_of(id);
                for r in complete_returns(&w, &pal).unwrap() {
                    prop_assert!(r.returned_word.is_palindrome());
                }
            }
        }
    }

    #[test]
    fn all_characterizations_agree(w in ternary(12)) {
        let matrix = characterization_matrix(&w);
        prop_assert!(matrix.all_agree);
        prop_assert_eq!(matrix.consensus(), Some(analyze(&w).is_rich));
    }

    #[test]
    fn complexity_counts_are_consistent(w in words(4, 60)) {
        let n = w.len();
        let c = factor_complexity(&w, n);
        let p = palindromic_complexity(&w, n);
        for i in 0..=n {
            prop_assert!(p[i] <= c[i]);
        }
        prop_assert_eq!(c[0], 1);
        prop_assert_eq!(p[0], 1);
        // the palindromic counts partition the palindrome set by length
        prop_assert_eq!(
            p.iter().sum::<usize>(),
            oracle::brute_distinct_palindromes(&w).unwrap().len()
        );
    }
}
