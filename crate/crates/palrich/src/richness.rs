//! Richness verdicts, complete returns, and one executable checker per
//! characterization of rich words.
//!
//! The checkers are deliberately naive: each re-derives its verdict from the
//! defining property by enumerating the word's distinct factors. They share
//! no machinery with the eertree fast path and as little as possible with
//! each other, so a bug in one shows up as a disagreement instead of being
//! inherited everywhere. [`crossval`] runs the whole panel over every word
//! up to a length and demands unanimity.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::eertree::{Eertree, LpsStep};
use crate::word::{Alphabet, Word};
use crate::{Error, Result};

/// Palindrome count, defect, richness verdict, and per-prefix trace.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RichnessReport {
    pub word: Word,
    /// Distinct palindromic factors, `ε` included.
    pub palindrome_count: usize,
    /// `|w| + 1 - palindrome_count`; zero exactly for rich words.
    pub defect: usize,
    pub is_rich: bool,
    pub lps_trace: Vec<LpsStep>,
}

impl RichnessReport {
    pub fn word_length(&self) -> usize {
        self.word.len()
    }
}

/// Counts palindromic factors of `w` with an eertree and reports richness.
pub fn analyze(w: &Word) -> RichnessReport {
    let tree = Eertree::from_word(w);
    let palindrome_count = tree.palindrome_count();
    let len = w.len();
    assert!(palindrome_count <= len + 1, "palindrome count exceeds |w| + 1");
    RichnessReport {
        word: w.clone(),
        palindrome_count,
        defect: len + 1 - palindrome_count,
        is_rich: palindrome_count == len + 1,
        lps_trace: tree.trace().to_vec(),
    }
}

/// A factor beginning and ending with `factor` and containing no third
/// occurrence of it: the stretch spanned by two adjacent occurrences.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompleteReturn {
    pub start: usize,
    /// Half-open end index.
    pub end: usize,
    pub factor: Word,
    pub returned_word: Word,
}

/// The complete returns to `u` in `w`, one per adjacent pair of occurrences,
/// in position order. Empty when `u` occurs fewer than twice.
pub fn complete_returns(w: &Word, u: &Word) -> Result<Vec<CompleteReturn>> {
    let occurrences = w.occurrences(u)?;
    Ok(occurrences
        .positions()
        .windows(2)
        .map(|pair| {
            let (start, end) = (pair[0], pair[1] + u.len());
            CompleteReturn {
                start,
                end,
                factor: u.clone(),
                returned_word: w.factor(start..end),
            }
        })
        .collect())
}

/// Names of the seven checkable characterizations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum ConditionId {
    /// Every factor `u` contains exactly `|u| + 1` distinct palindromes.
    II,
    /// Every prefix (resp. suffix) of every factor has a unioccurrent
    /// palindromic suffix (resp. prefix).
    III,
    /// Every prefix of the word has a unioccurrent palindromic suffix.
    IV,
    /// Every complete return to a palindromic factor is a palindrome.
    V,
    /// Every factor that begins with `v`, ends with `ṽ`, and contains no
    /// other occurrence of either, is a palindrome.
    P3,
    /// Every non-palindromic factor is uniquely determined by its longest
    /// palindromic prefix and suffix, which are distinct and not factors of
    /// each other.
    T1B,
    /// Every factor is uniquely determined by its longest palindromic prefix
    /// and its longest palindromic suffix.
    T2,
}

impl ConditionId {
    pub const ALL: [ConditionId; 7] = [
        ConditionId::II,
        ConditionId::III,
        ConditionId::IV,
        ConditionId::V,
        ConditionId::P3,
        ConditionId::T1B,
        ConditionId::T2,
    ];
}

impl fmt::Display for ConditionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            ConditionId::II => "II",
            ConditionId::III => "III",
            ConditionId::IV => "IV",
            ConditionId::V => "V",
            ConditionId::P3 => "P3",
            ConditionId::T1B => "T1B",
            ConditionId::T2 => "T2",
        };
        f.write_str(name)
    }
}

impl FromStr for ConditionId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "II" => Ok(ConditionId::II),
            "III" => Ok(ConditionId::III),
            "IV" => Ok(ConditionId::IV),
            "V" => Ok(ConditionId::V),
            "P3" => Ok(ConditionId::P3),
            "T1B" => Ok(ConditionId::T1B),
            "T2" => Ok(ConditionId::T2),
            _ => Err(Error::UnknownCondition(s.to_string())),
        }
    }
}

/// Evaluates one characterization on `w`, strictly per its definition.
pub fn check_condition(w: &Word, cond: ConditionId) -> bool {
    let s = w.symbols();
    match cond {
        ConditionId::II => check_ii(s),
        ConditionId::III => check_iii(s),
        ConditionId::IV => check_iv(s),
        ConditionId::V => check_v(s),
        ConditionId::P3 => check_p3(s),
        ConditionId::T1B => check_t1b(s),
        ConditionId::T2 => check_t2(s),
    }
}

/// Verdicts of all seven characterizations on one word. The theorems say
/// they always agree; [`CharacterizationMatrix::all_agree`] records whether
/// they actually did.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharacterizationMatrix {
    pub verdicts: BTreeMap<ConditionId, bool>,
    pub all_agree: bool,
}

impl CharacterizationMatrix {
    pub fn verdict(&self, cond: ConditionId) -> bool {
        self.verdicts[&cond]
    }

    /// The shared verdict, when unanimous.
    pub fn consensus(&self) -> Option<bool> {
        self.all_agree
            .then(|| *self.verdicts.values().next().expect("seven verdicts"))
    }
}

/// Evaluates all seven conditions independently.
pub fn characterization_matrix(w: &Word) -> CharacterizationMatrix {
    let verdicts: BTreeMap<ConditionId, bool> = ConditionId::ALL
        .iter()
        .map(|&cond| (cond, check_condition(w, cond)))
        .collect();
    let mut values = verdicts.values();
    let first = *values.next().expect("seven verdicts");
    let all_agree = values.all(|&v| v == first);
    CharacterizationMatrix { verdicts, all_agree }
}

// ---------------------------------------------------------------------------
// The naive checkers. All of them work on raw symbol slices and re-derive
// palindromy, occurrences, and extremal palindromic affixes locally.

fn is_pal(s: &[u8]) -> bool {
    let n = s.len();
    (0..n / 2).all(|i| s[i] == s[n - 1 - i])
}

fn occurrence_positions(w: &[u8], u: &[u8]) -> Vec<usize> {
    debug_assert!(!u.is_empty());
    w.windows(u.len())
        .enumerate()
        .filter(|(_, win)| *win == u)
        .map(|(i, _)| i)
        .collect()
}

fn occurrence_count(w: &[u8], u: &[u8]) -> usize {
    debug_assert!(!u.is_empty());
    w.windows(u.len()).filter(|win| *win == u).count()
}

fn contains_factor(w: &[u8], u: &[u8]) -> bool {
    occurrence_count(w, u) > 0
}

fn lpp(s: &[u8]) -> &[u8] {
    for l in (1..=s.len()).rev() {
        if is_pal(&s[..l]) {
            return &s[..l];
        }
    }
    &[]
}

fn lps(s: &[u8]) -> &[u8] {
    for l in (1..=s.len()).rev() {
        if is_pal(&s[s.len() - l..]) {
            return &s[s.len() - l..];
        }
    }
    &[]
}

/// Distinct non-empty factors, shortest first (ties lexicographic).
fn distinct_factor_slices(s: &[u8]) -> Vec<&[u8]> {
    let mut set: HashSet<&[u8]> = HashSet::new();
    for i in 0..s.len() {
        for j in i + 1..=s.len() {
            set.insert(&s[i..j]);
        }
    }
    let mut out: Vec<&[u8]> = set.into_iter().collect();
    out.sort_unstable_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}

fn has_unioccurrent_palindromic_suffix(p: &[u8]) -> bool {
    (1..=p.len()).any(|l| {
        let suffix = &p[p.len() - l..];
        is_pal(suffix) && occurrence_count(p, suffix) == 1
    })
}

fn has_unioccurrent_palindromic_prefix(p: &[u8]) -> bool {
    (1..=p.len()).any(|l| {
        let prefix = &p[..l];
        is_pal(prefix) && occurrence_count(p, prefix) == 1
    })
}

fn check_ii(w: &[u8]) -> bool {
    // ε trivially contains its one palindrome; check every real factor
    distinct_factor_slices(w).into_iter().all(|u| {
        let mut pals: HashSet<&[u8]> = HashSet::new();
        for i in 0..u.len() {
            for j in i + 1..=u.len() {
                if is_pal(&u[i..j]) {
                    pals.insert(&u[i..j]);
                }
            }
        }
        pals.len() + 1 == u.len() + 1
    })
}

fn check_iii(w: &[u8]) -> bool {
    distinct_factor_slices(w).into_iter().all(|u| {
        (1..=u.len()).all(|j| has_unioccurrent_palindromic_suffix(&u[..j]))
            && (0..u.len()).all(|i| has_unioccurrent_palindromic_prefix(&u[i..]))
    })
}

fn check_iv(w: &[u8]) -> bool {
    (1..=w.len()).all(|j| has_unioccurrent_palindromic_suffix(&w[..j]))
}

fn check_v(w: &[u8]) -> bool {
    distinct_factor_slices(w)
        .into_iter()
        .filter(|f| is_pal(f))
        .all(|p| {
            let positions = occurrence_positions(w, p);
            positions
                .windows(2)
                .all(|pair| is_pal(&w[pair[0]..pair[1] + p.len()]))
        })
}

fn check_p3(w: &[u8]) -> bool {
    let factors = distinct_factor_slices(w);
    for v in &factors {
        let reversed: Vec<u8> = v.iter().rev().copied().collect();
        for z in &factors {
            if z.len() < v.len() || !z.starts_with(v) || !z.ends_with(&reversed) {
                continue;
            }
            if p3_hypothesis(z, v, &reversed) && !is_pal(z) {
                return false;
            }
        }
    }
    true
}

/// The prefix occurrence of `v` and the suffix occurrence of `ṽ` must be the
/// only occurrences of either inside `z`.
fn p3_hypothesis(z: &[u8], v: &[u8], reversed: &[u8]) -> bool {
    let last = z.len() - v.len();
    if v == reversed {
        let positions = occurrence_positions(z, v);
        if last == 0 {
            positions == [0]
        } else {
            positions == [0, last]
        }
    } else {
        occurrence_positions(z, v) == [0] && occurrence_positions(z, reversed) == [last]
    }
}

fn check_t1b(w: &[u8]) -> bool {
    let mut seen: HashMap<(&[u8], &[u8]), &[u8]> = HashMap::new();
    for u in distinct_factor_slices(w) {
        if is_pal(u) {
            continue;
        }
        let (p, q) = (lpp(u), lps(u));
        if p == q || contains_factor(q, p) || contains_factor(p, q) {
            return false;
        }
        if seen.insert((p, q), u).is_some() {
            return false;
        }
    }
    true
}

fn check_t2(w: &[u8]) -> bool {
    let mut seen: HashSet<(&[u8], &[u8])> = HashSet::new();
    for u in distinct_factor_slices(w) {
        if !seen.insert((lpp(u), lps(u))) {
            return false;
        }
    }
    true
}

// ---------------------------------------------------------------------------
// Exhaustive cross-validation.

/// Default total-word budget for [`crossval`].
pub const DEFAULT_CROSSVAL_BUDGET: u64 = 10_000_000;

/// Tally for one word length.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LengthSummary {
    pub length: usize,
    pub words: u64,
    pub rich: u64,
    pub disagreements: u64,
}

/// Outcome of cross-validating every word over `alphabet` up to `max_len`:
/// on each word the seven checkers and the eertree verdict must coincide.
#[derive(Debug, Clone)]
pub struct CrossvalReport {
    pub alphabet_size: usize,
    pub max_len: usize,
    pub lengths: Vec<LengthSummary>,
    /// Lexicographically first word (by length, then symbol order) on which
    /// any two verdicts differ. `None` on a correct build.
    pub first_disagreement: Option<Word>,
}

impl CrossvalReport {
    pub fn total_words(&self) -> u64 {
        self.lengths.iter().map(|l| l.words).sum()
    }

    pub fn total_rich(&self) -> u64 {
        self.lengths.iter().map(|l| l.rich).sum()
    }

    pub fn total_disagreements(&self) -> u64 {
        self.lengths.iter().map(|l| l.disagreements).sum()
    }
}

/// Runs the full characterization panel plus the eertree verdict on every
/// word over `alphabet` of length up to `max_len`. Enumeration is split
/// across the current rayon thread pool.
pub fn crossval(alphabet: &Alphabet, max_len: usize, budget: u64) -> Result<CrossvalReport> {
    let mut required: u128 = 0;
    for n in 0..=max_len {
        let count = alphabet.word_count(n).ok_or(Error::BudgetExceeded {
            required: u128::MAX,
            budget,
        })?;
        required = required.checked_add(count).ok_or(Error::BudgetExceeded {
            required: u128::MAX,
            budget,
        })?;
    }
    if required > budget as u128 {
        return Err(Error::BudgetExceeded { required, budget });
    }

    let mut lengths = Vec::with_capacity(max_len + 1);
    let mut first_disagreement = None;
    for n in 0..=max_len {
        let count = alphabet.word_count(n).expect("within budget") as u64;
        let (rich, disagreements, first_bad) = (0..count)
            .into_par_iter()
            .map(|index| {
                let w = alphabet.word_at(n, index as u128);
                let matrix = characterization_matrix(&w);
                let rich = analyze(&w).is_rich;
                let agree = matrix.consensus() == Some(rich);
                (
                    u64::from(rich),
                    u64::from(!agree),
                    if agree { None } else { Some(index) },
                )
            })
            .reduce(
                || (0, 0, None),
                |a, b| {
                    let first = match (a.2, b.2) {
                        (Some(x), Some(y)) => Some(x.min(y)),
                        (x, y) => x.or(y),
                    };
                    (a.0 + b.0, a.1 + b.1, first)
                },
            );
        lengths.push(LengthSummary {
            length: n,
            words: count,
            rich,
            disagreements,
        });
        if first_disagreement.is_none() {
            if let Some(index) = first_bad {
                first_disagreement = Some(alphabet.word_at(n, index as u128));
            }
        }
    }
    Ok(CrossvalReport {
        alphabet_size: alphabet.len(),
        max_len,
        lengths,
        first_disagreement,
    })
}

// ---------------------------------------------------------------------------
// JSON rendering with a fixed key order.

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct ReportJson {
    word: String,
    length: usize,
    palindrome_count: usize,
    defect: usize,
    is_rich: bool,
}

impl ReportJson {
    fn new(report: &RichnessReport) -> Self {
        Self {
            word: report.word.to_string(),
            length: report.word_length(),
            palindrome_count: report.palindrome_count,
            defect: report.defect,
            is_rich: report.is_rich,
        }
    }
}

#[derive(Serialize)]
struct ConditionsJson {
    #[serde(rename = "II")]
    ii: bool,
    #[serde(rename = "III")]
    iii: bool,
    #[serde(rename = "IV")]
    iv: bool,
    #[serde(rename = "V")]
    v: bool,
    #[serde(rename = "P3")]
    p3: bool,
    #[serde(rename = "T1B")]
    t1b: bool,
    #[serde(rename = "T2")]
    t2: bool,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct CharacterizationJson {
    word: String,
    length: usize,
    palindrome_count: usize,
    defect: usize,
    is_rich: bool,
    conditions: ConditionsJson,
    all_agree: bool,
}

/// Deterministic JSON for a richness report:
/// `{word, length, palindromeCount, defect, isRich}`.
pub fn report_json(report: &RichnessReport) -> String {
    serde_json::to_string_pretty(&ReportJson::new(report)).expect("report serialization")
}

/// Deterministic JSON for a report plus the condition verdicts:
/// `{word, length, palindromeCount, defect, isRich, conditions, allAgree}`.
pub fn characterization_json(report: &RichnessReport, matrix: &CharacterizationMatrix) -> String {
    let payload = CharacterizationJson {
        word: report.word.to_string(),
        length: report.word_length(),
        palindrome_count: report.palindrome_count,
        defect: report.defect,
        is_rich: report.is_rich,
        conditions: ConditionsJson {
            ii: matrix.verdict(ConditionId::II),
            iii: matrix.verdict(ConditionId::III),
            iv: matrix.verdict(ConditionId::IV),
            v: matrix.verdict(ConditionId::V),
            p3: matrix.verdict(ConditionId::P3),
            t1b: matrix.verdict(ConditionId::T1B),
            t2: matrix.verdict(ConditionId::T2),
        },
        all_agree: matrix.all_agree,
    };
    serde_json::to_string_pretty(&payload).expect("report serialization")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle;

    #[test]
    fn analyze_the_worked_examples() {
        let report = analyze(&Word::from("abac"));
        assert!(report.is_rich);
        assert_eq!(report.defect, 0);
        assert_eq!(report.palindrome_count, 5);

        let report = analyze(&Word::from("abca"));
        assert!(!report.is_rich);
        assert_eq!(report.defect, 1);

        let report = analyze(&Word::empty());
        assert!(report.is_rich);
        assert_eq!(report.defect, 0);
        assert_eq!(report.palindrome_count, 1);
    }

    #[test]
    fn complete_returns_of_the_worked_examples() {
        let returns = complete_returns(&Word::from("aabcbaaba"), &Word::from("aa")).unwrap();
        assert_eq!(returns.len(), 1);
        assert_eq!(returns[0].returned_word, Word::from("aabcbaa"));
        assert_eq!((returns[0].start, returns[0].end), (0, 7));

        let returns = complete_returns(&Word::from("aa"), &Word::from("a")).unwrap();
        assert_eq!(returns.len(), 1);
        assert_eq!(returns[0].returned_word, Word::from("aa"));

        let returns = complete_returns(&Word::from("abcabc"), &Word::from("abc")).unwrap();
        assert_eq!(returns.len(), 1);
        assert_eq!(returns[0].returned_word, Word::from("abcabc"));

        assert_eq!(
            complete_returns(&Word::from("abc"), &Word::empty()),
            Err(Error::EmptyFactor)
        );
    }

    #[test]
    fn complete_returns_allow_overlapping_occurrences() {
        let returns = complete_returns(&Word::from("aaa"), &Word::from("aa")).unwrap();
        assert_eq!(returns.len(), 1);
        assert_eq!(returns[0].returned_word, Word::from("aaa"));
    }

    #[test]
    fn each_return_contains_exactly_two_occurrences_of_its_factor() {
        let w = Word::from("aabcbaaba");
        for u in w.distinct_factors() {
            if u.is_empty() {
                continue;
            }
            for r in complete_returns(&w, &u).unwrap() {
                assert_eq!(r.returned_word.occurrences(&u).unwrap().len(), 2);
                assert!(r.returned_word.symbols().starts_with(u.symbols()));
                assert!(r.returned_word.symbols().ends_with(u.symbols()));
            }
        }
    }

    #[test]
    fn condition_examples_from_the_worked_words() {
        assert!(!check_condition(&Word::from("abca"), ConditionId::V));
        assert!(!check_condition(&Word::from("abca"), ConditionId::T2));
        assert!(check_condition(&Word::from("abac"), ConditionId::T1B));
        assert!(check_condition(&Word::from("a"), ConditionId::IV));
    }

    #[test]
    fn matrix_on_the_worked_examples() {
        let matrix = characterization_matrix(&Word::from("abac"));
        assert!(matrix.all_agree);
        assert_eq!(matrix.consensus(), Some(true));

        let matrix = characterization_matrix(&Word::from("abca"));
        assert!(matrix.all_agree);
        assert_eq!(matrix.consensus(), Some(false));

        let matrix = characterization_matrix(&Word::empty());
        assert_eq!(matrix.consensus(), Some(true));
    }

    #[test]
    fn condition_names_round_trip() {
        for cond in ConditionId::ALL {
            assert_eq!(cond.to_string().parse::<ConditionId>().unwrap(), cond);
        }
        assert_eq!(
            "vii".parse::<ConditionId>(),
            Err(Error::UnknownCondition("vii".to_string()))
        );
    }

    #[test]
    fn defect_tracks_push_returns_along_prefixes() {
        let w = Word::from("aabcbaabaabca");
        let mut defect = 0;
        for (i, step) in analyze(&w).lps_trace.iter().enumerate() {
            defect += usize::from(!step.novel);
            let prefix = w.factor(0..i + 1);
            assert_eq!(analyze(&prefix).defect, defect, "prefix {prefix}");
        }
    }

    #[test]
    fn crossval_agrees_with_the_oracle_census() {
        let alphabet = Alphabet::lowercase(2).unwrap();
        let report = crossval(&alphabet, 8, 1_000).unwrap();
        assert_eq!(report.total_disagreements(), 0);
        assert!(report.first_disagreement.is_none());
        for summary in &report.lengths {
            assert_eq!(
                summary.rich,
                oracle::rich_count(2, summary.length).unwrap(),
                "length {}",
                summary.length
            );
        }
    }

    #[test]
    fn crossval_rejects_oversized_enumerations() {
        let alphabet = Alphabet::lowercase(2).unwrap();
        match crossval(&alphabet, 30, 1_000) {
            Err(Error::BudgetExceeded { budget: 1_000, .. }) => {}
            other => panic!("expected budget error, got {other:?}"),
        }
    }

    #[test]
    fn report_json_is_stable() {
        let json = report_json(&analyze(&Word::from("abac")));
        let expected = r#"{
  "word": "abac",
  "length": 4,
  "palindromeCount": 5,
  "defect": 0,
  "isRich": true
}"#;
        assert_eq!(json, expected);
    }

    #[test]
    fn characterization_json_is_stable() {
        let w = Word::from("abca");
        let json = characterization_json(&analyze(&w), &characterization_matrix(&w));
        let expected = r#"{
  "word": "abca",
  "length": 4,
  "palindromeCount": 4,
  "defect": 1,
  "isRich": false,
  "conditions": {
    "II": false,
    "III": false,
    "IV": false,
    "V": false,
    "P3": false,
    "T1B": false,
    "T2": false
  },
  "allAgree": true
}"#;
        assert_eq!(json, expected);
    }
}
