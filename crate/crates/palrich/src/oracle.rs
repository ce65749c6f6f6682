//! Naive reference implementations used as ground truth in tests.
//!
//! Everything here is quadratic or worse on purpose: enumerate all factors,
//! filter by a symmetric scan, deduplicate. No logic is shared with the
//! eertree or the richness checkers beyond the `Word` type itself.

use std::collections::BTreeSet;

use crate::word::Word;
use crate::{Error, Result};

/// Longest input the brute-force enumerators accept.
pub const DEFAULT_LENGTH_CAP: usize = 4096;

/// Largest number of words an exhaustive census enumerates.
pub const DEFAULT_ENUM_BUDGET: u64 = 50_000_000;

/// All distinct palindromic factors of `w`, `ε` included, by full
/// enumeration. Rejects words longer than [`DEFAULT_LENGTH_CAP`].
pub fn brute_distinct_palindromes(w: &Word) -> Result<BTreeSet<Word>> {
    brute_distinct_palindromes_capped(w, DEFAULT_LENGTH_CAP)
}

/// Same as [`brute_distinct_palindromes`] with an explicit length cap.
pub fn brute_distinct_palindromes_capped(w: &Word, cap: usize) -> Result<BTreeSet<Word>> {
    if w.len() > cap {
        return Err(Error::LengthCapExceeded {
            length: w.len(),
            cap,
        });
    }
    let s = w.symbols();
    let mut out = BTreeSet::new();
    out.insert(Word::empty());
    for i in 0..s.len() {
        for j in i + 1..=s.len() {
            let f = &s[i..j];
            if f.iter().eq(f.iter().rev()) {
                out.insert(Word::from(f));
            }
        }
    }
    Ok(out)
}

/// Whether `w` attains the maximal palindrome count `|w| + 1`.
pub fn brute_is_rich(w: &Word) -> Result<bool> {
    Ok(brute_distinct_palindromes(w)?.len() == w.len() + 1)
}

/// Number of rich words of the given length over the first
/// `alphabet_size` lowercase letters, by exhaustive enumeration.
pub fn rich_count(alphabet_size: usize, length: usize) -> Result<u64> {
    rich_count_budgeted(alphabet_size, length, DEFAULT_ENUM_BUDGET)
}

/// Same as [`rich_count`] with an explicit enumeration budget.
pub fn rich_count_budgeted(alphabet_size: usize, length: usize, budget: u64) -> Result<u64> {
    if alphabet_size == 0 || alphabet_size > 26 {
        return Err(Error::AlphabetSize(alphabet_size));
    }
    let required = (alphabet_size as u128)
        .checked_pow(length as u32)
        .ok_or(Error::BudgetExceeded {
            required: u128::MAX,
            budget,
        })?;
    if required > budget as u128 {
        return Err(Error::BudgetExceeded { required, budget });
    }

    let mut digits = vec![0usize; length];
    let mut count = 0u64;
    loop {
        let w: Word = digits.iter().map(|&d| b'a' + d as u8).collect();
        if brute_is_rich(&w)? {
            count += 1;
        }
        // odometer step
        let mut i = length;
        loop {
            if i == 0 {
                return Ok(count);
            }
            i -= 1;
            digits[i] += 1;
            if digits[i] < alphabet_size {
                break;
            }
            digits[i] = 0;
        }
    }
}
