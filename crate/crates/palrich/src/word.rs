//! Alphabets, words, and the elementary palindrome operations everything
//! else builds on.
//!
//! Symbols are bytes; an [`Alphabet`] fixes which bytes are legal and the
//! order they enumerate in. Indices are 0-based and ranges half-open
//! throughout.

use std::collections::BTreeSet;
use std::fmt;

use crate::{Error, Result};

/// A single symbol. Words are byte strings; the alphabet decides which bytes
/// are meaningful.
pub type Symbol = u8;

/// An ordered set of distinct symbols.
#[derive(Clone)]
pub struct Alphabet {
    symbols: Vec<Symbol>,
    member: [bool; 256],
}

impl fmt::Debug for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Alphabet({:?})", String::from_utf8_lossy(&self.symbols))
    }
}

impl PartialEq for Alphabet {
    fn eq(&self, other: &Self) -> bool {
        self.symbols == other.symbols
    }
}

impl Eq for Alphabet {}

impl Alphabet {
    /// Builds an alphabet from the given symbols, keeping their order.
    /// Rejects duplicates and the empty set.
    pub fn new(symbols: impl IntoIterator<Item = Symbol>) -> Result<Self> {
        let symbols: Vec<Symbol> = symbols.into_iter().collect();
        if symbols.is_empty() {
            return Err(Error::EmptyAlphabet);
        }
        let mut member = [false; 256];
        for &c in &symbols {
            if member[c as usize] {
                return Err(Error::DuplicateSymbol(c as char));
            }
            member[c as usize] = true;
        }
        Ok(Self { symbols, member })
    }

    /// The first `k` lowercase letters, in alphabetical order.
    pub fn lowercase(k: usize) -> Result<Self> {
        if k == 0 || k > 26 {
            return Err(Error::AlphabetSize(k));
        }
        Self::new((0..k).map(|i| b'a' + i as u8))
    }

    /// The distinct symbols of `w` in ascending byte order. The empty word
    /// yields a one-symbol placeholder so the alphabet stays non-empty.
    pub fn of_word(w: &Word) -> Self {
        let mut member = [false; 256];
        for &c in w.symbols() {
            member[c as usize] = true;
        }
        let symbols: Vec<Symbol> = (0..=255u8).filter(|&c| member[c as usize]).collect();
        if symbols.is_empty() {
            return Self::new([b'a']).expect("one symbol");
        }
        Self { symbols, member }
    }

    /// Number of symbols.
    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }

    pub fn contains(&self, c: Symbol) -> bool {
        self.member[c as usize]
    }

    /// Number of length-`n` words over this alphabet, if it fits in `u128`.
    pub fn word_count(&self, n: usize) -> Option<u128> {
        (self.symbols.len() as u128).checked_pow(n as u32)
    }

    /// The `index`-th length-`n` word in lexicographic order (by symbol
    /// order). `index` must be below [`Alphabet::word_count`].
    pub fn word_at(&self, n: usize, index: u128) -> Word {
        let k = self.symbols.len() as u128;
        let mut rest = index;
        let mut out = vec![0u8; n];
        for slot in out.iter_mut().rev() {
            *slot = self.symbols[(rest % k) as usize];
            rest /= k;
        }
        debug_assert_eq!(rest, 0, "word index out of range");
        Word::from_symbols(out)
    }

    /// All length-`n` words in lexicographic order.
    pub fn words_of_length(&self, n: usize) -> impl Iterator<Item = Word> + '_ {
        let count = self.word_count(n).expect("word count overflows u128");
        (0..count).map(move |i| self.word_at(n, i))
    }
}

/// A finite word over byte symbols. The empty word `ε` is a palindrome by
/// convention.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word {
    symbols: Vec<Symbol>,
}

impl Word {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn from_symbols(symbols: impl Into<Vec<Symbol>>) -> Self {
        Self {
            symbols: symbols.into(),
        }
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }

    /// The factor `w[range)`. Panics when the range is out of bounds.
    pub fn factor(&self, range: std::ops::Range<usize>) -> Word {
        Word::from(&self.symbols[range])
    }

    /// `x_m ⋯ x_1` for `w = x_1 ⋯ x_m`.
    pub fn reverse(&self) -> Word {
        Word::from_symbols(self.symbols.iter().rev().copied().collect::<Vec<_>>())
    }

    /// Whether the word equals its own reversal.
    pub fn is_palindrome(&self) -> bool {
        slice_is_palindrome(&self.symbols)
    }

    /// Start positions of `u` in `self`, in increasing order, overlapping
    /// occurrences included. The empty factor is rejected: unioccurrence of
    /// `ε` is ill-defined.
    pub fn occurrences(&self, u: &Word) -> Result<OccurrenceList> {
        if u.is_empty() {
            return Err(Error::EmptyFactor);
        }
        let positions = self
            .symbols
            .windows(u.len())
            .enumerate()
            .filter(|(_, win)| *win == u.symbols())
            .map(|(i, _)| i)
            .collect();
        Ok(OccurrenceList { positions })
    }

    /// The longest prefix equal to its own reversal; non-empty whenever the
    /// word is.
    pub fn longest_palindromic_prefix(&self) -> Word {
        for l in (1..=self.len()).rev() {
            if slice_is_palindrome(&self.symbols[..l]) {
                return Word::from(&self.symbols[..l]);
            }
        }
        Word::empty()
    }

    /// The longest suffix equal to its own reversal.
    pub fn longest_palindromic_suffix(&self) -> Word {
        for l in (1..=self.len()).rev() {
            if slice_is_palindrome(&self.symbols[self.len() - l..]) {
                return Word::from(&self.symbols[self.len() - l..]);
            }
        }
        Word::empty()
    }

    /// Every distinct factor of the word, `ε` included.
    pub fn distinct_factors(&self) -> BTreeSet<Word> {
        let mut out = BTreeSet::new();
        out.insert(Word::empty());
        for i in 0..self.len() {
            for j in i + 1..=self.len() {
                out.insert(Word::from(&self.symbols[i..j]));
            }
        }
        out
    }

    /// Whether `self` occurs as a factor of `other`. `ε` is a factor of
    /// everything.
    pub fn is_factor_of(&self, other: &Word) -> bool {
        self.is_empty()
            || other
                .symbols
                .windows(self.len())
                .any(|win| win == self.symbols())
    }
}

fn slice_is_palindrome(s: &[Symbol]) -> bool {
    let n = s.len();
    (0..n / 2).all(|i| s[i] == s[n - 1 - i])
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&String::from_utf8_lossy(&self.symbols))
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({:?})", String::from_utf8_lossy(&self.symbols))
    }
}

impl From<&str> for Word {
    fn from(s: &str) -> Self {
        Self::from_symbols(s.as_bytes().to_vec())
    }
}

impl From<&[u8]> for Word {
    fn from(s: &[u8]) -> Self {
        Self::from_symbols(s.to_vec())
    }
}

impl From<Vec<u8>> for Word {
    fn from(s: Vec<u8>) -> Self {
        Self::from_symbols(s)
    }
}

impl FromIterator<Symbol> for Word {
    fn from_iter<T: IntoIterator<Item = Symbol>>(iter: T) -> Self {
        Self::from_symbols(iter.into_iter().collect::<Vec<_>>())
    }
}

/// Sorted start positions of one factor inside another word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OccurrenceList {
    positions: Vec<usize>,
}

impl OccurrenceList {
    pub fn positions(&self) -> &[usize] {
        &self.positions
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    /// Exactly one occurrence.
    pub fn is_unioccurrent(&self) -> bool {
        self.positions.len() == 1
    }
}
