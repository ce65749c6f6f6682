//! Online palindromic tree (eertree).
//!
//! The tree keeps one node per distinct non-empty palindromic factor of the
//! processed word, plus two roots: the empty palindrome and an imaginary
//! palindrome of length -1 behind it. A transition on symbol `c` from the
//! node of palindrome `s` leads to the node of `c·s·c`; suffix links point
//! to each palindrome's longest proper palindromic suffix.
//!
//! Extending the word by one symbol creates at most one node (the longest
//! palindromic suffix of the extended word), which is exactly why a word of
//! length `n` has at most `n + 1` distinct palindromic factors, `ε`
//! included.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use smallvec::SmallVec;

use crate::word::{Alphabet, Symbol, Word};
use crate::{Error, Result};

/// Arena index of the length -1 root.
pub const IMAGINARY_ROOT: usize = 0;
/// Arena index of the `ε` root.
pub const EMPTY_ROOT: usize = 1;

const NO_POSITION: u32 = u32::MAX;

/// One palindrome node. Node references are indices into the owning tree's
/// arena.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EertreeNode {
    pal_length: i32,
    suffix_link: u32,
    // sorted by symbol; most nodes have at most a couple of extensions
    transitions: SmallVec<[(Symbol, u32); 2]>,
    occurrence_count: u32, // raw; aggregated by occurrence_counts()
    first_end_position: u32,
}

impl EertreeNode {
    fn root(pal_length: i32) -> Self {
        Self {
            pal_length,
            suffix_link: IMAGINARY_ROOT as u32,
            transitions: SmallVec::new(),
            occurrence_count: 0,
            first_end_position: NO_POSITION,
        }
    }

    /// Palindrome length; -1 for the imaginary root.
    pub fn pal_length(&self) -> isize {
        self.pal_length as isize
    }

    pub fn suffix_link(&self) -> usize {
        self.suffix_link as usize
    }

    pub fn transitions(&self) -> impl Iterator<Item = (Symbol, usize)> + '_ {
        self.transitions.iter().map(|&(c, id)| (c, id as usize))
    }

    /// End index of the first occurrence; `None` for the roots.
    pub fn first_end_position(&self) -> Option<usize> {
        (self.first_end_position != NO_POSITION).then_some(self.first_end_position as usize)
    }

    fn transition(&self, c: Symbol) -> Option<u32> {
        self.transitions
            .iter()
            .find(|&&(s, _)| s == c)
            .map(|&(_, id)| id)
    }

    fn add_transition(&mut self, c: Symbol, id: u32) {
        match self.transitions.binary_search_by_key(&c, |&(s, _)| s) {
            Ok(_) => unreachable!("a palindrome is extended by each symbol at most once"),
            Err(i) => self.transitions.insert(i, (c, id)),
        }
    }
}

/// Per-push record: the length of the longest palindromic suffix after the
/// push, and whether that palindrome was new to the word at that point
/// (equivalently, unioccurrent so far).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LpsStep {
    pub length: usize,
    pub novel: bool,
}

/// Online palindromic tree over a growing word.
///
/// Single-writer: pushes must be serialized. A finished tree is safe to
/// query from any number of threads.
#[derive(Debug, Clone)]
pub struct Eertree {
    alphabet: Alphabet,
    nodes: Vec<EertreeNode>,
    current_lps: u32,
    word: Vec<Symbol>,
    trace: Vec<LpsStep>,
}

impl Eertree {
    pub fn new(alphabet: Alphabet) -> Self {
        Self {
            alphabet,
            nodes: vec![EertreeNode::root(-1), EertreeNode::root(0)],
            current_lps: EMPTY_ROOT as u32,
            word: Vec::new(),
            trace: Vec::new(),
        }
    }

    /// Builds the tree for `w` over the word's own symbols.
    pub fn from_word(w: &Word) -> Self {
        let mut tree = Self::new(Alphabet::of_word(w));
        tree.reserve(w.len());
        for &c in w.symbols() {
            tree.push(c).expect("symbols come from the word's own alphabet");
        }
        tree
    }

    /// Pre-allocates room for `additional` more symbols.
    pub fn reserve(&mut self, additional: usize) {
        self.nodes.reserve(additional);
        self.word.reserve(additional);
        self.trace.reserve(additional);
    }

    /// Extends the word by one symbol and returns the number of nodes
    /// created, always 0 or 1. A return of 1 means the longest palindromic
    /// suffix of the extended word is new, and therefore unioccurrent so
    /// far.
    pub fn push(&mut self, c: Symbol) -> Result<usize> {
        if !self.alphabet.contains(c) {
            return Err(Error::SymbolOutsideAlphabet(c as char));
        }
        let pos = self.word.len();
        self.word.push(c);

        let base = self.extendable_from(self.current_lps, c, pos);
        if let Some(existing) = self.nodes[base as usize].transition(c) {
            self.current_lps = existing;
            let node = &mut self.nodes[existing as usize];
            node.occurrence_count += 1;
            self.trace.push(LpsStep {
                length: node.pal_length as usize,
                novel: false,
            });
            return Ok(0);
        }

        let pal_length = self.nodes[base as usize].pal_length + 2;
        let suffix_link = if pal_length == 1 {
            EMPTY_ROOT as u32
        } else {
            // the longest proper palindromic suffix c·t·c of the new
            // palindrome was created at an earlier position
            let t = self.extendable_from(self.nodes[base as usize].suffix_link, c, pos);
            self.nodes[t as usize]
                .transition(c)
                .expect("proper palindromic suffix was registered earlier")
        };
        let id = self.nodes.len() as u32;
        self.nodes.push(EertreeNode {
            pal_length,
            suffix_link,
            transitions: SmallVec::new(),
            occurrence_count: 1,
            first_end_position: pos as u32,
        });
        self.nodes[base as usize].add_transition(c, id);
        self.current_lps = id;
        self.trace.push(LpsStep {
            length: pal_length as usize,
            novel: true,
        });
        Ok(1)
    }

    /// Pushes every symbol of `w`; returns the number of nodes created.
    pub fn extend(&mut self, w: &Word) -> Result<usize> {
        self.reserve(w.len());
        let mut created = 0;
        for &c in w.symbols() {
            created += self.push(c)?;
        }
        Ok(created)
    }

    /// Walks suffix links from `start` to the longest palindromic suffix `t`
    /// of `word[..pos]` that `c` extends, i.e. with `word[pos - 1 - |t|] = c`.
    /// The imaginary root extends anything, so the walk terminates.
    fn extendable_from(&self, start: u32, c: Symbol, pos: usize) -> u32 {
        let mut t = start;
        loop {
            let l = self.nodes[t as usize].pal_length;
            if l < 0 {
                return t;
            }
            let l = l as usize;
            if pos > l && self.word[pos - 1 - l] == c {
                return t;
            }
            t = self.nodes[t as usize].suffix_link;
        }
    }

    /// The word processed so far.
    pub fn word(&self) -> &[Symbol] {
        &self.word
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn node(&self, id: usize) -> &EertreeNode {
        &self.nodes[id]
    }

    /// Node of the longest palindromic suffix of the word so far.
    pub fn current_lps(&self) -> usize {
        self.current_lps as usize
    }

    /// One [`LpsStep`] per processed symbol.
    pub fn trace(&self) -> &[LpsStep] {
        &self.trace
    }

    /// Number of distinct palindromic factors of the word so far, `ε`
    /// included. Never exceeds `|word| + 1`.
    pub fn palindrome_count(&self) -> usize {
        self.nodes.len() - 1
    }

    /// The palindrome a non-root node stands for, read back from the word.
    pub fn palindrome_of(&self, id: usize) -> Word {
        let node = &self.nodes[id];
        assert_ne!(
            node.first_end_position, NO_POSITION,
            "roots do not stand for a concrete palindrome"
        );
        let end = node.first_end_position as usize + 1;
        let len = node.pal_length as usize;
        Word::from(&self.word[end - len..end])
    }

    /// Distinct palindromic factors of the word so far, `ε` included.
    pub fn distinct_palindromes(&self) -> BTreeSet<Word> {
        let mut out = BTreeSet::new();
        out.insert(Word::empty());
        for id in 2..self.nodes.len() {
            out.insert(self.palindrome_of(id));
        }
        out
    }

    /// Occurrence counts per node, aggregated over suffix links: entry `id`
    /// is the number of occurrences in the word of that node's palindrome.
    /// Indexed like the arena; the two root entries are not meaningful.
    pub fn occurrence_counts(&self) -> Vec<usize> {
        let mut counts: Vec<usize> = self
            .nodes
            .iter()
            .map(|n| n.occurrence_count as usize)
            .collect();
        let mut order: Vec<usize> = (2..self.nodes.len()).collect();
        // a suffix link always points to a strictly shorter palindrome, so
        // decreasing length is a valid propagation order
        order.sort_unstable_by_key(|&id| std::cmp::Reverse(self.nodes[id].pal_length));
        for id in order {
            let link = self.nodes[id].suffix_link as usize;
            counts[link] += counts[id];
        }
        counts
    }

    /// Deterministic text listing of the tree: node id, palindrome length,
    /// suffix link, transitions in symbol order.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for (id, node) in self.nodes.iter().enumerate() {
            write!(out, "{id}: len={} link={} trans={{", node.pal_length, node.suffix_link)
                .unwrap();
            for (i, (c, target)) in node.transitions.iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                write!(out, "{}->{target}", *c as char).unwrap();
            }
            out.push_str("}\n");
        }
        out
    }
}

/// All distinct palindromic factors of `w`, `ε` included.
pub fn distinct_palindromes(w: &Word) -> BTreeSet<Word> {
    Eertree::from_word(w).distinct_palindromes()
}

/// Longest-palindromic-suffix record for every prefix of `w`.
pub fn lps_trace(w: &Word) -> Vec<LpsStep> {
    Eertree::from_word(w).trace().to_vec()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle;

    fn push_all(tree: &mut Eertree, s: &str) -> Vec<usize> {
        s.bytes().map(|c| tree.push(c).unwrap()).collect()
    }

    #[test]
    fn push_returns_on_unary_word() {
        let mut tree = Eertree::new(Alphabet::lowercase(1).unwrap());
        assert_eq!(push_all(&mut tree, "aaa"), vec![1, 1, 1]);
        assert_eq!(tree.palindrome_count(), 4); // ε, a, aa, aaa
    }

    #[test]
    fn push_returns_on_the_worked_examples() {
        let mut tree = Eertree::new(Alphabet::lowercase(3).unwrap());
        assert_eq!(push_all(&mut tree, "abca"), vec![1, 1, 1, 0]);

        let mut tree = Eertree::new(Alphabet::lowercase(3).unwrap());
        assert_eq!(push_all(&mut tree, "abac"), vec![1, 1, 1, 1]);
    }

    #[test]
    fn push_rejects_symbols_outside_the_alphabet() {
        let mut tree = Eertree::new(Alphabet::lowercase(2).unwrap());
        assert_eq!(tree.push(b'z'), Err(Error::SymbolOutsideAlphabet('z')));
        // the failed push must not have touched the word
        assert_eq!(tree.word(), b"");
        assert_eq!(tree.palindrome_count(), 1);
    }

    #[test]
    fn distinct_palindromes_match_the_oracle_on_examples() {
        for s in ["abac", "", "abca", "aabcbaaba"] {
            let w = Word::from(s);
            assert_eq!(
                distinct_palindromes(&w),
                oracle::brute_distinct_palindromes(&w).unwrap(),
                "word {w}"
            );
        }
        assert_eq!(distinct_palindromes(&Word::from("abac")).len(), 5);
        assert_eq!(distinct_palindromes(&Word::from("abca")).len(), 4);
        assert_eq!(distinct_palindromes(&Word::empty()).len(), 1);
    }

    #[test]
    fn lps_trace_of_the_worked_examples() {
        let trace = lps_trace(&Word::from("abac"));
        assert_eq!(
            trace.iter().map(|s| s.length).collect::<Vec<_>>(),
            vec![1, 1, 3, 1]
        );
        assert!(trace.iter().all(|s| s.novel));

        let trace = lps_trace(&Word::from("abca"));
        assert_eq!(
            trace.iter().map(|s| s.length).collect::<Vec<_>>(),
            vec![1, 1, 1, 1]
        );
        assert_eq!(
            trace.iter().map(|s| s.novel).collect::<Vec<_>>(),
            vec![true, true, true, false]
        );

        let trace = lps_trace(&Word::from("a"));
        assert_eq!(trace, vec![LpsStep { length: 1, novel: true }]);
    }

    #[test]
    fn incremental_build_equals_from_scratch() {
        let whole = Word::from("aabcbaaba");
        for split in 0..=whole.len() {
            let mut tree = Eertree::new(Alphabet::lowercase(3).unwrap());
            tree.extend(&whole.factor(0..split)).unwrap();
            tree.extend(&whole.factor(split..whole.len())).unwrap();
            assert_eq!(tree.dump(), Eertree::from_word(&whole).dump(), "split {split}");
        }
    }

    #[test]
    fn aggregated_occurrence_counts_match_scans() {
        let w = Word::from("aabcbaaba");
        let tree = Eertree::from_word(&w);
        let counts = tree.occurrence_counts();
        for id in 2..tree.node_count() {
            let pal = tree.palindrome_of(id);
            assert_eq!(
                counts[id],
                w.occurrences(&pal).unwrap().len(),
                "palindrome {pal}"
            );
        }
    }

    #[test]
    fn dump_is_stable() {
        let tree = Eertree::from_word(&Word::from("abac"));
        let expected = "\
0: len=-1 link=0 trans={a->2, b->3, c->5}
1: len=0 link=0 trans={}
2: len=1 link=1 trans={}
3: len=1 link=1 trans={a->4}
4: len=3 link=2 trans={}
5: len=1 link=1 trans={}
";
        assert_eq!(tree.dump(), expected);
    }

    #[test]
    fn node_count_respects_the_bound_exhaustively() {
        let alphabet = Alphabet::lowercase(2).unwrap();
        for n in 0..=10 {
            for w in alphabet.words_of_length(n) {
                let tree = Eertree::from_word(&w);
                assert!(tree.palindrome_count() <= w.len() + 1);
                assert_eq!(
                    tree.palindrome_count(),
                    oracle::brute_distinct_palindromes(&w).unwrap().len(),
                    "word {w}"
                );
            }
        }
    }
}
