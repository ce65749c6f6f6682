//! Prefixes of the classic example word families: the Fibonacci word,
//! fixed points of morphisms, periodic words, and two simple non-recurrent
//! staircase words. All of them are rich, which makes them good fodder for
//! the analysis modules.

use std::collections::BTreeMap;

use crate::word::{Symbol, Word};
use crate::{Error, Result};

/// A letter-to-word substitution whose images only use symbols that have
/// rules of their own.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Morphism {
    rules: BTreeMap<Symbol, Word>,
}

impl Morphism {
    /// Builds a morphism, rejecting empty images, duplicate rules, and
    /// images that mention symbols without rules.
    pub fn new(rules: impl IntoIterator<Item = (Symbol, Word)>) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (symbol, image) in rules {
            if image.is_empty() {
                return Err(Error::EmptyImage(symbol as char));
            }
            if map.insert(symbol, image).is_some() {
                return Err(Error::MorphismSyntax(format!(
                    "symbol `{}` has two rules",
                    symbol as char
                )));
            }
        }
        if map.is_empty() {
            return Err(Error::MorphismSyntax("no rules given".to_string()));
        }
        for image in map.values() {
            for &c in image.symbols() {
                if !map.contains_key(&c) {
                    return Err(Error::MissingRule(c as char));
                }
            }
        }
        Ok(Self { rules: map })
    }

    /// Parses the compact rule form `a=aba;b=bb`.
    pub fn parse(spec: &str) -> Result<Self> {
        let mut rules = Vec::new();
        for part in spec.split(';') {
            let part = part.trim();
            if part.is_empty() {
                return Err(Error::MorphismSyntax("empty rule".to_string()));
            }
            let (lhs, rhs) = part
                .split_once('=')
                .ok_or_else(|| Error::MorphismSyntax(format!("rule `{part}` lacks `=`")))?;
            let (lhs, rhs) = (lhs.trim(), rhs.trim());
            let [symbol] = lhs.as_bytes() else {
                return Err(Error::MorphismSyntax(format!(
                    "left side `{lhs}` must be a single symbol"
                )));
            };
            rules.push((*symbol, Word::from(rhs)));
        }
        Self::new(rules)
    }

    pub fn image(&self, c: Symbol) -> Option<&Word> {
        self.rules.get(&c)
    }

    /// Fixed-point generation needs the seed's image to start with the seed
    /// and be at least two symbols long.
    pub fn is_prolongable_at(&self, seed: Symbol) -> bool {
        self.rules
            .get(&seed)
            .is_some_and(|img| img.len() >= 2 && img.symbols()[0] == seed)
    }

    /// Applies the substitution letterwise.
    pub fn apply(&self, w: &Word) -> Result<Word> {
        let mut out = Vec::new();
        for &c in w.symbols() {
            let image = self.rules.get(&c).ok_or(Error::MissingRule(c as char))?;
            out.extend_from_slice(image.symbols());
        }
        Ok(Word::from_symbols(out))
    }

    /// The length-`n` prefix of the unique fixed point starting with `seed`.
    /// Iterates the substitution with early truncation, so images are never
    /// materialized beyond `n` symbols.
    pub fn fixed_point_prefix(&self, seed: Symbol, n: usize) -> Result<Word> {
        if !self.is_prolongable_at(seed) {
            return Err(Error::NotProlongable(seed as char));
        }
        if n == 0 {
            return Ok(Word::empty());
        }
        let mut current = vec![seed];
        while current.len() < n {
            let mut next = Vec::with_capacity(n.min(current.len() * 2));
            'expand: for &c in &current {
                let image = self.rules.get(&c).expect("closure checked at construction");
                for &s in image.symbols() {
                    next.push(s);
                    if next.len() == n {
                        break 'expand;
                    }
                }
            }
            debug_assert!(next.len() > current.len(), "prolongable images must grow");
            current = next;
        }
        Ok(Word::from_symbols(current))
    }
}

/// Length-`n` prefix of the fixed point of `m` at `seed`.
pub fn morphic_prefix(m: &Morphism, seed: Symbol, n: usize) -> Result<Word> {
    m.fixed_point_prefix(seed, n)
}

/// Length-`n` prefix of the Fibonacci word `abaababaaba⋯`, built by the
/// concatenation recurrence `S₁ = a`, `S₂ = ab`, `Sₖ₊₁ = Sₖ·Sₖ₋₁`.
pub fn fibonacci_word(n: usize) -> Word {
    if n == 0 {
        return Word::empty();
    }
    let mut prev: Vec<Symbol> = vec![b'a'];
    let mut cur: Vec<Symbol> = vec![b'a', b'b'];
    if n == 1 {
        return Word::from_symbols(prev);
    }
    while cur.len() < n {
        let mut next = Vec::with_capacity(cur.len() + prev.len());
        next.extend_from_slice(&cur);
        next.extend_from_slice(&prev);
        prev = std::mem::replace(&mut cur, next);
    }
    cur.truncate(n);
    Word::from_symbols(cur)
}

/// First `n` symbols of `block` repeated indefinitely.
pub fn periodic_prefix(block: &Word, n: usize) -> Result<Word> {
    if block.is_empty() {
        return Err(Error::EmptyBlock);
    }
    Ok(block.symbols().iter().copied().cycle().take(n).collect())
}

/// Length-`n` prefix of `ψ` applied letterwise to the Fibonacci word, with
/// `ψ(a) = aa·bᵏ·aabab` and `ψ(b) = bab`.
pub fn psi_of_fibonacci(k: usize, n: usize) -> Word {
    if n == 0 {
        return Word::empty();
    }
    let image_a = psi_image_a(k);
    let image_b = b"bab";
    let mut out = Vec::with_capacity(n);
    // every image has at least 3 symbols, so n Fibonacci symbols are plenty
    for &c in fibonacci_word(n).symbols() {
        let image: &[Symbol] = if c == b'a' { &image_a } else { image_b };
        for &s in image {
            out.push(s);
            if out.len() == n {
                return Word::from_symbols(out);
            }
        }
    }
    unreachable!("images are non-empty, so n source symbols suffice")
}

/// The block `aa·bᵏ·aabab`, both the ψ image of `a` and the repeating block
/// of the periodic family.
pub fn psi_image_a(k: usize) -> Vec<Symbol> {
    let mut image = Vec::with_capacity(k + 7);
    image.extend_from_slice(b"aa");
    image.resize(k + 2, b'b');
    image.extend_from_slice(b"aabab");
    image
}

/// Which of the two non-recurrent staircase examples to generate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StaircaseMode {
    /// `a` followed by `b` forever: `abbbb⋯`.
    Flat,
    /// Growing runs of `a` separated by single `b`: `abaabaaabaaaab⋯`.
    Rising,
}

/// Length-`n` prefix of the selected staircase word.
pub fn staircase_word(mode: StaircaseMode, n: usize) -> Word {
    if n == 0 {
        return Word::empty();
    }
    let mut out = Vec::with_capacity(n);
    match mode {
        StaircaseMode::Flat => {
            out.push(b'a');
            out.resize(n, b'b');
        }
        StaircaseMode::Rising => {
            let mut run = 1;
            'fill: loop {
                for _ in 0..run {
                    out.push(b'a');
                    if out.len() == n {
                        break 'fill;
                    }
                }
                out.push(b'b');
                if out.len() == n {
                    break;
                }
                run += 1;
            }
        }
    }
    Word::from_symbols(out)
}
