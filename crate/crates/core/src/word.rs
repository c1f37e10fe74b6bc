//! Finite words over small ordered alphabets.
//!
//! A letter is stored as its index in an [`Alphabet`], so `a`, `b` over
//! `{a,b}` are `0`, `1`. Every operation here works on plain letter slices;
//! the alphabet is only needed to parse, render, or bound letters.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::{Add, Deref};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Index of a symbol inside its alphabet.
pub type Letter = u8;

/// An ordered finite set of distinct symbols.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Alphabet {
    symbols: Vec<char>,
}

impl Alphabet {
    pub fn new(symbols: impl IntoIterator<Item = char>) -> Result<Self> {
        let symbols: Vec<char> = symbols.into_iter().collect();
        if symbols.is_empty() {
            return Err(Error::InvalidAlphabet("alphabet is empty".into()));
        }
        if symbols.len() > usize::from(Letter::MAX) + 1 {
            return Err(Error::InvalidAlphabet(format!(
                "{} symbols exceed the supported maximum of 256",
                symbols.len()
            )));
        }
        let distinct: BTreeSet<char> = symbols.iter().copied().collect();
        if distinct.len() != symbols.len() {
            return Err(Error::InvalidAlphabet(format!(
                "repeated symbol in {:?}",
                symbols.iter().collect::<String>()
            )));
        }
        Ok(Self { symbols })
    }

    /// Parses an alphabet written as its symbols in order, e.g. `"ab"`.
    pub fn from_symbols(text: &str) -> Result<Self> {
        Self::new(text.chars())
    }

    /// `{a, b}`
    pub fn binary() -> Self {
        Self {
            symbols: vec!['a', 'b'],
        }
    }

    /// `{0, 1}`
    pub fn bits() -> Self {
        Self {
            symbols: vec!['0', '1'],
        }
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[char] {
        &self.symbols
    }

    pub fn symbol(&self, letter: Letter) -> Option<char> {
        self.symbols.get(usize::from(letter)).copied()
    }

    pub fn index_of(&self, symbol: char) -> Option<Letter> {
        self.symbols
            .iter()
            .position(|&c| c == symbol)
            .map(|i| i as Letter)
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> {
        (0..self.symbols.len()).map(|i| i as Letter)
    }

    pub fn parse(&self, text: &str) -> Result<Word> {
        text.chars()
            .map(|c| {
                self.index_of(c).ok_or_else(|| Error::UnknownSymbol {
                    symbol: c,
                    alphabet: self.to_string(),
                })
            })
            .collect::<Result<Vec<_>>>()
            .map(Word::from)
    }

    /// Fails on the first letter that has no symbol here.
    pub fn check(&self, letters: &[Letter]) -> Result<()> {
        match letters.iter().find(|&&x| usize::from(x) >= self.len()) {
            Some(&letter) => Err(Error::LetterOutOfRange {
                letter,
                size: self.len(),
            }),
            None => Ok(()),
        }
    }

    pub fn render(&self, letters: &[Letter]) -> String {
        letters
            .iter()
            .map(|&x| self.symbol(x).unwrap_or('?'))
            .collect()
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.symbols {
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// A finite word. The empty word is `Word::default()`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Self(Vec::new())
    }

    /// `letter` repeated `count` times.
    pub fn power_of_letter(letter: Letter, count: usize) -> Self {
        Self(vec![letter; count])
    }

    /// This word repeated `count` times.
    pub fn power(&self, count: usize) -> Self {
        Self(self.0.repeat(count))
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.0
    }

    pub fn concat(&self, other: &[Letter]) -> Self {
        let mut out = self.0.clone();
        out.extend_from_slice(other);
        Self(out)
    }
}

impl Deref for Word {
    type Target = [Letter];

    fn deref(&self) -> &[Letter] {
        &self.0
    }
}

impl AsRef<[Letter]> for Word {
    fn as_ref(&self) -> &[Letter] {
        &self.0
    }
}

impl From<Vec<Letter>> for Word {
    fn from(letters: Vec<Letter>) -> Self {
        Self(letters)
    }
}

impl From<&[Letter]> for Word {
    fn from(letters: &[Letter]) -> Self {
        Self(letters.to_vec())
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> Self {
        Self(iter.into_iter().collect())
    }
}

/// Letter counts of a word, one coordinate per alphabet letter.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ParikhVector(pub Vec<u64>);

impl ParikhVector {
    pub fn zero(size: usize) -> Self {
        Self(vec![0; size])
    }

    pub fn total(&self) -> u64 {
        self.0.iter().sum()
    }

    pub fn counts(&self) -> &[u64] {
        &self.0
    }
}

impl Add for &ParikhVector {
    type Output = ParikhVector;

    fn add(self, rhs: &ParikhVector) -> ParikhVector {
        let size = self.0.len().max(rhs.0.len());
        ParikhVector(
            (0..size)
                .map(|i| self.0.get(i).unwrap_or(&0) + rhs.0.get(i).unwrap_or(&0))
                .collect(),
        )
    }
}

/// Start positions of a factor within a host word.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OccurrenceSet {
    pub factor: Word,
    pub positions: Vec<usize>,
}

/// The distinct length-`n` factors of a host, in lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorSet {
    pub n: usize,
    pub factors: Vec<Word>,
    /// Set when `n` exceeded the host length, so the empty result says
    /// nothing about the infinite word.
    pub beyond_host: bool,
}

impl FactorSet {
    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn contains(&self, w: &[Letter]) -> bool {
        self.factors
            .binary_search_by(|f| f.letters().cmp(w))
            .is_ok()
    }
}

pub fn reflect(w: &[Letter]) -> Word {
    w.iter().rev().copied().collect()
}

pub fn is_palindrome(w: &[Letter]) -> bool {
    w.iter().eq(w.iter().rev())
}

/// The exchange map `a <-> b`, letter by letter. Binary words only.
pub fn exchange(w: &[Letter]) -> Result<Word> {
    Alphabet::binary().check(w)?;
    Ok(w.iter().map(|&x| 1 - x).collect())
}

pub fn parikh_vector(w: &[Letter], alphabet: &Alphabet) -> Result<ParikhVector> {
    alphabet.check(w)?;
    let mut counts = vec![0; alphabet.len()];
    for &x in w {
        counts[usize::from(x)] += 1;
    }
    Ok(ParikhVector(counts))
}

pub fn factor_set(host: &[Letter], n: usize) -> FactorSet {
    if n > host.len() {
        return FactorSet {
            n,
            factors: Vec::new(),
            beyond_host: true,
        };
    }
    let factors: BTreeSet<&[Letter]> = host.windows(n.max(1)).map(|w| &w[..n]).collect();
    let factors = if n == 0 {
        vec![Word::empty()]
    } else {
        factors.into_iter().map(Word::from).collect()
    };
    FactorSet {
        n,
        factors,
        beyond_host: false,
    }
}

pub fn occurrences(host: &[Letter], factor: &[Letter]) -> OccurrenceSet {
    let positions = if factor.is_empty() {
        Vec::new()
    } else {
        host.windows(factor.len())
            .enumerate()
            .filter(|(_, w)| *w == factor)
            .map(|(i, _)| i)
            .collect()
    };
    OccurrenceSet {
        factor: Word::from(factor),
        positions,
    }
}

/// Longest block `x^k` inside `host`.
pub fn max_run(host: &[Letter], x: Letter) -> usize {
    host.split(|&y| y != x)
        .map(<[Letter]>::len)
        .max()
        .unwrap_or(0)
}

/// Largest `k` such that `block^k` is a factor of `host`.
pub fn max_power(host: &[Letter], block: &[Letter]) -> usize {
    let m = block.len();
    if m == 0 || host.len() < m {
        return 0;
    }
    let starts = host.len() - m + 1;
    // chain[i] = number of consecutive copies of `block` starting at i
    let mut chain = vec![0usize; starts];
    let mut best = 0;
    for i in (0..starts).rev() {
        if &host[i..i + m] == block {
            chain[i] = 1 + chain.get(i + m).copied().unwrap_or(0);
            best = best.max(chain[i]);
        }
    }
    best
}

/// Smallest `p >= 1` with `w[i] = w[i + p]` throughout; `|w|` when none is shorter.
pub fn smallest_period(w: &[Letter]) -> usize {
    // KMP failure function: period = |w| - border
    let n = w.len();
    if n == 0 {
        return 0;
    }
    let mut border = vec![0usize; n];
    let mut k = 0;
    for i in 1..n {
        while k > 0 && w[i] != w[k] {
            k = border[k - 1];
        }
        if w[i] == w[k] {
            k += 1;
        }
        border[i] = k;
    }
    n - border[n - 1]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        Alphabet::binary().parse(s).unwrap()
    }

    fn show(x: &[Letter]) -> String {
        Alphabet::binary().render(x)
    }

    #[test]
    fn reflection() {
        assert_eq!(show(&reflect(&w("abb"))), "bba");
        assert_eq!(show(&reflect(&w("aba"))), "aba");
        assert!(reflect(&[]).is_empty());
    }

    #[test]
    fn palindromes() {
        assert!(is_palindrome(&w("baab")));
        assert!(!is_palindrome(&w("ab")));
        assert!(is_palindrome(&[]));
        assert!(is_palindrome(&w("b")));
    }

    #[test]
    fn reflect_is_an_involution_up_to_length_12() {
        for len in 0..=12u32 {
            for code in 0..(1u32 << len) {
                let word: Word = (0..len).map(|i| ((code >> i) & 1) as Letter).collect();
                assert_eq!(reflect(&reflect(&word)), word);
            }
        }
    }

    #[test]
    fn parikh() {
        let ab = Alphabet::binary();
        assert_eq!(parikh_vector(&w("abba"), &ab).unwrap().0, vec![2, 2]);
        assert_eq!(parikh_vector(&[], &ab).unwrap().0, vec![0, 0]);
        assert_eq!(parikh_vector(&w("bbb"), &ab).unwrap().0, vec![0, 3]);
        assert_eq!(
            parikh_vector(&[0, 2], &ab),
            Err(Error::LetterOutOfRange { letter: 2, size: 2 })
        );
    }

    #[test]
    fn factor_sets() {
        let set = factor_set(&w("abaab"), 2);
        let shown: Vec<String> = set.factors.iter().map(|f| show(f)).collect();
        assert_eq!(shown, ["aa", "ab", "ba"]);
        assert_eq!(factor_set(&w("aaaa"), 3).len(), 1);
        let empty = factor_set(&w("abaab"), 0);
        assert_eq!(empty.factors, vec![Word::empty()]);
        let past = factor_set(&w("ab"), 3);
        assert!(past.is_empty() && past.beyond_host);
    }

    #[test]
    fn occurrence_positions() {
        assert_eq!(occurrences(&w("aabaa"), &w("aa")).positions, [0, 3]);
        assert_eq!(occurrences(&w("abab"), &w("aba")).positions, [0]);
        assert!(occurrences(&w("bbb"), &w("a")).positions.is_empty());
        assert_eq!(occurrences(&w("aaaa"), &w("aa")).positions, [0, 1, 2]);
    }

    #[test]
    fn runs_and_powers() {
        assert_eq!(max_run(&w("abbbab"), 1), 3);
        assert_eq!(max_run(&w("aaaa"), 0), 4);
        assert_eq!(max_run(&w("bbb"), 0), 0);
        assert_eq!(max_power(&w("abababa"), &w("ab")), 3);
        assert_eq!(max_power(&w("aab"), &w("b")), 1);
        assert_eq!(max_power(&w("aab"), &w("ba")), 0);
    }

    #[test]
    fn periods() {
        assert_eq!(smallest_period(&w("ababab")), 2);
        assert_eq!(smallest_period(&w("abaab")), 3);
        assert_eq!(smallest_period(&w("aaaa")), 1);
        assert_eq!(smallest_period(&w("ab")), 2);
    }

    #[test]
    fn alphabet_validation() {
        assert!(Alphabet::from_symbols("").is_err());
        assert!(Alphabet::from_symbols("aba").is_err());
        let abc = Alphabet::from_symbols("abc").unwrap();
        assert_eq!(abc.parse("cab").unwrap().letters(), &[2, 0, 1]);
        assert!(matches!(
            abc.parse("abd"),
            Err(Error::UnknownSymbol { symbol: 'd', .. })
        ));
    }

    #[test]
    fn exchange_swaps_letters() {
        assert_eq!(show(&exchange(&w("aab")).unwrap()), "bba");
        assert!(exchange(&[2]).is_err());
    }
}
