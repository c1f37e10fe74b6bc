//! Radius-`r` local rules and their sliding application.
//!
//! A rule `f: A^r -> B` is applied to a word by reading every length-`r`
//! window left to right, so the image of `w` has `|w| - r + 1` letters and
//! is empty when `|w| < r`.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::index::FactorIndex;
use crate::word::{exchange, reflect, Alphabet, Letter, Word};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalRule {
    input: Alphabet,
    output: Alphabet,
    radius: usize,
    /// Output for every window, indexed by its base-`q` value (first letter
    /// most significant), so table order is lexicographic window order.
    table: Vec<Letter>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RuleProfile {
    pub invariant: bool,
    pub stable: bool,
    pub first_letter_determined: bool,
    pub surjective: bool,
}

impl LocalRule {
    pub fn from_table(
        input: Alphabet,
        output: Alphabet,
        radius: usize,
        table: Vec<Letter>,
    ) -> Result<Self> {
        if radius < 1 {
            return Err(Error::InvalidParameter {
                field: "radius",
                reason: "must be >= 1".into(),
            });
        }
        let size = window_count(input.len(), radius)?;
        if table.len() != size {
            return Err(Error::InvalidParameter {
                field: "table",
                reason: format!("{} entries given, {size} windows exist", table.len()),
            });
        }
        output.check(&table)?;
        Ok(Self {
            input,
            output,
            radius,
            table,
        })
    }

    pub fn from_fn(
        input: Alphabet,
        output: Alphabet,
        radius: usize,
        f: impl Fn(&[Letter]) -> Letter,
    ) -> Result<Self> {
        let size = window_count(input.len(), radius.max(1))?;
        let q = input.len();
        let table = (0..size).map(|code| f(&decode(code, q, radius))).collect();
        Self::from_table(input, output, radius, table)
    }

    /// Parses the text rule format: one `<window> <output>` pair per line,
    /// any order, `#` starts a comment, every window of the radius required.
    pub fn parse(text: &str, input: Alphabet, output: Alphabet) -> Result<Self> {
        let mut entries: BTreeMap<usize, Letter> = BTreeMap::new();
        let mut radius = None;
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |reason: String| Error::RuleFile {
                line: line_no,
                reason,
            };
            let mut parts = line.split_whitespace();
            let (Some(window), Some(out), None) = (parts.next(), parts.next(), parts.next()) else {
                return Err(err(format!("expected `<window> <letter>`, got {line:?}")));
            };
            let window = input.parse(window).map_err(|e| err(e.to_string()))?;
            let r = *radius.get_or_insert(window.len());
            if window.len() != r {
                return Err(err(format!(
                    "window length {} differs from radius {r}",
                    window.len()
                )));
            }
            let mut out_chars = out.chars();
            let (Some(symbol), None) = (out_chars.next(), out_chars.next()) else {
                return Err(err(format!("output {out:?} is not a single letter")));
            };
            let letter = output
                .index_of(symbol)
                .ok_or_else(|| err(format!("output {symbol:?} is not in alphabet {output}")))?;
            let code = encode(&window, input.len());
            if entries.insert(code, letter).is_some() {
                return Err(err(format!(
                    "window {} listed twice",
                    input.render(&window)
                )));
            }
        }
        let radius = radius.ok_or_else(|| Error::RuleFile {
            line: 0,
            reason: "no rule entries".into(),
        })?;
        let q = input.len();
        let size = window_count(q, radius)?;
        let missing: Vec<String> = (0..size)
            .filter(|code| !entries.contains_key(code))
            .map(|code| input.render(&decode(code, q, radius)))
            .collect();
        if !missing.is_empty() {
            return Err(Error::NonTotalRule { missing });
        }
        Self::from_table(input, output, radius, entries.into_values().collect())
    }

    /// Renders the rule in the text format accepted by [`LocalRule::parse`].
    pub fn to_text(&self) -> String {
        let q = self.input.len();
        self.table
            .iter()
            .enumerate()
            .map(|(code, &out)| {
                format!(
                    "{} {}\n",
                    self.input.render(&decode(code, q, self.radius)),
                    self.output.symbol(out).unwrap_or('?')
                )
            })
            .collect()
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn input_alphabet(&self) -> &Alphabet {
        &self.input
    }

    pub fn output_alphabet(&self) -> &Alphabet {
        &self.output
    }

    /// `f(window)`; `window` must have exactly `radius` letters.
    pub fn eval(&self, window: &[Letter]) -> Letter {
        debug_assert_eq!(window.len(), self.radius);
        self.table[encode(window, self.input.len())]
    }

    /// Sliding application: `F(xyz) = f(xy) F(yz)`, `F(w) = ε` if `|w| < r`.
    pub fn apply(&self, w: &[Letter]) -> Result<Word> {
        self.input.check(w)?;
        let r = self.radius;
        if w.len() < r {
            return Ok(Word::empty());
        }
        let q = self.input.len();
        let modulus = self.table.len();
        let mut code = encode(&w[..r - 1], q);
        let mut out = Vec::with_capacity(w.len() - r + 1);
        for &x in &w[r - 1..] {
            code = (code * q + usize::from(x)) % modulus;
            out.push(self.table[code]);
        }
        Ok(Word::from(out))
    }

    pub fn profile(&self) -> RuleProfile {
        let q = self.input.len();
        let r = self.radius;
        let windows = || (0..self.table.len()).map(|code| (decode(code, q, r), self.table[code]));

        let invariant = self.input == self.output && windows().all(|(w, out)| out == w[0]);
        let stable = windows().all(|(w, out)| self.eval(&reflect(&w)) == out);

        // outputs agree iff first letters agree: the output depends on the
        // first letter only, and distinct first letters give distinct outputs
        let mut by_first: Vec<Option<Letter>> = vec![None; q];
        let mut depends_on_first_only = true;
        for (w, out) in windows() {
            match by_first[usize::from(w[0])] {
                None => by_first[usize::from(w[0])] = Some(out),
                Some(prev) if prev != out => depends_on_first_only = false,
                Some(_) => {}
            }
        }
        let images: BTreeSet<Letter> = by_first.iter().flatten().copied().collect();
        let first_letter_determined = depends_on_first_only && images.len() == q;

        let attained: BTreeSet<Letter> = self.table.iter().copied().collect();
        let surjective = attained.len() == self.output.len();

        RuleProfile {
            invariant,
            stable,
            first_letter_determined,
            surjective,
        }
    }

    /// For a first-letter-determined rule, the letter map `x -> f(x y)`.
    pub fn first_letter_map(&self) -> Option<Vec<Letter>> {
        if !self.profile().first_letter_determined {
            return None;
        }
        let q = self.input.len();
        let stride = self.table.len() / q;
        Some((0..q).map(|x| self.table[x * stride]).collect())
    }
}

/// `f(a^(l+1)) = a`, every other length-`(l+1)` window maps to `b`.
pub fn run_length_rule(l: usize) -> Result<LocalRule> {
    if l < 1 {
        return Err(Error::InvalidParameter {
            field: "l",
            reason: "must be >= 1".into(),
        });
    }
    LocalRule::from_fn(Alphabet::binary(), Alphabet::binary(), l + 1, |w| {
        if w.iter().all(|&x| x == 0) {
            0
        } else {
            1
        }
    })
}

/// `H(x y) = x`.
pub fn invariant_rule(r: usize) -> Result<LocalRule> {
    LocalRule::from_fn(Alphabet::binary(), Alphabet::binary(), r, |w| w[0])
}

/// `G(x y) = E(x)`.
pub fn exchange_rule(r: usize) -> Result<LocalRule> {
    LocalRule::from_fn(Alphabet::binary(), Alphabet::binary(), r, |w| 1 - w[0])
}

/// `{ F(w) : w in L_(n+r-1)(host) }`.
pub fn language_image(rule: &LocalRule, host: &[Letter], n: usize) -> Result<BTreeSet<Word>> {
    let span = source_span(rule, host, n)?;
    let index = FactorIndex::new(host);
    index.factors(span).map(|w| rule.apply(w)).collect()
}

/// Whether `F` is one-to-one on `L_(n+r-1)(host)`.
pub fn injective_on_language(rule: &LocalRule, host: &[Letter], n: usize) -> Result<bool> {
    let span = source_span(rule, host, n)?;
    let index = FactorIndex::new(host);
    let mut seen = BTreeSet::new();
    for w in index.factors(span) {
        if !seen.insert(rule.apply(w)?) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether `F(E(host)) = E(F(host))`.
pub fn exchange_commutes(rule: &LocalRule, host: &[Letter]) -> Result<bool> {
    if rule.input_alphabet().len() != 2 || rule.output_alphabet().len() != 2 {
        return Err(Error::InvalidParameter {
            field: "rule",
            reason: "the exchange map is defined on binary alphabets only".into(),
        });
    }
    Ok(rule.apply(&exchange(host)?)? == exchange(&rule.apply(host)?)?)
}

fn source_span(rule: &LocalRule, host: &[Letter], n: usize) -> Result<usize> {
    if n < 1 {
        return Err(Error::InvalidParameter {
            field: "n",
            reason: "must be >= 1".into(),
        });
    }
    let span = n + rule.radius() - 1;
    if host.len() < span {
        return Err(Error::Boundary {
            needed: span,
            available: host.len(),
        });
    }
    Ok(span)
}

fn window_count(q: usize, radius: usize) -> Result<usize> {
    u32::try_from(radius)
        .ok()
        .and_then(|r| q.checked_pow(r))
        .filter(|&size| size <= 1 << 24)
        .ok_or_else(|| Error::InvalidParameter {
            field: "radius",
            reason: format!("{q}^{radius} windows is too many for a dense table"),
        })
}

fn encode(window: &[Letter], q: usize) -> usize {
    window.iter().fold(0, |acc, &x| acc * q + usize::from(x))
}

fn decode(mut code: usize, q: usize, radius: usize) -> Vec<Letter> {
    let mut w = vec![0; radius];
    for slot in w.iter_mut().rev() {
        *slot = (code % q) as Letter;
        code /= q;
    }
    w
}
