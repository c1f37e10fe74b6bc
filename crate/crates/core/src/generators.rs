//! Prefixes of the infinite words under study.
//!
//! Every generator is exact: Sturmian words come from directive sequences
//! (continued-fraction partial quotients) and standard words, never from a
//! floating-point slope.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::word::{exchange, Alphabet, Letter, Word};

/// A deterministic producer of prefixes of one infinite word.
///
/// `prefix(n)` has exactly `n` letters and is a prefix of `prefix(m)` for
/// every `m >= n`.
pub trait PrefixSource {
    fn id(&self) -> String;
    fn alphabet(&self) -> Alphabet;
    fn prefix(&self, n: usize) -> Result<Word>;
}

/// Partial quotients `d1, d2, ...` of the slope `[0; d1, d2, ...]`.
///
/// Stored as a head followed by a block repeated forever; an empty period
/// makes the sequence finite.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DirectiveSequence {
    head: Vec<u32>,
    period: Vec<u32>,
}

impl DirectiveSequence {
    pub fn finite(coefficients: Vec<u32>) -> Result<Self> {
        Self::eventually_periodic(coefficients, Vec::new())
    }

    pub fn eventually_periodic(head: Vec<u32>, period: Vec<u32>) -> Result<Self> {
        if head.is_empty() && period.is_empty() {
            return Err(Error::InvalidParameter {
                field: "directive",
                reason: "no coefficients".into(),
            });
        }
        if head.iter().chain(&period).any(|&d| d == 0) {
            return Err(Error::InvalidParameter {
                field: "directive",
                reason: "coefficients must be >= 1".into(),
            });
        }
        Ok(Self { head, period })
    }

    /// `(1, 1, 1, ...)`, the golden-ratio slope of the Fibonacci word.
    pub fn golden() -> Self {
        Self {
            head: Vec::new(),
            period: vec![1],
        }
    }

    /// Parses `"2,1,3"` (finite) or `"2,(1)"` / `"(1,2)"` where the
    /// parenthesised tail repeats forever.
    pub fn parse(text: &str) -> Result<Self> {
        let bad = |reason: String| Error::InvalidParameter {
            field: "directive",
            reason,
        };
        let text = text.trim();
        let (head_text, period_text) = match text.find('(') {
            Some(open) => {
                let inner = text[open + 1..]
                    .strip_suffix(')')
                    .ok_or_else(|| bad(format!("unclosed period in {text:?}")))?;
                (text[..open].trim_end_matches(',').trim(), inner)
            }
            None => (text, ""),
        };
        let numbers = |s: &str| -> Result<Vec<u32>> {
            s.split(',')
                .map(str::trim)
                .filter(|t| !t.is_empty())
                .map(|t| t.parse::<u32>().map_err(|e| bad(format!("{t:?}: {e}"))))
                .collect()
        };
        Self::eventually_periodic(numbers(head_text)?, numbers(period_text)?)
    }

    pub fn coefficient(&self, i: usize) -> Option<u32> {
        if i < self.head.len() {
            Some(self.head[i])
        } else if self.period.is_empty() {
            None
        } else {
            Some(self.period[(i - self.head.len()) % self.period.len()])
        }
    }

    pub fn is_finite(&self) -> bool {
        self.period.is_empty()
    }
}

impl fmt::Display for DirectiveSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[u32]| v.iter().map(u32::to_string).collect::<Vec<_>>().join(",");
        write!(f, "{}", join(&self.head))?;
        if !self.period.is_empty() {
            if !self.head.is_empty() {
                write!(f, ",")?;
            }
            write!(f, "({})", join(&self.period))?;
        }
        Ok(())
    }
}

/// Parameters of `a^l0 b a^(l+e1) b a^(l+e2) b ...`.
#[derive(Debug, Clone, PartialEq)]
pub struct ASturmianParams {
    pub l0: usize,
    pub l: usize,
    /// Source of `e1, e2, ...`; its letters 0 and 1 are read as the values 0 and 1.
    pub epsilon: Box<Generator>,
}

impl ASturmianParams {
    pub fn new(l0: usize, l: usize, epsilon: Generator) -> Result<Self> {
        if l < 1 {
            return Err(Error::InvalidParameter {
                field: "l",
                reason: "must be >= 1".into(),
            });
        }
        if l0 > l + 1 {
            return Err(Error::InvalidParameter {
                field: "l0",
                reason: format!("must be <= l + 1 = {}", l + 1),
            });
        }
        if epsilon.alphabet().len() != 2 {
            return Err(Error::InvalidParameter {
                field: "eps",
                reason: format!("{} is not a two-letter source", epsilon.id()),
            });
        }
        Ok(Self {
            l0,
            l,
            epsilon: Box::new(epsilon),
        })
    }
}

/// The words this crate knows how to generate.
#[derive(Debug, Clone, PartialEq)]
pub enum Generator {
    /// Fixed point of `a -> ab, b -> a`.
    Fibonacci,
    /// Characteristic Sturmian word of slope `[0; d1, d2, ...]`.
    Characteristic(DirectiveSequence),
    ASturmian(ASturmianParams),
    /// Binary Champernowne word `0 1 10 11 100 ...` over `{0,1}`.
    Champernowne,
    Periodic {
        seed: Word,
        alphabet: Alphabet,
    },
    /// Image of another binary generator under the exchange map.
    Exchanged(Box<Generator>),
}

impl Generator {
    pub fn periodic(seed: Word, alphabet: Alphabet) -> Result<Self> {
        if seed.is_empty() {
            return Err(Error::InvalidParameter {
                field: "seed",
                reason: "must be non-empty".into(),
            });
        }
        alphabet.check(&seed)?;
        Ok(Self::Periodic { seed, alphabet })
    }

    pub fn exchanged(inner: Generator) -> Result<Self> {
        if inner.alphabet().len() != 2 {
            return Err(Error::InvalidParameter {
                field: "word",
                reason: "the exchange map needs a binary word".into(),
            });
        }
        Ok(Self::Exchanged(Box::new(inner)))
    }

    /// Named 0/1 sources for the `e_i` of an a-Sturmian word:
    /// `fibonacci01` (a->0, b->1), `fibonacci10` (a->1, b->0),
    /// `sturmian01:<directive>`, `sturmian10:<directive>`, `periodic:<bits>`.
    pub fn parse_epsilon(name: &str) -> Result<Self> {
        let bad = || Error::InvalidParameter {
            field: "eps",
            reason: format!(
                "unknown source {name:?}; expected fibonacci01, fibonacci10, \
                 sturmian01:<directive>, sturmian10:<directive> or periodic:<bits>"
            ),
        };
        match name {
            "fibonacci01" => Ok(Self::Fibonacci),
            "fibonacci10" => Self::exchanged(Self::Fibonacci),
            _ => {
                if let Some(d) = name.strip_prefix("sturmian01:") {
                    Ok(Self::Characteristic(DirectiveSequence::parse(d)?))
                } else if let Some(d) = name.strip_prefix("sturmian10:") {
                    Self::exchanged(Self::Characteristic(DirectiveSequence::parse(d)?))
                } else if let Some(bits) = name.strip_prefix("periodic:") {
                    Self::periodic(Alphabet::bits().parse(bits)?, Alphabet::bits())
                } else {
                    Err(bad())
                }
            }
        }
    }
}

impl PrefixSource for Generator {
    fn id(&self) -> String {
        match self {
            Self::Fibonacci => "fibonacci".into(),
            Self::Characteristic(d) => format!("sturmian[{d}]"),
            Self::ASturmian(p) => {
                format!("asturmian(l0={},l={},eps={})", p.l0, p.l, p.epsilon.id())
            }
            Self::Champernowne => "champernowne".into(),
            Self::Periodic { seed, alphabet } => format!("periodic({})", alphabet.render(seed)),
            Self::Exchanged(inner) => format!("exchange({})", inner.id()),
        }
    }

    fn alphabet(&self) -> Alphabet {
        match self {
            Self::Champernowne => Alphabet::bits(),
            Self::Periodic { alphabet, .. } => alphabet.clone(),
            Self::Exchanged(inner) => inner.alphabet(),
            _ => Alphabet::binary(),
        }
    }

    fn prefix(&self, n: usize) -> Result<Word> {
        match self {
            Self::Fibonacci => Ok(fibonacci(n)),
            Self::Characteristic(d) => characteristic_sturmian(d, n),
            Self::ASturmian(p) => a_sturmian(p, n),
            Self::Champernowne => Ok(champernowne(n)),
            Self::Periodic { seed, .. } => periodic(seed, n),
            Self::Exchanged(inner) => exchange(&inner.prefix(n)?),
        }
    }
}

/// Length-`n` prefix of the Fibonacci word, by iterating `a -> ab, b -> a`.
pub fn fibonacci(n: usize) -> Word {
    let mut word: Vec<Letter> = vec![0];
    while word.len() < n {
        word = word
            .iter()
            .flat_map(|&x| if x == 0 { &[0, 1][..] } else { &[0][..] })
            .copied()
            .collect();
    }
    word.truncate(n);
    Word::from(word)
}

/// Length-`n` prefix of the characteristic Sturmian word with directive `d`.
///
/// Uses the standard words `s(-1) = b`, `s(0) = a`,
/// `s(k) = s(k-1)^d(k) s(k-2)`; each `s(k)` is a prefix of the limit.
pub fn characteristic_sturmian(d: &DirectiveSequence, n: usize) -> Result<Word> {
    let mut older: Vec<Letter> = vec![1];
    let mut current: Vec<Letter> = vec![0];
    let mut k = 0;
    while current.len() < n {
        let Some(dk) = d.coefficient(k) else {
            return Err(Error::ExtendDirective {
                requested: n,
                certified: current.len(),
                extra: extra_unit_coefficients(older.len(), current.len(), n),
            });
        };
        let mut next = Vec::with_capacity(current.len() * dk as usize + older.len());
        for _ in 0..dk {
            next.extend_from_slice(&current);
            if next.len() >= n {
                break;
            }
        }
        next.extend_from_slice(&older);
        older = current;
        current = next;
        k += 1;
    }
    current.truncate(n);
    Ok(Word::from(current))
}

fn extra_unit_coefficients(mut older: usize, mut current: usize, target: usize) -> usize {
    let mut extra = 0;
    while current < target {
        (older, current) = (current, current + older);
        extra += 1;
    }
    extra
}

/// Length-`n` prefix of `a^l0 b a^(l+e1) b a^(l+e2) b ...`.
pub fn a_sturmian(p: &ASturmianParams, n: usize) -> Result<Word> {
    let blocks = n / (p.l + 1) + 1;
    let eps = p.epsilon.prefix(blocks)?;
    if let Some(&bad) = eps.iter().find(|&&e| e > 1) {
        return Err(Error::InvalidParameter {
            field: "eps",
            reason: format!("value {bad} is not in {{0,1}}"),
        });
    }
    let mut word = Vec::with_capacity(n + p.l + 2);
    word.extend(std::iter::repeat_n(0, p.l0));
    word.push(1);
    for &e in eps.iter() {
        if word.len() >= n {
            break;
        }
        word.extend(std::iter::repeat_n(0, p.l + usize::from(e)));
        word.push(1);
    }
    word.truncate(n);
    Ok(Word::from(word))
}

/// Length-`n` prefix of the binary Champernowne word over `{0,1}`.
pub fn champernowne(n: usize) -> Word {
    let mut word = Vec::with_capacity(n + 64);
    let mut k: u64 = 0;
    while word.len() < n {
        if k == 0 {
            word.push(0);
        } else {
            let bits = 64 - k.leading_zeros();
            word.extend((0..bits).rev().map(|i| ((k >> i) & 1) as Letter));
        }
        k += 1;
    }
    word.truncate(n);
    Word::from(word)
}

/// Length-`n` prefix of `seed seed seed ...`.
pub fn periodic(seed: &[Letter], n: usize) -> Result<Word> {
    if seed.is_empty() {
        return Err(Error::InvalidParameter {
            field: "seed",
            reason: "must be non-empty".into(),
        });
    }
    Ok(seed.iter().copied().cycle().take(n).collect())
}
