//! Complexity functions and structural diagnostics of a finite prefix.
//!
//! A prefix can undercount the factors of the infinite word it was cut
//! from, so every count is taken twice: on the prefix of length `N` and on
//! its first `N / 2` letters. A count is *converged* when both agree.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::index::FactorIndex;
use crate::palindromes::distinct_palindromes_per_prefix;
use crate::word::{is_palindrome, occurrences, reflect, Letter, ParikhVector, Word};

/// Aligned windows expected per (factor, residue) pair before a missing
/// occurrence counts as a refutation of modulo-recurrence.
pub const DEFAULT_COVERAGE: usize = 50;

/// Complexity tables stop at `N / HORIZON_DIVISOR` by default.
pub const HORIZON_DIVISOR: usize = 100;

/// A count together with the convergence flag of the prefix-halving guard.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Count {
    pub value: u64,
    pub converged: bool,
}

impl Count {
    fn compare(full: u64, half: u64, covered: bool) -> Self {
        Self {
            value: full,
            converged: covered && full == half,
        }
    }
}

/// One row per length, in the order of the CSV columns.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComplexityRow {
    pub n: usize,
    pub p: u64,
    /// Absent when the prefix holds fewer than two aligned windows.
    pub pf: Option<u64>,
    pub pal: u64,
    pub rho_ab: u64,
    pub converged: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct ComplexityTable {
    pub rows: Vec<ComplexityRow>,
}

impl ComplexityTable {
    pub const CSV_HEADER: &'static str = "n,p,pf,pal,rho_ab,converged";

    pub fn to_csv(&self) -> String {
        let mut out = csv::Writer::from_writer(Vec::new());
        for row in &self.rows {
            out.serialize(row).expect("in-memory csv write");
        }
        String::from_utf8(out.into_inner().expect("in-memory csv flush")).expect("csv is utf-8")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("table serializes") + "\n"
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpecialFactorReport {
    pub n: usize,
    /// `(w, ∂⁺w)` for every factor with at least two right extensions.
    pub right_special: Vec<(Word, usize)>,
    /// `(w, ∂⁻w)` for every factor with at least two left extensions.
    pub left_special: Vec<(Word, usize)>,
    pub bispecial: Vec<Word>,
    /// `Σ (∂⁺w - 1)` over all of `L_n`.
    pub extension_excess: i64,
    /// `p(n + 1) - p(n)`.
    pub complexity_gap: i64,
    pub converged: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BalanceWitness {
    pub n: usize,
    pub letter: Letter,
    /// The factor with more occurrences of `letter`.
    pub heavy: Word,
    pub light: Word,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BalanceReport {
    pub alpha: u64,
    pub witness: Option<BalanceWitness>,
    /// Largest letter-count spread among factors of each length `1..=max_n`.
    pub spread: Vec<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Conclusion {
    Holds,
    Fails,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ResidueCoverage {
    pub factor: Word,
    /// Occurrences at positions `≡ i (mod n)`, for `i` in `0..n`.
    pub hits: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ModuloRecurrenceReport {
    pub n: usize,
    pub conclusion: Conclusion,
    pub coverage: Vec<ResidueCoverage>,
    /// Whether the factors found at multiples of `n` are all of `L_n`.
    pub window_factors_equal_language: bool,
    /// Prefix length needed before a missing residue refutes the property.
    pub horizon: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BucciReport {
    /// Lengths where `pal(n) + pal(n+1) = p(n+1) - p(n) + 2` was evaluated.
    pub checked: Vec<usize>,
    pub failures: Vec<usize>,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RichnessReport {
    pub rich: bool,
    /// Distinct palindromes (ε included) in each prefix `host[..m]`.
    pub palindrome_counts: Vec<usize>,
    /// Shortest prefix length `m` holding fewer than `m + 1` palindromes.
    pub first_deficient_prefix: Option<usize>,
    pub bucci: BucciReport,
}

/// Factor statistics of one prefix and of its first half.
pub struct PrefixAnalysis<'a> {
    host: &'a [Letter],
    letters: usize,
    full: FactorIndex<'a>,
    half: FactorIndex<'a>,
}

impl<'a> PrefixAnalysis<'a> {
    pub fn new(host: &'a [Letter]) -> Self {
        let letters = host.iter().max().map_or(1, |&x| usize::from(x) + 1);
        Self {
            host,
            letters,
            full: FactorIndex::new(host),
            half: FactorIndex::new(&host[..host.len() / 2]),
        }
    }

    /// Fixes the number of Parikh coordinates (defaults to the largest
    /// letter present plus one).
    pub fn with_alphabet_size(mut self, size: usize) -> Self {
        self.letters = size.max(self.letters);
        self
    }

    /// Agreement with the half prefix only means something while the half
    /// prefix is strictly longer than `n`.
    fn covers(&self, n: usize) -> bool {
        n < self.half.text().len()
    }

    pub fn host(&self) -> &'a [Letter] {
        self.host
    }

    pub fn len(&self) -> usize {
        self.host.len()
    }

    pub fn is_empty(&self) -> bool {
        self.host.is_empty()
    }

    /// Distinct length-`n` factors of the full prefix, lexicographic.
    pub fn factors(&self, n: usize) -> Vec<&'a [Letter]> {
        if n == 0 {
            return vec![&[]];
        }
        self.full.factors(n).collect()
    }

    pub fn contains(&self, w: &[Letter]) -> bool {
        !occurrences(self.host, w).positions.is_empty() || w.is_empty()
    }

    pub fn factor_complexity(&self, n: usize) -> Count {
        Count::compare(self.full.count(n), self.half.count(n), self.covers(n))
    }

    /// `p(0..=max_n)` on the full prefix, in one pass.
    pub fn factor_counts(&self, max_n: usize) -> Vec<u64> {
        self.full.counts_up_to(max_n)
    }

    pub fn window_complexity(&self, n: usize) -> Result<Count> {
        if n == 0 {
            return Err(Error::InvalidParameter {
                field: "n",
                reason: "window complexity needs n >= 1".into(),
            });
        }
        if self.host.len() < 2 * n {
            return Err(Error::Boundary {
                needed: 2 * n,
                available: self.host.len(),
            });
        }
        let half = &self.host[..self.host.len() / 2];
        let full = aligned_blocks(self.host, n);
        Ok(Count {
            value: full,
            converged: half.len() >= 2 * n && aligned_blocks(half, n) == full,
        })
    }

    pub fn palindromes(&self, n: usize) -> Vec<Word> {
        self.factors(n)
            .into_iter()
            .filter(|w| is_palindrome(w))
            .map(Word::from)
            .collect()
    }

    pub fn palindromic_complexity(&self, n: usize) -> Count {
        let count = |idx: &FactorIndex<'_>| -> u64 {
            if n == 0 {
                1
            } else {
                idx.factors(n).filter(|w| is_palindrome(w)).count() as u64
            }
        };
        Count::compare(count(&self.full), count(&self.half), self.covers(n))
    }

    pub fn parikh_set(&self, n: usize) -> BTreeSet<ParikhVector> {
        self.parikh_set_of(&self.full, n)
    }

    pub fn abelian_complexity(&self, n: usize) -> Count {
        Count::compare(
            self.parikh_set_of(&self.full, n).len() as u64,
            self.parikh_set_of(&self.half, n).len() as u64,
            self.covers(n),
        )
    }

    fn parikh_set_of(&self, idx: &FactorIndex<'_>, n: usize) -> BTreeSet<ParikhVector> {
        if n == 0 {
            return BTreeSet::from([ParikhVector::zero(self.letters)]);
        }
        idx.factors(n)
            .map(|w| {
                let mut counts = vec![0u64; self.letters];
                for &x in w {
                    counts[usize::from(x)] += 1;
                }
                ParikhVector(counts)
            })
            .collect()
    }

    /// Whether the reflection of every length-`n` factor is also a factor.
    pub fn reflection_closed(&self, n: usize) -> bool {
        let set: BTreeSet<&[Letter]> = self.full.factors(n).collect();
        set.iter().all(|w| set.contains(reflect(w).letters()))
    }

    pub fn special_factors(&self, n: usize) -> SpecialFactorReport {
        let full = special_factors_of(&self.full, n);
        let half = special_factors_of(&self.half, n);
        SpecialFactorReport {
            converged: self.covers(n + 1)
                && full.right_special == half.right_special
                && full.left_special == half.left_special,
            ..full
        }
    }

    /// See [`modulo_recurrence_check_with`].
    pub fn modulo_recurrence(&self, n: usize, coverage: usize) -> Result<ModuloRecurrenceReport> {
        if n == 0 {
            return Err(Error::InvalidParameter {
                field: "n",
                reason: "must be >= 1".into(),
            });
        }
        if self.host.len() < n {
            return Err(Error::Boundary {
                needed: n,
                available: self.host.len(),
            });
        }
        let factors: Vec<&[Letter]> = self.full.factors(n).collect();
        let mut hits = vec![vec![0u64; n]; factors.len()];
        for (pos, class) in self.full.classes(n).into_iter().enumerate() {
            if let Some(c) = class {
                hits[c as usize][pos % n] += 1;
            }
        }
        let complete = hits.iter().all(|h| h.iter().all(|&c| c > 0));
        let horizon = coverage * n * factors.len();
        let conclusion = if complete {
            Conclusion::Holds
        } else if self.host.len() >= horizon {
            Conclusion::Fails
        } else {
            Conclusion::Inconclusive
        };
        Ok(ModuloRecurrenceReport {
            n,
            conclusion,
            window_factors_equal_language: hits.iter().all(|h| h[0] > 0),
            coverage: factors
                .into_iter()
                .zip(hits)
                .map(|(f, hits)| ResidueCoverage {
                    factor: Word::from(f),
                    hits,
                })
                .collect(),
            horizon,
        })
    }

    /// Rows for every `n` in `n_min..=n_max`.
    pub fn table(&self, n_min: usize, n_max: usize) -> ComplexityTable {
        let rows = (n_min..=n_max)
            .map(|n| {
                let p = self.factor_complexity(n);
                let pal = self.palindromic_complexity(n);
                let ab = self.abelian_complexity(n);
                let pf = if n >= 1 {
                    self.window_complexity(n).ok()
                } else {
                    None
                };
                ComplexityRow {
                    n,
                    p: p.value,
                    pf: pf.map(|c| c.value),
                    pal: pal.value,
                    rho_ab: ab.value,
                    converged: p.converged
                        && pal.converged
                        && ab.converged
                        && pf.is_none_or(|c| c.converged),
                }
            })
            .collect();
        ComplexityTable { rows }
    }

    /// The palindromic-complexity identity `pal(n) + pal(n+1) =
    /// p(n+1) - p(n) + 2` at every `n <= max_n` whose four counts converged.
    pub fn bucci_identity(&self, max_n: usize) -> BucciReport {
        let mut checked = Vec::new();
        let mut failures = Vec::new();
        for n in 0..=max_n {
            let (p0, p1) = (self.factor_complexity(n), self.factor_complexity(n + 1));
            let (q0, q1) = (
                self.palindromic_complexity(n),
                self.palindromic_complexity(n + 1),
            );
            if !(p0.converged && p1.converged && q0.converged && q1.converged) {
                continue;
            }
            checked.push(n);
            if q0.value + q1.value + p0.value != p1.value + 2 {
                failures.push(n);
            }
        }
        BucciReport {
            holds: failures.is_empty() && !checked.is_empty(),
            checked,
            failures,
        }
    }
}

fn aligned_blocks(host: &[Letter], n: usize) -> u64 {
    host.chunks_exact(n).collect::<BTreeSet<_>>().len() as u64
}

fn special_factors_of(idx: &FactorIndex<'_>, n: usize) -> SpecialFactorReport {
    let mut right: BTreeMap<&[Letter], BTreeSet<Letter>> = BTreeMap::new();
    let mut left: BTreeMap<&[Letter], BTreeSet<Letter>> = BTreeMap::new();
    let longer: Vec<&[Letter]> = idx.factors(n + 1).collect();
    for w in &longer {
        right.entry(&w[..n]).or_default().insert(w[n]);
        left.entry(&w[1..]).or_default().insert(w[0]);
    }
    let shorter: Vec<&[Letter]> = if n == 0 {
        vec![&[]]
    } else {
        idx.factors(n).collect()
    };
    let degree = |map: &BTreeMap<&[Letter], BTreeSet<Letter>>, w: &[Letter]| {
        map.get(w).map_or(0, BTreeSet::len)
    };
    let mut report = SpecialFactorReport {
        n,
        right_special: Vec::new(),
        left_special: Vec::new(),
        bispecial: Vec::new(),
        extension_excess: 0,
        complexity_gap: longer.len() as i64 - shorter.len() as i64,
        converged: true,
    };
    for w in shorter {
        let (plus, minus) = (degree(&right, w), degree(&left, w));
        report.extension_excess += plus as i64 - 1;
        if plus > 1 {
            report.right_special.push((Word::from(w), plus));
        }
        if minus > 1 {
            report.left_special.push((Word::from(w), minus));
        }
        if plus > 1 && minus > 1 {
            report.bispecial.push(Word::from(w));
        }
    }
    report
}

pub fn factor_complexity(host: &[Letter], n: usize) -> Count {
    PrefixAnalysis::new(host).factor_complexity(n)
}

pub fn window_complexity(host: &[Letter], n: usize) -> Result<Count> {
    PrefixAnalysis::new(host).window_complexity(n)
}

pub fn palindromic_complexity(host: &[Letter], n: usize) -> Count {
    PrefixAnalysis::new(host).palindromic_complexity(n)
}

pub fn abelian_complexity(host: &[Letter], n: usize) -> Count {
    PrefixAnalysis::new(host).abelian_complexity(n)
}

pub fn special_factors(host: &[Letter], n: usize) -> SpecialFactorReport {
    PrefixAnalysis::new(host).special_factors(n)
}

/// Largest spread `||v|_x - |w|_x|` over equal-length factors, `|v| <= max_n`.
///
/// For binary words only the first letter is scanned; the counts of the
/// other letter are complementary.
pub fn balance_coefficient(host: &[Letter], max_n: usize) -> BalanceReport {
    let letters: BTreeSet<Letter> = host.iter().copied().collect();
    let scanned: Vec<Letter> = if letters.len() <= 2 {
        letters.iter().take(1).copied().collect()
    } else {
        letters.into_iter().collect()
    };
    let max_n = max_n.min(host.len());
    let mut report = BalanceReport {
        alpha: 0,
        witness: None,
        spread: vec![0; max_n],
    };
    for &x in &scanned {
        let mut prefix = Vec::with_capacity(host.len() + 1);
        prefix.push(0u64);
        for &y in host {
            prefix.push(prefix.last().unwrap() + u64::from(y == x));
        }
        for n in 1..=max_n {
            let (mut lo, mut hi) = ((u64::MAX, 0), (0u64, 0));
            for i in 0..=host.len() - n {
                let c = prefix[i + n] - prefix[i];
                if c < lo.0 {
                    lo = (c, i);
                }
                if c > hi.0 {
                    hi = (c, i);
                }
            }
            let spread = hi.0 - lo.0;
            report.spread[n - 1] = report.spread[n - 1].max(spread);
            if spread > report.alpha {
                report.alpha = spread;
                report.witness = Some(BalanceWitness {
                    n,
                    letter: x,
                    heavy: Word::from(&host[hi.1..hi.1 + n]),
                    light: Word::from(&host[lo.1..lo.1 + n]),
                });
            }
        }
    }
    report
}

/// Checks that every length-`n` factor occurs at every residue modulo `n`,
/// with the default coverage of [`DEFAULT_COVERAGE`].
pub fn modulo_recurrence_check(host: &[Letter], n: usize) -> Result<ModuloRecurrenceReport> {
    modulo_recurrence_check_with(host, n, DEFAULT_COVERAGE)
}

/// A missing (factor, residue) pair refutes the property only when the
/// prefix spans `coverage * n * p(n)` letters, i.e. `coverage` aligned
/// windows per pair on average; shorter prefixes are inconclusive.
pub fn modulo_recurrence_check_with(
    host: &[Letter],
    n: usize,
    coverage: usize,
) -> Result<ModuloRecurrenceReport> {
    PrefixAnalysis::new(host).modulo_recurrence(n, coverage)
}

/// Richness of every prefix, plus the palindromic identity on converged
/// lengths up to `min(100, N / 100)`.
pub fn richness_check(host: &[Letter]) -> RichnessReport {
    let counts = distinct_palindromes_per_prefix(host);
    let first_deficient_prefix = counts
        .iter()
        .enumerate()
        .find(|&(m, &c)| c != m + 1)
        .map(|(m, _)| m);
    let max_n = 100.min(host.len() / HORIZON_DIVISOR);
    RichnessReport {
        rich: first_deficient_prefix.is_none(),
        palindrome_counts: counts,
        first_deficient_prefix,
        bucci: PrefixAnalysis::new(host).bucci_identity(max_n),
    }
}

/// First-return words of `factor`: the blocks between consecutive occurrences.
pub fn return_words(host: &[Letter], factor: &[Letter]) -> Result<BTreeSet<Word>> {
    let occ = occurrences(host, factor);
    if occ.positions.len() < 2 {
        return Err(Error::InsufficientData(format!(
            "factor occurs {} time(s); return words need two occurrences",
            occ.positions.len()
        )));
    }
    Ok(occ
        .positions
        .windows(2)
        .map(|pair| Word::from(&host[pair[0]..pair[1]]))
        .collect())
}
