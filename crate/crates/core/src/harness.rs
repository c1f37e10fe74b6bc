//! Theorem checks: each one evaluates a closed formula (or a structural
//! claim) and the brute-force count on a prefix, then reports a [`Verdict`].
//!
//! Only converged lengths decide a verdict. A length whose count moved
//! between the prefix and its first half is recorded but never counted as a
//! failure, so a short prefix cannot masquerade as a counterexample.

use std::collections::{BTreeMap, BTreeSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::analysis::{
    balance_coefficient, return_words, richness_check, Conclusion, PrefixAnalysis,
    DEFAULT_COVERAGE, HORIZON_DIVISOR,
};
use crate::error::{Error, Result};
use crate::generators::{periodic, ASturmianParams, DirectiveSequence, Generator, PrefixSource};
use crate::rule::{exchange_commutes, exchange_rule, invariant_rule, run_length_rule, LocalRule};
use crate::word::{
    exchange, max_power, max_run, smallest_period, Alphabet, Letter, ParikhVector, Word,
};

/// Seed for the random rule tables of the transfer check.
pub const RANDOM_RULE_SEED: u64 = 0x5eed_ca01;

/// Prefix length used when a configuration does not name one.
pub const DEFAULT_PREFIX_LEN: usize = 100_000;

/// Longest prefix whose every prefix is checked for richness.
pub const RICHNESS_PREFIX_LEN: usize = 2000;

/// Every theorem id understood by [`run_theorem`], in suite order.
pub const THEOREM_IDS: &[&str] = &[
    "sturmian",
    "extensions",
    "n0",
    "cc",
    "cp",
    "ca",
    "balance2",
    "return-words",
    "transfer",
    "mod",
    "periodicity",
    "stability-richness",
    "special",
    "fixed-point",
];

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Expected {
    Exact(i64),
    OneOf(Vec<i64>),
    AtMost(i64),
    Flag(bool),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Observed {
    Count(i64),
    Flag(bool),
}

impl Expected {
    pub fn accepts(&self, observed: Observed) -> bool {
        match (self, observed) {
            (Self::Exact(e), Observed::Count(o)) => *e == o,
            (Self::OneOf(set), Observed::Count(o)) => set.contains(&o),
            (Self::AtMost(e), Observed::Count(o)) => o <= *e,
            (Self::Flag(e), Observed::Flag(o)) => *e == o,
            _ => false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerdictRow {
    pub n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub quantity: Option<String>,
    pub expected: Expected,
    pub observed: Observed,
    pub converged: bool,
}

impl VerdictRow {
    pub fn agrees(&self) -> bool {
        self.expected.accepts(self.observed)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Inconclusive,
    /// The theorem's hypothesis does not hold for this input.
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Verdict {
    pub theorem_id: String,
    pub config: BTreeMap<String, Value>,
    pub rows: Vec<VerdictRow>,
    pub pass: bool,
    pub status: Status,
    pub notes: String,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub details: BTreeMap<String, Value>,
}

impl Verdict {
    /// Rows for one quantity (or all rows when `quantity` is `None`).
    pub fn rows_for<'a>(
        &'a self,
        quantity: Option<&'a str>,
    ) -> impl Iterator<Item = &'a VerdictRow> {
        self.rows
            .iter()
            .filter(move |r| quantity.is_none() || r.quantity.as_deref() == quantity)
    }

    pub fn converged_rows(&self) -> usize {
        self.rows.iter().filter(|r| r.converged).count()
    }
}

struct VerdictBuilder {
    theorem_id: &'static str,
    config: BTreeMap<String, Value>,
    rows: Vec<VerdictRow>,
    notes: Vec<String>,
    failures: Vec<String>,
    details: BTreeMap<String, Value>,
    skipped: bool,
}

impl VerdictBuilder {
    fn new(theorem_id: &'static str, config: BTreeMap<String, Value>) -> Self {
        Self {
            theorem_id,
            config,
            rows: Vec::new(),
            notes: Vec::new(),
            failures: Vec::new(),
            details: BTreeMap::new(),
            skipped: false,
        }
    }

    fn row(
        &mut self,
        n: usize,
        quantity: &str,
        expected: Expected,
        observed: Observed,
        converged: bool,
    ) {
        self.rows.push(VerdictRow {
            n,
            quantity: Some(quantity.to_string()),
            expected,
            observed,
            converged,
        });
    }

    fn count(
        &mut self,
        n: usize,
        quantity: &str,
        expected: Expected,
        observed: u64,
        converged: bool,
    ) {
        self.row(
            n,
            quantity,
            expected,
            Observed::Count(observed as i64),
            converged,
        );
    }

    fn flag(&mut self, n: usize, quantity: &str, observed: bool, converged: bool) {
        self.row(
            n,
            quantity,
            Expected::Flag(true),
            Observed::Flag(observed),
            converged,
        );
    }

    fn require(&mut self, condition: bool, what: impl Into<String>) {
        if !condition {
            self.failures.push(what.into());
        }
    }

    fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    fn detail(&mut self, key: &str, value: Value) {
        self.details.insert(key.to_string(), value);
    }

    fn finish(mut self) -> Verdict {
        let mismatched: Vec<String> = self
            .rows
            .iter()
            .filter(|r| r.converged && !r.agrees())
            .map(|r| match &r.quantity {
                Some(q) => format!("{q}@{}", r.n),
                None => r.n.to_string(),
            })
            .collect();
        let unconverged = self.rows.iter().filter(|r| !r.converged).count();
        if unconverged > 0 {
            self.notes.push(format!(
                "{unconverged} unconverged row(s) excluded from the verdict"
            ));
        }
        let status = if self.skipped {
            Status::Skipped
        } else if !mismatched.is_empty() || !self.failures.is_empty() {
            Status::Fail
        } else if unconverged == self.rows.len() {
            Status::Inconclusive
        } else {
            Status::Pass
        };
        if !mismatched.is_empty() {
            self.notes
                .push(format!("mismatch at {}", mismatched.join(", ")));
        }
        for f in &self.failures {
            self.notes.push(format!("FAILED: {f}"));
        }
        Verdict {
            theorem_id: self.theorem_id.to_string(),
            config: self.config,
            rows: self.rows,
            pass: matches!(status, Status::Pass | Status::Skipped),
            status,
            notes: self.notes.join("; "),
            details: self.details,
        }
    }
}

/// The a-Sturmian source word and its image under the run-length rule.
#[derive(Debug, Clone, PartialEq)]
pub struct RunLengthConfig {
    pub l0: usize,
    pub l: usize,
    pub epsilon: Generator,
    pub prefix_len: usize,
}

impl RunLengthConfig {
    /// `l0` defaults to `l` and the prefix to [`DEFAULT_PREFIX_LEN`].
    pub fn new(l: usize, epsilon: Generator) -> Self {
        Self {
            l0: l,
            l,
            epsilon,
            prefix_len: DEFAULT_PREFIX_LEN,
        }
    }

    pub fn describe(&self) -> BTreeMap<String, Value> {
        BTreeMap::from([
            ("generator".into(), json!("asturmian")),
            ("l0".into(), json!(self.l0)),
            ("l".into(), json!(self.l)),
            ("eps".into(), json!(self.epsilon.id())),
            ("rule".into(), json!(format!("runlength(l={})", self.l))),
            ("prefix_len".into(), json!(self.prefix_len)),
        ])
    }

    pub fn build(&self) -> Result<RunLengthSetup> {
        let params = ASturmianParams::new(self.l0, self.l, self.epsilon.clone())?;
        let source = Generator::ASturmian(params).prefix(self.prefix_len)?;
        let rule = run_length_rule(self.l)?;
        let image = rule.apply(&source)?;
        let n0 = estimate_n0(&source, self.l)?;
        let mut config = self.describe();
        config.insert("n0".into(), json!(n0.n0));
        config.insert("k0".into(), json!(n0.k0));
        Ok(RunLengthSetup {
            l: self.l,
            source,
            image,
            rule,
            n0,
            config,
        })
    }
}

/// The six a-Sturmian configurations used throughout the test suite:
/// `l` in `1..=3`, with `e` the Fibonacci word read `a -> 1, b -> 0`
/// (`n0 = 2(l+1)`) or the characteristic word of directive `2,(1)` read
/// `a -> 0, b -> 1` (`n0 = 4(l+1)`).
pub fn standard_configs() -> Vec<RunLengthConfig> {
    let eps = [
        Generator::exchanged(Generator::Fibonacci).expect("fibonacci is binary"),
        Generator::Characteristic(DirectiveSequence::parse("2,(1)").expect("valid directive")),
    ];
    (1..=3)
        .flat_map(|l| eps.iter().map(move |e| RunLengthConfig::new(l, e.clone())))
        .collect()
}

#[derive(Debug, Clone)]
pub struct RunLengthSetup {
    pub l: usize,
    pub source: Word,
    pub image: Word,
    pub rule: LocalRule,
    pub n0: N0Estimate,
    config: BTreeMap<String, Value>,
}

impl RunLengthSetup {
    /// Lengths `1..=3 n0`.
    pub fn range(&self) -> std::ops::RangeInclusive<usize> {
        1..=3 * self.n0.n0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct N0Estimate {
    pub n0: usize,
    pub k0: usize,
    pub l: usize,
    /// Longest `b` run of the image, found independently of `k0`.
    pub longest_b_run: usize,
    pub method_agreement: bool,
}

/// `k0` is the largest power of `a^l b` in `v`, `n0 = k0 (l + 1)`; the
/// longest run of `b` in the image under the run-length rule must agree.
pub fn estimate_n0(v: &[Letter], l: usize) -> Result<N0Estimate> {
    let mut block = vec![0; l];
    block.push(1);
    let k0 = max_power(v, &block);
    let image = run_length_rule(l)?.apply(v)?;
    let maximal_runs = image
        .split(|&x| x == 0)
        .filter(|run| !run.is_empty())
        .count();
    if maximal_runs < 3 {
        return Err(Error::InsufficientData(format!(
            "image holds {maximal_runs} maximal b-run(s); at least 3 are needed"
        )));
    }
    let n0 = k0 * (l + 1);
    let longest_b_run = max_run(&image, 1);
    Ok(N0Estimate {
        n0,
        k0,
        l,
        longest_b_run,
        method_agreement: longest_b_run == n0,
    })
}

/// Classical complexity of the image word.
pub fn expected_complexity(n: usize, n0: usize, l: usize) -> u64 {
    let (n, n0, l) = (n as i64, n0 as i64, l as i64);
    let value = if n <= n0 - l {
        n + 1
    } else if n <= n0 {
        2 * n - n0 + l + 1
    } else {
        n + l + 1
    };
    value as u64
}

/// Palindromic complexity of the image word, split by parities.
pub fn expected_palindromic(n: usize, n0: usize, l: usize) -> u64 {
    let even = |x: usize| x.is_multiple_of(2);
    if n + l <= n0 {
        if even(n) {
            1
        } else {
            2
        }
    } else if n <= n0 {
        if even(n0) {
            if even(l) && even(n) {
                1
            } else if !even(l) {
                2
            } else {
                3
            }
        } else {
            2
        }
    } else if even(n + l) {
        1
    } else {
        2
    }
}

pub fn expected_abelian(n: usize, n0: usize, l: usize) -> Expected {
    if n + l <= n0 {
        Expected::Exact(2)
    } else if n <= n0 {
        Expected::Exact(3)
    } else {
        Expected::OneOf(vec![2, 3])
    }
}

/// `Pal_n` of the image for `n <= n0`, listed from the factor inventory
/// `b^n`, `b^i a b^(n-i-1)`, `b^j a b^(n0-l-1) a b^(n-n0+l-1-j)`.
pub fn explicit_palindromes(n: usize, n0: usize, l: usize) -> Option<BTreeSet<Word>> {
    if n == 0 || n > n0 {
        return None;
    }
    let b = |k: usize| Word::power_of_letter(1, k);
    let a = [0];
    let mut set = BTreeSet::from([b(n)]);
    if n % 2 == 1 {
        let half = (n - 1) / 2;
        set.insert(b(half).concat(&a).concat(&b(half)));
    }
    if n + l > n0 {
        let gap = n0 - l - 1;
        let rest = n + l - n0 - 1;
        if rest.is_multiple_of(2) {
            let side = b(rest / 2);
            set.insert(side.concat(&a).concat(&b(gap)).concat(&a).concat(&side));
        }
    }
    Some(set)
}

/// Parikh vectors (count of `a`, count of `b`) of the image for `n <= n0`.
pub fn explicit_parikh_set(n: usize, n0: usize, l: usize) -> Option<BTreeSet<ParikhVector>> {
    if n == 0 || n > n0 {
        return None;
    }
    let max_a = if n + l <= n0 { 1 } else { 2 };
    Some(
        (0..=max_a)
            .map(|k| ParikhVector(vec![k as u64, (n - k) as u64]))
            .collect(),
    )
}

fn render(words: impl IntoIterator<Item = impl AsRef<[Letter]>>) -> Value {
    let ab = Alphabet::binary();
    Value::Array(
        words
            .into_iter()
            .map(|w| Value::String(ab.render(w.as_ref())))
            .collect(),
    )
}

fn agreement_requirement(b: &mut VerdictBuilder, n0: &N0Estimate) {
    b.require(
        n0.method_agreement,
        format!(
            "n0 = k0(l+1) = {} disagrees with the longest b-run {}",
            n0.n0, n0.longest_b_run
        ),
    );
}

pub fn check_n0(setup: &RunLengthSetup) -> Verdict {
    let mut b = VerdictBuilder::new("n0", setup.config.clone());
    let est = setup.n0;
    b.count(
        est.n0,
        "longest_b_run",
        Expected::Exact(est.n0 as i64),
        est.longest_b_run as u64,
        true,
    );
    agreement_requirement(&mut b, &est);
    b.note(format!(
        "k0 = {} (largest power of a^l b), n0 = {}",
        est.k0, est.n0
    ));
    b.finish()
}

/// Classical complexity of the image, piecewise in `n0 - l` and `n0`.
pub fn check_cc(setup: &RunLengthSetup) -> Verdict {
    let mut b = VerdictBuilder::new("cc", setup.config.clone());
    let (n0, l) = (setup.n0.n0, setup.l);
    agreement_requirement(&mut b, &setup.n0);
    let analysis = PrefixAnalysis::new(&setup.image);
    let mut observed = BTreeMap::new();
    for n in setup.range() {
        let count = analysis.factor_complexity(n);
        observed.insert(n, count);
        b.count(
            n,
            "p",
            Expected::Exact(expected_complexity(n, n0, l) as i64),
            count.value,
            count.converged,
        );
    }
    // adjacent branches meet at both boundaries
    let (n0i, li) = (n0 as i64, l as i64);
    let at_low = n0i - li;
    b.require(
        at_low + 1 == 2 * at_low - n0i + li + 1,
        "branches n+1 and 2n-n0+l+1 differ at n0-l",
    );
    b.require(
        2 * n0i - n0i + li + 1 == n0i + li + 1,
        "branches 2n-n0+l+1 and n+l+1 differ at n0",
    );
    for (n, v) in [(n0 - l, n0 - l + 1), (n0, n0 + l + 1)] {
        if let Some(c) = observed.get(&n).filter(|c| c.converged) {
            b.require(
                c.value == v as u64,
                format!("observed p({n}) = {} at a boundary, expected {v}", c.value),
            );
        }
    }
    // quasi-Sturmian: slope 1 past n0
    for n in n0 + 1..3 * n0 {
        let (c0, c1) = (observed[&n], observed[&(n + 1)]);
        if c0.converged && c1.converged {
            b.require(
                c1.value == c0.value + 1,
                format!("p({}) - p({n}) != 1", n + 1),
            );
        }
    }
    b.note(format!("n0 = {n0}, k0 = {}", setup.n0.k0));
    b.finish()
}

/// Palindromic complexity of the image; inventories for `n <= n0` are
/// compared against the explicit sets.
pub fn check_cp(setup: &RunLengthSetup) -> Verdict {
    let mut b = VerdictBuilder::new("cp", setup.config.clone());
    let (n0, l) = (setup.n0.n0, setup.l);
    agreement_requirement(&mut b, &setup.n0);
    let analysis = PrefixAnalysis::new(&setup.image);
    let mut inventories = serde_json::Map::new();
    for n in setup.range() {
        let count = analysis.palindromic_complexity(n);
        b.count(
            n,
            "pal",
            Expected::Exact(expected_palindromic(n, n0, l) as i64),
            count.value,
            count.converged,
        );
        if let Some(explicit) = explicit_palindromes(n, n0, l) {
            let found: BTreeSet<Word> = analysis.palindromes(n).into_iter().collect();
            if count.converged {
                b.require(
                    found == explicit,
                    format!("palindrome inventory at n = {n} differs from the explicit set"),
                );
            }
            inventories.insert(n.to_string(), render(&found));
        }
    }
    b.detail("inventories", Value::Object(inventories));
    b.note(format!(
        "n0 = {n0} is {}",
        if n0 % 2 == 0 { "even" } else { "odd" }
    ));
    b.note("the (n0 odd, l odd) sub-case is vacuous: n0 = k0(l+1) is even whenever l is odd");
    b.finish()
}

/// Abelian complexity of the image, with the Parikh sets for `n <= n0`.
pub fn check_ca(setup: &RunLengthSetup) -> Verdict {
    let mut b = VerdictBuilder::new("ca", setup.config.clone());
    let (n0, l) = (setup.n0.n0, setup.l);
    agreement_requirement(&mut b, &setup.n0);
    let analysis = PrefixAnalysis::new(&setup.image).with_alphabet_size(2);
    let mut beyond = serde_json::Map::new();
    for n in setup.range() {
        let count = analysis.abelian_complexity(n);
        b.count(
            n,
            "rho_ab",
            expected_abelian(n, n0, l),
            count.value,
            count.converged,
        );
        if let Some(explicit) = explicit_parikh_set(n, n0, l) {
            if count.converged {
                b.require(
                    analysis.parikh_set(n) == explicit,
                    format!("Parikh set at n = {n} differs from the explicit set"),
                );
            }
        } else {
            beyond.insert(n.to_string(), json!(count.value));
        }
    }
    // weak proxy for non-ultimate periodicity: no constant tail over (n0, 3 n0]
    let tail: Vec<u64> = (n0 + 1..=3 * n0)
        .map(|n| analysis.abelian_complexity(n))
        .filter(|c| c.converged)
        .map(|c| c.value)
        .collect();
    if tail.len() == 2 * n0 {
        b.require(
            tail.iter().any(|&v| v != tail[0]),
            format!("rho_ab is constant on ({n0}, {}]", 3 * n0),
        );
    } else {
        b.note("rho_ab tail not fully converged; constancy proxy not evaluated");
    }
    b.detail("rho_ab_beyond_n0", Value::Object(beyond));
    b.finish()
}

/// The image is exactly 2-balanced while the source is balanced.
pub fn check_balance2(setup: &RunLengthSetup) -> Verdict {
    let mut b = VerdictBuilder::new("balance2", setup.config.clone());
    let (n0, l) = (setup.n0.n0, setup.l);
    let max_n = (3 * n0).max(100);
    let image = balance_coefficient(&setup.image, max_n);
    let half = balance_coefficient(&setup.image[..setup.image.len() / 2], max_n);
    let analysis = PrefixAnalysis::new(&setup.image).with_alphabet_size(2);
    for n in 1..=max_n {
        let spread = image.spread[n - 1];
        b.count(
            n,
            "spread",
            Expected::AtMost(2),
            spread,
            half.spread.get(n - 1) == Some(&spread),
        );
        let ab = analysis.abelian_complexity(n);
        b.count(n, "rho_ab", Expected::AtMost(3), ab.value, ab.converged);
    }
    b.require(
        image.alpha == 2,
        format!("image balance is {}, expected 2", image.alpha),
    );
    let source = balance_coefficient(&setup.source, max_n);
    b.require(
        source.alpha == 1,
        format!("source balance is {}, expected 1", source.alpha),
    );

    let bb = Word::power_of_letter(1, n0 - l + 1);
    let aba = Word::from(vec![0])
        .concat(&Word::power_of_letter(1, n0 - l - 1))
        .concat(&[0]);
    b.require(analysis.contains(&bb), "b^(n0-l+1) is not a factor");
    b.require(analysis.contains(&aba), "a b^(n0-l-1) a is not a factor");
    if let Some(w) = &image.witness {
        b.detail(
            "witness",
            json!({
                "n": w.n,
                "heavy": Alphabet::binary().render(&w.heavy),
                "light": Alphabet::binary().render(&w.light),
            }),
        );
    }
    b.detail("imbalance_witnesses", render([bb, aba]));
    b.finish()
}

/// Return words of `a` are `{a b^(n0-l-1), a b^n0}`, those of `b` are `{b, ba}`.
pub fn check_return_words(setup: &RunLengthSetup) -> Result<Verdict> {
    let mut b = VerdictBuilder::new("return-words", setup.config.clone());
    let (n0, l) = (setup.n0.n0, setup.l);
    agreement_requirement(&mut b, &setup.n0);
    let a = Word::from(vec![0]);
    let expected_a = BTreeSet::from([
        a.concat(&Word::power_of_letter(1, n0 - l - 1)),
        a.concat(&Word::power_of_letter(1, n0)),
    ]);
    let expected_b = BTreeSet::from([Word::from(vec![1]), Word::from(vec![1, 0])]);
    let found_a = return_words(&setup.image, &[0])?;
    let found_b = return_words(&setup.image, &[1])?;
    b.flag(1, "return_words(a)", found_a == expected_a, true);
    b.flag(1, "return_words(b)", found_b == expected_b, true);
    b.detail("a", render(&found_a));
    b.detail("b", render(&found_b));
    Ok(b.finish())
}

fn word_config(generator: &Generator, prefix_len: usize) -> BTreeMap<String, Value> {
    BTreeMap::from([
        ("generator".into(), json!(generator.id())),
        ("prefix_len".into(), json!(prefix_len)),
    ])
}

fn rule_label(rule: &LocalRule) -> String {
    format!(
        "radius {} table {}",
        rule.radius(),
        rule.to_text().replace('\n', ";")
    )
}

/// Default analysis horizon `min(requested, N / 100)`.
pub fn horizon(requested: usize, prefix_len: usize) -> usize {
    requested.min(prefix_len / HORIZON_DIVISOR)
}

/// The four equivalent characterisations, all on one prefix.
pub fn check_sturmian_characterizations(
    generator: &Generator,
    prefix_len: usize,
    max_n: usize,
) -> Result<Verdict> {
    let mut config = word_config(generator, prefix_len);
    config.insert("n_max".into(), json!(max_n));
    let mut b = VerdictBuilder::new("sturmian", config);
    let host = generator.prefix(prefix_len)?;
    let analysis = PrefixAnalysis::new(&host).with_alphabet_size(2);
    let mut previous = None;
    let mut increasing = true;
    for n in 1..=max_n {
        let p = analysis.factor_complexity(n);
        b.count(n, "p", Expected::Exact(n as i64 + 1), p.value, p.converged);
        let ab = analysis.abelian_complexity(n);
        b.count(n, "rho_ab", Expected::Exact(2), ab.value, ab.converged);
        let pal = analysis.palindromic_complexity(n);
        let parity = if n % 2 == 0 { 1 } else { 2 };
        b.count(n, "pal", Expected::Exact(parity), pal.value, pal.converged);
        if let Some(prev) = previous {
            increasing &= p.value > prev;
        }
        previous = Some(p.value);
    }
    let balance = balance_coefficient(&host, max_n);
    b.require(
        balance.alpha == 1,
        format!("balance coefficient is {}", balance.alpha),
    );
    b.require(
        increasing,
        "complexity is not strictly increasing (periodic behaviour)",
    );
    Ok(b.finish())
}

/// `p(n+1) - p(n) = Σ (∂⁺w - 1)` over `L_n`.
pub fn check_extension_identity(label: &str, host: &[Letter], max_n: usize) -> Verdict {
    let config = BTreeMap::from([
        ("word".into(), json!(label)),
        ("prefix_len".into(), json!(host.len())),
        ("n_max".into(), json!(max_n)),
    ]);
    let mut b = VerdictBuilder::new("extensions", config);
    let analysis = PrefixAnalysis::new(host);
    for n in 0..=max_n {
        let report = analysis.special_factors(n);
        let (p0, p1) = (
            analysis.factor_complexity(n),
            analysis.factor_complexity(n + 1),
        );
        b.row(
            n,
            "sum_right_extensions",
            Expected::Exact(p1.value as i64 - p0.value as i64),
            Observed::Count(report.extension_excess),
            p0.converged && p1.converged && report.converged,
        );
    }
    b.finish()
}

/// `p_F(u)(n) <= p_u(n + r - 1)`, with equality wherever `F` is one-to-one
/// on `L_(n+r-1)`.
pub fn check_transfer(
    rule: &LocalRule,
    generator: &Generator,
    prefix_len: usize,
    max_n: usize,
) -> Result<Verdict> {
    let mut config = word_config(generator, prefix_len);
    config.insert("rule".into(), json!(rule_label(rule)));
    config.insert("n_max".into(), json!(max_n));
    let mut b = VerdictBuilder::new("transfer", config);
    let source = generator.prefix(prefix_len)?;
    let image = rule.apply(&source)?;
    let src = PrefixAnalysis::new(&source);
    let img = PrefixAnalysis::new(&image);
    let r = rule.radius();
    let mut injective_at = Vec::new();
    for n in 1..=max_n {
        let bound = src.factor_complexity(n + r - 1);
        let observed = img.factor_complexity(n);
        let injective = injective_on(rule, &src, n + r - 1)?;
        if injective {
            injective_at.push(n);
        }
        let expected = if injective {
            Expected::Exact(bound.value as i64)
        } else {
            Expected::AtMost(bound.value as i64)
        };
        b.count(
            n,
            "p_image",
            expected,
            observed.value,
            bound.converged && observed.converged,
        );
    }
    b.detail("injective_at", json!(injective_at));
    Ok(b.finish())
}

/// The run-length rule on the a-Sturmian source: the transfer bound holds
/// everywhere and is an equality `p_F(v)(n) = p_v(n + l)` for every `n > n0`.
pub fn check_transfer_run_length(setup: &RunLengthSetup) -> Result<Verdict> {
    let mut b = VerdictBuilder::new("transfer", setup.config.clone());
    let (n0, l) = (setup.n0.n0, setup.l);
    agreement_requirement(&mut b, &setup.n0);
    let src = PrefixAnalysis::new(&setup.source);
    let img = PrefixAnalysis::new(&setup.image);
    let mut injective_at = Vec::new();
    for n in setup.range() {
        let bound = src.factor_complexity(n + l);
        let observed = img.factor_complexity(n);
        let injective = injective_on(&setup.rule, &src, n + l)?;
        if injective {
            injective_at.push(n);
        }
        let expected = if n > n0 || injective {
            Expected::Exact(bound.value as i64)
        } else {
            Expected::AtMost(bound.value as i64)
        };
        b.count(
            n,
            "p_image",
            expected,
            observed.value,
            bound.converged && observed.converged,
        );
    }
    b.detail("injective_at", json!(injective_at));
    Ok(b.finish())
}

fn injective_on(rule: &LocalRule, source: &PrefixAnalysis<'_>, span: usize) -> Result<bool> {
    let mut seen = BTreeSet::new();
    for w in source.factors(span) {
        if !seen.insert(rule.apply(w)?) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Radius-`r` binary rule tables drawn from [`RANDOM_RULE_SEED`].
pub fn random_rules(count: usize, radius: usize) -> Result<Vec<LocalRule>> {
    let mut rng = ChaCha8Rng::seed_from_u64(RANDOM_RULE_SEED);
    (0..count)
        .map(|_| {
            let table = (0..1usize << radius).map(|_| rng.gen_range(0..2)).collect();
            LocalRule::from_table(Alphabet::binary(), Alphabet::binary(), radius, table)
        })
        .collect()
}

/// Source and image agree on modulo-recurrence at every conclusive length;
/// on modulo-recurrent words window and factor complexity coincide.
pub fn check_mod_preservation(
    rule: &LocalRule,
    generator: &Generator,
    prefix_len: usize,
    max_n: usize,
) -> Result<Verdict> {
    let mut config = word_config(generator, prefix_len);
    config.insert("rule".into(), json!(rule_label(rule)));
    config.insert("n_max".into(), json!(max_n));
    let mut b = VerdictBuilder::new("mod", config);
    let source = generator.prefix(prefix_len)?;
    let image = rule.apply(&source)?;
    let src = PrefixAnalysis::new(&source);
    let img = PrefixAnalysis::new(&image);
    let mut excluded = Vec::new();
    for n in 1..=max_n {
        let s = src.modulo_recurrence(n, DEFAULT_COVERAGE)?;
        let i = img.modulo_recurrence(n, DEFAULT_COVERAGE)?;
        let conclusive =
            s.conclusion != Conclusion::Inconclusive && i.conclusion != Conclusion::Inconclusive;
        if !conclusive {
            excluded.push(n);
        }
        b.row(
            n,
            "modulo_recurrent",
            Expected::Flag(s.conclusion == Conclusion::Holds),
            Observed::Flag(i.conclusion == Conclusion::Holds),
            conclusive,
        );
        for (label, analysis, report) in [("source", &src, &s), ("image", &img, &i)] {
            if report.conclusion == Conclusion::Holds {
                let p = analysis.factor_complexity(n);
                let pf = analysis.window_complexity(n)?;
                b.count(
                    n,
                    &format!("pf_{label}"),
                    Expected::Exact(p.value as i64),
                    pf.value,
                    p.converged && pf.converged,
                );
            }
        }
    }
    if !excluded.is_empty() {
        b.note(format!("inconclusive horizons at n = {excluded:?}"));
    }
    Ok(b.finish())
}

/// The image of a periodic word is periodic with a period dividing the seed's.
pub fn check_periodicity(rule: &LocalRule, seed: &Word, prefix_len: usize) -> Result<Verdict> {
    let alphabet = rule.input_alphabet();
    let config = BTreeMap::from([
        ("seed".into(), json!(alphabet.render(seed))),
        ("rule".into(), json!(rule_label(rule))),
        ("prefix_len".into(), json!(prefix_len)),
    ]);
    let mut b = VerdictBuilder::new("periodicity", config);
    let source = periodic(seed, prefix_len)?;
    let image = rule.apply(&source)?;
    if image.len() < 2 * seed.len() {
        return Err(Error::Boundary {
            needed: 2 * seed.len() + rule.radius() - 1,
            available: prefix_len,
        });
    }
    let source_period = smallest_period(&source);
    let image_period = smallest_period(&image);
    b.flag(
        seed.len(),
        "period_divides_seed",
        seed.len().is_multiple_of(image_period),
        true,
    );
    b.detail("source_period", json!(source_period));
    b.detail("image_period", json!(image_period));
    b.note(if source_period == image_period {
        "source and image share the smallest period".to_string()
    } else {
        format!("smallest periods differ: source {source_period}, image {image_period}")
    });
    Ok(b.finish())
}

/// Reflection closure, palindrome transfer, richness and the palindromic
/// identity for the image of the run-length rule.
pub fn check_stability_richness(setup: &RunLengthSetup) -> Result<Verdict> {
    let mut b = VerdictBuilder::new("stability-richness", setup.config.clone());
    let r = setup.rule.radius();
    b.require(setup.rule.profile().stable, "run-length rule is not stable");
    let src = PrefixAnalysis::new(&setup.source);
    let img = PrefixAnalysis::new(&setup.image);
    let mut injective_at = Vec::new();
    for n in setup.range() {
        let converged = img.factor_complexity(n).converged;
        b.flag(n, "reflection_closed", img.reflection_closed(n), converged);
        if injective_on(&setup.rule, &src, n + r - 1)? {
            injective_at.push(n);
            let (ps, pi) = (
                src.palindromic_complexity(n + r - 1),
                img.palindromic_complexity(n),
            );
            b.count(
                n,
                "pal_transfer",
                Expected::Exact(ps.value as i64),
                pi.value,
                ps.converged && pi.converged,
            );
        }
    }
    let rich_len = setup.image.len().min(RICHNESS_PREFIX_LEN);
    let richness = richness_check(&setup.image[..rich_len]);
    b.require(
        richness.rich,
        format!(
            "image prefix of length {:?} is not rich",
            richness.first_deficient_prefix
        ),
    );
    let bucci = img.bucci_identity(3 * setup.n0.n0);
    b.require(
        bucci.holds,
        format!("palindromic identity fails at n = {:?}", bucci.failures),
    );
    let source_rich = richness_check(&setup.source[..setup.source.len().min(RICHNESS_PREFIX_LEN)]);
    b.require(source_rich.rich, "source prefix is not rich");
    b.detail("injective_at", json!(injective_at));
    b.detail("bucci_checked", json!(bucci.checked));
    Ok(b.finish())
}

/// Every right (left) special factor of the image has a right (left)
/// special antecedent, for rules whose output depends on, and separates,
/// the first letter of the window.
pub fn check_special_provenance(
    rule: &LocalRule,
    generator: &Generator,
    prefix_len: usize,
    max_n: usize,
) -> Result<Verdict> {
    let mut config = word_config(generator, prefix_len);
    config.insert("rule".into(), json!(rule_label(rule)));
    config.insert("n_max".into(), json!(max_n));
    let mut b = VerdictBuilder::new("special", config);
    let Some(letter_map) = rule.first_letter_map() else {
        b.skipped = true;
        b.note(
            "rule output is not determined by the first letter; hypothesis not met, check skipped",
        );
        return Ok(b.finish());
    };
    let source = generator.prefix(prefix_len)?;
    let image = rule.apply(&source)?;
    let src = PrefixAnalysis::new(&source);
    let img = PrefixAnalysis::new(&image);
    let project = |w: &Word| -> Word { w.iter().map(|&x| letter_map[usize::from(x)]).collect() };
    for n in 1..=max_n {
        let (s, i) = (src.special_factors(n), img.special_factors(n));
        let converged = s.converged && i.converged;
        let right: BTreeSet<Word> = s.right_special.iter().map(|(w, _)| project(w)).collect();
        let left: BTreeSet<Word> = s.left_special.iter().map(|(w, _)| project(w)).collect();
        let right_ok = i.right_special.iter().all(|(w, _)| right.contains(w));
        let left_ok = i.left_special.iter().all(|(w, _)| left.contains(w));
        b.flag(n, "right_special_antecedent", right_ok, converged);
        b.flag(n, "left_special_antecedent", left_ok, converged);
    }
    Ok(b.finish())
}

/// `H(u) = u` up to the `r - 1` truncation, `G = E ∘ H`, both commute with
/// `E`, and the image under `G` is again Sturmian.
pub fn check_fixed_point(
    generator: &Generator,
    radius: usize,
    prefix_len: usize,
) -> Result<Verdict> {
    let mut config = word_config(generator, prefix_len);
    config.insert("radius".into(), json!(radius));
    let mut b = VerdictBuilder::new("fixed-point", config);
    let h = invariant_rule(radius)?;
    let g = exchange_rule(radius)?;
    let u = generator.prefix(prefix_len)?;
    let kept = u.len().saturating_sub(radius - 1);
    let truncated = Word::from(&u[..kept]);
    let hu = h.apply(&u)?;
    let gu = g.apply(&u)?;
    b.require(hu == truncated, "H(u) differs from u truncated by r - 1");
    b.require(
        gu == exchange(&truncated)?,
        "G(u) differs from E(u) truncated by r - 1",
    );
    b.require(gu == exchange(&hu)?, "G(u) differs from E(H(u))");
    b.require(
        h.apply(&exchange(&u)?)? == exchange(&hu)?,
        "H(E(u)) differs from E(H(u))",
    );
    b.require(exchange_commutes(&h, &u)?, "H does not commute with E");
    b.require(exchange_commutes(&g, &u)?, "G does not commute with E");
    let analysis = PrefixAnalysis::new(&gu);
    for n in 1..=horizon(100, gu.len()) {
        let p = analysis.factor_complexity(n);
        b.count(
            n,
            "p_G(u)",
            Expected::Exact(n as i64 + 1),
            p.value,
            p.converged,
        );
    }
    Ok(b.finish())
}

/// Command-level parameters for [`run_theorem`].
#[derive(Debug, Clone)]
pub struct SuiteConfig {
    /// Source of the a-Sturmian family checks.
    pub run_length: RunLengthConfig,
    /// Word for the generic checks.
    pub word: Generator,
    /// Rule for transfer / mod / periodicity; defaults vary per check.
    pub rule: Option<LocalRule>,
    pub seed: Word,
    pub radius: usize,
    pub n_max: usize,
}

impl SuiteConfig {
    pub fn new(run_length: RunLengthConfig) -> Self {
        Self {
            run_length,
            word: Generator::Fibonacci,
            rule: None,
            seed: Word::from(vec![0, 1]),
            radius: 2,
            n_max: 100,
        }
    }
}

/// Runs one theorem check by id.
pub fn run_theorem(id: &str, config: &SuiteConfig) -> Result<Verdict> {
    let rl = &config.run_length;
    let setup = || rl.build();
    let prefix_len = rl.prefix_len;
    let n_max = horizon(config.n_max, prefix_len);
    let rule_or = |default: LocalRule| config.rule.clone().unwrap_or(default);
    Ok(match id {
        "sturmian" => check_sturmian_characterizations(&config.word, prefix_len, n_max)?,
        "extensions" => {
            let host = config.word.prefix(prefix_len)?;
            check_extension_identity(&config.word.id(), &host, n_max)
        }
        "n0" => check_n0(&setup()?),
        "cc" => check_cc(&setup()?),
        "cp" => check_cp(&setup()?),
        "ca" => check_ca(&setup()?),
        "balance2" => check_balance2(&setup()?),
        "return-words" => check_return_words(&setup()?)?,
        "transfer" => match &config.rule {
            Some(rule) => check_transfer(rule, &config.word, prefix_len, n_max)?,
            None => check_transfer_run_length(&setup()?)?,
        },
        "mod" => check_mod_preservation(
            &rule_or(run_length_rule(rl.l)?),
            &config.word,
            prefix_len,
            n_max.min(10),
        )?,
        "periodicity" => check_periodicity(
            &rule_or(run_length_rule(rl.l)?),
            &config.seed,
            prefix_len.min(10_000),
        )?,
        "stability-richness" => check_stability_richness(&setup()?)?,
        "special" => check_special_provenance(
            &rule_or(invariant_rule(config.radius)?),
            &config.word,
            prefix_len,
            n_max.min(30),
        )?,
        "fixed-point" => check_fixed_point(&config.word, config.radius, prefix_len)?,
        other => {
            return Err(Error::InvalidParameter {
                field: "theorem",
                reason: format!(
                    "unknown id {other:?}; valid ids: all, {}",
                    THEOREM_IDS.join(", ")
                ),
            })
        }
    })
}
