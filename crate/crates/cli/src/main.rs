use std::fmt;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use cawords::analysis::PrefixAnalysis;
use cawords::generators::{ASturmianParams, DirectiveSequence, Generator, PrefixSource};
use cawords::harness::{run_theorem, RunLengthConfig, Status, SuiteConfig, Verdict, THEOREM_IDS};
use cawords::rule::{exchange_rule, invariant_rule, run_length_rule, LocalRule};
use cawords::word::{Alphabet, Word};
use clap::{Args, Parser, Subcommand, ValueEnum};

const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_INCONCLUSIVE: u8 = 3;

/// Generate words, apply sliding-window rules, tabulate complexities and
/// run the theorem checks.
#[derive(Parser)]
#[command(name = "cawords", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print a prefix of a generated word.
    Gen {
        #[command(flatten)]
        word: WordArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Apply a local rule to a word and print the image.
    Apply {
        #[command(flatten)]
        word: WordArgs,
        #[command(flatten)]
        rule: RuleArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Complexity table `n,p,pf,pal,rho_ab,converged` of a word (or of its
    /// image when a rule is given).
    Analyze {
        #[command(flatten)]
        word: WordArgs,
        #[command(flatten)]
        rule: RuleArgs,
        #[arg(long, default_value_t = 1)]
        n_min: usize,
        #[arg(long, default_value_t = 100)]
        n_max: usize,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        /// Skip the `len >= 100 * n_max` guard.
        #[arg(long)]
        force: bool,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Run one theorem check (or `all`) and write JSON verdicts.
    Verify {
        #[arg(long)]
        theorem: String,
        #[command(flatten)]
        word: WordArgs,
        #[command(flatten)]
        rule: RuleArgs,
        #[arg(long, default_value_t = 100)]
        n_max: usize,
        #[command(flatten)]
        out: OutputArgs,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum WordKind {
    Fibonacci,
    Sturmian,
    Asturmian,
    Champernowne,
    Periodic,
}

#[derive(Clone, Copy, ValueEnum)]
enum RuleKind {
    Runlength,
    Invariant,
    Exchange,
}

#[derive(Args)]
struct WordArgs {
    #[arg(long, value_enum)]
    word: Option<WordKind>,
    /// Directive sequence, e.g. `2,(1)`; the parenthesised tail repeats.
    #[arg(long)]
    directive: Option<String>,
    #[arg(long)]
    l0: Option<usize>,
    #[arg(long)]
    l: Option<usize>,
    /// fibonacci01, fibonacci10, sturmian01:<dir>, sturmian10:<dir>, periodic:<bits>
    #[arg(long)]
    eps: Option<String>,
    /// Seed of a periodic word, or of the periodicity check.
    #[arg(long)]
    seed: Option<String>,
    #[arg(long, default_value_t = 100_000)]
    len: usize,
    /// Literal word instead of a generator.
    #[arg(long, conflicts_with = "word")]
    word_text: Option<String>,
    #[arg(long, default_value = "ab")]
    alphabet: String,
}

#[derive(Args)]
struct RuleArgs {
    #[arg(long, value_enum)]
    rule: Option<RuleKind>,
    /// Radius of the invariant and exchange rules.
    #[arg(long)]
    r: Option<usize>,
    #[arg(long, conflicts_with = "rule")]
    rule_file: Option<PathBuf>,
    /// Output alphabet of a rule file (defaults to --alphabet).
    #[arg(long)]
    out_alphabet: Option<String>,
}

#[derive(Args)]
struct OutputArgs {
    /// Write here (atomically) instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Debug)]
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

fn lib_error(context: &str, e: cawords::Error) -> Failure {
    let code = match e {
        cawords::Error::InsufficientData(_) | cawords::Error::Boundary { .. } => EXIT_INCONCLUSIVE,
        _ => EXIT_USAGE,
    };
    Failure {
        code,
        message: format!("{context}: {e}"),
    }
}

trait Context<T> {
    fn context(self, what: &str) -> Result<T, Failure>;
}

impl<T> Context<T> for cawords::Result<T> {
    fn context(self, what: &str) -> Result<T, Failure> {
        self.map_err(|e| lib_error(what, e))
    }
}

impl WordArgs {
    fn alphabet(&self) -> Result<Alphabet, Failure> {
        Alphabet::from_symbols(&self.alphabet).context("--alphabet")
    }

    fn epsilon(&self) -> Result<Generator, Failure> {
        let name = self
            .eps
            .as_deref()
            .ok_or_else(|| Failure::usage("--eps: required for asturmian words"))?;
        Generator::parse_epsilon(name).context("--eps")
    }

    fn generator(&self) -> Result<Generator, Failure> {
        let kind = self
            .word
            .ok_or_else(|| Failure::usage("--word: give a generator or --word-text"))?;
        Ok(match kind {
            WordKind::Fibonacci => Generator::Fibonacci,
            WordKind::Sturmian => Generator::Characteristic(
                DirectiveSequence::parse(self.directive.as_deref().unwrap_or("(1)"))
                    .context("--directive")?,
            ),
            WordKind::Asturmian => {
                let l = self.l.unwrap_or(1);
                let params = ASturmianParams::new(self.l0.unwrap_or(l), l, self.epsilon()?)
                    .context("--l0/--l")?;
                Generator::ASturmian(params)
            }
            WordKind::Champernowne => Generator::Champernowne,
            WordKind::Periodic => {
                let alphabet = self.alphabet()?;
                let seed = self
                    .seed
                    .as_deref()
                    .ok_or_else(|| Failure::usage("--seed: required for periodic words"))?;
                Generator::periodic(alphabet.parse(seed).context("--seed")?, alphabet)
                    .context("--seed")?
            }
        })
    }

    /// The word and the alphabet it is written in.
    fn host(&self) -> Result<(Word, Alphabet), Failure> {
        if let Some(text) = &self.word_text {
            let alphabet = self.alphabet()?;
            return Ok((alphabet.parse(text).context("--word-text")?, alphabet));
        }
        let g = self.generator()?;
        Ok((g.prefix(self.len).context("--len")?, g.alphabet()))
    }
}

impl RuleArgs {
    fn given(&self) -> bool {
        self.rule.is_some() || self.rule_file.is_some()
    }

    fn build(&self, word: &WordArgs) -> Result<Option<LocalRule>, Failure> {
        if let Some(path) = &self.rule_file {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Failure::usage(format!("--rule-file {}: {e}", path.display())))?;
            let input = word.alphabet()?;
            let output = match &self.out_alphabet {
                Some(s) => Alphabet::from_symbols(s).context("--out-alphabet")?,
                None => input.clone(),
            };
            return LocalRule::parse(&text, input, output)
                .map(Some)
                .context(&format!("--rule-file {}", path.display()));
        }
        let radius = self.r.unwrap_or(2);
        Ok(match self.rule {
            None => None,
            Some(RuleKind::Runlength) => Some(run_length_rule(word.l.unwrap_or(1)).context("--l")?),
            Some(RuleKind::Invariant) => Some(invariant_rule(radius).context("--r")?),
            Some(RuleKind::Exchange) => Some(exchange_rule(radius).context("--r")?),
        })
    }
}

fn emit(out: &OutputArgs, text: &str) -> Result<(), Failure> {
    let io = |e: std::io::Error| Failure {
        code: EXIT_FAIL,
        message: format!("--output: {e}"),
    };
    match &out.output {
        None => std::io::stdout().write_all(text.as_bytes()).map_err(io),
        Some(path) => {
            let dir = path
                .parent()
                .filter(|p| !p.as_os_str().is_empty())
                .unwrap_or(Path::new("."));
            let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io)?;
            tmp.write_all(text.as_bytes()).map_err(io)?;
            tmp.persist(path).map_err(|e| io(e.error))?;
            Ok(())
        }
    }
}

fn apply_rule(rule: &LocalRule, host: &Word) -> Result<Word, Failure> {
    let image = rule.apply(host).context("--rule")?;
    if host.len() < rule.radius() {
        eprintln!(
            "warning: input length {} is shorter than the radius {}; the image is empty",
            host.len(),
            rule.radius()
        );
    }
    Ok(image)
}

fn gen(word: &WordArgs, out: &OutputArgs) -> Result<u8, Failure> {
    let (host, alphabet) = word.host()?;
    emit(out, &format!("{}\n", alphabet.render(&host)))?;
    Ok(0)
}

fn apply(word: &WordArgs, rule: &RuleArgs, out: &OutputArgs) -> Result<u8, Failure> {
    let rule = rule
        .build(word)?
        .ok_or_else(|| Failure::usage("--rule: give a rule name or --rule-file"))?;
    let (host, _) = word.host()?;
    let image = apply_rule(&rule, &host)?;
    eprintln!(
        "input {} letters, radius {}, image {} letters",
        host.len(),
        rule.radius(),
        image.len()
    );
    emit(out, &format!("{}\n", rule.output_alphabet().render(&image)))?;
    Ok(0)
}

#[allow(clippy::too_many_arguments)]
fn analyze(
    word: &WordArgs,
    rule: &RuleArgs,
    n_min: usize,
    n_max: usize,
    format: Format,
    force: bool,
    out: &OutputArgs,
) -> Result<u8, Failure> {
    if n_min < 1 || n_min > n_max {
        return Err(Failure::usage(format!(
            "--n-min: need 1 <= n_min <= n_max, got {n_min} > {n_max}"
        )));
    }
    let (mut host, mut alphabet) = word.host()?;
    if let Some(rule) = rule.build(word)? {
        host = apply_rule(&rule, &host)?;
        alphabet = rule.output_alphabet().clone();
    }
    if !force && host.len() < 100 * n_max {
        return Err(Failure {
            code: EXIT_INCONCLUSIVE,
            message: format!(
                "--len: {} letters are fewer than 100 * n_max = {}; lower --n-max or pass --force",
                host.len(),
                100 * n_max
            ),
        });
    }
    let table = PrefixAnalysis::new(&host)
        .with_alphabet_size(alphabet.len())
        .table(n_min, n_max);
    let text = match format {
        Format::Csv => table.to_csv(),
        Format::Json => table.to_json(),
    };
    emit(out, &text)?;
    Ok(0)
}

fn verify(
    theorem: &str,
    word: &WordArgs,
    rule: &RuleArgs,
    n_max: usize,
    out: &OutputArgs,
) -> Result<u8, Failure> {
    let ids: Vec<&str> = if theorem == "all" {
        THEOREM_IDS.to_vec()
    } else if THEOREM_IDS.contains(&theorem) {
        vec![theorem]
    } else {
        return Err(Failure::usage(format!(
            "--theorem: unknown id {theorem:?}; valid ids: all, {}",
            THEOREM_IDS.join(", ")
        )));
    };
    let l = word.l.unwrap_or(1);
    let epsilon = match &word.eps {
        Some(_) => word.epsilon()?,
        None => Generator::parse_epsilon("fibonacci10").context("--eps")?,
    };
    let mut config = SuiteConfig::new(RunLengthConfig {
        l0: word.l0.unwrap_or(l),
        prefix_len: word.len,
        ..RunLengthConfig::new(l, epsilon)
    });
    if word.word.is_some() {
        config.word = word.generator()?;
    }
    if let Some(seed) = &word.seed {
        config.seed = word.alphabet()?.parse(seed).context("--seed")?;
    }
    if let Some(r) = rule.r {
        config.radius = r;
    }
    if rule.given() {
        config.rule = rule.build(word)?;
    }
    config.n_max = n_max;

    let verdicts = ids
        .iter()
        .map(|id| run_theorem(id, &config).context(&format!("--theorem {id}")))
        .collect::<Result<Vec<Verdict>, _>>()?;
    for v in &verdicts {
        eprintln!(
            "{}: {:?}{}",
            v.theorem_id,
            v.status,
            if v.notes.is_empty() {
                String::new()
            } else {
                format!(" ({})", v.notes)
            }
        );
    }
    let json = if verdicts.len() == 1 && theorem != "all" {
        serde_json::to_string_pretty(&verdicts[0])
    } else {
        serde_json::to_string_pretty(&verdicts)
    }
    .map_err(|e| Failure {
        code: EXIT_FAIL,
        message: e.to_string(),
    })?;
    emit(out, &format!("{json}\n"))?;
    Ok(if verdicts.iter().any(|v| v.status == Status::Fail) {
        EXIT_FAIL
    } else if verdicts.iter().any(|v| v.status == Status::Inconclusive) {
        EXIT_INCONCLUSIVE
    } else {
        0
    })
}

fn run(cli: &Cli) -> Result<u8, Failure> {
    match &cli.command {
        Command::Gen { word, out } => gen(word, out),
        Command::Apply { word, rule, out } => apply(word, rule, out),
        Command::Analyze {
            word,
            rule,
            n_min,
            n_max,
            format,
            force,
            out,
        } => analyze(word, rule, *n_min, *n_max, *format, *force, out),
        Command::Verify {
            theorem,
            word,
            rule,
            n_max,
            out,
        } => verify(theorem, word, rule, *n_max, out),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(failure) => {
            eprintln!("error: {failure}");
            ExitCode::from(failure.code)
        }
    }
}
