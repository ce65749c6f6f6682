//! Command-line front end for the palindromic richness library.
//!
//! Exit codes: 0 success / true verdict, 1 false verdict, 2 usage or input
//! error, 3 theorem violation (the characterizations disagreed, which on a
//! correct build never happens).

use std::fs;
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use palrich::complexity::{prop2_residual, ComplexityProfile, WindowSpec};
use palrich::generators::{
    fibonacci_word, morphic_prefix, periodic_prefix, psi_of_fibonacci, staircase_word, Morphism,
    StaircaseMode,
};
use palrich::richness::{
    analyze, characterization_json, characterization_matrix, crossval, report_json,
    CharacterizationMatrix, ConditionId, CrossvalReport, RichnessReport, DEFAULT_CROSSVAL_BUDGET,
};
use palrich::word::{Alphabet, Word};

const EXIT_FALSE: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_DISAGREEMENT: u8 = 3;

#[derive(Parser)]
#[command(
    name = "palrich",
    version,
    about = "Palindromic richness of finite words: counting, characterizations, complexity"
)]
struct Cli {
    /// Output format for structured results
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Count palindromic factors of a word and report its richness
    Analyze(InputArgs),
    /// Evaluate every richness characterization on a word independently
    Characterize(InputArgs),
    /// Cross-validate all characterizations over every word up to a length
    Crossval(CrossvalArgs),
    /// Emit a prefix of one of the built-in example word families
    Generate {
        #[command(subcommand)]
        kind: GenerateKind,
    },
    /// Factor/palindromic complexity of an approximated infinite word
    Complexity(ComplexityArgs),
}

#[derive(Args)]
struct InputArgs {
    /// Word to analyze ("-" reads standard input)
    #[arg(value_name = "WORD", required_unless_present = "file", conflicts_with = "file")]
    word: Option<String>,
    /// Read the word from a file instead (one trailing newline stripped)
    #[arg(long, value_name = "PATH")]
    file: Option<PathBuf>,
    /// Restrict symbols to the first K lowercase letters
    #[arg(long, value_name = "K")]
    alphabet: Option<usize>,
}

#[derive(Args)]
struct CrossvalArgs {
    /// Alphabet size: the first K lowercase letters
    #[arg(long, value_name = "K")]
    alphabet: usize,
    /// Longest word length to enumerate
    #[arg(long, value_name = "N")]
    maxlen: usize,
    /// Cap on the total number of enumerated words
    #[arg(long, default_value_t = DEFAULT_CROSSVAL_BUDGET)]
    budget: u64,
    /// Worker threads for the enumeration (default: all cores)
    #[arg(long, value_name = "J")]
    jobs: Option<usize>,
}

#[derive(Subcommand)]
enum GenerateKind {
    /// Prefix of the Fibonacci word abaababaaba...
    Fibonacci {
        /// Prefix length
        n: usize,
        /// Also analyze the generated word and use its exit code
        #[arg(long)]
        check: bool,
    },
    /// Prefix of the fixed point of a morphism given as "a=aba;b=bb"
    Morphic {
        /// Rules in the compact form "a=aba;b=bb"
        rules: String,
        /// Prefix length
        n: usize,
        /// Seed letter the morphism is prolongable at
        #[arg(long)]
        seed: char,
        #[arg(long)]
        check: bool,
    },
    /// Prefix of BLOCK repeated forever
    Periodic {
        block: String,
        /// Prefix length
        n: usize,
        #[arg(long)]
        check: bool,
    },
    /// Prefix of the substitution a -> aa b^k aabab, b -> bab applied to the Fibonacci word
    PsiFib {
        /// Prefix length
        n: usize,
        /// Number of b's in the a-image
        #[arg(long, default_value_t = 1)]
        k: usize,
        #[arg(long)]
        check: bool,
    },
    /// One of the two non-recurrent staircase words
    Staircase {
        /// Prefix length
        n: usize,
        /// 1: abbbb...; 2: abaabaaab...
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
        mode: u8,
        #[arg(long)]
        check: bool,
    },
}

#[derive(Args)]
#[command(group = clap::ArgGroup::new("source").required(true).args(["periodic", "fibonacci"]))]
struct ComplexityArgs {
    /// Periodic source: the repeating block
    #[arg(long, value_name = "BLOCK")]
    periodic: Option<String>,
    /// Fibonacci-word source: prefix length used as the window
    #[arg(long, value_name = "LEN")]
    fibonacci: Option<usize>,
    /// Largest factor length to count
    #[arg(long = "max-n", value_name = "N")]
    max_n: usize,
    /// Window length override for periodic sources
    #[arg(long, value_name = "LEN", conflicts_with = "fibonacci")]
    window: Option<usize>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}

fn run(cli: Cli) -> Result<u8, String> {
    match cli.command {
        Command::Analyze(args) => cmd_analyze(&args, cli.format),
        Command::Characterize(args) => cmd_characterize(&args, cli.format),
        Command::Crossval(args) => cmd_crossval(&args, cli.format),
        Command::Generate { kind } => cmd_generate(kind, cli.format),
        Command::Complexity(args) => cmd_complexity(&args, cli.format),
    }
}

/// Reads the word from exactly one input source, stripping one trailing
/// newline from file/stdin input, and validates it against the declared
/// alphabet if any.
fn read_input(args: &InputArgs) -> Result<Word, String> {
    let bytes = match (&args.word, &args.file) {
        (Some(w), None) if w == "-" => {
            let mut buf = Vec::new();
            std::io::stdin()
                .read_to_end(&mut buf)
                .map_err(|e| format!("reading stdin: {e}"))?;
            strip_trailing_newline(buf)
        }
        (Some(w), None) => w.as_bytes().to_vec(),
        (None, Some(path)) => {
            let buf = fs::read(path).map_err(|e| format!("reading {}: {e}", path.display()))?;
            strip_trailing_newline(buf)
        }
        _ => unreachable!("clap enforces exactly one input source"),
    };
    if let Some(k) = args.alphabet {
        let alphabet = Alphabet::lowercase(k).map_err(|e| e.to_string())?;
        for &c in &bytes {
            if !alphabet.contains(c) {
                return Err(format!(
                    "symbol `{}` is not in the {k}-letter alphabet",
                    c as char
                ));
            }
        }
    }
    Ok(Word::from_symbols(bytes))
}

fn strip_trailing_newline(mut bytes: Vec<u8>) -> Vec<u8> {
    if bytes.last() == Some(&b'\n') {
        bytes.pop();
        if bytes.last() == Some(&b'\r') {
            bytes.pop();
        }
    }
    bytes
}

fn kv_lines(rows: &[(&str, String)]) -> String {
    rows.iter()
        .map(|(key, value)| format!("{key:<16} {value}"))
        .collect::<Vec<_>>()
        .join("\n")
}

fn report_table(report: &RichnessReport) -> String {
    kv_lines(&[
        ("word", report.word.to_string()),
        ("length", report.word_length().to_string()),
        ("palindromeCount", report.palindrome_count.to_string()),
        ("defect", report.defect.to_string()),
        ("isRich", report.is_rich.to_string()),
    ])
}

fn cmd_analyze(args: &InputArgs, format: Format) -> Result<u8, String> {
    let word = read_input(args)?;
    let report = analyze(&word);
    match format {
        Format::Json => println!("{}", report_json(&report)),
        Format::Table => println!("{}", report_table(&report)),
    }
    Ok(if report.is_rich { 0 } else { EXIT_FALSE })
}

fn cmd_characterize(args: &InputArgs, format: Format) -> Result<u8, String> {
    let word = read_input(args)?;
    let report = analyze(&word);
    let matrix = characterization_matrix(&word);
    match format {
        Format::Json => println!("{}", characterization_json(&report, &matrix)),
        Format::Table => {
            let mut rows = vec![
                ("word", report.word.to_string()),
                ("length", report.word_length().to_string()),
                ("palindromeCount", report.palindrome_count.to_string()),
                ("defect", report.defect.to_string()),
                ("isRich", report.is_rich.to_string()),
            ];
            for cond in ConditionId::ALL {
                rows.push((condition_label(cond), matrix.verdict(cond).to_string()));
            }
            rows.push(("allAgree", matrix.all_agree.to_string()));
            println!("{}", kv_lines(&rows));
        }
    }
    exit_for_verdicts(&report, &matrix)
}

fn condition_label(cond: ConditionId) -> &'static str {
    match cond {
        ConditionId::II => "II",
        ConditionId::III => "III",
        ConditionId::IV => "IV",
        ConditionId::V => "V",
        ConditionId::P3 => "P3",
        ConditionId::T1B => "T1B",
        ConditionId::T2 => "T2",
    }
}

fn exit_for_verdicts(
    report: &RichnessReport,
    matrix: &CharacterizationMatrix,
) -> Result<u8, String> {
    if !matrix.all_agree || matrix.consensus() != Some(report.is_rich) {
        eprintln!(
            "theorem violation: characterizations disagree on `{}` — this is a bug",
            report.word
        );
        return Ok(EXIT_DISAGREEMENT);
    }
    Ok(if report.is_rich { 0 } else { EXIT_FALSE })
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct CrossvalJson {
    alphabet: usize,
    max_len: usize,
    lengths: Vec<CrossvalLengthJson>,
    total_words: u64,
    total_rich: u64,
    disagreements: u64,
    first_disagreement: Option<String>,
}

#[derive(Serialize)]
struct CrossvalLengthJson {
    length: usize,
    words: u64,
    rich: u64,
    disagreements: u64,
}

fn crossval_json(report: &CrossvalReport) -> String {
    let payload = CrossvalJson {
        alphabet: report.alphabet_size,
        max_len: report.max_len,
        lengths: report
            .lengths
            .iter()
            .map(|l| CrossvalLengthJson {
                length: l.length,
                words: l.words,
                rich: l.rich,
                disagreements: l.disagreements,
            })
            .collect(),
        total_words: report.total_words(),
        total_rich: report.total_rich(),
        disagreements: report.total_disagreements(),
        first_disagreement: report.first_disagreement.as_ref().map(Word::to_string),
    };
    serde_json::to_string_pretty(&payload).expect("crossval serialization")
}

fn crossval_table(report: &CrossvalReport) -> String {
    let mut out = format!(
        "{:>6} {:>12} {:>12} {:>14}\n",
        "length", "words", "rich", "disagreements"
    );
    for l in &report.lengths {
        out.push_str(&format!(
            "{:>6} {:>12} {:>12} {:>14}\n",
            l.length, l.words, l.rich, l.disagreements
        ));
    }
    out.push_str(&format!(
        "{:>6} {:>12} {:>12} {:>14}",
        "total",
        report.total_words(),
        report.total_rich(),
        report.total_disagreements()
    ));
    if let Some(w) = &report.first_disagreement {
        out.push_str(&format!("\nfirst disagreement: {w}"));
    }
    out
}

fn cmd_crossval(args: &CrossvalArgs, format: Format) -> Result<u8, String> {
    let alphabet = Alphabet::lowercase(args.alphabet).map_err(|e| e.to_string())?;
    let run = || crossval(&alphabet, args.maxlen, args.budget);
    let report = match args.jobs {
        Some(jobs) => rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .map_err(|e| e.to_string())?
            .install(run),
        None => run(),
    }
    .map_err(|e| e.to_string())?;

    match format {
        Format::Json => println!("{}", crossval_json(&report)),
        Format::Table => println!("{}", crossval_table(&report)),
    }
    Ok(if report.total_disagreements() > 0 {
        EXIT_DISAGREEMENT
    } else {
        0
    })
}

fn cmd_generate(kind: GenerateKind, format: Format) -> Result<u8, String> {
    let (word, check) = match kind {
        GenerateKind::Fibonacci { n, check } => (fibonacci_word(n), check),
        GenerateKind::Morphic {
            rules,
            n,
            seed,
            check,
        } => {
            let morphism = Morphism::parse(&rules).map_err(|e| e.to_string())?;
            if !seed.is_ascii() {
                return Err(format!("seed `{seed}` must be an ASCII symbol"));
            }
            let word = morphic_prefix(&morphism, seed as u8, n).map_err(|e| e.to_string())?;
            (word, check)
        }
        GenerateKind::Periodic { block, n, check } => {
            let word = periodic_prefix(&Word::from(block.as_str()), n).map_err(|e| e.to_string())?;
            (word, check)
        }
        GenerateKind::PsiFib { n, k, check } => (psi_of_fibonacci(k, n), check),
        GenerateKind::Staircase { n, mode, check } => {
            let mode = match mode {
                1 => StaircaseMode::Flat,
                _ => StaircaseMode::Rising,
            };
            (staircase_word(mode, n), check)
        }
    };
    println!("{word}");
    if check {
        let report = analyze(&word);
        match format {
            Format::Json => println!("{}", report_json(&report)),
            Format::Table => println!("{}", report_table(&report)),
        }
        Ok(if report.is_rich { 0 } else { EXIT_FALSE })
    } else {
        Ok(0)
    }
}

fn cmd_complexity(args: &ComplexityArgs, format: Format) -> Result<u8, String> {
    let spec = match (&args.periodic, args.fibonacci) {
        (Some(block), None) => {
            let block = Word::from(block.as_str());
            match args.window {
                Some(window) => WindowSpec::periodic(block, window),
                None => WindowSpec::periodic_for(block, args.max_n),
            }
            .map_err(|e| e.to_string())?
        }
        (None, Some(len)) => WindowSpec::prefix("fibonacci", fibonacci_word(len)),
        _ => unreachable!("clap enforces exactly one source"),
    };
    let profile: ComplexityProfile =
        prop2_residual(&spec, args.max_n).map_err(|e| e.to_string())?;
    match format {
        Format::Json => println!("{}", profile.to_json()),
        Format::Table => print!("{}", profile.to_table()),
    }
    Ok(if profile.all_residuals_zero() {
        0
    } else {
        EXIT_FALSE
    })
}
