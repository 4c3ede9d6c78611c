use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use detscheme_core::corpus::{self, CorpusLine, InstanceSource, RunConfig, Suite};
use detscheme_core::field::{DEFAULT_PRIME, MAX_PRIME, MIN_PRIME};
use detscheme_core::formula::FormulaError;
use detscheme_core::sheaf::{cokernel_f, h0_f, SheafError};
use detscheme_core::verify::TangentAssertion;
use detscheme_core::{dim_y, DegreeData, PolyMatrix, PrimeField, VerificationRecord, VerifyError};

mod exit {
    pub const MISMATCH: u8 = 1;
    pub const CONFIG: u8 = 2;
    pub const NOT_STANDARD: u8 = 3;
    pub const HYPERSURFACE: u8 = 4;
    pub const EXHAUSTED: u8 = 5;
    pub const UNSTABLE: u8 = 6;
}

const CORPUS_ABOUT: &str = "\
Run a suite over many instances and write one JSON record per line.

Instance i (0-based) uses seed splitmix64(SEED + (i+1) * 0x9E3779B97F4A7C15)
(wrapping u64 arithmetic). Random degree data is drawn from a ChaCha8 stream
seeded with it, and the oracle suite passes it to `verify --seed`, so any
line can be reproduced on its own. DETSCHEME_THREADS caps the worker pool.";

#[derive(Parser)]
#[command(
    name = "detscheme",
    version,
    about = "Dimension of Hilbert-scheme components of determinantal varieties"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Closed-form dimension report for degree data such as "n=4 a=1,1,1 b=0,0".
    Dim {
        data: Vec<String>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Table of f(t), the sections of the twisted cokernel sheaf.
    Ft {
        data: Vec<String>,
        /// First t (default -1).
        #[arg(long = "from", allow_negative_numbers = true)]
        t_min: Option<i64>,
        /// Last t (default: largest alpha).
        #[arg(long = "to", allow_negative_numbers = true)]
        t_max: Option<i64>,
        #[arg(long, value_enum, default_value_t = Format::Tsv)]
        format: Format,
    },
    /// Compare the formula with finite-field oracles on a random matrix.
    Verify {
        data: Vec<String>,
        #[command(flatten)]
        oracle: OracleArgs,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    #[command(long_about = CORPUS_ABOUT, about = "Run a formula or oracle suite")]
    Corpus {
        #[arg(long, value_enum, default_value_t = SuiteArg::Formula)]
        suite: SuiteArg,
        /// File with one degree datum per line (text or JSON form).
        #[arg(long, conflicts_with = "fixtures")]
        instances: Option<PathBuf>,
        /// Use the built-in oracle fixtures.
        #[arg(long)]
        fixtures: bool,
        #[arg(long, default_value_t = corpus::DEFAULT_SUITE_SIZE)]
        suite_size: usize,
        #[arg(long, default_value_t = corpus::DEFAULT_MAX_N)]
        max_n: i64,
        #[arg(long, default_value_t = corpus::DEFAULT_MAX_A)]
        max_a: usize,
        #[arg(long, default_value_t = corpus::DEFAULT_MAX_SPREAD)]
        max_spread: i64,
        #[command(flatten)]
        oracle: OracleArgs,
        #[arg(long, value_enum, default_value_t = Format::Jsonl)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write the maximal minors of a random matrix as plain text plus a JSON sidecar.
    Export {
        data: Vec<String>,
        #[arg(long, default_value_t = DEFAULT_PRIME)]
        prime: u32,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Generators go here, metadata to the same path with ".json" appended.
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Args)]
struct OracleArgs {
    #[arg(long, default_value_t = DEFAULT_PRIME)]
    prime: u32,
    /// Repeat with this prime and require identical match flags.
    #[arg(long)]
    second_prime: Option<u32>,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Largest syzygy degree (default: max generator degree + max alpha + 2).
    #[arg(long)]
    bound: Option<u32>,
    /// First degree of the Hilbert-function window (default: max(0, l - n)).
    #[arg(long)]
    window: Option<u32>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Jsonl,
    Tsv,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Formula,
    Oracle,
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Failure {
            code,
            message: message.into(),
        }
    }
}

type CmdResult = Result<u8, Failure>;

fn config_err(e: impl std::fmt::Display) -> Failure {
    Failure::new(exit::CONFIG, e.to_string())
}

fn parse_data(words: &[String]) -> Result<DegreeData, Failure> {
    if words.is_empty() {
        return Err(Failure::new(
            exit::CONFIG,
            "missing degree data, e.g. \"n=4 a=1,1,1 b=0,0\"",
        ));
    }
    words.join(" ").parse().map_err(config_err)
}

fn parse_prime(p: u32) -> Result<PrimeField, Failure> {
    PrimeField::new(p).map_err(|e| {
        Failure::new(
            exit::CONFIG,
            format!("{e}; choose a prime in ({MIN_PRIME}, {MAX_PRIME})"),
        )
    })
}

fn check_format(format: Format, allowed: &[Format], cmd: &str) -> Result<(), Failure> {
    if allowed.contains(&format) {
        Ok(())
    } else {
        Err(Failure::new(
            exit::CONFIG,
            format!("{cmd} does not support this --format"),
        ))
    }
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| config_err(format!("{}: {e}", p.display()))),
        None => {
            io::stdout()
                .write_all(text.as_bytes())
                .map_err(config_err)?;
            Ok(())
        }
    }
}

fn to_json<T: serde::Serialize>(x: &T, pretty: bool) -> String {
    let s = if pretty {
        serde_json::to_string_pretty(x)
    } else {
        serde_json::to_string(x)
    };
    s.expect("reports serialize")
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn cmd_dim(data: &[String], format: Format) -> CmdResult {
    check_format(format, &[Format::Text, Format::Json], "dim")?;
    let d = parse_data(data)?;
    let report = match dim_y(&d) {
        Ok(r) => r,
        Err(FormulaError::NotStandard(why)) => {
            let standard = d.check_standard().err().unwrap_or(why);
            let main = d
                .check_main()
                .map_or_else(|e| format!("no ({e})"), |_| "yes".into());
            println!("data        {d}");
            println!("standard    no ({standard})");
            println!("main        {main}");
            return Err(Failure::new(
                exit::NOT_STANDARD,
                format!("condition (standard) fails: {standard}"),
            ));
        }
        Err(e) => return Err(config_err(e)),
    };
    if format == Format::Json {
        println!("{}", to_json(&report, true));
        return Ok(0);
    }
    let main = d
        .check_main()
        .map_or_else(|e| format!("no ({e})"), |_| "yes".into());
    let ks: Vec<String> = report.k_terms.iter().map(ToString::to_string).collect();
    println!("data        {d}");
    println!("standard    yes");
    println!("main        {main}");
    println!("c           {}", report.c);
    println!("dim_x       {}", report.dim_x);
    println!("ell         {}", report.ell);
    println!("lambda_c    {}", report.lambda_c);
    println!("K           [{}]", ks.join(", "));
    println!("dim_y       {}", report.dim_y);
    if let Some(v) = &report.corollary_value {
        println!("corollary   {v}");
    }
    println!(
        "canonical   ({})H + ({})P",
        report.canonical.h, report.canonical.p
    );
    let r = report.regime;
    println!(
        "regime      numerical={} generically_finite={} component={} birational={}",
        yes_no(r.numerical),
        yes_no(r.generically_finite),
        yes_no(r.component),
        yes_no(r.birational)
    );
    Ok(0)
}

fn sheaf_failure(e: SheafError) -> Failure {
    match e {
        SheafError::NotStandard(why) => Failure::new(
            exit::NOT_STANDARD,
            format!("condition (standard) fails: {why}"),
        ),
        SheafError::Hypersurface => Failure::new(
            exit::HYPERSURFACE,
            "c = 1: the cokernel resolution has no tail terms, f(t) is not defined here",
        ),
        other => config_err(other),
    }
}

fn cmd_ft(data: &[String], t_min: Option<i64>, t_max: Option<i64>, format: Format) -> CmdResult {
    check_format(format, &[Format::Tsv, Format::Json], "ft")?;
    let d = parse_data(data)?;
    let lo = t_min.unwrap_or(-1);
    let hi = t_max.unwrap_or(*d.alphas().last().expect("a >= 1"));
    if lo > hi {
        return Err(config_err(format!("--from {lo} is larger than --to {hi}")));
    }
    let rows = (lo..=hi)
        .map(|t| cokernel_f(&d, t).map(|f| (t, f)))
        .collect::<Result<Vec<_>, _>>()
        .map_err(sheaf_failure)?;
    let identity = if d.dim_x() >= 2 {
        let h = h0_f(&d).map_err(sheaf_failure)?;
        let y = dim_y(&d).map_err(config_err)?.dim_y.0;
        Some((h, y))
    } else {
        None
    };
    let holds = identity.as_ref().is_none_or(|(h, y)| h == y);

    if format == Format::Json {
        let rows: Vec<_> = rows
            .iter()
            .map(|(t, f)| json!({"t": t, "f": f.to_string()}))
            .collect();
        let mut obj = json!({"data": d, "rows": rows});
        if let Some((h, y)) = &identity {
            obj["h0_f"] = json!(h.to_string());
            obj["dim_y"] = json!(y.to_string());
            obj["identity_holds"] = json!(holds);
        }
        println!("{}", to_json(&obj, true));
    } else {
        println!("t\tf(t)");
        for (t, f) in &rows {
            println!("{t}\t{f}");
        }
        if let Some((h, y)) = &identity {
            let rel = if holds { "==" } else { "!=" };
            println!("h0_F = {h} {rel} dim_y {y}");
        }
    }
    Ok(if holds { 0 } else { exit::MISMATCH })
}

fn verify_failure(e: VerifyError) -> Failure {
    let code = match &e {
        VerifyError::NotStandard(_) | VerifyError::Formula(_) => exit::NOT_STANDARD,
        VerifyError::Matrix(_) => exit::CONFIG,
        VerifyError::ResamplingExhausted { .. } => exit::EXHAUSTED,
        VerifyError::Window { .. } | VerifyError::Unstable { .. } => exit::UNSTABLE,
    };
    let trace = match &e {
        VerifyError::Unstable {
            source: detscheme_core::oracle::TangentError::Unstable { syzygy_leads, .. },
            ..
        } => {
            format!("\nsyzygy leads by degree: {syzygy_leads:?}")
        }
        _ => String::new(),
    };
    Failure::new(code, format!("{e}{trace}"))
}

fn record_lines(r: &VerificationRecord) -> String {
    let m = r.matches();
    let mark = |asserted: bool, ok: bool| match (asserted, ok) {
        (true, true) => "match",
        (true, false) => "MISMATCH",
        (false, true) => "holds (recorded)",
        (false, false) => "fails (recorded)",
    };
    let tangent_asserted = m.tangent_assertion == TangentAssertion::Equal;
    let ge_asserted = m.tangent_assertion == TangentAssertion::AtLeast;
    let table: Vec<String> = r.hf_table.iter().map(|(t, v)| format!("{t}:{v}")).collect();
    let b = &r.bounds_used;
    [
        format!("data              {}", r.data),
        format!("prime             {}", r.prime.p()),
        format!(
            "seed              {} (used {}, {} resamples)",
            r.seed, r.seed_used, r.resamples
        ),
        format!("formula dim_y     {}", r.formula_dim),
        format!(
            "orbit_space_dim   {}  [{}]",
            r.orbit_space_dim,
            mark(true, m.orbit_eq_formula)
        ),
        format!(
            "tangent_dim       {}  [== {}]",
            r.tangent_dim,
            mark(tangent_asserted, m.tangent_eq_formula)
        ),
        format!(
            "                      [>= {}]",
            mark(ge_asserted, m.tangent_ge_formula)
        ),
        format!("stab_dim          {}", r.stab_dim),
        format!(
            "fitted_dim        {}  [{}]",
            r.fitted_dim,
            mark(true, m.fitted_dim_eq_dim_x)
        ),
        format!("fitted_degree     {}", r.fitted_degree),
        format!("hf                {}", table.join(" ")),
        format!(
            "bounds            syzygy<= {} (tangent {} at {}), window {}..{}",
            b.syzygy_bound,
            b.tangent_at_next_bound,
            b.syzygy_bound + 1,
            b.window_start,
            b.window_end
        ),
    ]
    .join("\n")
}

fn oracle_config(args: &OracleArgs) -> Result<(PrimeField, Option<PrimeField>), Failure> {
    if args.bound == Some(0) {
        return Err(config_err("--bound must be positive"));
    }
    let p = parse_prime(args.prime)?;
    let q = args.second_prime.map(parse_prime).transpose()?;
    Ok((p, q))
}

fn cmd_verify(data: &[String], args: &OracleArgs, format: Format, out: Option<&Path>) -> CmdResult {
    check_format(format, &[Format::Text, Format::Json], "verify")?;
    let d = parse_data(data)?;
    let (p, q) = oracle_config(args)?;
    let cfg = |prime| detscheme_core::VerifyConfig {
        prime,
        seed: args.seed,
        bound: args.bound,
        window: args.window,
    };
    let first = detscheme_core::verify(&d, &cfg(p)).map_err(verify_failure)?;
    let second = q
        .map(|q| detscheme_core::verify(&d, &cfg(q)))
        .transpose()
        .map_err(verify_failure)?;

    let mut ok = first.matches().all_asserted;
    let mut text = record_lines(&first);
    if let Some(s) = &second {
        let agree = s.matches() == first.matches();
        ok &= s.matches().all_asserted && agree;
        text.push_str(&format!(
            "\n\n{}\nflags across primes  {}",
            record_lines(s),
            if agree { "identical" } else { "DIFFER" }
        ));
    }
    let failures: Vec<&str> = first
        .failures()
        .into_iter()
        .chain(second.iter().flat_map(|s| s.failures()))
        .collect();
    text.push_str(&format!(
        "\nresult            {}\n",
        if ok {
            "all asserted matches hold".to_string()
        } else {
            format!("mismatch: {}", failures.join(", "))
        }
    ));

    let body = if format == Format::Json {
        let records: Vec<&VerificationRecord> =
            std::iter::once(&first).chain(second.as_ref()).collect();
        format!("{}\n", to_json(&records, true))
    } else {
        text
    };
    emit(out, &body)?;
    Ok(if ok { 0 } else { exit::MISMATCH })
}

fn read_instances(path: &Path) -> Result<Vec<DegreeData>, Failure> {
    let raw =
        fs::read_to_string(path).map_err(|e| config_err(format!("{}: {e}", path.display())))?;
    raw.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
        .map(|(i, l)| {
            l.parse()
                .map_err(|e| config_err(format!("{}:{}: {e}", path.display(), i + 1)))
        })
        .collect()
}

fn threads_from_env() -> Result<Option<usize>, Failure> {
    match std::env::var("DETSCHEME_THREADS") {
        Err(_) => Ok(None),
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(Some(n)),
            _ => Err(config_err(format!(
                "DETSCHEME_THREADS={v:?} is not a positive integer"
            ))),
        },
    }
}

fn summary_table(lines: &[CorpusLine]) -> String {
    let mut s = String::from("instance\tdata\tformula\ttangent\torbit\tmatch\n");
    for l in lines {
        let (f, t, o) = l.summary_values();
        s.push_str(&format!(
            "{}\t{}\t{f}\t{t}\t{o}\t{}\n",
            l.index,
            l.data,
            if l.passed() { "pass" } else { "FAIL" }
        ));
    }
    s
}

#[allow(clippy::too_many_arguments)]
fn cmd_corpus(
    suite: SuiteArg,
    instances: Option<&Path>,
    fixtures: bool,
    suite_size: usize,
    caps: (i64, usize, i64),
    args: &OracleArgs,
    format: Format,
    out: Option<&Path>,
) -> CmdResult {
    check_format(
        format,
        &[Format::Jsonl, Format::Json, Format::Tsv],
        "corpus",
    )?;
    let (prime, second_prime) = oracle_config(args)?;
    let source = if let Some(p) = instances {
        InstanceSource::Explicit(read_instances(p)?)
    } else if fixtures {
        InstanceSource::Explicit(
            corpus::oracle_fixtures()
                .into_iter()
                .map(|(d, _)| d)
                .collect(),
        )
    } else {
        InstanceSource::Random { count: suite_size }
    };
    let cfg = RunConfig {
        prime,
        second_prime,
        seed: args.seed,
        bound: args.bound,
        window: args.window,
        suite: match suite {
            SuiteArg::Formula => Suite::Formula,
            SuiteArg::Oracle => Suite::Oracle,
        },
        source,
        max_n: caps.0,
        max_a: caps.1,
        max_spread: caps.2,
        threads: threads_from_env()?,
    };
    let lines = corpus::run(&cfg).map_err(config_err)?;
    let summary = corpus::summarize(&lines);
    let body = match format {
        Format::Jsonl => lines.iter().map(|l| to_json(l, false) + "\n").collect(),
        Format::Json => format!(
            "{}\n",
            to_json(&json!({"lines": lines, "summary": summary}), true)
        ),
        _ => summary_table(&lines),
    };
    emit(out, &body)?;
    eprintln!(
        "{} instances: {} passed, {} failed ({} errors)",
        summary.total, summary.passed, summary.failed, summary.errors
    );
    Ok(if summary.failed == 0 {
        0
    } else {
        exit::MISMATCH
    })
}

fn cmd_export(data: &[String], prime: u32, seed: u64, out: &Path) -> CmdResult {
    let d = parse_data(data)?;
    let field = parse_prime(prime)?;
    let m = PolyMatrix::random(&d, field, seed).map_err(config_err)?;
    let ideal = m.maximal_minors();
    let expected = dim_y(&d).ok().map(|r| r.dim_y);
    let sidecar = json!({
        "data": d,
        "prime": field.p(),
        "seed": seed,
        "variables": (0..d.n_vars()).map(|i| format!("x{i}")).collect::<Vec<_>>(),
        "degrees": ideal.degrees(),
        "column_sets": ideal.column_sets(),
        "codim": d.codim(),
        "dim_x": d.dim_x(),
        "expected_dim_y": expected,
    });
    let side_path = {
        let mut s = out.as_os_str().to_owned();
        s.push(".json");
        PathBuf::from(s)
    };
    emit(Some(out), &ideal.to_text())?;
    emit(Some(&side_path), &format!("{}\n", to_json(&sidecar, true)))?;
    Ok(0)
}

fn run(cli: Cli) -> CmdResult {
    match cli.command {
        Command::Dim { data, format } => cmd_dim(&data, format),
        Command::Ft {
            data,
            t_min,
            t_max,
            format,
        } => cmd_ft(&data, t_min, t_max, format),
        Command::Verify {
            data,
            oracle,
            format,
            out,
        } => cmd_verify(&data, &oracle, format, out.as_deref()),
        Command::Corpus {
            suite,
            instances,
            fixtures,
            suite_size,
            max_n,
            max_a,
            max_spread,
            oracle,
            format,
            out,
        } => cmd_corpus(
            suite,
            instances.as_deref(),
            fixtures,
            suite_size,
            (max_n, max_a, max_spread),
            &oracle,
            format,
            out.as_deref(),
        ),
        Command::Export {
            data,
            prime,
            seed,
            out,
        } => cmd_export(&data, prime, seed, &out),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { exit::CONFIG } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
