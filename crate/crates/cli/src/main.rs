//! `borwein`: command-line front end for `borwein-core`.
//!
//! Exit codes: 0 success, 1 I/O error, 2 verification failure, 3 budget
//! exceeded, 4 usage error.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;
use std::time::{SystemTime, UNIX_EPOCH};

use borwein_core::charsieve::m_charsum_exact;
use borwein_core::polycore::CoefficientDump;
use borwein_core::progression::{
    check_andrews_recursions, direct_progression_sum, m_all_from_expansion,
};
use borwein_core::report::{
    write_csv, write_json, CoefficientRecord, MsumRecord, RecursionRecord, SupNormRecord,
    VerificationRecord,
};
use borwein_core::spectral::{
    borw1_check, borw2_check, default_samples, supnorm_grid, supnorm_sample, SHARP_PRIMES,
};
use borwein_core::theorems::verify_grid;
use borwein_core::{
    expand_product_within, Budget, Error, ProductSpec, ProgressionQuery, VerificationRow,
};
use clap::{error::ErrorKind, Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Debug, Parser)]
#[command(name = "borwein", version, about = "Borwein-type products: expansion, progression sums, checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Write to this file instead of standard output.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,

    /// Maximum number of coefficients held by one expansion.
    #[arg(long, global = true, env = "BORWEIN_BUDGET")]
    budget: Option<u64>,

    /// Worker threads (default: machine parallelism).
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Omit the `# generated_unix=` line from CSV output.
    #[arg(long, global = true)]
    no_timestamp: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Expand T(p, s, n) and dump its coefficients.
    Expand(SpecArgs),
    /// Progression sums M(b) of the coefficients.
    Msum(MsumArgs),
    /// Check the progression-sum theorems over a grid.
    Verify(VerifyArgs),
    /// Maximum-coefficient trend table.
    Maxcoeff(MaxCoeffArgs),
    /// Sampled sup norm on the unit circle.
    Supnorm(SupNormArgs),
    /// Check the recursions for the first conjecture's polynomials.
    Recursions(RecursionArgs),
}

#[derive(Debug, Args)]
struct SpecArgs {
    #[arg(long)]
    p: u32,
    #[arg(long)]
    s: u32,
    #[arg(long)]
    n: u32,
}

#[derive(Debug, Clone, Copy)]
enum Residue {
    All,
    One(u64),
}

impl FromStr for Residue {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if s == "all" {
            return Ok(Residue::All);
        }
        s.parse()
            .map(Residue::One)
            .map_err(|_| format!("expected `all` or a non-negative integer, got `{s}`"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Direct,
    Charsum,
    Both,
}

#[derive(Debug, Args)]
struct MsumArgs {
    #[command(flatten)]
    spec: SpecArgs,
    /// Residue, or `all`.
    #[arg(long, default_value = "all")]
    b: Residue,
    /// Default: `both`, or `direct` with `--ell`.
    #[arg(long, value_enum)]
    method: Option<Method>,
    /// Sum along the progression with modulus p * ell instead of N_p.
    #[arg(long)]
    ell: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    /// Error bound and agreement of the two methods.
    Main1,
    /// Sign claims.
    Signs,
    All,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(long, value_enum, default_value_t = Suite::All)]
    suite: Suite,
    #[arg(long, value_delimiter = ',', default_values_t = [3, 5])]
    p: Vec<u32>,
    #[arg(long, value_delimiter = ',', default_values_t = [1, 2])]
    s: Vec<u32>,
    #[arg(long, default_value_t = 6)]
    n_max: u32,
}

#[derive(Debug, Args)]
struct MaxCoeffArgs {
    #[arg(long)]
    p: u32,
    #[arg(long, default_value_t = 1)]
    s: u32,
    #[arg(long, default_value_t = 0)]
    n_min: u32,
    #[arg(long)]
    n_max: u32,
}

#[derive(Debug, Args)]
struct SupNormArgs {
    #[command(flatten)]
    spec: SpecArgs,
    /// Grid size (default 8 deg T, minimum 4 deg T).
    #[arg(long)]
    samples: Option<u64>,
    /// Report the grid maximum without local refinement.
    #[arg(long)]
    no_refine: bool,
}

#[derive(Debug, Args)]
struct RecursionArgs {
    #[arg(long, default_value_t = 8)]
    n_max: u32,
}

#[derive(Debug)]
enum Failure {
    Io(String),
    Verification(String),
    Budget(String),
    Usage(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Io(_) => 1,
            Failure::Verification(_) => 2,
            Failure::Budget(_) => 3,
            Failure::Usage(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Io(m) | Failure::Verification(m) | Failure::Budget(m) | Failure::Usage(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let msg = e.to_string();
        match e {
            Error::BudgetExceeded { .. } | Error::EnumerationBudget { .. } | Error::Overflow => {
                Failure::Budget(msg)
            }
            Error::OracleMismatch { .. } | Error::Integrality { .. } => Failure::Verification(msg),
            _ => Failure::Usage(msg),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e.to_string())
    }
}

/// Rows ready to write, and whether every check in scope passed.
struct Outcome {
    passed: bool,
    summary: Option<String>,
}

struct Sink<'a> {
    cli: &'a Cli,
}

impl Sink<'_> {
    fn open(&self) -> Result<Box<dyn Write>, Failure> {
        Ok(match &self.cli.output {
            Some(path) => Box::new(BufWriter::new(File::create(path)?)),
            None => Box::new(BufWriter::new(io::stdout().lock())),
        })
    }

    fn rows<T: Serialize>(&self, rows: &[T]) -> Result<(), Failure> {
        let mut out = self.open()?;
        match self.cli.format {
            Format::Json => write_json(rows, &mut out)?,
            Format::Csv => {
                if !self.cli.no_timestamp {
                    let secs = SystemTime::now()
                        .duration_since(UNIX_EPOCH)
                        .map_or(0, |d| d.as_secs());
                    writeln!(out, "# generated_unix={secs}")?;
                }
                write_csv(rows, &mut out)?;
            }
        }
        out.flush()?;
        Ok(())
    }

    /// JSON gets `value`; CSV gets the flat `rows`.
    fn either<J: Serialize, C: Serialize>(&self, value: &J, rows: &[C]) -> Result<(), Failure> {
        match self.cli.format {
            Format::Json => {
                let mut out = self.open()?;
                write_json(value, &mut out)?;
                out.flush()?;
                Ok(())
            }
            Format::Csv => self.rows(rows),
        }
    }
}

fn budget(cli: &Cli) -> Budget {
    cli.budget.map_or_else(Budget::default, |b| Budget::new(b as usize))
}

fn spec_of(args: &SpecArgs) -> Result<ProductSpec, Failure> {
    Ok(ProductSpec::new(args.p, args.s, args.n)?)
}

fn expand(cli: &Cli, args: &SpecArgs) -> Result<Outcome, Failure> {
    let spec = spec_of(args)?;
    let poly = expand_product_within(&spec, budget(cli))?;
    Sink { cli }.either(&CoefficientDump::new(&spec, &poly), &CoefficientRecord::rows(&poly))?;
    Ok(Outcome {
        passed: true,
        summary: None,
    })
}

fn msum(cli: &Cli, args: &MsumArgs) -> Result<Outcome, Failure> {
    let spec = spec_of(&args.spec)?;
    let method = args.method.unwrap_or(if args.ell.is_some() {
        Method::Direct
    } else {
        Method::Both
    });
    let modulus = match args.ell {
        Some(_) if method != Method::Direct => {
            return Err(Failure::Usage("--ell supports --method direct only".into()))
        }
        Some(ell) => ProgressionQuery::with_ell(spec.p(), ell, 0)?.modulus(),
        None => spec.modulus(),
    };
    let residues: Vec<u64> = match args.b {
        Residue::All => (0..modulus).collect(),
        Residue::One(b) if b < modulus => vec![b],
        Residue::One(b) => {
            return Err(Error::ResidueOutOfRange {
                residue: b,
                modulus,
            }
            .into())
        }
    };

    let direct = if method == Method::Charsum {
        None
    } else {
        let poly = expand_product_within(&spec, budget(cli))?;
        Some(if args.ell.is_some() {
            residues
                .iter()
                .map(|&b| {
                    let q = ProgressionQuery::new(spec.p(), modulus, b)?;
                    Ok(direct_progression_sum(&poly, &q))
                })
                .collect::<Result<Vec<_>, Error>>()?
        } else {
            let all = m_all_from_expansion(&poly, &spec);
            residues.iter().map(|&b| all[b as usize].clone()).collect()
        })
    };
    let charsum = if method == Method::Direct {
        None
    } else {
        Some(
            residues
                .iter()
                .map(|&b| m_charsum_exact(&spec, b))
                .collect::<Result<Vec<_>, Error>>()?,
        )
    };

    let mut mismatches = 0;
    let rows: Vec<MsumRecord> = residues
        .iter()
        .enumerate()
        .map(|(i, &b)| {
            let d = direct.as_ref().map(|v| &v[i]);
            let c = charsum.as_ref().map(|v| &v[i]);
            if let (Some(d), Some(c)) = (d, c) {
                if d != c {
                    mismatches += 1;
                }
            }
            MsumRecord {
                p: spec.p(),
                s: spec.s(),
                n: spec.n(),
                b,
                m_direct: d.map(ToString::to_string),
                m_charsum: c.map(ToString::to_string),
                modulus,
            }
        })
        .collect();
    Sink { cli }.rows(&rows)?;
    Ok(Outcome {
        passed: mismatches == 0,
        summary: (mismatches > 0).then(|| format!("msum: {mismatches} residues where the methods disagree")),
    })
}

fn verify(cli: &Cli, args: &VerifyArgs) -> Result<Outcome, Failure> {
    let rows = verify_grid(&args.p, &args.s, args.n_max, budget(cli))?;
    let ok = |row: &VerificationRow| {
        let main1 = row.within_bound && row.methods_agree() != Some(false);
        let signs = row.sign_ok() != Some(false);
        match args.suite {
            Suite::Main1 => main1,
            Suite::Signs => signs,
            Suite::All => main1 && signs,
        }
    };
    let failures = rows.iter().filter(|r| !ok(r)).count();
    let records: Vec<VerificationRecord> = rows.iter().map(Into::into).collect();
    Sink { cli }.either(&rows, &records)?;
    Ok(Outcome {
        passed: failures == 0,
        summary: Some(format!("verify: {} rows, {failures} failures", rows.len())),
    })
}

fn maxcoeff(cli: &Cli, args: &MaxCoeffArgs) -> Result<Outcome, Failure> {
    if args.n_min > args.n_max {
        return Err(Failure::Usage("--n-min exceeds --n-max".into()));
    }
    let ns = args.n_min..=args.n_max;
    let rows = if SHARP_PRIMES.contains(&args.p) {
        borw1_check(args.p, args.s, ns, budget(cli))?
    } else {
        borw2_check(args.p, args.s, ns, budget(cli))?
    };
    let failures = rows.iter().filter(|r| !r.passed()).count();
    Sink { cli }.rows(&rows)?;
    Ok(Outcome {
        passed: failures == 0,
        summary: (failures > 0).then(|| format!("maxcoeff: {failures} rows fail the sandwich check")),
    })
}

fn supnorm(cli: &Cli, args: &SupNormArgs) -> Result<Outcome, Failure> {
    let spec = spec_of(&args.spec)?;
    let samples = args.samples.unwrap_or_else(|| default_samples(&spec));
    let est = if args.no_refine {
        supnorm_grid(&spec, samples)?
    } else {
        supnorm_sample(&spec, samples)?
    };
    Sink { cli }.rows(&[SupNormRecord::new(&spec, &est)])?;
    Ok(Outcome {
        passed: true,
        summary: None,
    })
}

fn recursions(cli: &Cli, args: &RecursionArgs) -> Result<Outcome, Failure> {
    let report = check_andrews_recursions(args.n_max, budget(cli))?;
    let rows: Vec<RecursionRecord> = report.steps.iter().map(Into::into).collect();
    Sink { cli }.either(&report, &rows)?;
    let failures = rows.iter().filter(|r| !r.passed).count();
    Ok(Outcome {
        passed: failures == 0,
        summary: (failures > 0).then(|| format!("recursions: {failures} steps fail")),
    })
}

fn run(cli: &Cli) -> Result<Outcome, Failure> {
    if let Some(threads) = cli.threads {
        if threads == 0 {
            return Err(Failure::Usage("--threads must be positive".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .map_err(|e| Failure::Usage(e.to_string()))?;
    }
    match &cli.command {
        Command::Expand(args) => expand(cli, args),
        Command::Msum(args) => msum(cli, args),
        Command::Verify(args) => verify(cli, args),
        Command::Maxcoeff(args) => maxcoeff(cli, args),
        Command::Supnorm(args) => supnorm(cli, args),
        Command::Recursions(args) => recursions(cli, args),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(4),
            };
        }
    };
    match run(&cli) {
        Ok(outcome) => {
            if let Some(summary) = outcome.summary {
                eprintln!("{summary}");
            }
            if outcome.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(2)
            }
        }
        Err(failure) => {
            eprintln!("error: {}", failure.message());
            if let Failure::Usage(_) = failure {
                eprintln!("run `borwein --help` for usage");
            }
            ExitCode::from(failure.code())
        }
    }
}
