//! Argument parsing and command execution for the `baer` binary.

pub mod envelope;

use std::io::{self, Write};

use baer_core::hall::for_each_basic;
use baer_core::multiplier::{
    self, enumerate_set, polynilpotent_ranks, AbelianGroupSpec, HypothesisReport, PolyParams,
    SetKind, VParams,
};
use baer_core::verify::{self, Fault, Suite, VerifyConfig};
use baer_core::{Error, Violation};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_traits::Zero;
use serde_json::{json, Value};

use crate::envelope::{big, Envelope};

/// Process exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exit {
    Success = 0,
    HypothesisViolation = 1,
    InvalidInput = 2,
    VerificationFailed = 3,
}

#[derive(Debug, Parser)]
#[command(
    name = "baer",
    version,
    about = "Hall bases, Witt numbers and Baer invariants of free nilpotent groups"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Tsv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Number of basic commutators of a given weight.
    Witt {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        weight: u32,
        #[arg(long)]
        gens: u64,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// List basic commutators in a weight window.
    Basis {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        gens: u32,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        min: u32,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        max: u32,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Enumerate one of the pair sets A, B, C, A∩C, A−C.
    Sets {
        #[command(flatten)]
        v: VArgs,
        #[arg(long, value_enum, default_value_t = Which::AMinusC)]
        which: Which,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Ranks of Baer invariants.
    #[command(subcommand)]
    Rank(RankCommand),
    /// Nilpotent multipliers.
    #[command(subcommand)]
    Multiplier(MultiplierCommand),
    /// Check every closed form against its oracle.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, Args)]
pub struct VArgs {
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    pub n: u32,
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    pub c1: u32,
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    pub c2: u32,
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    pub gens: u32,
}

impl VArgs {
    fn params(&self) -> VParams {
        VParams {
            m: self.gens,
            n: self.n,
            c1: self.c1,
            c2: self.c2,
        }
    }

    fn json(&self) -> Value {
        json!({"gens": self.gens, "n": self.n, "c1": self.c1, "c2": self.c2})
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Which {
    A,
    B,
    C,
    ACapC,
    AMinusC,
}

impl From<Which> for SetKind {
    fn from(w: Which) -> Self {
        match w {
            Which::A => SetKind::A,
            Which::B => SetKind::B,
            Which::C => SetKind::C,
            Which::ACapC => SetKind::ACapC,
            Which::AMinusC => SetKind::AMinusC,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum RankCommand {
    /// Rank of the Baer invariant for the variety [gamma_{c1+1}, gamma_{c2+1}].
    V {
        #[command(flatten)]
        v: VArgs,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Rank of the polynilpotent multiplier for a class row.
    Poly {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        n: u32,
        /// comma-separated class row, e.g. 2,1
        #[arg(long, value_delimiter = ',', required = true, value_parser = clap::value_parser!(u32).range(1..))]
        classes: Vec<u32>,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        gens: u32,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
}

#[derive(Debug, Subcommand)]
pub enum MultiplierCommand {
    /// c-nilpotent multiplier of Z^rank ⊕ Z_{t1} ⊕ ... (t_{i+1} | t_i).
    Abelian {
        #[arg(long)]
        rank: u64,
        /// comma-separated torsion moduli, each dividing the previous
        #[arg(long, value_delimiter = ',')]
        torsion: Vec<u64>,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        class: u32,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, default_value_t = 3)]
    pub max_gens: u32,
    #[arg(long, default_value_t = 5)]
    pub max_class: u32,
    #[arg(long, default_value_t = 2)]
    pub max_n: u32,
    #[arg(long, default_value_t = 10)]
    pub max_weight: u32,
    /// suites to run (default: all)
    #[arg(long = "suite", value_parser = parse_suite)]
    pub suites: Vec<Suite>,
    /// upper bound on basic commutators the grid may enumerate
    #[arg(long, default_value_t = 200_000)]
    pub cap: u64,
    #[arg(long, default_value_t = 0x5eed)]
    pub seed: u64,
    /// random triples for the Lie identities
    #[arg(long, default_value_t = 500)]
    pub samples: usize,
    /// corrupt a formula on purpose (harness self-test)
    #[arg(long, hide = true, value_parser = parse_fault)]
    pub inject_fault: Option<Fault>,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_fault(s: &str) -> Result<Fault, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn violations_json(vs: &[Violation]) -> Value {
    vs.iter().map(|v| Value::String(v.to_string())).collect()
}

fn report_json(r: &HypothesisReport) -> Value {
    let implied: serde_json::Map<String, Value> = r
        .implied
        .iter()
        .map(|i| (i.inequality.to_string(), Value::Bool(i.holds)))
        .collect();
    json!({
        "h1": r.h1,
        "h2": r.h2,
        "case": r.case.as_str(),
        "implied": implied,
        "violations": violations_json(&r.violations),
    })
}

/// Runs one parsed command, writing results to `out` and diagnostics to
/// `err`. Returns the exit code.
pub fn run(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> Exit {
    match execute(cli, out, err) {
        Ok(code) => code,
        Err(CliError::Core(Error::HypothesisViolation(vs))) => {
            for v in vs {
                let _ = writeln!(err, "hypothesis violation: {v}");
            }
            Exit::HypothesisViolation
        }
        Err(CliError::Core(e @ Error::InvalidInput(_))) => {
            let _ = writeln!(err, "error: {e}");
            Exit::InvalidInput
        }
        // closed stdout, e.g. piped into `head`
        Err(CliError::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => Exit::Success,
        Err(CliError::Io(e)) => {
            let _ = writeln!(err, "error: {e}");
            Exit::InvalidInput
        }
    }
}

enum CliError {
    Core(Error),
    Io(io::Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

fn emit(out: &mut dyn Write, env: &Envelope) -> io::Result<()> {
    writeln!(out, "{}", env.to_json())
}

fn execute(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<Exit, CliError> {
    match cli.command {
        Command::Witt {
            weight,
            gens,
            format,
        } => {
            let value = baer_core::witt_u64(weight, gens);
            match format {
                Format::Tsv => writeln!(out, "{value}")?,
                Format::Json => emit(
                    out,
                    &Envelope::new("witt", json!({"weight": weight, "gens": gens}))
                        .with_result(big(&value)),
                )?,
            }
        }
        Command::Basis {
            gens,
            min,
            max,
            format,
        } => match format {
            Format::Tsv => {
                let mut io_err = None;
                for_each_basic(gens, min, max, |c| {
                    writeln!(out, "{c}\t{}", c.weight()).inspect_err(|e| {
                        io_err = Some(io::Error::new(e.kind(), e.to_string()));
                    })
                })
                .map_err(|e| match io_err.take() {
                    Some(io) => CliError::Io(io),
                    None => CliError::Core(e),
                })?;
            }
            Format::Json => {
                let slice = baer_core::generate_basis(gens, min, max)?;
                let elements: Vec<Value> = slice
                    .elements
                    .iter()
                    .map(|c| Value::String(c.to_string()))
                    .collect();
                emit(
                    out,
                    &Envelope::new(
                        "basis",
                        json!({"gens": gens, "min_weight": min, "max_weight": max}),
                    )
                    .with_result(Value::Array(elements)),
                )?;
            }
        },
        Command::Sets { v, which, format } => {
            let p = v.params();
            let kind = SetKind::from(which);
            let report = multiplier::check_hypotheses(&p);
            let set = enumerate_set(&p, kind)?;
            match format {
                Format::Tsv => {
                    for (b, a) in set.pairs() {
                        writeln!(out, "[{b},{a}]\t{}\t{}", b.weight(), a.weight())?;
                    }
                }
                Format::Json => {
                    let formula = if report.h1 {
                        match kind {
                            SetKind::A => Some(multiplier::card_a(&p)?),
                            SetKind::ACapC => Some(multiplier::card_a_cap_c(&p)?),
                            SetKind::AMinusC => Some(multiplier::card_a_minus_c(&p)?),
                            SetKind::B | SetKind::C => None,
                        }
                    } else {
                        None
                    };
                    let pairs: Vec<Value> = set
                        .commutators()
                        .map(|c| Value::String(c.to_string()))
                        .collect();
                    let mut params = v.json();
                    params["which"] = json!(kind.as_str());
                    emit(
                        out,
                        &Envelope::new("sets", params)
                            .with_hypotheses(report_json(&report))
                            .with_result(json!({
                                "kind": kind.as_str(),
                                "size": set.len(),
                                "formula": formula.as_ref().map(big),
                                "pairs": pairs,
                            })),
                    )?;
                }
            }
        }
        Command::Rank(RankCommand::V { v, format }) => {
            let p = v.params();
            let report = multiplier::check_hypotheses(&p);
            let env = Envelope::new("rank v", v.json()).with_hypotheses(report_json(&report));
            if !report.holds() {
                if format == Format::Json {
                    emit(out, &env)?;
                }
                return Err(Error::HypothesisViolation(report.violations).into());
            }
            let rank = multiplier::v_multiplier_rank(&p)?;
            match format {
                Format::Tsv => writeln!(out, "{rank}")?,
                Format::Json => emit(out, &env.with_result(big(&rank)))?,
            }
        }
        Command::Rank(RankCommand::Poly {
            n,
            classes,
            gens,
            format,
        }) => {
            let p = PolyParams::new(gens, n, classes.clone())?;
            let violation = p.violation();
            let hypotheses = json!({
                multiplier::POLY_HYPOTHESIS: violation.is_none(),
                "violations": violations_json(violation.as_slice()),
            });
            let env = Envelope::new(
                "rank poly",
                json!({"gens": gens, "n": n, "classes": classes}),
            )
            .with_hypotheses(hypotheses);
            if let Some(v) = violation {
                if format == Format::Json {
                    emit(out, &env)?;
                }
                return Err(Error::HypothesisViolation(vec![v]).into());
            }
            let ranks = polynilpotent_ranks(&p)?;
            let rank = ranks.last().expect("class row is nonempty");
            match format {
                Format::Tsv => writeln!(out, "{rank}")?,
                Format::Json => emit(out, &env.with_result(big(rank)))?,
            }
        }
        Command::Multiplier(MultiplierCommand::Abelian {
            rank,
            torsion,
            class,
            format,
        }) => {
            let g = AbelianGroupSpec::new(rank, torsion.clone())?;
            let d = multiplier::abelian_multiplier(&g, class)?;
            match format {
                Format::Tsv => {
                    writeln!(out, "Z\t{}", d.free_rank)?;
                    for f in &d.cyclic_factors {
                        writeln!(out, "Z{}\t{}", f.modulus, f.multiplicity)?;
                    }
                }
                Format::Json => {
                    let factors: Vec<Value> = d
                        .cyclic_factors
                        .iter()
                        .map(
                            |f| json!({"modulus": f.modulus, "multiplicity": big(&f.multiplicity)}),
                        )
                        .collect();
                    emit(
                        out,
                        &Envelope::new(
                            "multiplier abelian",
                            json!({"rank": rank, "torsion": torsion, "class": class}),
                        )
                        .with_result(json!({
                            "free_rank": big(&d.free_rank),
                            "cyclic_factors": factors,
                            "group": render_decomposition(&d),
                        })),
                    )?;
                }
            }
        }
        Command::Verify(args) => return run_verify(args, out, err),
    }
    Ok(Exit::Success)
}

/// `Z^1 ⊕ Z4^2 ⊕ Z2^3`, dropping empty summands; `0` for the trivial group.
pub fn render_decomposition(d: &multiplier::AbelianDecomposition) -> String {
    let mut parts = Vec::new();
    if !d.free_rank.is_zero() {
        parts.push(format!("Z^{}", d.free_rank));
    }
    for f in d
        .cyclic_factors
        .iter()
        .filter(|f| !f.multiplicity.is_zero())
    {
        parts.push(format!("Z{}^{}", f.modulus, f.multiplicity));
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" ⊕ ")
    }
}

fn run_verify(
    args: VerifyArgs,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<Exit, CliError> {
    let config = VerifyConfig {
        max_gens: args.max_gens,
        max_class: args.max_class,
        max_n: args.max_n,
        max_weight: args.max_weight,
        suites: if args.suites.is_empty() {
            Suite::ALL.to_vec()
        } else {
            args.suites.clone()
        },
        cap: args.cap,
        seed: args.seed,
        lie_samples: args.samples,
        fault: args.inject_fault,
    };
    let reports = verify::run(&config)?;
    let passed = reports.iter().all(|r| r.passed());
    for r in &reports {
        for f in &r.failures {
            writeln!(err, "FAIL {}: {f}", r.suite)?;
        }
    }
    match args.format {
        Format::Tsv => {
            for r in &reports {
                let status = if r.passed() { "pass" } else { "FAIL" };
                writeln!(
                    out,
                    "{}\t{status}\t{}\t{}",
                    r.suite,
                    r.checks,
                    r.failures.len()
                )?;
            }
        }
        Format::Json => {
            let suites: Vec<Value> = reports
                .iter()
                .map(|r| {
                    json!({
                        "suite": r.suite.name(),
                        "passed": r.passed(),
                        "checks": r.checks,
                        "failures": r.failures.iter().map(|f| json!({
                            "point": f.point,
                            "check": f.check,
                            "expected": f.expected,
                            "actual": f.actual,
                        })).collect::<Vec<_>>(),
                    })
                })
                .collect();
            let names: Vec<&str> = config.suites.iter().map(|s| s.name()).collect();
            emit(
                out,
                &Envelope::new(
                    "verify",
                    json!({
                        "max_gens": config.max_gens,
                        "max_class": config.max_class,
                        "max_n": config.max_n,
                        "max_weight": config.max_weight,
                        "suites": names,
                        "cap": config.cap,
                        "seed": config.seed,
                        "samples": config.lie_samples,
                    }),
                )
                .with_result(json!({"passed": passed, "suites": suites})),
            )?;
        }
    }
    Ok(if passed {
        Exit::Success
    } else {
        Exit::VerificationFailed
    })
}
