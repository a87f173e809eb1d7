//! `affgebra`: construct, conjugate and verify matrix Lie affgebras from the shell.
//!
//! stdout carries JSON only (one value per line); diagnostics go to stderr.
//! Exit status: 0 on success, 1 when a check fails, 2 on invalid input.

use std::fs;
use std::io::{self, Read, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use affgebra::affine::{bracket, lie_retract_bracket, BracketKind};
use affgebra::classes::ClassSpec;
use affgebra::transforms::{build_p, build_p_inverse, build_u, ClassIsomorphism, Conjugator};
use affgebra::verify::{
    all_passed, replay_report, run_check, run_corollary, verify_theorem, CheckId, CheckReport,
    RunOptions,
};
use affgebra::wire::{matrix_from_json, parse_bracket, parse_class_kind, MatrixJson};
use affgebra::{AlgebraError, Field, Matrix};

#[derive(Parser)]
#[command(name = "affgebra", version, about = "Exact matrix Lie affgebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args, Clone)]
struct ClassArgs {
    /// gna, sna, ona, una, suna or ga_c.
    #[arg(long = "class")]
    class: String,
    /// Block size; matrices are (n+1)×(n+1).
    #[arg(long)]
    n: usize,
    /// Q, Qi, GF, surd or surd_c; defaults to Q, or Qi for una/suna.
    #[arg(long)]
    field: Option<String>,
    /// Modulus for --field GF.
    #[arg(long)]
    p: Option<u64>,
    /// Row/column sum for ga_c.
    #[arg(long)]
    c: Option<String>,
}

#[derive(clap::Args, Clone, Copy)]
struct SeedArg {
    #[arg(long, env = "AFFGEBRA_SEED", default_value_t = 0)]
    seed: u64,
}

#[derive(Clone, Copy, ValueEnum)]
enum Which {
    P,
    Pinv,
    U,
}

#[derive(Clone, Copy, ValueEnum)]
enum Via {
    P,
    U,
}

impl From<Via> for Conjugator {
    fn from(v: Via) -> Self {
        match v {
            Via::P => Conjugator::P,
            Via::U => Conjugator::U,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Run catalogue checks on one class and stream reports.
    Verify {
        #[command(flatten)]
        class: ClassArgs,
        /// `commutator` or `zeta:<value>`.
        #[arg(long, default_value = "commutator")]
        bracket: String,
        #[command(flatten)]
        seed: SeedArg,
        /// Trials per check; defaults per check.
        #[arg(long)]
        trials: Option<usize>,
        /// Comma-separated check names; defaults to every applicable check.
        #[arg(long, value_delimiter = ',')]
        checks: Vec<String>,
        /// Add 1 to one entry of each first sample, to exercise failure reporting.
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
    /// Check the block isomorphism and print its target and base point image.
    IsoCheck {
        #[command(flatten)]
        class: ClassArgs,
        #[arg(long, value_enum)]
        via: Option<Via>,
        #[command(flatten)]
        seed: SeedArg,
        #[arg(long, default_value_t = 50)]
        trials: usize,
    },
    /// Compare the retract at the base point with the block commutator.
    Corollary {
        #[command(flatten)]
        class: ClassArgs,
        #[command(flatten)]
        seed: SeedArg,
        #[arg(long, default_value_t = 100)]
        trials: usize,
    },
    /// Print P, P⁻¹ or U of size n+1.
    EmitMatrix {
        #[arg(long, value_enum)]
        which: Which,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "Q")]
        field: String,
        #[arg(long)]
        p: Option<u64>,
    },
    /// Bracket of two matrices.
    Bracket {
        #[arg(long)]
        bracket: String,
        /// Matrix JSON, `@file`, or `-` for stdin.
        a: String,
        b: String,
    },
    /// Retract bracket [a,b]_o.
    Retract {
        #[arg(long)]
        bracket: String,
        #[arg(short = 'o', long = "origin")]
        o: String,
        a: String,
        b: String,
    },
    /// Dimension of a class over its scalar field.
    Dims {
        #[command(flatten)]
        class: ClassArgs,
    },
    /// Stream random class elements.
    Sample {
        #[command(flatten)]
        class: ClassArgs,
        #[command(flatten)]
        seed: SeedArg,
        #[arg(long, default_value_t = 1)]
        count: u64,
    },
    /// Re-evaluate the counterexample in a report; exit 1 if it still fails.
    Replay {
        /// Report JSON, `@file`, or `-` for stdin.
        report: String,
    },
}

enum Failure {
    Check,
    Input(String),
}

impl From<AlgebraError> for Failure {
    fn from(e: AlgebraError) -> Self {
        Failure::Input(e.to_string())
    }
}

fn field_of(tag: &str, p: Option<u64>) -> Result<Field, Failure> {
    Ok(Field::from_tag(tag, p)?)
}

fn class_spec(args: &ClassArgs) -> Result<ClassSpec, Failure> {
    let default = match args.class.to_ascii_lowercase().as_str() {
        "una" | "suna" => "Qi",
        _ => "Q",
    };
    let field = field_of(args.field.as_deref().unwrap_or(default), args.p)?;
    let kind = parse_class_kind(&args.class, args.c.as_deref(), field)?;
    Ok(ClassSpec::new(kind, args.n, field)?)
}

fn read_input(arg: &str) -> Result<String, Failure> {
    if arg == "-" {
        let mut text = String::new();
        io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| Failure::Input(format!("stdin: {e}")))?;
        Ok(text)
    } else if let Some(path) = arg.strip_prefix('@') {
        fs::read_to_string(path).map_err(|e| Failure::Input(format!("{path}: {e}")))
    } else {
        Ok(arg.to_string())
    }
}

fn read_matrix(arg: &str) -> Result<Matrix, Failure> {
    Ok(matrix_from_json(&read_input(arg)?)?)
}

fn emit(value: &impl serde::Serialize) {
    let line = serde_json::to_string(value).expect("plain data serialises");
    let mut out = io::stdout().lock();
    // A closed pipe is not worth a panic.
    let _ = writeln!(out, "{line}");
}

fn emit_matrix(m: &Matrix) {
    emit(&MatrixJson::from(m));
}

fn emit_report(report: &CheckReport) {
    if !report.passed {
        let detail = report
            .counterexample
            .as_ref()
            .map(|c| c.detail.as_str())
            .unwrap_or("");
        let tag = if report.empirical { "note" } else { "FAIL" };
        eprintln!("{tag}: {} on {}: {detail}", report.check, report.class);
    }
    emit(report);
}

fn verdict(reports: &[CheckReport]) -> Result<(), Failure> {
    if all_passed(reports) {
        Ok(())
    } else {
        Err(Failure::Check)
    }
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Verify {
            class,
            bracket,
            seed,
            trials,
            checks,
            inject_fault,
        } => {
            let spec = class_spec(&class)?;
            let kind = parse_bracket(&bracket, spec.field())?;
            let checks: Vec<CheckId> = if checks.is_empty() {
                CheckId::ALL.into_iter().filter(|c| c.applies_to(&kind)).collect()
            } else {
                checks
                    .iter()
                    .map(|c| CheckId::parse(c))
                    .collect::<Result<_, _>>()?
            };
            let opts = RunOptions {
                trials,
                inject_fault,
                ..RunOptions::default()
            };
            let mut reports = Vec::new();
            for check in checks {
                let report = run_check(check, &spec, &kind, seed.seed, &opts)?;
                emit_report(&report);
                reports.push(report);
            }
            verdict(&reports)
        }
        Command::IsoCheck {
            class,
            via,
            seed,
            trials,
        } => {
            let spec = class_spec(&class)?;
            let via = via.map(Conjugator::from).unwrap_or_else(|| Conjugator::default_for(&spec));
            let iso = ClassIsomorphism::new(&spec, via)?;
            let image = iso.to_blocks(spec.base_point()?.value())?;
            emit(&json!({
                "class": spec.to_string(),
                "via": via.to_string(),
                "block_target": {
                    "base_block": MatrixJson::from(&iso.target().base_block),
                    "algebra": format!("{}({})", iso.target().kind.name(), iso.target().n()),
                },
                "base_point_image": MatrixJson::from(&image),
            }));
            let report = verify_theorem(&spec, seed.seed, trials, Some(via))?;
            emit_report(&report);
            verdict(&[report])
        }
        Command::Corollary {
            class,
            seed,
            trials,
        } => {
            let report = run_corollary(&class_spec(&class)?, seed.seed, trials)?;
            emit_report(&report);
            verdict(&[report])
        }
        Command::EmitMatrix { which, n, field, p } => {
            if n == 0 {
                return Err(Failure::Input("n must be positive".into()));
            }
            let m = match which {
                Which::P => build_p(n, field_of(&field, p)?),
                Which::Pinv => build_p_inverse(n, field_of(&field, p)?)?,
                Which::U => build_u(n),
            };
            emit_matrix(&m);
            Ok(())
        }
        Command::Bracket { bracket: kind, a, b } => {
            let (a, b) = (read_matrix(&a)?, read_matrix(&b)?);
            let kind = parse_bracket(&kind, a.field())?;
            emit_matrix(&bracket(&kind, &a, &b)?);
            Ok(())
        }
        Command::Retract {
            bracket: kind,
            o,
            a,
            b,
        } => {
            let (o, a, b) = (read_matrix(&o)?, read_matrix(&a)?, read_matrix(&b)?);
            let kind: BracketKind = parse_bracket(&kind, o.field())?;
            emit_matrix(&lie_retract_bracket(&kind, &o, &a, &b)?);
            Ok(())
        }
        Command::Dims { class } => {
            emit(&class_spec(&class)?.dimension()?);
            Ok(())
        }
        Command::Sample { class, seed, count } => {
            let spec = class_spec(&class)?;
            let sampler = affgebra::classes::Sampler::new(spec)?;
            for index in 0..count {
                emit_matrix(sampler.sample(seed.seed, index)?.value());
            }
            Ok(())
        }
        Command::Replay { report } => {
            let report = CheckReport::from_json(&read_input(&report)?)?;
            let outcome = replay_report(&report)?;
            emit(&json!({
                "check": report.check,
                "reproduced": outcome.reproduced,
                "detail": outcome.detail,
            }));
            if outcome.reproduced {
                Err(Failure::Check)
            } else {
                eprintln!("counterexample no longer fails");
                Ok(())
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check) => ExitCode::from(1),
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
