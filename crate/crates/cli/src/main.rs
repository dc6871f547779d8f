//! `dq`: exact star products, surface atlases and transport checks.
//!
//! Exit codes: 0 when every check passes, 1 when a check fails, 2 on
//! malformed input.

mod commands;
mod inputs;

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use dq_core::report::CheckReport;
use serde::Serialize;
use serde_json::Value;

#[derive(Parser)]
#[command(
    name = "dq",
    version,
    about = "Exact Moyal star products and deformation-quantization checks"
)]
struct Cli {
    /// Emit a JSON run report instead of text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct FormArg {
    /// `omega0`, `omega0xN`, or a JSON file with exact matrix rows.
    #[arg(long, default_value = "omega0")]
    form: String,
}

#[derive(Args, Clone)]
struct OrderArg {
    /// Truncation order K in h.
    #[arg(long, default_value_t = dq_core::DEFAULT_ORDER)]
    order: usize,
}

#[derive(Args, Clone)]
struct CorpusArgs {
    /// Seed of the random corpus.
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Number of random pairs.
    #[arg(long)]
    pairs: Option<usize>,
    /// Number of random triples (associativity).
    #[arg(long)]
    triples: Option<usize>,
    /// Maximal total degree of random polynomials.
    #[arg(long)]
    degree: Option<u32>,
}

#[derive(Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
enum Mutant {
    /// Use (i/2)^k instead of (i/2)^k / k!.
    DropFactorial,
    /// Use −π in the product, checked against the bracket of π.
    WrongSign,
}

#[derive(Subcommand)]
enum Command {
    /// Star product f ⋆ g.
    Star {
        #[command(flatten)]
        form: FormArg,
        #[command(flatten)]
        order: OrderArg,
        f: String,
        g: String,
    },
    /// Poisson bracket {f, g}.
    Bracket {
        #[command(flatten)]
        form: FormArg,
        f: String,
        g: String,
    },
    /// Check the deformation-quantization axioms on a seeded corpus.
    VerifyDq {
        #[command(flatten)]
        form: FormArg,
        #[command(flatten)]
        order: OrderArg,
        #[command(flatten)]
        corpus: CorpusArgs,
        /// Run a deliberately broken product instead.
        #[arg(long, value_enum)]
        mutant: Option<Mutant>,
    },
    /// Genus, zeros and atlas of a glued polygon.
    SurfaceIngest {
        /// JSON polygon file or built-in name (square, octagon, l-shape, double-pentagon).
        #[arg(value_name = "SURFACE", required_unless_present = "surface_flag")]
        surface: Option<String>,
        #[arg(long = "surface", value_name = "SURFACE")]
        surface_flag: Option<String>,
    },
    /// Check that chart-wise star products agree on every overlap.
    PatchCheck {
        #[arg(value_name = "SURFACE", required_unless_present = "surface_flag")]
        surface: Option<String>,
        #[arg(long = "surface", value_name = "SURFACE")]
        surface_flag: Option<String>,
        #[command(flatten)]
        order: OrderArg,
        #[command(flatten)]
        corpus: CorpusArgs,
        /// Move functions with (ζ + c, λ + c) instead of (ζ + c, λ).
        #[arg(long)]
        corrupt: bool,
    },
    /// Star product on n copies of the cotangent plane.
    ProductStar {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        order: OrderArg,
        f: String,
        g: String,
    },
    /// Average a polynomial over all permutations of the n copies.
    Symmetrize {
        #[arg(long)]
        n: usize,
        f: String,
    },
    /// Star product transported along a symplectomorphism.
    Transport {
        /// JSON map file, `identity`, `shear`, or `random:SEED`.
        #[arg(long)]
        map: String,
        /// Form on the source; defaults to the block form of the map's dimension.
        #[arg(long)]
        form: Option<String>,
        #[command(flatten)]
        order: OrderArg,
        f: String,
        g: String,
    },
    /// Check the axioms for a transported star product.
    VerifyTransport {
        #[arg(long)]
        map: String,
        #[arg(long)]
        form: Option<String>,
        #[arg(long, default_value_t = 4)]
        order: usize,
        #[command(flatten)]
        corpus: CorpusArgs,
        /// Skip the symplectic check and run the axioms anyway.
        #[arg(long)]
        force: bool,
    },
    /// δ = r²(g − 1) + 1 for rank r and genus g.
    Delta {
        #[arg(long)]
        rank: u64,
        #[arg(long)]
        genus: u64,
    },
}

#[derive(Debug)]
pub enum CliError {
    Malformed(String),
}

impl From<dq_core::Error> for CliError {
    fn from(e: dq_core::Error) -> Self {
        CliError::Malformed(e.to_string())
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Malformed(m) => f.write_str(m),
        }
    }
}

/// What a command produced, before rendering.
pub struct Run {
    pub inputs: Value,
    pub outputs: Value,
    pub text: String,
    pub reports: Vec<CheckReport>,
}

impl Run {
    pub fn passed(&self) -> bool {
        self.reports.iter().all(CheckReport::passed)
    }
}

#[derive(Serialize)]
struct RunReport<'a> {
    command: &'a str,
    argv: Vec<String>,
    generator_version: u32,
    inputs: &'a Value,
    outputs: &'a Value,
    text: &'a str,
    reports: &'a [CheckReport],
    passed: bool,
}

fn name(c: &Command) -> &'static str {
    match c {
        Command::Star { .. } => "star",
        Command::Bracket { .. } => "bracket",
        Command::VerifyDq { .. } => "verify-dq",
        Command::SurfaceIngest { .. } => "surface-ingest",
        Command::PatchCheck { .. } => "patch-check",
        Command::ProductStar { .. } => "product-star",
        Command::Symmetrize { .. } => "symmetrize",
        Command::Transport { .. } => "transport",
        Command::VerifyTransport { .. } => "verify-transport",
        Command::Delta { .. } => "delta",
    }
}

fn pick(positional: Option<String>, flag: Option<String>) -> Result<String, CliError> {
    match (positional, flag) {
        (Some(a), Some(b)) if a != b => Err(CliError::Malformed(format!(
            "surface given twice: {a} and {b}"
        ))),
        (Some(a), _) | (None, Some(a)) => Ok(a),
        (None, None) => Err(CliError::Malformed("no surface given".into())),
    }
}

fn dispatch(cmd: Command) -> Result<Run, CliError> {
    use commands as c;
    match cmd {
        Command::Star { form, order, f, g } => c::star(&form.form, order.order, &f, &g),
        Command::Bracket { form, f, g } => c::bracket(&form.form, &f, &g),
        Command::VerifyDq {
            form,
            order,
            corpus,
            mutant,
        } => c::verify_dq(&form.form, order.order, &corpus, mutant),
        Command::SurfaceIngest {
            surface,
            surface_flag,
        } => c::surface_ingest(&pick(surface, surface_flag)?),
        Command::PatchCheck {
            surface,
            surface_flag,
            order,
            corpus,
            corrupt,
        } => c::patch_check(&pick(surface, surface_flag)?, order.order, &corpus, corrupt),
        Command::ProductStar { n, order, f, g } => c::product_star(n, order.order, &f, &g),
        Command::Symmetrize { n, f } => c::symmetrize(n, &f),
        Command::Transport {
            map,
            form,
            order,
            f,
            g,
        } => c::transport(&map, form.as_deref(), order.order, &f, &g),
        Command::VerifyTransport {
            map,
            form,
            order,
            corpus,
            force,
        } => c::verify_transport(&map, form.as_deref(), order, &corpus, force),
        Command::Delta { rank, genus } => c::delta(rank, genus),
    }
}

/// Print a line, tolerating a closed pipe such as `dq ... | head`.
fn emit(text: &str) {
    let _ = writeln!(std::io::stdout().lock(), "{text}");
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let cli = Cli::parse();
    let command = name(&cli.command);
    match dispatch(cli.command) {
        Ok(run) => {
            let passed = run.passed();
            if cli.json {
                let report = RunReport {
                    command,
                    argv: argv.into_iter().skip(1).collect(),
                    generator_version: dq_core::corpus::GENERATOR_VERSION,
                    inputs: &run.inputs,
                    outputs: &run.outputs,
                    text: &run.text,
                    reports: &run.reports,
                    passed,
                };
                emit(&serde_json::to_string_pretty(&report).expect("report serializes"));
            } else {
                emit(&run.text);
            }
            if passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
