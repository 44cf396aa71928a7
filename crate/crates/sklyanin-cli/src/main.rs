//! Command line workbench for degenerate three-dimensional Sklyanin
//! algebras: Hilbert functions, Koszul duals, Zhang twists, normality
//! certificates, truncated point schemes, and the point-parameter ring.

mod commands;
mod report;
mod verify;

use clap::{Args, Parser, Subcommand};
use commands::{CliError, Output};
use sklyanin::scalars::{make_field, Field, FieldSpec};
use std::path::PathBuf;
use std::time::Instant;

#[derive(Parser)]
#[command(
    name = "sklyanin",
    version,
    about = "Exact workbench for degenerate three-dimensional Sklyanin algebras"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct CommonArgs {
    /// Working field: qzeta, q, or fp:<p> with p prime and p = 1 mod 3.
    #[arg(long, default_value = "qzeta")]
    field: String,
    /// Monomial order as a permutation of x, y, z (x,y,z or z<y<x or zyx).
    #[arg(long, default_value = "x,y,z")]
    order: String,
    /// Write the report to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Report format.
    #[arg(long, default_value = "json", value_parser = ["json", "csv"])]
    format: String,
}

#[derive(Args)]
struct PresArgs {
    /// Presentation: builtin:s111, builtin:s100, builtin:s1bc:<b>,<c>, or a
    /// file in the presentation text format.
    #[arg(value_name = "PRESENTATION")]
    presentation_pos: Option<String>,
    /// Presentation (flag form, same values as the positional argument).
    #[arg(long = "presentation", value_name = "PRESENTATION", conflicts_with = "presentation_pos")]
    presentation_flag: Option<String>,
}

impl PresArgs {
    fn resolve(&self) -> &str {
        self.presentation_flag
            .as_deref()
            .or(self.presentation_pos.as_deref())
            .unwrap_or("builtin:s111")
    }
}

#[derive(Subcommand)]
enum Command {
    /// Degree-wise dimensions of a quadratic algebra.
    Hilbert {
        #[command(flatten)]
        common: CommonArgs,
        #[command(flatten)]
        pres: PresArgs,
        /// Largest degree computed.
        #[arg(long, default_value_t = 8)]
        max_degree: usize,
    },
    /// Koszul dual relations, pairing checks, and dual dimensions.
    KoszulDual {
        #[command(flatten)]
        common: CommonArgs,
        #[command(flatten)]
        pres: PresArgs,
        /// Largest degree computed.
        #[arg(long, default_value_t = 5)]
        max_degree: usize,
    },
    /// Zhang twist by a graded automorphism.
    Twist {
        #[command(flatten)]
        common: CommonArgs,
        #[command(flatten)]
        pres: PresArgs,
        /// Automorphism: sigma, tau, or matrix:<9 scalars> (row major).
        #[arg(long, default_value = "sigma")]
        auto: String,
        /// Largest degree for the dimension comparison.
        #[arg(long, default_value_t = 6)]
        max_degree: usize,
    },
    /// Normality certificate for an element (default: the Ore quadric).
    CertifyNormal {
        #[command(flatten)]
        common: CommonArgs,
        #[command(flatten)]
        pres: PresArgs,
        /// Homogeneous element in the relation syntax, e.g. "1*xy + 2*zz".
        #[arg(long)]
        element: Option<String>,
        /// Completion depth for the certificate search.
        #[arg(long, default_value_t = 4)]
        max_degree: usize,
    },
    /// Truncated point scheme of length d.
    Ptscheme {
        #[command(flatten)]
        common: CommonArgs,
        #[command(flatten)]
        pres: PresArgs,
        /// Tuple length of the truncated point scheme.
        #[arg(long, default_value_t = 3)]
        d: usize,
        /// enumerate (count points over F_p), components (list the printed
        /// decomposition), or compare (set equality of the two).
        #[arg(long, default_value = "compare", value_parser = ["enumerate", "components", "compare"])]
        mode: String,
    },
    /// Point-parameter ring dimension table (fixed JSON schema).
    Ppring {
        #[command(flatten)]
        common: CommonArgs,
        /// Largest degree for the closed form and generation checks.
        #[arg(long, default_value_t = 10)]
        max_degree: usize,
        /// Largest degree for the evaluation-rank oracles.
        #[arg(long, default_value_t = 8)]
        oracle_max: usize,
    },
    /// Kernel of evaluation on the truncated point scheme of S(1,1,1).
    Kernel {
        #[command(flatten)]
        common: CommonArgs,
        /// Largest kernel degree.
        #[arg(long, default_value_t = 5)]
        max_degree: usize,
        /// Largest degree for the evaluation-rank oracles.
        #[arg(long, default_value_t = 8)]
        oracle_max: usize,
    },
    /// Run the whole verification battery.
    VerifyAll {
        #[command(flatten)]
        common: CommonArgs,
        /// Depth of the Hilbert-function sections.
        #[arg(long, default_value_t = 8)]
        max_degree: usize,
        /// Depth of the evaluation-rank sections.
        #[arg(long, default_value_t = 8)]
        oracle_max: usize,
        /// Switch qzeta to F_7 and halve the deep bounds.
        #[arg(long)]
        fast: bool,
    },
}

fn parse_field(s: &str) -> Result<(Field, String), CliError> {
    let spec = FieldSpec::parse(s)?;
    let field = make_field(spec)?;
    Ok((field, spec.to_string()))
}

fn positive(name: &str, value: usize) -> Result<(), CliError> {
    if value == 0 {
        return Err(CliError::Bounds(format!("{name} must be positive, got 0")));
    }
    Ok(())
}

fn dispatch(cli: Cli) -> Result<(Output, CommonArgs), CliError> {
    match cli.command {
        Command::Hilbert { common, pres, max_degree } => {
            positive("--max-degree", max_degree)?;
            let (field, fname) = parse_field(&common.field)?;
            let out =
                commands::hilbert_cmd(field, &fname, &common.order, pres.resolve(), max_degree)?;
            Ok((out, common))
        }
        Command::KoszulDual { common, pres, max_degree } => {
            positive("--max-degree", max_degree)?;
            let (field, fname) = parse_field(&common.field)?;
            let out = commands::koszul_dual_cmd(
                field,
                &fname,
                &common.order,
                pres.resolve(),
                max_degree,
            )?;
            Ok((out, common))
        }
        Command::Twist { common, pres, auto, max_degree } => {
            positive("--max-degree", max_degree)?;
            let (field, fname) = parse_field(&common.field)?;
            let out = commands::twist_cmd(
                field,
                &fname,
                &common.order,
                pres.resolve(),
                &auto,
                max_degree,
            )?;
            Ok((out, common))
        }
        Command::CertifyNormal { common, pres, element, max_degree } => {
            positive("--max-degree", max_degree)?;
            let (field, fname) = parse_field(&common.field)?;
            let out = commands::certify_normal_cmd(
                field,
                &fname,
                &common.order,
                pres.resolve(),
                element.as_deref(),
                max_degree,
            )?;
            Ok((out, common))
        }
        Command::Ptscheme { common, pres, d, mode } => {
            let (field, fname) = parse_field(&common.field)?;
            let out = commands::ptscheme_cmd(field, &fname, pres.resolve(), d, &mode)?;
            Ok((out, common))
        }
        Command::Ppring { common, max_degree, oracle_max } => {
            positive("--max-degree", max_degree)?;
            let (field, fname) = parse_field(&common.field)?;
            let out =
                commands::ppring_cmd(field, &fname, &common.order, max_degree, oracle_max)?;
            Ok((out, common))
        }
        Command::Kernel { common, max_degree, oracle_max } => {
            positive("--max-degree", max_degree)?;
            let (field, fname) = parse_field(&common.field)?;
            let out =
                commands::kernel_cmd(field, &fname, &common.order, max_degree, oracle_max)?;
            Ok((out, common))
        }
        Command::VerifyAll { common, max_degree, oracle_max, fast } => {
            let (field, _) = parse_field(&common.field)?;
            let out = commands::verify_all_cmd(field, &common.order, max_degree, oracle_max, fast)?;
            Ok((out, common))
        }
    }
}

fn run() -> i32 {
    let cli = Cli::parse();
    let started = Instant::now();
    match dispatch(cli) {
        Ok((output, common)) => {
            let payload = output.render(&common.format);
            if let Some(path) = &common.out {
                if let Err(e) = std::fs::write(path, &payload) {
                    eprintln!("cannot write {}: {e}", path.display());
                    return 3;
                }
            } else {
                print!("{payload}");
            }
            eprintln!("{}", output.summary());
            eprintln!("elapsed: {:.3}s", started.elapsed().as_secs_f64());
            if output.all_pass() {
                0
            } else {
                1
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn main() {
    std::process::exit(run());
}
