use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand};
use scrollfam::field::FieldSpec;
use scrollfam::report::{run, Command, ExperimentConfig, Format, RunError};

#[derive(Parser)]
#[command(name = "scrollfam", version, about = "Experiments on rational normal scrolls and curves")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Dimension table of scroll strata for given n and d
    Dims(Opts),
    /// Residual intersections of quadrics with a standard rational normal curve
    Rnc(Opts),
    /// Unisecant curves through n+3 points of a scroll
    Unisecant(Opts),
    /// Sampled dimension of scrolls containing a curve of class kM+L
    Incidence(Opts),
    /// Checks on the degeneration of one scroll type to another
    Degenerate(Opts),
    /// Pencil of degree at most (n+4)/2 on a binary curve
    Gonality(Opts),
    /// Hyperelliptic test for binary curves and Möbius controls
    Hyperelliptic(Opts),
    /// Quadrics containing a binary curve
    Quadrics(Opts),
    /// Search for a 2-dimensional scroll containing a binary curve
    Containment(Opts),
    /// Projection of a binary curve from a node
    Project(Opts),
}

#[derive(Args)]
struct Opts {
    #[arg(long)]
    n: Option<u32>,
    #[arg(long)]
    d: Option<u32>,
    /// Scroll index as a comma list, e.g. 1,2
    #[arg(long, value_delimiter = ',')]
    a: Option<Vec<u32>>,
    #[arg(long)]
    k: Option<u32>,
    #[arg(long)]
    h: Option<u32>,
    /// q or fp:P
    #[arg(long)]
    field: Option<FieldSpec>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1)]
    trials: usize,
    #[arg(long, default_value = "json")]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Quadric rank for rnc (3 or 4)
    #[arg(long)]
    rank: Option<usize>,
    /// Node index for project
    #[arg(long)]
    node: Option<usize>,
    /// Comma list of λ values for degenerate
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    lambda: Option<Vec<i64>>,
    /// Use the in-scroll positive control curve for containment
    #[arg(long)]
    control: bool,
    /// Leave out the wall clock so output is byte-identical across runs
    #[arg(long)]
    omit_timing: bool,
}

fn split(cmd: Cmd) -> (Command, Opts) {
    match cmd {
        Cmd::Dims(o) => (Command::Dims, o),
        Cmd::Rnc(o) => (Command::Rnc, o),
        Cmd::Unisecant(o) => (Command::Unisecant, o),
        Cmd::Incidence(o) => (Command::Incidence, o),
        Cmd::Degenerate(o) => (Command::Degenerate, o),
        Cmd::Gonality(o) => (Command::Gonality, o),
        Cmd::Hyperelliptic(o) => (Command::Hyperelliptic, o),
        Cmd::Quadrics(o) => (Command::Quadrics, o),
        Cmd::Containment(o) => (Command::Containment, o),
        Cmd::Project(o) => (Command::Project, o),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (command, o) = split(cli.command);
    let config = ExperimentConfig {
        command,
        n: o.n,
        d: o.d,
        a: o.a,
        k: o.k,
        h: o.h,
        rank: o.rank,
        node: o.node,
        lambda: o.lambda,
        control: o.control,
        field: o.field.unwrap_or(command.default_field()),
        seed: o.seed,
        trials: o.trials,
        format: o.format,
    };
    let report = match run(&config) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return match e {
                RunError::Missing(_) | RunError::Invalid(_) | RunError::Field(_) | RunError::Family(_) => {
                    ExitCode::from(2)
                }
                _ => ExitCode::FAILURE,
            };
        }
    };
    let text = report.render(!o.omit_timing);
    let written = match &o.out {
        Some(path) => std::fs::write(path, &text).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    };
    match written {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
