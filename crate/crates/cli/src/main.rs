//! `demoivre`: tables, convergence studies and plot data for the
//! binomial-to-Gaussian limit, computed by pairing laws with probes.

mod commands;
mod output;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{CommandFactory, Parser, Subcommand};
use demoivre::probes::PROBE_GRAMMAR;

use commands::Failure;
use output::Format;

fn probe_help() -> String {
    format!(
        "Probe specs:\n  {PROBE_GRAMMAR}\n\n\
         hermite:<m>          normalized Hermite function h_m\n\
         indicator:<a>:<b>    1 on the closed interval [a, b]\n\
         monomial:<r>         x^r\n\
         expi:<t>             e^(itx)\n\
         gwp:<c0>,<c1>,...    (c0 + c1 x + ...) e^(-x^2/2)\n\
         Probes act on the standardized variable x = (k - np)/sqrt(npq)."
    )
}

#[derive(Debug, Parser)]
#[command(name = "demoivre", version, about, after_help = probe_help(), allow_negative_numbers = true)]
struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the output to this file instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Sum binomial atoms in parallel chunks (pair and table).
    #[arg(long, global = true)]
    parallel: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Central masses P(|Z| ≤ s) beside the 1733 values.
    Table(commands::TableArgs),
    /// |⟨T_n, φ⟩ − ⟨T_N, φ⟩| along a geometric sequence of n.
    #[command(after_help = probe_help(), allow_negative_numbers = true)]
    Converge(commands::ConvergeArgs),
    /// Density-scaled binomial bars and the Gaussian curve.
    PlotData(commands::PlotArgs),
    /// One pairing ⟨T_n, φ⟩, its Gaussian limit and optionally the error split.
    #[command(after_help = probe_help(), allow_negative_numbers = true)]
    Pair(commands::PairArgs),
    /// Exact and approximate log-ratios of terms near the centre.
    #[command(allow_negative_numbers = true)]
    Local(commands::LocalArgs),
    /// Classical binomial moments, or weak moments of a density.
    #[command(after_help = probe_help(), allow_negative_numbers = true)]
    Moments(commands::MomentsArgs),
    /// Characteristic function of the binomial, or weak one of a density.
    #[command(after_help = probe_help(), allow_negative_numbers = true)]
    Cf(commands::CfArgs),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Table(a) => commands::table(a, cli.parallel),
        Command::Converge(a) => commands::converge(a),
        Command::PlotData(a) => commands::plot_data(a),
        Command::Pair(a) => commands::pair(a, cli.parallel),
        Command::Local(a) => commands::local(a),
        Command::Moments(a) => commands::moments(a),
        Command::Cf(a) => commands::cf(a),
    };
    let tables = match outcome {
        Ok(t) => t,
        Err(Failure::Usage(u)) => Cli::command().error(ErrorKind::ValueValidation, u.0).exit(),
        Err(Failure::Compute(e)) => {
            eprintln!("error [{}]: {e}", e.module());
            return ExitCode::from(1);
        }
    };
    let bytes = output::render(&tables, cli.format).expect("rendering into memory");
    let written = match &cli.out {
        Some(path) => std::fs::write(path, &bytes),
        None => std::io::stdout().lock().write_all(&bytes),
    };
    if let Err(e) = written {
        eprintln!("error [io]: {e}");
        return ExitCode::from(1);
    }
    ExitCode::SUCCESS
}
