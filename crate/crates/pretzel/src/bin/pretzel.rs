//! Command-line front end: invariant reports and verification sweeps.

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use pretzel::report::{
    cmd_invariants, cmd_sweep, render_sweep_text, OrientationChoice, ReportOptions, SweepOptions,
};

#[derive(Parser)]
#[command(
    name = "pretzel",
    about = "Exact invariants of pretzel links",
    long_about = "Computes Conway, Alexander and Jones polynomials, genus, basket \
                  numbers, and torus/hyperbolic classification for pretzel links, \
                  with optional cross-checks against independent diagram-level \
                  computations."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute every applicable invariant of one pretzel spec.
    Invariants(InvariantsArgs),
    /// Cross-check the engines over an exhaustive grid of small specs.
    Sweep(SweepArgs),
}

#[derive(Args)]
struct InvariantsArgs {
    /// Comma-separated half-twist counts, e.g. "-2,3,7".
    #[arg(short = 'p', long = "pretzel", allow_hyphen_values = true)]
    pretzel: String,
    /// Emit the report as JSON instead of text.
    #[arg(long)]
    json: bool,
    /// Cross-check every invariant against an independent computation.
    #[arg(long)]
    verify: bool,
    /// Orientation classes to report: an index, or "all".
    #[arg(long, default_value = "all")]
    orientation: String,
    /// Crossing budget for the Kauffman bracket.
    #[arg(long, default_value_t = 24)]
    jones_budget: usize,
    /// Render the Conway computation tree.
    #[arg(long)]
    trace: bool,
}

#[derive(Args)]
struct SweepArgs {
    /// Largest box count to sweep (at most 6).
    #[arg(long, default_value_t = 4)]
    nmax: usize,
    /// Largest absolute half-twist count per box (at most 5).
    #[arg(long, default_value_t = 3)]
    pmax: i64,
    /// Also check the tabulated Jones rows against the Kauffman bracket.
    #[arg(long)]
    jones: bool,
    /// Crossing budget for the bracket during the sweep.
    #[arg(long, default_value_t = 20)]
    jones_budget: usize,
    /// Emit the summary as JSON instead of text.
    #[arg(long)]
    json: bool,
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version are successful outputs; everything else is
            // a usage error.
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            std::process::exit(code);
        }
    };

    if let Ok(threads) = std::env::var("PRETZEL_THREADS") {
        match threads.parse::<usize>() {
            Ok(n) if n >= 1 => {
                let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
            }
            _ => {
                eprintln!("error: PRETZEL_THREADS must be a positive integer, got {threads:?}");
                std::process::exit(1);
            }
        }
    }

    let code = match cli.command {
        Command::Invariants(args) => run_invariants(args),
        Command::Sweep(args) => run_sweep(args),
    };
    std::process::exit(code);
}

fn run_invariants(args: InvariantsArgs) -> i32 {
    let orientation = match args.orientation.parse::<OrientationChoice>() {
        Ok(choice) => choice,
        Err(message) => {
            eprintln!("error: {message}");
            return 1;
        }
    };
    let opts = ReportOptions {
        verify: args.verify,
        orientation,
        jones_budget: args.jones_budget,
        trace: args.trace,
    };
    match cmd_invariants(&args.pretzel, &opts, args.json) {
        Ok((rendered, code)) => {
            print!("{rendered}");
            code
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn run_sweep(args: SweepArgs) -> i32 {
    let opts = SweepOptions {
        nmax: args.nmax,
        pmax: args.pmax,
        jones: args.jones,
        jones_budget: args.jones_budget,
    };
    match cmd_sweep(&opts) {
        Ok(summary) => {
            if args.json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&summary).expect("summary serializes")
                );
            } else {
                print!("{}", render_sweep_text(&summary));
            }
            if summary.mismatched > 0 {
                2
            } else {
                0
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
