use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use adplace::bench::{benchmark, parse_grid, BenchOptions};
use adplace::io::ValenceScale;
use adplace::run::{run, RunConfig, SolverChoice};
use adplace::solvers::DEFAULT_CANDIDATE_CAP;
use adplace::{Error, Pairing};

#[derive(Parser)]
#[command(name = "adplace", version, about = "Select and place ads inside a program video")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve one instance and write schedule.json, report.json and profile.json.
    Run {
        #[arg(long)]
        program: PathBuf,
        #[arg(long)]
        inventory: PathBuf,
        /// Directory of `<id>.txt` keyframe feature files.
        #[arg(long)]
        features: Option<PathBuf>,
        /// Precomputed N x P relevance grid; overrides --features.
        #[arg(long)]
        rel_file: Option<PathBuf>,
        #[arg(long, default_value_t = 8)]
        k: usize,
        #[arg(long, default_value_t = 0.5)]
        alpha: f64,
        /// Defaults to 1 - alpha.
        #[arg(long)]
        beta: Option<f64>,
        #[arg(long, value_enum, default_value_t = SolverChoice::Bnb)]
        solver: SolverChoice,
        #[arg(long, value_enum, default_value_t = Pairing::Aligned)]
        pairing: Pairing,
        #[arg(long, value_enum, default_value_t = ValenceScale::Hundred)]
        scale: ValenceScale,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_CANDIDATE_CAP)]
        cap: u128,
        #[arg(long)]
        threads: Option<usize>,
        #[arg(long, default_value = "out")]
        out: PathBuf,
    },
    /// Compare brute force and branch-and-bound over a PxMxK grid.
    Bench {
        /// Comma-separated cells, e.g. `6x4x2,20x11x8`.
        #[arg(long, default_value = "")]
        grid: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 0.5)]
        alpha: f64,
        #[arg(long, default_value_t = DEFAULT_CANDIDATE_CAP)]
        cap: u128,
        /// Write the JSON table here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    match dispatch(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn dispatch(cli: Cli) -> Result<(), Error> {
    match cli.command {
        Command::Run {
            program,
            inventory,
            features,
            rel_file,
            k,
            alpha,
            beta,
            solver,
            pairing,
            scale,
            seed,
            cap,
            threads,
            out,
        } => {
            let config = RunConfig {
                features_dir: features,
                rel_file,
                k,
                alpha,
                beta: beta.unwrap_or(1.0 - alpha),
                solver,
                pairing,
                scale,
                seed,
                out,
                cap,
                threads,
                ..RunConfig::new(program, inventory)
            };
            let outcome = run(&config)?;
            for e in &outcome.schedule.entries {
                println!("slot {:>3}  rank {}  {}", e.slot, e.rank, e.ad_id);
            }
            if let Some(s) = &outcome.report.solve {
                println!("reward {}", s.reward);
            }
            println!("wrote {}", outcome.schedule_path.display());
            Ok(())
        }
        Command::Bench {
            grid,
            seed,
            alpha,
            cap,
            out,
        } => {
            let cells = parse_grid(&grid)?;
            let rows = benchmark(&cells, &BenchOptions { seed, alpha, cap });
            let text = serde_json::to_string_pretty(&rows).expect("serializable") + "\n";
            match out {
                Some(path) => std::fs::write(&path, text).map_err(|source| Error::Io { path, source }),
                None => {
                    print!("{text}");
                    Ok(())
                }
            }
        }
    }
}
