use std::process::ExitCode;

use clap::{Parser, Subcommand};
use metabench::{cmd_list, cmd_rank, cmd_run, RankArgs, RunArgs};

/// Benchmark workbench for GA, PSO, ABC, TLBO and COA.
#[derive(Parser)]
#[command(name = "metabench", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List benchmark functions and algorithms with their defaults.
    List,
    /// Run an experiment and write summary, ranks, traces and metadata.
    Run(RunArgs),
    /// Recompute ranks.csv from a summary.csv.
    Rank(RankArgs),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::List => {
            let stdout = std::io::stdout();
            return match cmd_list(&mut stdout.lock()) {
                Ok(()) => ExitCode::SUCCESS,
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitCode::from(1)
                }
            };
        }
        Command::Run(args) => cmd_run(&args).map(|outcome| {
            println!(
                "wrote {} cells to {}",
                outcome.rows.len(),
                outcome.out.display()
            );
            let sums = outcome.ranks.rank_sums();
            let lex = outcome.ranks.lexicographic_ranks();
            for ((a, s), l) in outcome.ranks.algorithms.iter().zip(sums).zip(lex) {
                println!("  {a:5} rank_sum={s:3} lex_rank={l}");
            }
        }),
        Command::Rank(args) => cmd_rank(&args).map(|(path, _)| println!("wrote {}", path.display())),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
