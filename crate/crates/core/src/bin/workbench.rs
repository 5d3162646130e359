use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use nerve_workbench::cli::{self, Options};
use nerve_workbench::nerve::{Mode, Truncation};

#[derive(Parser)]
#[command(name = "workbench", about = "Nerves of finite categories and checks of the nerve axioms")]
struct Args {
    #[command(subcommand)]
    command: Command,
    /// DirFull, DirReduced, InvFull or InvReduced
    #[arg(long, global = true)]
    mode: Option<Mode>,
    /// `exact` or a level `k=N`
    #[arg(long, global = true)]
    trunc: Option<Truncation>,
    /// `2`, `[n]` or a category file
    #[arg(long, global = true)]
    target: Option<String>,
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Enumeration cap; overrides WORKBENCH_BUDGET
    #[arg(long, global = true)]
    budget: Option<u64>,
    /// Write the JSON suite report here
    #[arg(long, global = true)]
    report: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Check a category file against the category laws
    Validate { path: PathBuf },
    /// Build N(I) and print its level sizes
    Nerve { path: PathBuf },
    /// Run N1 to N5 on a shape
    Axioms { path: PathBuf },
    /// Build E(I) and run the enlargement checks
    Enlarge { path: PathBuf },
    /// Run the acceptance battery
    Suite,
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let code = if e.use_stderr() { cli::EXIT_INPUT } else { 0 };
            e.print().ok();
            return ExitCode::from(code as u8);
        }
    };
    let opts = Options {
        mode: args.mode,
        truncation: args.trunc,
        target: args.target,
        out: args.out,
        budget: args.budget,
        report: args.report,
    };
    let mut out = std::io::stdout();
    let code = match &args.command {
        Command::Validate { path } => cli::cmd_validate(path, &mut out),
        Command::Nerve { path } => cli::cmd_nerve(path, &opts, &mut out),
        Command::Axioms { path } => cli::cmd_axioms(path, &opts, &mut out),
        Command::Enlarge { path } => cli::cmd_enlarge(path, &opts, &mut out),
        Command::Suite => cli::cmd_suite(&opts, &mut out),
    };
    ExitCode::from(code as u8)
}
