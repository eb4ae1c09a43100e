use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use f4wb_cli::golden::{self, Target};
use f4wb_cli::suites::{run_suite, Suite};
use f4wb_cli::{commands, to_json, write_file, Config, Failure, Report};

/// Exact-arithmetic checks on the F4 model and its invariant algebras.
#[derive(Parser)]
#[command(name = "f4wb", version)]
struct Cli {
    /// TOML file with dimensionCap, nMax, degreeCap, seed and parallelism.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Also write the machine-readable output here.
    #[arg(long, global = true)]
    json: Option<PathBuf>,
    /// Overrides the seed of the sampled checks.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Worker threads for suite tasks.
    #[arg(long, global = true, env = "F4WB_PARALLELISM")]
    parallelism: Option<usize>,
    /// Print only the summary line.
    #[arg(long, short, global = true)]
    quiet: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a verification suite.
    #[command(alias = "run")]
    Suite {
        #[arg(value_enum)]
        name: Suite,
    },
    /// Write a golden file (to stdout without --out).
    Golden {
        #[arg(value_enum)]
        target: Target,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Representation-theoretic checks.
    #[command(subcommand)]
    Repth(RepthCommand),
    /// Index sets, coefficient matrices, determinants and assemblies.
    #[command(subcommand)]
    Combin(CombinCommand),
}

#[derive(Subcommand)]
enum RepthCommand {
    /// Build V_{k,l} and verify its highest weight vector.
    Verify {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        l: u32,
    },
}

#[derive(Subcommand)]
enum CombinCommand {
    /// Coefficient matrix of the system in the dominant unknowns.
    Matrix {
        #[arg(long = "T")]
        t: u32,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        m: u32,
        #[arg(long)]
        reduced: bool,
    },
    /// Linear factors of det A(s) for all increasing sequences.
    Dets {
        #[arg(long, default_value_t = 3)]
        kmax: usize,
        #[arg(long, default_value_t = 6)]
        lmax: u32,
    },
    /// Assemble the congruences for an element read from JSON.
    Assemble {
        #[arg(long)]
        input: PathBuf,
        #[arg(long = "T")]
        t: u32,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        l: Option<u32>,
    },
}

fn config(cli: &Cli) -> Result<Config, Failure> {
    let mut cfg = match &cli.config {
        Some(p) => Config::load(p)?,
        None => Config::default(),
    };
    if let Some(s) = cli.seed {
        cfg.seed = s;
    }
    if let Some(p) = cli.parallelism {
        cfg.parallelism = p;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn finish_report(cli: &Cli, report: &Report) -> Result<(), Failure> {
    if cli.quiet {
        let s = report.summary;
        println!("{}: {} pass, {} fail, {} skipped (seed {})", report.suite, s.pass, s.fail, s.skipped, report.seed);
    } else {
        print!("{}", report.render());
    }
    if let Some(p) = &cli.json {
        write_file(p, &to_json(report))?;
    }
    if report.passed() {
        Ok(())
    } else {
        Err(Failure::Checks(report.summary.fail))
    }
}

fn emit_data(cli: &Cli, text: &str) -> Result<(), Failure> {
    match &cli.json {
        Some(p) => write_file(p, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: &Cli) -> Result<(), Failure> {
    let cfg = config(cli)?;
    match &cli.command {
        Command::Suite { name } => finish_report(cli, &run_suite(*name, &cfg)),
        Command::Golden { target, out } => {
            let text = golden::emit(*target)?;
            match out {
                Some(p) => write_file(p, &text),
                None => {
                    print!("{text}");
                    Ok(())
                }
            }
        }
        Command::Repth(RepthCommand::Verify { k, l }) => finish_report(cli, &commands::repth_verify(&cfg, *k, *l)?),
        Command::Combin(CombinCommand::Matrix { t, n, m, reduced }) => emit_data(cli, &to_json(&commands::combin_matrix(*t, *n, *m, *reduced)?)),
        Command::Combin(CombinCommand::Dets { kmax, lmax }) => emit_data(cli, &to_json(&commands::combin_dets(*kmax, *lmax))),
        Command::Combin(CombinCommand::Assemble { input, t, n, l }) => finish_report(cli, &commands::combin_assemble(&cfg, input, *t, *n, *l)?),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("f4wb: {e}");
            e.exit_code()
        }
    }
}
