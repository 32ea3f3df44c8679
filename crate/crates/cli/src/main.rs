use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use sublab_cli::{suites, CliError, ExperimentConfig};

#[derive(Parser)]
#[command(
    name = "sublab",
    version,
    about = "Run subgroup-dynamics experiment suites"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one suite and print its verdicts.
    Run(RunArgs),
    /// List the available suites.
    List,
}

#[derive(Args)]
struct RunArgs {
    #[arg(long)]
    suite: Option<String>,
    /// TOML experiment file; flags override its values.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
    /// Directory for the JSON and CSV reports.
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long)]
    radius: Option<usize>,
    #[arg(long)]
    probe_depth: Option<usize>,
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long)]
    index_bound: Option<usize>,
    /// Worker threads; defaults to all cores.
    #[arg(long)]
    jobs: Option<usize>,
}

impl RunArgs {
    fn config(self) -> Result<ExperimentConfig, CliError> {
        let mut cfg = match &self.config {
            Some(path) => ExperimentConfig::from_file(path)?,
            None => ExperimentConfig::default(),
        };
        if let Some(s) = self.suite {
            cfg.suite = s;
        }
        if let Some(s) = self.seed {
            cfg.seed = s;
        }
        if let Some(o) = self.output {
            // Flags are relative to the working directory, not the config file.
            cfg.output = Some(std::path::absolute(o).map_err(|source| CliError::Io {
                path: PathBuf::from("."),
                source,
            })?);
        }
        let p = &mut cfg.params;
        p.radius = self.radius.or(p.radius);
        p.probe_depth = self.probe_depth.or(p.probe_depth);
        p.samples = self.samples.or(p.samples);
        p.index_bound = self.index_bound.or(p.index_bound);
        cfg.jobs = self.jobs.or(cfg.jobs);
        Ok(cfg)
    }
}

fn run(args: RunArgs) -> Result<i32, CliError> {
    let cfg = args.config()?;
    let report = sublab_cli::run(&cfg)?;
    for c in &report.checks {
        println!("{} {}", if c.passed { "PASS" } else { "FAIL" }, c.name);
        if !c.passed {
            println!("     {}", c.detail);
        }
    }
    println!(
        "{}: {} ({:.1}s)",
        report.suite,
        if report.passed() { "passed" } else { "FAILED" },
        report.elapsed.as_secs_f64()
    );
    Ok(sublab_cli::exit_code(&report))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.command {
        Command::List => {
            for s in suites::all() {
                println!("{:<26} {}", s.name, s.description);
            }
            0
        }
        Command::Run(args) => run(args).unwrap_or_else(|e| {
            eprintln!("error: {e}");
            e.exit_code()
        }),
    };
    ExitCode::from(code as u8)
}
