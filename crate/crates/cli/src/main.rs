use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use finsupp::problem::{parse_problem, Problem};
use finsupp::report::{self, CommandError, Report};

#[derive(Parser)]
#[command(
    name = "finsupp",
    version,
    about = "Finitely supported monomial ideals: base points, factorizations, Rees valuations and blowup models"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct FileArgs {
    /// Problem file (TOML).
    problem: PathBuf,
    /// Emit the report as JSON.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct IdealArgs {
    #[command(flatten)]
    file: FileArgs,
    /// Name of an ideal in the problem file; `m` is the maximal ideal.
    #[arg(long)]
    ideal: String,
}

#[derive(Subcommand)]
enum Command {
    /// Base-point tree with multiplicities.
    Basepoints(IdealArgs),
    /// Factorization into special *-simple ideals.
    Factorize(IdealArgs),
    /// Rees valuations, compared with the base-point order valuations.
    Rees(IdealArgs),
    /// The special *-simple ideal of a chain.
    Special {
        #[command(flatten)]
        file: FileArgs,
        #[arg(long)]
        chain: String,
    },
    /// Singularities of the normalized blowup of an ideal or of X_Gamma.
    Blowup {
        #[command(flatten)]
        file: FileArgs,
        #[arg(long, required_unless_present = "gamma", conflicts_with = "gamma")]
        ideal: Option<String>,
        /// Accepted for clarity; the blowup is always normalized.
        #[arg(long)]
        normalized: bool,
        /// Name of a tree in the problem file.
        #[arg(long)]
        gamma: Option<String>,
    },
    /// One affine chart R[I/x^g] of the blowup.
    Chart {
        #[command(flatten)]
        ideal: IdealArgs,
        /// The generator x^g, as a monomial such as "x^2 y".
        #[arg(long)]
        at: String,
        /// Normalize the chart ring.
        #[arg(long)]
        saturate: bool,
    },
    /// The divisibility and transform conditions for a factorization.
    Conditions {
        #[command(flatten)]
        ideal: IdealArgs,
        /// Largest power searched; defaults to the file's `max_k` or 6.
        #[arg(long)]
        max_k: Option<u32>,
    },
    /// Experimental: count distinct normalized models over a tree.
    ModelsCount {
        #[command(flatten)]
        file: FileArgs,
        #[arg(long)]
        tree: String,
    },
    /// Run the built-in regression suite.
    PaperExamples {
        #[arg(long)]
        json: bool,
    },
}

enum Failure {
    Input(String),
    Math(String),
}

impl From<CommandError> for Failure {
    fn from(e: CommandError) -> Self {
        match e {
            CommandError::Input(m) => Failure::Input(m),
            CommandError::Math(e) => Failure::Math(e.to_string()),
        }
    }
}

fn load(path: &PathBuf) -> Result<Problem, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    parse_problem(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn max_k(problem: &Problem, flag: Option<u32>) -> Result<u32, Failure> {
    match flag {
        Some(k) => Ok(k),
        None => match problem.param("max_k") {
            None => Ok(6),
            Some(k) => {
                u32::try_from(k).map_err(|_| Failure::Input(format!("max_k must be a nonnegative integer, got {k}")))
            }
        },
    }
}

fn run(command: Command) -> Result<(Report, bool), Failure> {
    Ok(match command {
        Command::Basepoints(a) => (report::basepoints(&load(&a.file.problem)?, &a.ideal)?, a.file.json),
        Command::Factorize(a) => (report::factorize(&load(&a.file.problem)?, &a.ideal)?, a.file.json),
        Command::Rees(a) => (report::rees(&load(&a.file.problem)?, &a.ideal)?, a.file.json),
        Command::Special { file, chain } => (report::special(&load(&file.problem)?, &chain)?, file.json),
        Command::Blowup { file, ideal, gamma, .. } => {
            let problem = load(&file.problem)?;
            let r = match (ideal, gamma) {
                (_, Some(tree)) => report::blowup_gamma(&problem, &tree)?,
                (Some(name), None) => report::blowup_normalized(&problem, &name)?,
                (None, None) => return Err(Failure::Input("blowup needs --ideal or --gamma".into())),
            };
            (r, file.json)
        }
        Command::Chart { ideal, at, saturate } => {
            (report::chart_report(&load(&ideal.file.problem)?, &ideal.ideal, &at, saturate)?, ideal.file.json)
        }
        Command::Conditions { ideal, max_k: flag } => {
            let problem = load(&ideal.file.problem)?;
            let bound = max_k(&problem, flag)?;
            (report::conditions(&problem, &ideal.ideal, bound)?, ideal.file.json)
        }
        Command::ModelsCount { file, tree } => (report::models_count(&load(&file.problem)?, &tree)?, file.json),
        Command::PaperExamples { json } => (report::paper_examples(), json),
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli.command) {
        Ok((report, json)) => {
            if json {
                println!("{}", report.to_json());
            } else {
                print!("{report}");
            }
            match report {
                Report::PaperExamples { failed, .. } if failed > 0 => ExitCode::from(2),
                _ => ExitCode::SUCCESS,
            }
        }
        Err(Failure::Input(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Math(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
    }
}
