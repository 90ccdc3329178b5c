use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use abelsolve::bench::{run_bench, BenchProfile};
use abelsolve::problem::{parse_problem, ProblemFile};
use abelsolve::strategy::{solve, verify_all, Outcome, Strategy};
use abelsolve::{Error, GroupElement, SolutionSet};
use clap::{Parser, Subcommand};
use serde_json::{json, Value};

const EXIT_SOLVABLE: u8 = 0;
const EXIT_USAGE: u8 = 1;
const EXIT_INAPPLICABLE: u8 = 2;
const EXIT_DISAGREE: u8 = 3;
const EXIT_INCONSISTENT: u8 = 10;

/// Solve x^φ = b over finitely generated abelian groups.
#[derive(Parser, Debug)]
#[command(name = "abelsolve", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Solve one problem file.
    Solve {
        file: PathBuf,
        #[arg(long, default_value = "auto")]
        strategy: Strategy,
        /// Print the result as JSON.
        #[arg(long)]
        json: bool,
    },
    /// Run every strategy on a problem file and compare.
    Verify { file: PathBuf },
    /// Seeded random benchmark across all strategies.
    Bench {
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long, value_delimiter = ',', default_value = "2,3")]
        primes: Vec<u64>,
        #[arg(long, default_value_t = 4)]
        max_rank: usize,
        #[arg(long, default_value_t = 3)]
        max_exp: u32,
        /// Also write the CSV report here.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
}

fn fail(code: u8, msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(code)
}

fn load(path: &Path) -> Result<ProblemFile, ExitCode> {
    let text = fs::read_to_string(path).map_err(|e| fail(EXIT_USAGE, format!("{}: {e}", path.display())))?;
    parse_problem(&text).map_err(|e| fail(EXIT_USAGE, format!("{}: {e}", path.display())))
}

fn json_vec(e: &GroupElement) -> Value {
    Value::Array(e.exponents().iter().map(|x| Value::Number(x.to_string().parse().expect("integer literal"))).collect())
}

fn to_json(strategy: Strategy, sol: &SolutionSet) -> Value {
    match sol {
        SolutionSet::Inconsistent => json!({ "strategy": strategy.name(), "verdict": "inconsistent" }),
        SolutionSet::Solvable { particular, kernel } => json!({
            "strategy": strategy.name(),
            "verdict": "solvable",
            "particular": json_vec(particular),
            "kernel": kernel.iter().map(json_vec).collect::<Vec<_>>(),
        }),
    }
}

fn cmd_solve(file: &Path, strategy: Strategy, as_json: bool) -> ExitCode {
    let problem = match load(file) {
        Ok(p) => p,
        Err(code) => return code,
    };
    let sol = match solve(&problem.hom, &problem.rhs, strategy) {
        Ok(s) => s,
        Err(e @ Error::Inapplicable(_)) => return fail(EXIT_INAPPLICABLE, e),
        Err(e) => return fail(EXIT_USAGE, e),
    };
    if as_json {
        println!("{}", to_json(strategy, &sol));
    } else {
        println!("{sol}");
    }
    ExitCode::from(if sol.is_solvable() { EXIT_SOLVABLE } else { EXIT_INCONSISTENT })
}

fn cmd_verify(file: &Path) -> ExitCode {
    let problem = match load(file) {
        Ok(p) => p,
        Err(code) => return code,
    };
    let v = match verify_all(&problem.hom, &problem.rhs) {
        Ok(v) => v,
        Err(e) => return fail(EXIT_USAGE, e),
    };
    for (st, outcome) in &v.outcomes {
        match outcome {
            Outcome::Solved(SolutionSet::Inconsistent) => println!("{st:<10}  inconsistent"),
            Outcome::Solved(s) => println!(
                "{st:<10}  solvable  particular {}  kernel gens {}",
                s.particular().expect("solvable"),
                s.kernel().len()
            ),
            Outcome::Inapplicable(why) => println!("{st:<10}  skipped ({why})"),
        }
    }
    if v.agree {
        println!("all strategies agree");
        ExitCode::from(EXIT_SOLVABLE)
    } else {
        println!("DISAGREEMENT");
        ExitCode::from(EXIT_DISAGREE)
    }
}

fn cmd_bench(profile: BenchProfile, csv: Option<&Path>) -> ExitCode {
    if profile.primes.is_empty() || profile.max_rank == 0 || profile.max_exp == 0 {
        return fail(EXIT_USAGE, "need at least one prime, --max-rank >= 1 and --max-exp >= 1");
    }
    if let Some(&p) = profile.primes.iter().find(|&&p| !abelsolve::arith::is_prime(p)) {
        return fail(EXIT_USAGE, Error::NotPrime(p));
    }
    let report = match run_bench(&profile) {
        Ok(r) => r,
        Err(e) => return fail(EXIT_USAGE, e),
    };
    print!("{}", report.to_table());
    if let Some(path) = csv {
        if let Err(e) = fs::write(path, report.to_csv()) {
            return fail(EXIT_USAGE, format!("{}: {e}", path.display()));
        }
    }
    ExitCode::from(if report.all_agree() { EXIT_SOLVABLE } else { EXIT_DISAGREE })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { EXIT_SOLVABLE });
        }
    };
    match cli.command {
        Command::Solve { file, strategy, json } => cmd_solve(&file, strategy, json),
        Command::Verify { file } => cmd_verify(&file),
        Command::Bench { seed, count, primes, max_rank, max_exp, csv } => {
            cmd_bench(BenchProfile::new(seed, count, primes, max_rank, max_exp), csv.as_deref())
        }
    }
}
