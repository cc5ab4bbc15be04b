use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use teamgroup::exact_oracle::{brute_force_optimal, OracleError};
use teamgroup::instance::{parse_instance_unchecked, profit_to_f64};
use teamgroup::{
    lp_upper_bound, parse_instance, solve, validate_instance, Algorithm, Compatibility, Instance,
    InstanceError, PricingRule, SolveError,
};

#[derive(Parser)]
#[command(
    name = "teamgroup",
    version,
    about = "Profit-aware team grouping solver"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check an instance file and list every problem found.
    Validate {
        #[arg(long)]
        input: PathBuf,
    },
    /// Compute a grouping.
    Solve {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = AlgorithmArg::ApproxTg)]
        algorithm: AlgorithmArg,
        #[arg(long, value_enum, default_value_t = PricingArg::Exact)]
        pricing: PricingArg,
        /// Seed for rand-round.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Compute the LP relaxation bound by column generation.
    Bound {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = PricingArg::Exact)]
        pricing: PricingArg,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum AlgorithmArg {
    ApproxTg,
    Exact,
    Cand1,
    Cand2,
    RandRound,
}

impl AlgorithmArg {
    fn name(self) -> &'static str {
        match self {
            AlgorithmArg::ApproxTg => "approx-tg",
            AlgorithmArg::Exact => "exact",
            AlgorithmArg::Cand1 => "cand1",
            AlgorithmArg::Cand2 => "cand2",
            AlgorithmArg::RandRound => "rand-round",
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PricingArg {
    Exact,
    Greedy,
}

impl From<PricingArg> for PricingRule {
    fn from(p: PricingArg) -> Self {
        match p {
            PricingArg::Exact => PricingRule::Exact,
            PricingArg::Greedy => PricingRule::Greedy,
        }
    }
}

enum Failure {
    /// Unreadable file, malformed or invalid instance, bad flag combination.
    Input(String),
    /// Validation diagnostics, one per line.
    Invalid(String),
    /// The exhaustive solver refused the instance size.
    Refused(String),
    /// Greedy pricing requested for a compatibility mode it cannot honour.
    Mismatch(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Input(_) => 2,
            Failure::Invalid(_) | Failure::Refused(_) => 1,
            Failure::Mismatch(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Input(m)
            | Failure::Invalid(m)
            | Failure::Refused(m)
            | Failure::Mismatch(m) => m,
        }
    }
}

#[derive(Serialize)]
struct Assignment {
    task: String,
    team: Vec<String>,
}

#[derive(Serialize)]
struct SolveDocument {
    profit: f64,
    lp_bound: Option<f64>,
    assignments: Vec<Assignment>,
    algorithm: &'static str,
    guarantee: String,
    iterations: usize,
}

#[derive(Serialize)]
struct BoundDocument {
    lp_bound: f64,
    columns: usize,
    iterations: usize,
    exact: bool,
}

/// Rounds to 9 significant digits.
fn sig9(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{x:.8e}").parse().unwrap_or(x)
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> Result<Instance, Failure> {
    parse_instance(&read(path)?).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn check_pricing(inst: &Instance, pricing: PricingArg) -> Result<(), Failure> {
    if pricing == PricingArg::Greedy && inst.compatibility() != Compatibility::None {
        return Err(Failure::Mismatch(format!(
            "greedy pricing requires compatibility mode none, instance uses {}",
            inst.compatibility()
        )));
    }
    Ok(())
}

fn solve_error(e: SolveError) -> Failure {
    match e {
        SolveError::Pricing(e) => Failure::Mismatch(e.to_string()),
        other => Failure::Input(other.to_string()),
    }
}

fn to_json<T: Serialize>(doc: &T) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("documents serialize");
    s.push('\n');
    s
}

fn cmd_validate(input: &Path) -> Result<String, Failure> {
    let inst = parse_instance_unchecked(&read(input)?).map_err(|e| match e {
        InstanceError::Syntax(m) => Failure::Input(format!("{}: {m}", input.display())),
        other => Failure::Input(other.to_string()),
    })?;
    let diagnostics = validate_instance(&inst);
    if diagnostics.is_empty() {
        return Ok(String::new());
    }
    let mut out = String::new();
    for d in &diagnostics {
        let _ = writeln!(out, "{d}");
    }
    Err(Failure::Invalid(out))
}

fn cmd_solve(
    input: &Path,
    algorithm: AlgorithmArg,
    pricing: PricingArg,
    seed: Option<u64>,
) -> Result<String, Failure> {
    if seed.is_some() && algorithm != AlgorithmArg::RandRound {
        return Err(Failure::Input("--seed applies to rand-round only".into()));
    }
    let inst = load(input)?;
    check_pricing(&inst, pricing)?;

    let doc = if algorithm == AlgorithmArg::Exact {
        let grouping = brute_force_optimal(&inst).map_err(|e| match e {
            OracleError::TooLarge { .. } | OracleError::ProfitOverflow => {
                Failure::Refused(format!("exact search refused: {e}"))
            }
        })?;
        SolveDocument {
            profit: sig9(profit_to_f64(&grouping.profit)),
            lp_bound: None,
            assignments: assignments(&inst, &grouping),
            algorithm: algorithm.name(),
            guarantee: "optimal (exhaustive search)".into(),
            iterations: 0,
        }
    } else {
        let alg = match algorithm {
            AlgorithmArg::Cand1 => Algorithm::CandidateOne,
            AlgorithmArg::Cand2 => Algorithm::CandidateTwo,
            AlgorithmArg::RandRound => Algorithm::RandomizedRound {
                seed: seed.unwrap_or(0),
            },
            _ => Algorithm::ApproxTg,
        };
        let report = solve(&inst, pricing.into(), alg).map_err(solve_error)?;
        SolveDocument {
            profit: sig9(report.grouping.profit_f64()),
            lp_bound: Some(sig9(report.lp_bound)),
            assignments: assignments(&inst, &report.grouping),
            algorithm: algorithm.name(),
            guarantee: report.guarantee_expr,
            iterations: report.iterations,
        }
    };
    Ok(to_json(&doc))
}

fn assignments(inst: &Instance, grouping: &teamgroup::Grouping) -> Vec<Assignment> {
    grouping
        .assignments(inst)
        .into_iter()
        .map(|(task, team)| Assignment { task, team })
        .collect()
}

fn cmd_bound(input: &Path, pricing: PricingArg) -> Result<String, Failure> {
    let inst = load(input)?;
    check_pricing(&inst, pricing)?;
    let bound =
        lp_upper_bound(&inst, pricing.into()).map_err(|e| Failure::Mismatch(e.to_string()))?;
    Ok(to_json(&BoundDocument {
        lp_bound: sig9(bound.value),
        columns: bound.columns,
        iterations: bound.iterations,
        exact: bound.exact,
    }))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (result, output) = match cli.command {
        Command::Validate { input } => (cmd_validate(&input), None),
        Command::Solve {
            input,
            algorithm,
            pricing,
            seed,
            output,
        } => (cmd_solve(&input, algorithm, pricing, seed), output),
        Command::Bound { input, pricing } => (cmd_bound(&input, pricing), None),
    };
    match result {
        Ok(text) => {
            if let Some(path) = output {
                if let Err(e) = fs::write(&path, &text) {
                    eprintln!("error: {}: {e}", path.display());
                    return ExitCode::from(2);
                }
            } else {
                print!("{text}");
            }
            ExitCode::SUCCESS
        }
        Err(Failure::Invalid(diagnostics)) => {
            print!("{diagnostics}");
            ExitCode::from(1)
        }
        Err(f) => {
            eprintln!("error: {}", f.message().trim_end());
            ExitCode::from(f.code())
        }
    }
}
