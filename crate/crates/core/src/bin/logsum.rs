use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use logsum::harness::eval::{evaluate, EvalInput, OPS};
use logsum::harness::search::{contractive_config, counterexample_search, search_trial};
use logsum::harness::suites::SUITES;
use logsum::harness::{replay, run_suite, Execution, Shape, Structure, SuiteReport, TrialConfig};
use logsum::Error;

#[derive(Parser)]
#[command(name = "logsum", version, about = "Randomized checks of generalized log-sum inequalities")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a property suite.
    Check {
        #[arg(long)]
        suite: String,
        #[command(flatten)]
        run: RunArgs,
        /// Tolerance; defaults to the suite's own.
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long, value_enum, default_value = "unconstrained")]
        generator: ShapeArg,
    },
    /// Search for counterexamples where a hypothesis is dropped.
    Search {
        #[arg(long, default_value = "contractive")]
        mode: String,
        #[command(flatten)]
        run: RunArgs,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Evaluate one operation on a JSON input file.
    Eval {
        #[arg(long)]
        op: String,
        #[arg(long)]
        input: PathBuf,
    },
    /// Re-run one trial of a report (its worst case by default).
    Replay {
        #[arg(long)]
        report: PathBuf,
        #[arg(long)]
        trial_seed: Option<u64>,
    },
    /// List suites and eval operations.
    List,
}

#[derive(Args)]
struct RunArgs {
    #[arg(long, default_value_t = 1000)]
    trials: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Upper bound on the matrix dimension (or sequence length).
    #[arg(long, default_value_t = 4)]
    dim: usize,
    /// Upper bound on the family size.
    #[arg(long, default_value_t = 2)]
    m: usize,
    /// Use exactly `dim` and `m` in every trial.
    #[arg(long)]
    exact_dims: bool,
    #[arg(long, default_value_t = 0.1)]
    spectrum_min: f64,
    #[arg(long, default_value_t = 10.0)]
    spectrum_max: f64,
    #[arg(long, value_enum, default_value = "general")]
    structure: StructureArg,
    /// Write the JSON report here instead of stdout.
    #[arg(long)]
    report: Option<PathBuf>,
    /// Run trials on one thread.
    #[arg(long)]
    sequential: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum ShapeArg {
    Expansive,
    Contractive,
    Unconstrained,
}

#[derive(Clone, Copy, ValueEnum)]
enum StructureArg {
    Commuting,
    General,
}

impl RunArgs {
    fn apply(&self, mut cfg: TrialConfig) -> TrialConfig {
        cfg = cfg.dim(self.dim).family_size(self.m).exact_dims(self.exact_dims);
        cfg.generator.spectrum_min = self.spectrum_min;
        cfg.generator.spectrum_max = self.spectrum_max;
        cfg.generator.structure = match self.structure {
            StructureArg::Commuting => Structure::Commuting,
            StructureArg::General => Structure::General,
        };
        cfg
    }

    fn execution(&self) -> Execution {
        if self.sequential {
            Execution::Sequential
        } else {
            Execution::Parallel
        }
    }
}

fn exit_code(e: &Error) -> ExitCode {
    if e.is_numeric_failure() {
        ExitCode::from(3)
    } else {
        ExitCode::from(2)
    }
}

fn emit(report: &SuiteReport, path: &Option<PathBuf>) -> Result<ExitCode, Error> {
    match path {
        Some(p) => {
            report.write(p)?;
            println!("{}", report.summary());
        }
        None => print!("{}", report.to_json()),
    }
    Ok(if report.violations == 0 { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    match cli.command {
        Command::Check {
            suite,
            run,
            tol,
            generator,
        } => {
            let mut cfg = run.apply(TrialConfig::for_suite(&suite, run.trials, run.seed)?);
            if let Some(t) = tol {
                cfg = cfg.tolerance(t);
            }
            cfg.generator.shape = match generator {
                ShapeArg::Expansive => Shape::Expansive,
                ShapeArg::Contractive => Shape::Contractive,
                ShapeArg::Unconstrained => Shape::Unconstrained,
            };
            let report = run_suite(&cfg, run.execution())?;
            emit(&report, &run.report)
        }
        Command::Search { mode, run, tol } => {
            let cfg = run.apply(contractive_config(run.trials, run.seed)).tolerance(tol);
            let report = counterexample_search(&mode, &cfg, run.execution())?;
            emit(&report, &run.report)?;
            // Findings are exploratory; the search itself succeeded.
            Ok(ExitCode::SUCCESS)
        }
        Command::Eval { op, input } => {
            let out = evaluate(&op, &EvalInput::read(&input)?)?;
            println!("{}", serde_json::to_string_pretty(&out).expect("serializable"));
            Ok(if out.holds == Some(false) { ExitCode::from(1) } else { ExitCode::SUCCESS })
        }
        Command::Replay { report, trial_seed } => {
            let r = SuiteReport::read(&report)?;
            let seed = trial_seed.unwrap_or(r.worst_case_seed);
            let (gap, scale, holds) = if r.mode == "check" {
                let t = replay(&r.config, seed)?;
                (t.gap, t.scale, t.holds)
            } else {
                let t = search_trial(&r.config, seed)?;
                (t.verdict.residual_min_eigenvalue, t.verdict.scale, !t.confirmed)
            };
            let out = json!({ "suite": r.suite, "trial_seed": seed, "gap": gap, "scale": scale, "holds": holds });
            println!("{}", serde_json::to_string_pretty(&out).expect("serializable"));
            Ok(if holds { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Command::List => {
            for (name, tol, about) in SUITES {
                println!("{name:<26} tol {tol:<8e} {about}");
            }
            println!();
            println!("eval ops: {}", OPS.join(", "));
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}
