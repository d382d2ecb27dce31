//! Subcommand arguments and their implementations.

use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, ValueEnum};
use persub_core::generate::{generate, Family, GenParams};
use persub_core::oracle::{exact_multi_solve_with, exact_p1_solve_with, exact_pair_solve_with};
use persub_core::personalize::{
    enumeration_solve_with, gamma_bound, multi_enumeration_solve_with, sampling_solve_with,
    GammaBound, SamplingConfig, SolveOptions, DEFAULT_EPS,
};
use persub_core::{Budget, InnerSolver, Instance, SolveReport};

use crate::config::load_budget;
use crate::error::{CliError, Result};
use crate::files::{
    Check, InstanceFile, InstanceSummary, OracleBlock, Provenance, ReportFile, SolverConfig,
    Timings, REPORT_SCHEMA_VERSION,
};

/// Absolute slack for floating-point comparisons in `compare`.
pub const CHECK_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    Modular,
    Coverage,
    Facility,
    Concave,
    Mixed,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Self {
        match f {
            FamilyArg::Modular => Family::Modular,
            FamilyArg::Coverage => Family::Coverage,
            FamilyArg::Facility => Family::Facility,
            FamilyArg::Concave => Family::Concave,
            FamilyArg::Mixed => Family::Mixed,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct GenArgs {
    #[arg(long, value_enum)]
    pub family: FamilyArg,
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub k: usize,
    #[arg(long)]
    pub m: usize,
    #[arg(long)]
    pub seed: u64,
    /// Coverage: probability that an item covers a universe element.
    #[arg(long, default_value_t = 0.3)]
    pub density: f64,
    /// Coverage: universe size (default 2n).
    #[arg(long)]
    pub universe: Option<usize>,
    /// Facility location: number of clients (default n).
    #[arg(long)]
    pub clients: Option<usize>,
    /// Concave-over-modular: exponent in (0, 1].
    #[arg(long, default_value_t = 0.5)]
    pub exponent: f64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

pub fn run_gen(args: &GenArgs) -> Result<InstanceFile> {
    let params = GenParams {
        density: args.density,
        universe: args.universe,
        clients: args.clients,
        exponent: args.exponent,
    };
    let family = Family::from(args.family);
    let inst = generate(family, args.n, args.k, args.m, args.seed, &params)
        .map_err(|e| CliError::Usage(e.to_string()))?;
    let mut file = InstanceFile::from_instance(&inst);
    file.provenance = Some(Provenance {
        generator: concat!("persub-gen ", env!("CARGO_PKG_VERSION")).to_string(),
        family: family.name().to_string(),
        seed: args.seed,
        params,
    });
    Ok(file)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum AlgoArg {
    /// Every two-group partition of the functions.
    Enum,
    /// T random two-group partitions.
    Sample,
    /// Every partition into at most l groups.
    Multi,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum InnerArg {
    Greedy,
    Exact,
}

#[derive(Debug, Clone, Args)]
pub struct SolveArgs {
    pub instance: PathBuf,
    #[arg(long, value_enum)]
    pub algo: AlgoArg,
    #[arg(long, value_enum, default_value = "greedy")]
    pub inner: InnerArg,
    /// Number of sampled partitions (sample).
    #[arg(long = "rounds", short = 'T')]
    pub rounds: Option<u64>,
    /// Number of candidates (multi).
    #[arg(long)]
    pub l: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Slack values for the sampling expectation bound.
    #[arg(long, value_delimiter = ',')]
    pub eps: Option<Vec<f64>>,
    /// Worker threads; the report is identical for any value.
    #[arg(long, default_value_t = 1)]
    pub threads: usize,
    /// TOML file overriding budget caps.
    #[arg(long)]
    pub budget: Option<PathBuf>,
    /// Include wall-clock timings in the report.
    #[arg(long)]
    pub timings: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn elapsed_ms(start: Instant) -> f64 {
    start.elapsed().as_secs_f64() * 1e3
}

fn solver_config(args: &SolveArgs) -> Result<SolverConfig> {
    let (algorithm, rounds, l, seed, eps) = match args.algo {
        AlgoArg::Enum => ("enum", None, None, None, Vec::new()),
        AlgoArg::Sample => {
            let rounds = args
                .rounds
                .ok_or_else(|| CliError::Usage("--algo sample requires --rounds".into()))?;
            let seed = args
                .seed
                .ok_or_else(|| CliError::Usage("--algo sample requires --seed".into()))?;
            let eps = args.eps.clone().unwrap_or_else(|| DEFAULT_EPS.to_vec());
            ("sample", Some(rounds), None, Some(seed), eps)
        }
        AlgoArg::Multi => {
            let l = args
                .l
                .ok_or_else(|| CliError::Usage("--algo multi requires --l".into()))?;
            ("multi", None, Some(l), None, Vec::new())
        }
    };
    let inner = match args.inner {
        InnerArg::Greedy => "greedy",
        InnerArg::Exact => "exact",
    };
    Ok(SolverConfig {
        algorithm: algorithm.into(),
        inner: inner.into(),
        rounds,
        l,
        seed,
        eps,
    })
}

fn run_solver(
    inst: &Instance,
    config: &SolverConfig,
    inner: &InnerSolver,
    options: &SolveOptions,
) -> Result<SolveReport> {
    let report = match config.algorithm.as_str() {
        "enum" => enumeration_solve_with(inst, inner, options)?,
        "sample" => {
            let sampling = SamplingConfig {
                rounds: config.rounds.expect("validated"),
                seed: config.seed.expect("validated"),
                eps: config.eps.clone(),
            };
            sampling_solve_with(inst, &sampling, inner, options)?
        }
        "multi" => {
            multi_enumeration_solve_with(inst, config.l.expect("validated"), inner, options)?
        }
        other => unreachable!("unknown algorithm {other}"),
    };
    Ok(report)
}

struct Prepared {
    inst: Instance,
    config: SolverConfig,
    inner: InnerSolver,
    budget: Budget,
    pool: rayon::ThreadPool,
}

fn prepare(args: &SolveArgs) -> Result<Prepared> {
    if args.threads == 0 {
        return Err(CliError::Usage("--threads must be at least 1".into()));
    }
    let config = solver_config(args)?;
    let budget = load_budget(args.budget.as_deref())?;
    let (_, inst) = InstanceFile::load(&args.instance)?;
    let inner = match args.inner {
        InnerArg::Greedy => InnerSolver::Greedy,
        InnerArg::Exact => InnerSolver::Exact {
            budget: budget.exact_sets,
        },
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(args.threads)
        .build()
        .map_err(|e| CliError::Usage(format!("cannot start worker pool: {e}")))?;
    Ok(Prepared {
        inst,
        config,
        inner,
        budget,
        pool,
    })
}

pub fn run_solve(args: &SolveArgs) -> Result<ReportFile> {
    let p = prepare(args)?;
    let options = SolveOptions {
        budget: p.budget,
        parallel: args.threads > 1,
    };
    let start = Instant::now();
    let report = p
        .pool
        .install(|| run_solver(&p.inst, &p.config, &p.inner, &options))?;
    let solve_ms = elapsed_ms(start);
    Ok(ReportFile {
        schema_version: REPORT_SCHEMA_VERSION,
        solver: p.config,
        instance: InstanceSummary::of(&p.inst),
        report,
        oracle: None,
        timings: args.timings.then_some(Timings {
            solve_ms,
            oracle_ms: None,
        }),
    })
}

fn check(name: &str, passed: bool, detail: String) -> Check {
    Check {
        name: name.into(),
        passed,
        detail,
    }
}

/// Runs the solver, then the exhaustive oracles, and records the ratio checks.
pub fn run_compare(args: &SolveArgs) -> Result<ReportFile> {
    let p = prepare(args)?;
    let options = SolveOptions {
        budget: p.budget,
        parallel: args.threads > 1,
    };
    let start = Instant::now();
    let report = p
        .pool
        .install(|| run_solver(&p.inst, &p.config, &p.inner, &options))?;
    let solve_ms = elapsed_ms(start);

    let start = Instant::now();
    let opt0 = exact_pair_solve_with(&p.inst, &p.budget)?;
    let opt1 = exact_p1_solve_with(&p.inst, &p.budget)?;
    let opt_l = match p.config.l {
        Some(l) => Some(exact_multi_solve_with(&p.inst, l, &p.budget)?),
        None => None,
    };
    let oracle_ms = elapsed_ms(start);

    let reference_opt = opt_l.as_ref().map_or(opt0.opt_value, |o| o.opt_value);
    let objective = report.objective;
    let recomputed = p.inst.multi_objective(&report.sets)?;
    let floor = report.certified_ratio * reference_opt;
    let checks = vec![
        check(
            "objective_recomputes",
            recomputed == objective,
            format!("recomputed {recomputed} vs reported {objective}"),
        ),
        check(
            "certified_ratio",
            objective >= floor - CHECK_TOL,
            format!(
                "objective {objective} vs {} x optimum {reference_opt} = {floor}",
                report.certified_ratio
            ),
        ),
        check(
            "objective_at_most_optimum",
            objective <= reference_opt + CHECK_TOL,
            format!("objective {objective} vs optimum {reference_opt}"),
        ),
        check(
            "opt1_upper_bounds_opt0",
            opt1.opt_value >= opt0.opt_value - CHECK_TOL,
            format!("OPT1 {} vs OPT0 {}", opt1.opt_value, opt0.opt_value),
        ),
    ];
    let ratio = |num: f64, den: f64| (den > 0.0).then(|| num / den);
    let oracle = OracleBlock {
        achieved_ratio: ratio(objective, reference_opt),
        opt1_over_opt0: ratio(opt1.opt_value, opt0.opt_value),
        reference_opt,
        opt0,
        opt1,
        opt_l,
        checks,
    };
    Ok(ReportFile {
        schema_version: REPORT_SCHEMA_VERSION,
        solver: p.config,
        instance: InstanceSummary::of(&p.inst),
        report,
        oracle: Some(oracle),
        timings: args.timings.then_some(Timings {
            solve_ms,
            oracle_ms: Some(oracle_ms),
        }),
    })
}

#[derive(Debug, Clone, Args)]
pub struct BoundArgs {
    /// Round counts T.
    #[arg(long = "rounds", short = 'T', value_delimiter = ',', required = true)]
    pub rounds: Vec<u64>,
    #[arg(long, value_delimiter = ',', default_values_t = DEFAULT_EPS.to_vec())]
    pub eps: Vec<f64>,
    #[arg(long)]
    pub m: usize,
    /// Inner-solver factor; 1 for an exact inner solver, 1 − 1/e for greedy.
    #[arg(long, default_value_t = 1.0)]
    pub alpha: f64,
}

pub fn bound_rows(args: &BoundArgs) -> Result<Vec<GammaBound>> {
    let mut rows = Vec::with_capacity(args.rounds.len() * args.eps.len());
    for &t in &args.rounds {
        for &eps in &args.eps {
            rows.push(
                gamma_bound(t, eps, args.m, args.alpha)
                    .map_err(|e| CliError::Usage(e.to_string()))?,
            );
        }
    }
    Ok(rows)
}

pub fn format_bound_table(rows: &[GammaBound]) -> String {
    let mut out = String::from("T\teps\tgamma\tgamma_term\tfactor\n");
    let opt = |v: Option<f64>| v.map_or_else(|| "-".to_string(), |v| format!("{v:.9}"));
    for row in rows {
        out.push_str(&format!(
            "{}\t{}\t{}\t{}\t{:.9}{}\n",
            row.rounds,
            row.eps,
            opt(row.gamma),
            opt(row.gamma_term),
            row.factor,
            if row.vacuous {
                "\t(vacuous: eps >= pi/(2e))"
            } else {
                ""
            }
        ));
    }
    out
}
