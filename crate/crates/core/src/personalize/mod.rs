//! Partition-based solvers for the personalized objective.
//!
//! Every solver follows the same round structure: take a partition of the functions into
//! groups, solve `max_{|S| ≤ k} Σ_{i ∈ group} f_i(S)` for each group with the inner solver,
//! and keep the resulting candidates if their objective is at least the incumbent's. Rounds
//! are evaluated independently (optionally in parallel) and folded in round order, so the
//! report does not depend on the worker count.

mod bound;
mod partition;
mod rng;

use rayon::prelude::*;
use serde::Serialize;

pub use bound::{eps_limit, gamma_bound, GammaBound, DEFAULT_EPS};
pub use partition::{
    enumerate_multi_partitions, enumerate_partitions, enumerate_partitions_capped,
    pair_partition_count, partition_from_mask, Partition,
};
pub use rng::{random_partition, round_partition, splitmix64, BitStream};

use crate::budget::{self, Budget};
use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::maximize::GroupMaximizer;
use crate::set::ItemSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Algorithm {
    Enumeration,
    Sampling,
    MultiEnumeration,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct SolveOptions {
    pub budget: Budget,
    /// Evaluate rounds on the rayon pool. Output is identical either way.
    pub parallel: bool,
}

/// One partition visited by a solver.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RoundTrace {
    pub index: u64,
    pub groups: Vec<Vec<usize>>,
    pub sets: Vec<ItemSet>,
    /// `Σ_{i ∈ group} f_i(set)` for each group and its own candidate.
    pub group_values: Vec<f64>,
    pub objective: f64,
    /// Whether this round replaced the incumbent.
    pub incumbent: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SolveReport {
    pub algorithm: Algorithm,
    pub inner_alpha: f64,
    pub sets: Vec<ItemSet>,
    pub objective: f64,
    /// Worst-case factor guaranteed for `objective` relative to the optimum.
    pub certified_ratio: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    /// Expectation guarantees of the sampling solver, one per requested `ε`.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub expectation_bounds: Vec<GammaBound>,
    pub warnings: Vec<String>,
    pub rounds: Vec<RoundTrace>,
}

impl SolveReport {
    /// Best objective seen up to and including each round.
    pub fn best_so_far(&self) -> Vec<f64> {
        self.rounds
            .iter()
            .scan(f64::NEG_INFINITY, |best, r| {
                *best = best.max(r.objective);
                Some(*best)
            })
            .collect()
    }
}

/// Parameters of the sampling solver.
#[derive(Debug, Clone, PartialEq)]
pub struct SamplingConfig {
    pub rounds: u64,
    pub seed: u64,
    /// Slack values for which the expectation bound is reported.
    pub eps: Vec<f64>,
}

impl SamplingConfig {
    pub fn new(rounds: u64, seed: u64) -> Self {
        SamplingConfig {
            rounds,
            seed,
            eps: DEFAULT_EPS.to_vec(),
        }
    }
}

struct Evaluated {
    sets: Vec<ItemSet>,
    group_values: Vec<f64>,
    objective: f64,
}

fn evaluate_partition<M: GroupMaximizer + ?Sized>(
    inst: &Instance,
    inner: &M,
    partition: &Partition,
) -> Result<Evaluated> {
    let mut sets = Vec::with_capacity(partition.num_groups());
    let mut group_values = Vec::with_capacity(partition.num_groups());
    for group in partition.groups() {
        let set = if group.is_empty() {
            ItemSet::prefix(inst.k())
        } else {
            let set = inner.maximize(inst, group)?;
            inst.check_feasible(&set)?;
            set
        };
        group_values.push(inst.group_value(group, &set));
        sets.push(set);
    }
    let objective = inst.multi_value(&sets);
    Ok(Evaluated {
        sets,
        group_values,
        objective,
    })
}

fn base_warnings(inst: &Instance) -> Vec<String> {
    let mut warnings = Vec::new();
    if inst.k_clamped() {
        warnings.push(format!(
            "cardinality bound {} exceeds the ground set size; clamped to {}",
            inst.requested_k(),
            inst.k()
        ));
    }
    warnings
}

fn check_alpha(alpha: f64) -> Result<()> {
    if alpha > 0.0 && alpha <= 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!(
            "inner solver reports α = {alpha}, outside (0, 1]"
        )))
    }
}

/// Runs every round, then folds in round order with the keep-if-at-least-as-good rule.
fn run_rounds<M, P>(
    inst: &Instance,
    inner: &M,
    count: u64,
    partition_of: P,
    parallel: bool,
) -> Result<(Vec<ItemSet>, f64, Vec<RoundTrace>)>
where
    M: GroupMaximizer + ?Sized,
    P: Fn(u64) -> Partition + Sync,
{
    let one = |index: u64| -> Result<(Partition, Evaluated)> {
        let partition = partition_of(index);
        let evaluated = evaluate_partition(inst, inner, &partition)?;
        Ok((partition, evaluated))
    };
    let results: Vec<Result<(Partition, Evaluated)>> = if parallel {
        (0..count).into_par_iter().map(one).collect()
    } else {
        (0..count).map(one).collect()
    };

    let mut best: Option<(Vec<ItemSet>, f64)> = None;
    let mut trace = Vec::with_capacity(results.len());
    for (index, result) in (0..count).zip(results) {
        let (partition, evaluated) = result?;
        let incumbent = best
            .as_ref()
            .is_none_or(|(_, value)| evaluated.objective >= *value);
        if incumbent {
            best = Some((evaluated.sets.clone(), evaluated.objective));
        }
        trace.push(RoundTrace {
            index,
            groups: partition.into_groups(),
            sets: evaluated.sets,
            group_values: evaluated.group_values,
            objective: evaluated.objective,
            incumbent,
        });
    }
    let (sets, objective) =
        best.ok_or_else(|| Error::InvalidArgument("no rounds to run".into()))?;
    Ok((sets, objective, trace))
}

/// Enumerates every two-group partition of the functions. Certifies the inner solver's `α`.
pub fn enumeration_solve<M: GroupMaximizer + ?Sized>(
    inst: &Instance,
    inner: &M,
) -> Result<SolveReport> {
    enumeration_solve_with(inst, inner, &SolveOptions::default())
}

pub fn enumeration_solve_with<M: GroupMaximizer + ?Sized>(
    inst: &Instance,
    inner: &M,
    options: &SolveOptions,
) -> Result<SolveReport> {
    let alpha = inner.alpha();
    check_alpha(alpha)?;
    let m = inst.m();
    budget::ensure_functions(m, options.budget.max_functions)?;
    let (sets, objective, rounds) = run_rounds(
        inst,
        inner,
        pair_partition_count(m),
        |mask| partition_from_mask(m, mask),
        options.parallel,
    )?;
    Ok(SolveReport {
        algorithm: Algorithm::Enumeration,
        inner_alpha: alpha,
        sets,
        objective,
        certified_ratio: alpha,
        seed: None,
        expectation_bounds: Vec::new(),
        warnings: base_warnings(inst),
        rounds,
    })
}

/// Samples `rounds` random partitions. Every round alone certifies `α/2`; the report also
/// lists the expectation bound for each configured `ε`.
pub fn sampling_solve<M: GroupMaximizer + ?Sized>(
    inst: &Instance,
    rounds: u64,
    seed: u64,
    inner: &M,
) -> Result<SolveReport> {
    sampling_solve_with(
        inst,
        &SamplingConfig::new(rounds, seed),
        inner,
        &SolveOptions::default(),
    )
}

pub fn sampling_solve_with<M: GroupMaximizer + ?Sized>(
    inst: &Instance,
    config: &SamplingConfig,
    inner: &M,
    options: &SolveOptions,
) -> Result<SolveReport> {
    let alpha = inner.alpha();
    check_alpha(alpha)?;
    if config.rounds == 0 {
        return Err(Error::InvalidArgument("T must be at least 1".into()));
    }
    let m = inst.m();
    let mut warnings = base_warnings(inst);
    let mut expectation_bounds = Vec::with_capacity(config.eps.len());
    for &eps in &config.eps {
        let bound = gamma_bound(config.rounds, eps, m, alpha)?;
        if bound.vacuous {
            warnings.push(format!(
                "ε = {eps} is at least π/(2e); only the α/2 floor applies"
            ));
        }
        expectation_bounds.push(bound);
    }
    let seed = config.seed;
    let (sets, objective, rounds) = run_rounds(
        inst,
        inner,
        config.rounds,
        |round| round_partition(seed, round, m),
        options.parallel,
    )?;
    Ok(SolveReport {
        algorithm: Algorithm::Sampling,
        inner_alpha: alpha,
        sets,
        objective,
        certified_ratio: alpha / 2.0,
        seed: Some(seed),
        expectation_bounds,
        warnings,
        rounds,
    })
}

/// `l`-candidate generalization: enumerates partitions into at most `l` groups.
pub fn multi_enumeration_solve<M: GroupMaximizer + ?Sized>(
    inst: &Instance,
    l: usize,
    inner: &M,
) -> Result<SolveReport> {
    multi_enumeration_solve_with(inst, l, inner, &SolveOptions::default())
}

pub fn multi_enumeration_solve_with<M: GroupMaximizer + ?Sized>(
    inst: &Instance,
    l: usize,
    inner: &M,
    options: &SolveOptions,
) -> Result<SolveReport> {
    let alpha = inner.alpha();
    check_alpha(alpha)?;
    budget::ensure_functions(inst.m(), options.budget.max_functions)?;
    let partitions = enumerate_multi_partitions(inst.m(), l, options.budget.multi_partitions)?;
    let (sets, objective, rounds) = run_rounds(
        inst,
        inner,
        partitions.len() as u64,
        |index| partitions[index as usize].clone(),
        options.parallel,
    )?;
    Ok(SolveReport {
        algorithm: Algorithm::MultiEnumeration,
        inner_alpha: alpha,
        sets,
        objective,
        certified_ratio: alpha,
        seed: None,
        expectation_bounds: Vec::new(),
        warnings: base_warnings(inst),
        rounds,
    })
}
