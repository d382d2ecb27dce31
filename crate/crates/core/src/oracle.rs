//! Brute-force optima for the personalized objective and the partition relaxation.
//!
//! These scan every candidate set of size at most `k` and deliberately avoid any pruning.

use itertools::Itertools;
use serde::Serialize;

use crate::budget::{self, Budget};
use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::personalize::{enumerate_partitions_capped, pair_partition_count};
use crate::set::ItemSet;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OracleResult {
    pub opt_value: f64,
    pub argmax_sets: Vec<ItemSet>,
    /// Candidate tuples (or, for the partition relaxation, group-set evaluations) scanned.
    pub enumerated_count: u64,
}

/// Every subset of `0..n` with at most `k` items, in lexicographic order of item lists.
pub fn candidate_sets(n: usize, k: usize) -> Vec<ItemSet> {
    let mut sets: Vec<ItemSet> = (0..=k.min(n))
        .flat_map(|size| (0..n).combinations(size).map(ItemSet::new))
        .collect();
    sets.sort();
    sets
}

/// `OPT₀`: best unordered pair of candidate sets.
pub fn exact_pair_solve(inst: &Instance) -> Result<OracleResult> {
    exact_multi_solve_with(inst, 2, &Budget::default())
}

pub fn exact_pair_solve_with(inst: &Instance, budget: &Budget) -> Result<OracleResult> {
    exact_multi_solve_with(inst, 2, budget)
}

/// `OPT_l`: best unordered `l`-tuple of candidate sets (repetition allowed).
pub fn exact_multi_solve(inst: &Instance, l: usize) -> Result<OracleResult> {
    exact_multi_solve_with(inst, l, &Budget::default())
}

pub fn exact_multi_solve_with(inst: &Instance, l: usize, budget: &Budget) -> Result<OracleResult> {
    if l == 0 {
        return Err(Error::InvalidArgument(
            "at least one candidate is required".into(),
        ));
    }
    let count = budget::multisets(
        budget::subsets_up_to(inst.n() as u64, inst.k() as u64),
        l as u64,
    );
    budget::ensure(
        "exhaustive candidate-tuple scan",
        count,
        budget.oracle_tuples,
    )?;

    let sets = candidate_sets(inst.n(), inst.k());
    // values[s][i] = f_i(sets[s])
    let values: Vec<Vec<f64>> = sets
        .iter()
        .map(|s| {
            inst.functions()
                .iter()
                .map(|f| f.evaluate(s))
                .collect::<Result<_>>()
        })
        .collect::<Result<_>>()?;

    let mut best: Option<(Vec<usize>, f64)> = None;
    let mut scanned = 0u64;
    for tuple in (0..sets.len()).combinations_with_replacement(l) {
        scanned += 1;
        let value: f64 = (0..inst.m())
            .map(|i| {
                tuple
                    .iter()
                    .map(|&s| values[s][i])
                    .fold(f64::NEG_INFINITY, f64::max)
            })
            .sum();
        if best.as_ref().is_none_or(|(_, v)| value > *v) {
            best = Some((tuple, value));
        }
    }
    let (tuple, opt_value) = best.expect("the empty set is always a candidate");
    Ok(OracleResult {
        opt_value,
        argmax_sets: tuple.into_iter().map(|s| sets[s].clone()).collect(),
        enumerated_count: scanned,
    })
}

/// `OPT₁`: best two-group partition, each group scored by its own exact optimum.
pub fn exact_p1_solve(inst: &Instance) -> Result<OracleResult> {
    exact_p1_solve_with(inst, &Budget::default())
}

pub fn exact_p1_solve_with(inst: &Instance, budget: &Budget) -> Result<OracleResult> {
    let partitions = enumerate_partitions_capped(inst.m(), budget.max_functions)?;
    let per_group = budget::subsets_up_to(inst.n() as u64, inst.k() as u64);
    let count = per_group
        .saturating_mul(2)
        .saturating_mul(u128::from(pair_partition_count(inst.m())));
    budget::ensure("partition relaxation scan", count, budget.oracle_tuples)?;

    let sets = candidate_sets(inst.n(), inst.k());
    let group_best = |group: &[usize]| -> Result<(ItemSet, f64)> {
        let mut best: Option<(&ItemSet, f64)> = None;
        for set in &sets {
            let value = inst.group_evaluate(group, set)?;
            if best.is_none_or(|(_, v)| value > v) {
                best = Some((set, value));
            }
        }
        let (set, value) = best.expect("the empty set is always a candidate");
        Ok((set.clone(), value))
    };

    let mut best: Option<(Vec<ItemSet>, f64)> = None;
    let mut scanned = 0u64;
    for partition in partitions {
        let (first, a) = group_best(partition.group(0))?;
        let (second, b) = group_best(partition.group(1))?;
        scanned += 2 * sets.len() as u64;
        let value = a + b;
        if best.as_ref().is_none_or(|(_, v)| value > *v) {
            best = Some((vec![first, second], value));
        }
    }
    let (argmax_sets, opt_value) = best.expect("at least one partition exists");
    Ok(OracleResult {
        opt_value,
        argmax_sets,
        enumerated_count: scanned,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::function::SubmodularFunction;

    fn modular(w: &[f64]) -> SubmodularFunction {
        SubmodularFunction::Modular {
            weights: w.to_vec(),
        }
    }

    #[test]
    fn candidate_sets_are_lexicographic() {
        let sets = candidate_sets(3, 2);
        let lists: Vec<Vec<usize>> = sets.iter().map(|s| s.items().to_vec()).collect();
        assert_eq!(
            lists,
            vec![
                vec![],
                vec![0],
                vec![0, 1],
                vec![0, 2],
                vec![1],
                vec![1, 2],
                vec![2]
            ]
        );
    }

    #[test]
    fn separating_instance() {
        let inst =
            Instance::new(3, 1, vec![modular(&[5., 0., 0.]), modular(&[0., 0., 7.])]).unwrap();
        let pair = exact_pair_solve(&inst).unwrap();
        assert_eq!(pair.opt_value, 12.0);
        assert_eq!(pair.argmax_sets, vec![ItemSet::new([0]), ItemSet::new([2])]);
        // 4 candidate sets, 10 unordered pairs.
        assert_eq!(pair.enumerated_count, 10);
        let p1 = exact_p1_solve(&inst).unwrap();
        assert_eq!(p1.opt_value, 12.0);
        assert_eq!(p1.enumerated_count, 2 * 2 * 4);
    }

    #[test]
    fn single_function_allows_equal_sets() {
        let inst = Instance::new(3, 2, vec![modular(&[3., 1., 2.])]).unwrap();
        let pair = exact_pair_solve(&inst).unwrap();
        assert_eq!(pair.opt_value, 5.0);
        assert_eq!(
            pair.argmax_sets,
            vec![ItemSet::empty(), ItemSet::new([0, 2])]
        );
        assert_eq!(exact_p1_solve(&inst).unwrap().opt_value, 5.0);
    }

    #[test]
    fn orthogonal_three_candidates() {
        let inst = Instance::new(
            3,
            1,
            vec![
                modular(&[5., 0., 0.]),
                modular(&[0., 6., 0.]),
                modular(&[0., 0., 7.]),
            ],
        )
        .unwrap();
        assert_eq!(exact_multi_solve(&inst, 3).unwrap().opt_value, 18.0);
        assert_eq!(exact_multi_solve(&inst, 2).unwrap().opt_value, 13.0);
        assert_eq!(exact_multi_solve(&inst, 1).unwrap().opt_value, 7.0);
    }

    #[test]
    fn budget_is_named() {
        let inst = Instance::new(10, 3, vec![modular(&[1.0; 10])]).unwrap();
        let tight = Budget {
            oracle_tuples: 100,
            ..Budget::default()
        };
        match exact_pair_solve_with(&inst, &tight) {
            Err(Error::Budget { limit, .. }) => assert_eq!(limit, 100),
            other => panic!("expected budget error, got {other:?}"),
        }
        assert!(exact_p1_solve_with(&inst, &tight).unwrap_err().is_budget());
    }
}
