//! Inner solvers for `max_{|S| ≤ k} Σ_{i ∈ A} f_i(S)`.
//!
//! [`greedy_max`] is the accelerated (lazy) greedy. Its contract is output equality with
//! [`naive_greedy_max`]: at every step the item with the largest total marginal gain is added,
//! ties going to the lowest item index. [`exact_max`] scans every set of size `min(k, n)` and
//! is the ground truth at desk scale.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::budget::{self, DEFAULT_EXACT_SETS};
use crate::error::Result;
use crate::instance::Instance;
use crate::set::ItemSet;

/// The `1 − 1/e` guarantee of greedy on monotone submodular sums.
pub fn greedy_alpha() -> f64 {
    1.0 - (-1.0f64).exp()
}

/// Anything that approximately solves the group subproblem with a certified factor.
pub trait GroupMaximizer: Sync {
    /// The approximation factor the solver certifies, in (0, 1].
    fn alpha(&self) -> f64;

    fn maximize(&self, inst: &Instance, group: &[usize]) -> Result<ItemSet>;
}

/// The built-in inner solvers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum InnerSolver {
    Greedy,
    /// Exhaustive search, allowed while `C(n, k)` stays within `budget`.
    Exact {
        budget: u64,
    },
}

impl InnerSolver {
    pub fn exact() -> Self {
        InnerSolver::Exact {
            budget: DEFAULT_EXACT_SETS,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            InnerSolver::Greedy => "greedy",
            InnerSolver::Exact { .. } => "exact",
        }
    }

    pub fn reported_alpha(&self) -> f64 {
        match self {
            InnerSolver::Greedy => greedy_alpha(),
            InnerSolver::Exact { .. } => 1.0,
        }
    }
}

impl GroupMaximizer for InnerSolver {
    fn alpha(&self) -> f64 {
        self.reported_alpha()
    }

    fn maximize(&self, inst: &Instance, group: &[usize]) -> Result<ItemSet> {
        match *self {
            InnerSolver::Greedy => greedy_max(inst, group, inst.k()),
            InnerSolver::Exact { budget } => exact_max(inst, group, inst.k(), budget),
        }
    }
}

#[derive(Debug, Clone, Copy)]
struct Candidate {
    gain: f64,
    item: usize,
    /// Selection round in which `gain` was computed.
    round: usize,
}

impl PartialEq for Candidate {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Candidate {}

impl PartialOrd for Candidate {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Candidate {
    // Max-heap order: larger gain first, then lower item index.
    fn cmp(&self, other: &Self) -> Ordering {
        self.gain
            .total_cmp(&other.gain)
            .then_with(|| other.item.cmp(&self.item))
    }
}

/// Relative slack within which a stale bound is still re-checked. Floating-point sums can
/// break diminishing returns by a few ulps; anything within this band is refreshed so the
/// choice among near-ties is made on exact current gains.
const STALE_SLACK: f64 = 1e-9;

/// Lazy greedy for the functions in `group` with at most `k` items (clamped to `n`).
pub fn greedy_max(inst: &Instance, group: &[usize], k: usize) -> Result<ItemSet> {
    inst.check_group(group)?;
    let k = k.min(inst.n());
    let mut selected = ItemSet::empty();
    let mut value = 0.0f64;
    let mut heap: BinaryHeap<Candidate> = (0..inst.n())
        .map(|item| Candidate {
            gain: inst.group_gain(group, item, &selected),
            item,
            round: 0,
        })
        .collect();

    for round in 0..k {
        let leader = loop {
            let mut top = heap.pop().expect("heap holds every unselected item");
            if top.round == round {
                break top;
            }
            top.gain = inst.group_gain(group, top.item, &selected);
            top.round = round;
            heap.push(top);
        };

        let threshold = leader.gain - STALE_SLACK * (1.0 + leader.gain.abs() + value.abs());
        let mut pool = vec![leader];
        while heap.peek().is_some_and(|c| c.gain >= threshold) {
            let mut c = heap.pop().unwrap();
            if c.round != round {
                c.gain = inst.group_gain(group, c.item, &selected);
                c.round = round;
            }
            pool.push(c);
        }

        let (pos, winner) = pool
            .iter()
            .copied()
            .enumerate()
            .max_by(|a, b| a.1.cmp(&b.1))
            .unwrap();
        pool.swap_remove(pos);
        heap.extend(pool);
        selected.insert(winner.item);
        value += winner.gain;
    }
    Ok(selected)
}

/// Plain `O(nk)` greedy, the reference the lazy variant must agree with.
pub fn naive_greedy_max(inst: &Instance, group: &[usize], k: usize) -> Result<ItemSet> {
    inst.check_group(group)?;
    let k = k.min(inst.n());
    let mut selected = ItemSet::empty();
    for _ in 0..k {
        let mut best: Option<(usize, f64)> = None;
        for item in (0..inst.n()).filter(|x| !selected.contains(*x)) {
            let gain = inst.group_gain(group, item, &selected);
            if best.is_none_or(|(_, g)| gain > g) {
                best = Some((item, gain));
            }
        }
        selected.insert(best.expect("k <= n leaves a candidate").0);
    }
    Ok(selected)
}

/// Exact maximizer over sets of size `min(k, n)`, returning the lexicographically smallest
/// optimal item list. For monotone functions this is also optimal over sets of size `≤ k`.
pub fn exact_max(inst: &Instance, group: &[usize], k: usize, budget: u64) -> Result<ItemSet> {
    inst.check_group(group)?;
    let size = k.min(inst.n());
    budget::ensure(
        "exact inner solve",
        budget::binomial(inst.n() as u64, size as u64),
        budget,
    )?;
    let mut best: Option<(ItemSet, f64)> = None;
    for items in (0..inst.n()).combinations(size) {
        let set = ItemSet::new(items);
        let value = inst.group_value(group, &set);
        if best.as_ref().is_none_or(|(_, v)| value > *v) {
            best = Some((set, value));
        }
    }
    Ok(best.expect("at least one combination exists").0)
}
