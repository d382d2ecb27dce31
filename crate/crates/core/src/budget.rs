//! Work caps for the exponential routines, plus the counting helpers used to check them.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const DEFAULT_EXACT_SETS: u64 = 2_000_000;
pub const DEFAULT_MAX_FUNCTIONS: usize = 20;
pub const DEFAULT_MULTI_PARTITIONS: u64 = 1_000_000;
pub const DEFAULT_ORACLE_TUPLES: u64 = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Budget {
    /// Candidate sets an exact inner solve may scan, `C(n, k)`.
    pub exact_sets: u64,
    /// Largest `m` for which partitions of the functions are enumerated.
    pub max_functions: usize,
    /// Partitions into at most `l` groups the multi-candidate enumeration may visit.
    pub multi_partitions: u64,
    /// Candidate tuples (or inner-solve set scans) an oracle may enumerate.
    pub oracle_tuples: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            exact_sets: DEFAULT_EXACT_SETS,
            max_functions: DEFAULT_MAX_FUNCTIONS,
            multi_partitions: DEFAULT_MULTI_PARTITIONS,
            oracle_tuples: DEFAULT_ORACLE_TUPLES,
        }
    }
}

pub(crate) fn ensure(what: &'static str, required: u128, limit: u64) -> Result<()> {
    if required > u128::from(limit) {
        Err(Error::Budget {
            what,
            required,
            limit,
        })
    } else {
        Ok(())
    }
}

pub(crate) fn ensure_functions(m: usize, limit: usize) -> Result<()> {
    if m > limit {
        Err(Error::Budget {
            what: "partition enumeration over functions",
            required: m as u128,
            limit: limit as u64,
        })
    } else {
        Ok(())
    }
}

/// `C(n, r)`, saturating at `u128::MAX`.
pub fn binomial(n: u64, r: u64) -> u128 {
    if r > n {
        return 0;
    }
    let r = r.min(n - r);
    let mut acc: u128 = 1;
    for i in 0..r {
        // acc * (n - i) / (i + 1) stays integral at every step.
        acc = match acc.checked_mul(u128::from(n - i)) {
            Some(v) => v / u128::from(i + 1),
            None => return u128::MAX,
        };
    }
    acc
}

/// `Σ_{j ≤ k} C(n, j)`: the number of subsets of size at most `k`.
pub fn subsets_up_to(n: u64, k: u64) -> u128 {
    (0..=k.min(n)).fold(0u128, |acc, j| acc.saturating_add(binomial(n, j)))
}

/// Number of multisets of size `l` drawn from `count` kinds, `C(count + l - 1, l)`.
pub fn multisets(count: u128, l: u64) -> u128 {
    if count == 0 {
        return 0;
    }
    let mut acc: u128 = 1;
    for i in 0..u128::from(l) {
        acc = match acc.checked_mul(count - 1 + i + 1) {
            Some(v) => v / (i + 1),
            None => return u128::MAX,
        };
    }
    acc
}

/// Number of ways to split `m` labelled functions into at most `l` unlabelled groups,
/// `Σ_{j ≤ l} S(m, j)` with `S` the Stirling numbers of the second kind.
pub fn partitions_up_to(m: usize, l: usize) -> u128 {
    // Row-by-row recurrence S(i, j) = j·S(i−1, j) + S(i−1, j−1).
    let mut row = vec![0u128; l + 1];
    row[0] = 1;
    for _ in 0..m {
        for j in (1..=l).rev() {
            row[j] = (j as u128)
                .saturating_mul(row[j])
                .saturating_add(row[j - 1]);
        }
        row[0] = 0;
    }
    row.iter().fold(0u128, |acc, v| acc.saturating_add(*v))
}
