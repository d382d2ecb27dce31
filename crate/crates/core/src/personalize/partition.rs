use serde::{Deserialize, Serialize};

use crate::budget;
use crate::error::{Error, Result};

/// Disjoint groups of function indices whose union is `0..m`. Groups may be empty.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Partition {
    groups: Vec<Vec<usize>>,
}

impl Partition {
    /// Validates disjointness and exact cover of `0..m`; groups are stored sorted.
    pub fn new(mut groups: Vec<Vec<usize>>, m: usize) -> Result<Self> {
        if groups.len() < 2 {
            return Err(Error::InvalidArgument(format!(
                "a partition needs at least two groups, got {}",
                groups.len()
            )));
        }
        let mut seen = vec![false; m];
        for group in &mut groups {
            group.sort_unstable();
            for &i in group.iter() {
                if i >= m {
                    return Err(Error::FunctionIndex { index: i, m });
                }
                if std::mem::replace(&mut seen[i], true) {
                    return Err(Error::InvalidArgument(format!(
                        "function {i} is assigned to more than one group"
                    )));
                }
            }
        }
        if let Some(i) = seen.iter().position(|s| !s) {
            return Err(Error::InvalidArgument(format!(
                "function {i} is not assigned to any group"
            )));
        }
        Ok(Partition { groups })
    }

    /// Builds the partition where function `i` goes to group `labels[i]`.
    pub(crate) fn from_labels(labels: &[usize], groups: usize) -> Self {
        let mut out = vec![Vec::new(); groups];
        for (i, &g) in labels.iter().enumerate() {
            out[g].push(i);
        }
        Partition { groups: out }
    }

    pub fn groups(&self) -> &[Vec<usize>] {
        &self.groups
    }

    pub fn group(&self, index: usize) -> &[usize] {
        &self.groups[index]
    }

    pub fn num_groups(&self) -> usize {
        self.groups.len()
    }

    pub fn into_groups(self) -> Vec<Vec<usize>> {
        self.groups
    }

    /// Order-insensitive identity, for comparing partitions as unordered collections.
    pub fn canonical(&self) -> Vec<Vec<usize>> {
        let mut groups: Vec<Vec<usize>> = self
            .groups
            .iter()
            .filter(|g| !g.is_empty())
            .cloned()
            .collect();
        groups.sort();
        groups
    }
}

/// The two-group partition encoded by `mask`: function 0 is always in the first group and
/// function `i ≥ 1` joins it when bit `i − 1` of `mask` is set.
pub fn partition_from_mask(m: usize, mask: u64) -> Partition {
    let labels: Vec<usize> = (0..m)
        .map(|i| usize::from(i > 0 && mask >> (i - 1) & 1 == 0))
        .collect();
    Partition::from_labels(&labels, 2)
}

/// Number of unordered two-group partitions of `m` functions.
pub fn pair_partition_count(m: usize) -> u64 {
    1u64 << (m.max(1) - 1)
}

/// All `2^(m−1)` unordered two-group partitions, from `({0}, rest)` to `(all, ∅)`.
///
/// Fixing function 0 in the first group removes the `(A, B)` / `(B, A)` duplicates, which
/// have the same objective.
pub fn enumerate_partitions(m: usize) -> Result<impl Iterator<Item = Partition>> {
    enumerate_partitions_capped(m, budget::DEFAULT_MAX_FUNCTIONS)
}

pub fn enumerate_partitions_capped(
    m: usize,
    max_functions: usize,
) -> Result<impl Iterator<Item = Partition>> {
    if m == 0 {
        return Err(Error::InvalidArgument("m must be positive".into()));
    }
    budget::ensure_functions(m, max_functions)?;
    Ok((0..pair_partition_count(m)).map(move |mask| partition_from_mask(m, mask)))
}

/// All partitions of `0..m` into at most `l` unordered groups, padded with empty groups to
/// exactly `l`. Group 0 always holds function 0; groups are numbered by first member.
///
/// Visiting order: increasing base-`l` number whose digit for function `i` (function
/// `m − 1` most significant, function 0 excluded) is `l − 1 − group(i)`. For `l = 2` this is
/// exactly the order of [`enumerate_partitions`].
pub fn enumerate_multi_partitions(m: usize, l: usize, limit: u64) -> Result<Vec<Partition>> {
    if m == 0 {
        return Err(Error::InvalidArgument("m must be positive".into()));
    }
    if l < 2 {
        return Err(Error::InvalidArgument(format!(
            "at least two candidates are required, got {l}"
        )));
    }
    budget::ensure(
        "multi-candidate partition enumeration",
        budget::partitions_up_to(m, l),
        limit,
    )?;

    let mut all: Vec<Vec<usize>> = Vec::new();
    let mut labels = vec![0usize; m];
    grow_labels(&mut labels, 1, 1, l, &mut all);
    all.sort_by(|a, b| {
        let key = |labels: &Vec<usize>| {
            labels
                .iter()
                .skip(1)
                .rev()
                .map(|g| l - 1 - g)
                .collect::<Vec<_>>()
        };
        key(a).cmp(&key(b))
    });
    Ok(all
        .into_iter()
        .map(|labels| Partition::from_labels(&labels, l))
        .collect())
}

// Restricted growth strings: labels[i] <= 1 + max(labels[..i]), capped at l − 1.
fn grow_labels(
    labels: &mut Vec<usize>,
    pos: usize,
    used: usize,
    l: usize,
    out: &mut Vec<Vec<usize>>,
) {
    if pos == labels.len() {
        out.push(labels.clone());
        return;
    }
    for g in 0..(used + 1).min(l) {
        labels[pos] = g;
        grow_labels(labels, pos + 1, used.max(g + 1), l, out);
    }
}
