use serde::Serialize;

use crate::error::{Error, Result};
use crate::function::SubmodularFunction;
use crate::set::ItemSet;

/// A ground set of `n` items, a cardinality bound `k`, and the user-specific functions.
///
/// Functions and items are identified by position. A requested bound larger than `n`
/// is clamped to `n`; [`Instance::k_clamped`] reports whether that happened.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Instance {
    n: usize,
    k: usize,
    requested_k: usize,
    functions: Vec<SubmodularFunction>,
}

impl Instance {
    pub fn new(n: usize, k: usize, functions: Vec<SubmodularFunction>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument(
                "ground set must be non-empty".into(),
            ));
        }
        if k == 0 {
            return Err(Error::InvalidArgument(
                "cardinality bound must be positive".into(),
            ));
        }
        if functions.is_empty() {
            return Err(Error::InvalidArgument(
                "at least one function is required".into(),
            ));
        }
        for (i, f) in functions.iter().enumerate() {
            f.validate()
                .map_err(|e| Error::InvalidFunction(format!("function {i}: {e}")))?;
            if f.ground_size() != n {
                return Err(Error::InvalidFunction(format!(
                    "function {i} ({}) is defined over {} items, instance has {n}",
                    f.family(),
                    f.ground_size()
                )));
            }
        }
        Ok(Instance {
            n,
            k: k.min(n),
            requested_k: k,
            functions,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Effective cardinality bound, at most `n`.
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn requested_k(&self) -> usize {
        self.requested_k
    }

    pub fn k_clamped(&self) -> bool {
        self.requested_k > self.k
    }

    pub fn m(&self) -> usize {
        self.functions.len()
    }

    pub fn functions(&self) -> &[SubmodularFunction] {
        &self.functions
    }

    pub fn function(&self, index: usize) -> Result<&SubmodularFunction> {
        self.functions
            .get(index)
            .ok_or(Error::FunctionIndex { index, m: self.m() })
    }

    /// Indices `0..m`.
    pub fn all_functions(&self) -> Vec<usize> {
        (0..self.m()).collect()
    }

    pub fn check_set(&self, set: &ItemSet) -> Result<()> {
        match set.max_item() {
            Some(index) if index >= self.n => Err(Error::ItemIndex { index, n: self.n }),
            _ => Ok(()),
        }
    }

    pub fn check_feasible(&self, set: &ItemSet) -> Result<()> {
        self.check_set(set)?;
        if set.len() > self.k {
            return Err(Error::Cardinality {
                size: set.len(),
                k: self.k,
            });
        }
        Ok(())
    }

    /// Rejects out-of-range or repeated function indices.
    pub fn check_group(&self, group: &[usize]) -> Result<()> {
        let mut seen = vec![false; self.m()];
        for &index in group {
            if index >= self.m() {
                return Err(Error::FunctionIndex { index, m: self.m() });
            }
            if std::mem::replace(&mut seen[index], true) {
                return Err(Error::InvalidArgument(format!(
                    "function {index} appears twice in a group"
                )));
            }
        }
        Ok(())
    }

    /// `Σ_{i ∈ group} f_i(S)`; zero for an empty group.
    pub fn group_evaluate(&self, group: &[usize], set: &ItemSet) -> Result<f64> {
        self.check_group(group)?;
        self.check_set(set)?;
        Ok(self.group_value(group, set))
    }

    pub(crate) fn group_value(&self, group: &[usize], set: &ItemSet) -> f64 {
        group
            .iter()
            .map(|&i| self.functions[i].evaluate_unchecked(set))
            .sum()
    }

    pub(crate) fn group_gain(&self, group: &[usize], item: usize, set: &ItemSet) -> f64 {
        group
            .iter()
            .map(|&i| self.functions[i].marginal_gain_unchecked(item, set))
            .sum()
    }

    /// `Σ_i f_i(S)` over every function.
    pub fn total_value(&self, set: &ItemSet) -> Result<f64> {
        self.check_set(set)?;
        Ok(self
            .functions
            .iter()
            .map(|f| f.evaluate_unchecked(set))
            .sum())
    }

    /// The personalized objective `Σ_i max{f_i(S1), f_i(S2)}`.
    pub fn pair_objective(&self, first: &ItemSet, second: &ItemSet) -> Result<f64> {
        self.multi_objective(&[first.clone(), second.clone()])
    }

    /// `Σ_i max_j f_i(S_j)`: every user picks the best of the candidates.
    pub fn multi_objective(&self, sets: &[ItemSet]) -> Result<f64> {
        if sets.is_empty() {
            return Err(Error::InvalidArgument(
                "at least one candidate set is required".into(),
            ));
        }
        for set in sets {
            self.check_feasible(set)?;
        }
        Ok(self.multi_value(sets))
    }

    pub(crate) fn multi_value(&self, sets: &[ItemSet]) -> f64 {
        self.functions
            .iter()
            .map(|f| {
                sets.iter()
                    .map(|s| f.evaluate_unchecked(s))
                    .fold(f64::NEG_INFINITY, f64::max)
            })
            .sum()
    }
}
