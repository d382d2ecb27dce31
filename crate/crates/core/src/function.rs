//! The four monotone submodular families supported by the solvers.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::set::ItemSet;

/// A normalized, monotone, submodular set function over items `0..n`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum SubmodularFunction {
    /// `f(S) = sum of weights[x] for x in S`.
    Modular { weights: Vec<f64> },
    /// `f(S)` is the total weight of universe elements covered by some item in `S`.
    WeightedCoverage {
        universe_weights: Vec<f64>,
        covers: Vec<Vec<usize>>,
    },
    /// `f(S) = sum over clients r of max_{x in S} similarity[r][x]` (0 for empty `S`).
    FacilityLocation { similarity: Vec<Vec<f64>> },
    /// `f(S) = (sum of weights[x] for x in S)^exponent` with `exponent` in (0, 1].
    ConcaveOverModular { weights: Vec<f64>, exponent: f64 },
}

fn check_reals(what: &str, values: &[f64]) -> Result<()> {
    match values.iter().position(|v| !v.is_finite() || *v < 0.0) {
        Some(i) => Err(Error::InvalidFunction(format!(
            "{what}[{i}] = {} is not a finite non-negative real",
            values[i]
        ))),
        None => Ok(()),
    }
}

impl SubmodularFunction {
    /// Short family tag, as used in the instance file format.
    pub fn family(&self) -> &'static str {
        match self {
            SubmodularFunction::Modular { .. } => "modular",
            SubmodularFunction::WeightedCoverage { .. } => "weighted_coverage",
            SubmodularFunction::FacilityLocation { .. } => "facility_location",
            SubmodularFunction::ConcaveOverModular { .. } => "concave_over_modular",
        }
    }

    /// Number of items the function is defined over.
    pub fn ground_size(&self) -> usize {
        match self {
            SubmodularFunction::Modular { weights } => weights.len(),
            SubmodularFunction::WeightedCoverage { covers, .. } => covers.len(),
            SubmodularFunction::FacilityLocation { similarity } => {
                similarity.first().map_or(0, Vec::len)
            }
            SubmodularFunction::ConcaveOverModular { weights, .. } => weights.len(),
        }
    }

    /// Checks the structural and numeric invariants of the function.
    pub fn validate(&self) -> Result<()> {
        match self {
            SubmodularFunction::Modular { weights } => check_reals("weights", weights),
            SubmodularFunction::WeightedCoverage {
                universe_weights,
                covers,
            } => {
                check_reals("universe_weights", universe_weights)?;
                let universe = universe_weights.len();
                for (item, list) in covers.iter().enumerate() {
                    if let Some(&u) = list.iter().find(|&&u| u >= universe) {
                        return Err(Error::InvalidFunction(format!(
                            "item {item} covers element {u}, universe has {universe} elements"
                        )));
                    }
                }
                Ok(())
            }
            SubmodularFunction::FacilityLocation { similarity } => {
                if similarity.is_empty() {
                    return Err(Error::InvalidFunction(
                        "facility location needs at least one client row".into(),
                    ));
                }
                let cols = similarity[0].len();
                for (r, row) in similarity.iter().enumerate() {
                    if row.len() != cols {
                        return Err(Error::InvalidFunction(format!(
                            "similarity row {r} has {} columns, expected {cols}",
                            row.len()
                        )));
                    }
                    check_reals("similarity row", row)?;
                }
                Ok(())
            }
            SubmodularFunction::ConcaveOverModular { weights, exponent } => {
                check_reals("weights", weights)?;
                if !(exponent.is_finite() && *exponent > 0.0 && *exponent <= 1.0) {
                    return Err(Error::InvalidFunction(format!(
                        "exponent {exponent} must lie in (0, 1]"
                    )));
                }
                Ok(())
            }
        }
    }

    fn check_items(&self, set: &ItemSet) -> Result<()> {
        let n = self.ground_size();
        match set.max_item() {
            Some(index) if index >= n => Err(Error::ItemIndex { index, n }),
            _ => Ok(()),
        }
    }

    /// `f(S)`.
    pub fn evaluate(&self, set: &ItemSet) -> Result<f64> {
        self.check_items(set)?;
        Ok(self.evaluate_unchecked(set))
    }

    /// `f(S)` for a set already known to be in range.
    pub(crate) fn evaluate_unchecked(&self, set: &ItemSet) -> f64 {
        if set.is_empty() {
            return 0.0;
        }
        match self {
            SubmodularFunction::Modular { weights } => set.iter().map(|x| weights[x]).sum(),
            SubmodularFunction::WeightedCoverage {
                universe_weights,
                covers,
            } => {
                let mut covered = vec![false; universe_weights.len()];
                for x in set.iter() {
                    for &u in &covers[x] {
                        covered[u] = true;
                    }
                }
                // Summed in universe order so that a superset never loses mass to rounding.
                covered
                    .iter()
                    .zip(universe_weights)
                    .filter(|(c, _)| **c)
                    .map(|(_, w)| *w)
                    .sum()
            }
            SubmodularFunction::FacilityLocation { similarity } => similarity
                .iter()
                .map(|row| set.iter().map(|x| row[x]).fold(0.0, f64::max))
                .sum(),
            SubmodularFunction::ConcaveOverModular { weights, exponent } => {
                let total: f64 = set.iter().map(|x| weights[x]).sum();
                total.powf(*exponent)
            }
        }
    }

    /// `Δ(x, S) = f(S ∪ {x}) − f(S)` for `x ∉ S`.
    pub fn marginal_gain(&self, item: usize, set: &ItemSet) -> Result<f64> {
        self.check_items(set)?;
        let n = self.ground_size();
        if item >= n {
            return Err(Error::ItemIndex { index: item, n });
        }
        if set.contains(item) {
            return Err(Error::ItemPresent { item });
        }
        Ok(self.marginal_gain_unchecked(item, set))
    }

    pub(crate) fn marginal_gain_unchecked(&self, item: usize, set: &ItemSet) -> f64 {
        self.evaluate_unchecked(&set.with(item)) - self.evaluate_unchecked(set)
    }
}
