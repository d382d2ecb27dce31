//! Seeded random instances for experiments and tests.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::function::SubmodularFunction;
use crate::instance::Instance;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Modular,
    Coverage,
    Facility,
    Concave,
    /// Function `i` uses the `i mod 4`-th of modular, coverage, facility, concave.
    Mixed,
}

impl Family {
    pub const ALL: [Family; 5] = [
        Family::Modular,
        Family::Coverage,
        Family::Facility,
        Family::Concave,
        Family::Mixed,
    ];

    const CYCLE: [Family; 4] = [
        Family::Modular,
        Family::Coverage,
        Family::Facility,
        Family::Concave,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Modular => "modular",
            Family::Coverage => "coverage",
            Family::Facility => "facility",
            Family::Concave => "concave",
            Family::Mixed => "mixed",
        }
    }
}

impl std::str::FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown family {s:?}")))
    }
}

/// Shape parameters of the generators. `None` sizes default to `2n` universe elements and
/// `n` clients.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GenParams {
    /// Probability that an item covers a given universe element.
    pub density: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub universe: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub clients: Option<usize>,
    pub exponent: f64,
}

impl Default for GenParams {
    fn default() -> Self {
        GenParams {
            density: 0.3,
            universe: None,
            clients: None,
            exponent: 0.5,
        }
    }
}

impl GenParams {
    pub fn universe_size(&self, n: usize) -> usize {
        self.universe.unwrap_or(2 * n)
    }

    pub fn client_count(&self, n: usize) -> usize {
        self.clients.unwrap_or(n)
    }

    fn validate(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.density) {
            return Err(Error::InvalidArgument(format!(
                "density {} must lie in [0, 1]",
                self.density
            )));
        }
        if !(self.exponent > 0.0 && self.exponent <= 1.0) {
            return Err(Error::InvalidArgument(format!(
                "exponent {} must lie in (0, 1]",
                self.exponent
            )));
        }
        if self.universe == Some(0) || self.clients == Some(0) {
            return Err(Error::InvalidArgument(
                "universe and client counts must be positive".into(),
            ));
        }
        Ok(())
    }
}

fn unit_weights(rng: &mut ChaCha8Rng, count: usize) -> Vec<f64> {
    (0..count).map(|_| rng.gen::<f64>()).collect()
}

fn draw(family: Family, n: usize, params: &GenParams, rng: &mut ChaCha8Rng) -> SubmodularFunction {
    match family {
        Family::Modular => SubmodularFunction::Modular {
            weights: unit_weights(rng, n),
        },
        Family::Coverage => {
            let universe = params.universe_size(n);
            // Weights in (0, 1] so every covered element counts.
            let universe_weights = (0..universe).map(|_| 1.0 - rng.gen::<f64>()).collect();
            let covers = (0..n)
                .map(|_| {
                    (0..universe)
                        .filter(|_| rng.gen_bool(params.density))
                        .collect()
                })
                .collect();
            SubmodularFunction::WeightedCoverage {
                universe_weights,
                covers,
            }
        }
        Family::Facility => SubmodularFunction::FacilityLocation {
            similarity: (0..params.client_count(n))
                .map(|_| unit_weights(rng, n))
                .collect(),
        },
        Family::Concave => SubmodularFunction::ConcaveOverModular {
            weights: unit_weights(rng, n),
            exponent: params.exponent,
        },
        Family::Mixed => unreachable!("mixed is resolved per function"),
    }
}

/// Deterministic instance from `seed` (ChaCha8 stream, functions drawn in index order).
pub fn generate(
    family: Family,
    n: usize,
    k: usize,
    m: usize,
    seed: u64,
    params: &GenParams,
) -> Result<Instance> {
    params.validate()?;
    if n == 0 || k == 0 || m == 0 {
        return Err(Error::InvalidArgument("n, k and m must be positive".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let functions = (0..m)
        .map(|i| {
            let f = match family {
                Family::Mixed => Family::CYCLE[i % Family::CYCLE.len()],
                other => other,
            };
            draw(f, n, params, &mut rng)
        })
        .collect();
    Instance::new(n, k, functions)
}
