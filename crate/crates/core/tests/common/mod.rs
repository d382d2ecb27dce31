#![allow(dead_code)]

use persub_core::generate::{generate, Family, GenParams};
use persub_core::{Instance, ItemSet, SubmodularFunction};

pub const TOL: f64 = 1e-9;

pub fn modular(w: &[f64]) -> SubmodularFunction {
    SubmodularFunction::Modular {
        weights: w.to_vec(),
    }
}

pub fn separating() -> Instance {
    Instance::new(3, 1, vec![modular(&[5., 0., 0.]), modular(&[0., 0., 7.])]).unwrap()
}

pub fn orthogonal() -> Instance {
    Instance::new(
        3,
        1,
        vec![
            modular(&[5., 0., 0.]),
            modular(&[0., 6., 0.]),
            modular(&[0., 0., 7.]),
        ],
    )
    .unwrap()
}

pub fn fixture(family: Family, n: usize, k: usize, m: usize, seed: u64) -> Instance {
    generate(family, n, k, m, seed, &GenParams::default()).unwrap()
}

/// Direct textbook evaluation, written independently of the library's evaluator.
pub fn brute_value(f: &SubmodularFunction, set: &[usize]) -> f64 {
    match f {
        SubmodularFunction::Modular { weights } => set.iter().map(|&x| weights[x]).sum(),
        SubmodularFunction::WeightedCoverage {
            universe_weights,
            covers,
        } => (0..universe_weights.len())
            .filter(|u| set.iter().any(|&x| covers[x].contains(u)))
            .map(|u| universe_weights[u])
            .sum(),
        SubmodularFunction::FacilityLocation { similarity } => similarity
            .iter()
            .map(|row| set.iter().map(|&x| row[x]).fold(0.0, f64::max))
            .sum(),
        SubmodularFunction::ConcaveOverModular { weights, exponent } => {
            set.iter().map(|&x| weights[x]).sum::<f64>().powf(*exponent)
        }
    }
}

/// `Σ_i max_j f_i(S_j)` from [`brute_value`].
pub fn brute_multi(inst: &Instance, sets: &[ItemSet]) -> f64 {
    inst.functions()
        .iter()
        .map(|f| {
            sets.iter()
                .map(|s| brute_value(f, s.items()))
                .fold(f64::NEG_INFINITY, f64::max)
        })
        .sum()
}

/// All subsets of `0..n` with exactly `size` items, by bitmask.
pub fn subsets_of_size(n: usize, size: usize) -> Vec<Vec<usize>> {
    (0u32..1 << n)
        .filter(|mask| mask.count_ones() as usize == size)
        .map(|mask| (0..n).filter(|i| mask >> i & 1 == 1).collect())
        .collect()
}

/// Optimum of `Σ_{i ∈ group} f_i(S)` over `|S| ≤ k`, by bitmask enumeration.
pub fn brute_group_opt(inst: &Instance, group: &[usize], k: usize) -> f64 {
    (0..=k)
        .flat_map(|size| subsets_of_size(inst.n(), size))
        .map(|s| {
            group
                .iter()
                .map(|&i| brute_value(&inst.functions()[i], &s))
                .sum::<f64>()
        })
        .fold(0.0, f64::max)
}
