//! Expectation guarantee of the sampling solver after `T` rounds.
//!
//! For a slack `ε ≥ 0` with `1/2 + ε·e/π < 1`, the success factor is
//! `γ(T) = 1 − (1/2 + ε·e/π)^T` and the certified factor is
//! `α · max{1/2, γ(T)·(1/2 + ε/√m)}`. The `α/2` floor holds for every single round.

use std::f64::consts::{E, PI};

use serde::Serialize;

use crate::error::{Error, Result};

pub const DEFAULT_EPS: [f64; 3] = [0.0, 0.05, 0.1];

/// Largest slack for which the bound is informative, `π / (2e)`.
pub fn eps_limit() -> f64 {
    PI / (2.0 * E)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GammaBound {
    pub rounds: u64,
    pub eps: f64,
    pub m: usize,
    pub alpha: f64,
    /// `γ(T)`; absent when `ε` is past the limit.
    pub gamma: Option<f64>,
    /// `γ(T)·(1/2 + ε/√m)`, before the `1/2` floor and the `α` scaling.
    pub gamma_term: Option<f64>,
    pub factor: f64,
    /// Set when `ε ≥ π/(2e)` and only the `α/2` floor applies.
    pub vacuous: bool,
}

pub fn gamma_bound(rounds: u64, eps: f64, m: usize, alpha: f64) -> Result<GammaBound> {
    if rounds == 0 {
        return Err(Error::InvalidArgument("T must be at least 1".into()));
    }
    if m == 0 {
        return Err(Error::InvalidArgument("m must be positive".into()));
    }
    if !(eps.is_finite() && eps >= 0.0) {
        return Err(Error::InvalidArgument(format!(
            "ε = {eps} must be a finite non-negative real"
        )));
    }
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(Error::InvalidArgument(format!(
            "α = {alpha} must lie in (0, 1]"
        )));
    }
    let floor = 0.5 * alpha;
    if eps >= eps_limit() {
        return Ok(GammaBound {
            rounds,
            eps,
            m,
            alpha,
            gamma: None,
            gamma_term: None,
            factor: floor,
            vacuous: true,
        });
    }
    let miss = 0.5 + eps * E / PI;
    let exponent = i32::try_from(rounds).unwrap_or(i32::MAX);
    let gamma = 1.0 - miss.powi(exponent);
    let gamma_term = gamma * (0.5 + eps / (m as f64).sqrt());
    Ok(GammaBound {
        rounds,
        eps,
        m,
        alpha,
        gamma: Some(gamma),
        gamma_term: Some(gamma_term),
        factor: alpha * gamma_term.max(0.5),
        vacuous: false,
    })
}
