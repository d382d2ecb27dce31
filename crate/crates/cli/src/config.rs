//! Budget caps: built-in defaults, then environment variables, then a `--budget` TOML file.

use std::path::Path;

use persub_core::Budget;

use crate::error::{CliError, Result};

pub const ENV_EXACT_SETS: &str = "PERSUB_EXACT_SETS";
pub const ENV_MAX_FUNCTIONS: &str = "PERSUB_MAX_FUNCTIONS";
pub const ENV_MULTI_PARTITIONS: &str = "PERSUB_MULTI_PARTITIONS";
pub const ENV_ORACLE_TUPLES: &str = "PERSUB_ORACLE_TUPLES";

fn env_override<T: std::str::FromStr>(name: &str, slot: &mut T) -> Result<()> {
    if let Ok(raw) = std::env::var(name) {
        *slot = raw.trim().parse().map_err(|_| {
            CliError::Usage(format!("{name}={raw:?} is not a non-negative integer"))
        })?;
    }
    Ok(())
}

/// Partial budget as read from a config file; unset keys keep their current value.
#[derive(Debug, Default, serde::Deserialize)]
#[serde(deny_unknown_fields)]
struct BudgetFile {
    exact_sets: Option<u64>,
    max_functions: Option<usize>,
    multi_partitions: Option<u64>,
    oracle_tuples: Option<u64>,
}

pub fn load_budget(file: Option<&Path>) -> Result<Budget> {
    let mut budget = Budget::default();
    env_override(ENV_EXACT_SETS, &mut budget.exact_sets)?;
    env_override(ENV_MAX_FUNCTIONS, &mut budget.max_functions)?;
    env_override(ENV_MULTI_PARTITIONS, &mut budget.multi_partitions)?;
    env_override(ENV_ORACLE_TUPLES, &mut budget.oracle_tuples)?;

    if let Some(path) = file {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Read {
            path: path.to_path_buf(),
            source,
        })?;
        let parsed: BudgetFile = toml::from_str(&text).map_err(|e| CliError::Parse {
            path: path.to_path_buf(),
            message: e.to_string(),
        })?;
        budget.exact_sets = parsed.exact_sets.unwrap_or(budget.exact_sets);
        budget.max_functions = parsed.max_functions.unwrap_or(budget.max_functions);
        budget.multi_partitions = parsed.multi_partitions.unwrap_or(budget.multi_partitions);
        budget.oracle_tuples = parsed.oracle_tuples.unwrap_or(budget.oracle_tuples);
    }
    Ok(budget)
}
