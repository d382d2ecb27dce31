//! Personalized submodular maximization with several candidate solutions.
//!
//! Given monotone submodular functions `f_1, …, f_m` over items `0..n` and a bound `k`,
//! choose candidate sets `S_1, …, S_l` (each of size at most `k`) maximizing
//! `Σ_i max_j f_i(S_j)`: every user takes whichever candidate serves them best.
//!
//! - [`function`], [`instance`]: function families and objective evaluation.
//! - [`maximize`]: inner solvers for a single group of functions (lazy greedy, exhaustive).
//! - [`personalize`]: the partition enumeration and partition sampling solvers.
//! - [`oracle`]: brute-force optima used as ground truth.
//! - [`generate`]: seeded random instances.

pub mod budget;
pub mod error;
pub mod function;
pub mod generate;
pub mod instance;
pub mod maximize;
pub mod oracle;
pub mod personalize;
pub mod set;

pub use budget::Budget;
pub use error::{Error, Result};
pub use function::SubmodularFunction;
pub use instance::Instance;
pub use maximize::{greedy_alpha, GroupMaximizer, InnerSolver};
pub use oracle::OracleResult;
pub use personalize::{Partition, SolveOptions, SolveReport};
pub use set::ItemSet;
