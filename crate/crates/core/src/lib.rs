//! Discrete Lévy walks and Lévy flights on the grid Z².
//!
//! The crate is organised bottom-up:
//!
//! - [`powerlaw`]: the integer jump-length law `P(d = 0) = 1/2`,
//!   `P(d = i) = c_α / i^α`, with exact tail brackets and an exact sampler.
//! - [`lattice`]: Z² geometry and direct-paths (shortest lattice paths that
//!   track the real segment between two nodes).
//! - [`engine`]: the flight and walk processes, hitting times and visit counts.
//! - [`search`]: `k` independent walkers with exponent strategies and the
//!   parallel hitting time.
//! - [`experiments`]: Monte Carlo estimation, sweeps, log-log fits and
//!   reference scaling curves.
//! - [`oracles`]: exact small-scale computations used to check the lattice
//!   and monotonicity properties the processes rely on.
//! - [`cli`]: the `levy` command-line frontend.
//!
//! Runnable walkthroughs live in `examples/`; see the README.

pub mod cli;
pub mod engine;
mod error;
pub mod experiments;
pub mod lattice;
pub mod oracles;
pub mod powerlaw;
pub mod rng;
pub mod search;

pub use engine::{HitOutcome, LevyFlight, LevyWalk, PathMode, VisitCounter};
pub use error::{Error, Result};
pub use lattice::{DirectPath, LatticePoint};
pub use powerlaw::JumpLaw;
pub use search::{ParallelOutcome, SearchConfig, Strategy};
