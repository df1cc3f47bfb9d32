//! Qualitative (almost-sure) analysis of MDPs with Büchi objectives.
//!
//! The crate bundles:
//!
//! - the classical iterative algorithm (graph reachability + random
//!   attractor) and a brute-force strategy-enumeration oracle ([`solve`],
//!   [`oracle`]);
//! - random MDP generators for the constant out-degree and directed G(n,p)
//!   models ([`models`]);
//! - exact rational evaluation of the reachability recurrences and tiny-scale
//!   enumeration oracles ([`exact`]);
//! - machine-checkable certificates for the analytic bounds ([`bounds`]);
//! - a seeded, parallel Monte Carlo experiment harness ([`mc`]).

pub mod bounds;
pub mod error;
pub mod exact;
pub mod mc;
pub mod mdp;
pub mod models;
pub mod oracle;
pub mod solve;

pub use error::{Error, Result};
pub use mdp::{gen_worst_case, Mdp, VertexKind};
pub use oracle::{bsccs, oracle_almost_sure};
pub use solve::{classical_buchi, random_attractor, reverse_reachable, SolveResult};
