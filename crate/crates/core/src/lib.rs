//! Desk-rejection under per-author submission limits.
//!
//! Given which authors wrote which papers and a limit `b` on papers per
//! author, decide which papers to desk-reject. This crate provides the
//! policies conferences use today, an LP-relaxation-and-rounding policy that
//! keeps more papers, and an exact solver for small instances.

pub mod error;
pub mod fixtures;
pub mod lp;
pub mod model;
pub mod opt_reject;
pub mod oracle;
pub mod policy;
pub mod reduce;

pub use error::{ModelError, SolverError};
pub use lp::{build_lp, solve_lp, FractionalSolution, LpModel, SolveOptions};
pub use model::{
    build_instance, check_feasible, compute_stats, AuthorId, AuthorshipInstance, DecisionVector,
    InstanceStats, PaperId,
};
pub use opt_reject::{max_rounding, opt_reject};
pub use oracle::{brute_force_optimum, exact_optimum, ExactSolution, OracleError};
pub use policy::{all_reject, backward_reject, forward_reject, PolicyKind};
pub use reduce::{lift_decision, reduce_instance, ReducedInstance};
