//! Affinity-aware team formation for collaborative task pools.
//!
//! Given a pool of workers (per-domain skills, wages, pairwise distances in
//! `[0,1]`) and a task (skill thresholds, budget, subgroup size cap), this
//! crate forms a cohesive worker group and partitions it into size-bounded
//! subgroups. Two objective families are supported for both the intra-group
//! and the cross-subgroup term: diameter (max pairwise distance) and sum of
//! pairwise distances.
//!
//! The solver stack:
//!
//! - [`grp`] — stage 1: pick one skill/cost-feasible group. Pruned
//!   include/exclude tree search, an instance-optimal solver, and a
//!   2-approximation built on star graphs and binary search over distance
//!   levels (valid whenever the distance matrix is metric).
//! - [`splt`] — stage 2: partition the group into subgroups of size at most
//!   `K`. Center-set enumeration with an exact transportation subproblem
//!   (3-approximation for the balanced optimum), a greedy baseline, and a
//!   brute-force oracle for small groups.
//! - [`exact`] — exhaustive solver for the combined problem at desk scale,
//!   and an LP-format text emitter of the equivalent integer program for
//!   external solvers.
//! - [`sim`] — a deterministic synthetic crowd simulator (Poisson arrivals,
//!   normal skill/wage populations, Euclidean affinities) that benchmarks
//!   the pipelines and emits per-task metrics as CSV.
//!
//! All operations are pure functions over immutable inputs; any number of
//! solves may run concurrently.

pub mod affinity;
pub mod cli;
pub mod error;
pub mod exact;
pub mod grp;
pub mod model;
pub mod objective;
pub mod pipeline;
pub mod sim;
pub mod splt;

pub use error::{Error, Result};
pub use model::{
    check_feasibility, validate_instance, Assembly, DistanceMatrix, DistanceMode,
    FeasibilityReport, Instance, ObjectiveSpec, SolveReport, Task, Violation, Worker, WorkerId,
    FEAS_TOL,
};

#[cfg(test)]
pub(crate) mod fixtures;
