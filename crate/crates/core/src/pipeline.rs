//! One entry point over every solver: picks the algorithm, runs the staged
//! pipeline where applicable, and packages the result as a [`SolveReport`].
//! Both the CLI and the C bindings go through here.

use std::time::Instant;

use crate::error::Result;
use crate::exact::{exact_overall_with, ExactGuards};
use crate::grp::{apprx_grp, bucketize_wages, opt_grp, random_feasible_group, BucketConfig};
use crate::model::{check_feasibility, Assembly, Instance, ObjectiveSpec, SolveReport};
use crate::objective::{intra_distance, total_objective};
use crate::splt::{greedy_partition, min_star_partition_with, StarCostModel, DEFAULT_CENTER_LIMIT};

/// Solver selection as exposed on the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Algorithm {
    /// Exhaustive solve of the combined problem (desk scale).
    Exact,
    /// Instance-optimal group stage only.
    OptGrp,
    /// 2-approximate group stage only.
    ApprxGrp,
    /// Staged pipeline: approximate group, center-enumeration split.
    GrpSplit,
    /// Baseline pipeline: random feasible group, greedy split.
    Greedy,
    /// Group stage with wage buckets, optimal over the bucketed tree.
    ConsKOpt,
    /// Group stage with wage buckets, 2-approximate.
    ConsKApprx,
}

impl Algorithm {
    pub fn name(&self) -> &'static str {
        match self {
            Algorithm::Exact => "exact",
            Algorithm::OptGrp => "opt-grp",
            Algorithm::ApprxGrp => "apprx-grp",
            Algorithm::GrpSplit => "grp-split",
            Algorithm::Greedy => "greedy",
            Algorithm::ConsKOpt => "cons-k-opt",
            Algorithm::ConsKApprx => "cons-k-apprx",
        }
    }
}

/// Knobs shared by the solvers.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolveOptions {
    pub objective: ObjectiveSpec,
    /// Wage bucket count for the `cons-k` variants.
    pub k_buckets: usize,
    /// Seed for the random baseline.
    pub seed: u64,
    /// Center enumeration cap of the partition stage.
    pub center_limit: u64,
    pub exact_guards: ExactGuards,
}

impl Default for SolveOptions {
    fn default() -> Self {
        Self {
            objective: ObjectiveSpec::default(),
            k_buckets: 15,
            seed: 0,
            center_limit: DEFAULT_CENTER_LIMIT,
            exact_guards: ExactGuards::default(),
        }
    }
}

/// Runs one algorithm against an instance. `Ok(None)` means the instance
/// is infeasible for that algorithm; errors are guard trips or malformed
/// inputs.
pub fn solve(inst: &Instance, algorithm: Algorithm, opts: &SolveOptions) -> Result<Option<SolveReport>> {
    let start = Instant::now();
    let workers = &inst.workers;
    let task = &inst.task;
    let d = &inst.distances;

    let buckets: Option<BucketConfig> = match algorithm {
        Algorithm::ConsKOpt | Algorithm::ConsKApprx => Some(bucketize_wages(workers, opts.k_buckets)?),
        _ => None,
    };

    let report = match algorithm {
        Algorithm::Exact => {
            exact_overall_with(workers, task, d, opts.objective, opts.exact_guards)?
        }
        Algorithm::OptGrp | Algorithm::ConsKOpt => {
            opt_grp(workers, task, d, opts.objective.intra, buckets.as_ref()).map(|result| {
                let assembly = Assembly::single_group(result.group);
                let feasibility = check_feasibility(&assembly, workers, task)
                    .expect("solver ids are in range");
                SolveReport {
                    algorithm: algorithm.name().into(),
                    objective: result.value,
                    assembly,
                    feasibility,
                    alpha_star: None,
                    split_fallback: None,
                    wall_ms: 0.0,
                }
            })
        }
        Algorithm::ApprxGrp | Algorithm::ConsKApprx => {
            apprx_grp(workers, task, d, buckets.as_ref()).map(|result| {
                let diameter = intra_distance(&result.group, d, crate::model::DistanceMode::Dia);
                let assembly = Assembly::single_group(result.group);
                let feasibility = check_feasibility(&assembly, workers, task)
                    .expect("solver ids are in range");
                SolveReport {
                    algorithm: algorithm.name().into(),
                    objective: diameter,
                    assembly,
                    feasibility,
                    alpha_star: Some(result.alpha_star),
                    split_fallback: None,
                    wall_ms: 0.0,
                }
            })
        }
        Algorithm::GrpSplit => apprx_grp(workers, task, d, None).map(|result| {
            let outcome = min_star_partition_with(
                &result.group,
                task.critical_mass,
                d,
                StarCostModel::OwnCenter,
                opts.center_limit,
            );
            let assembly = Assembly::new(outcome.subgroups).expect("partition covers the group");
            let feasibility =
                check_feasibility(&assembly, workers, task).expect("solver ids are in range");
            SolveReport {
                algorithm: algorithm.name().into(),
                objective: total_objective(&assembly, d, opts.objective),
                assembly,
                feasibility,
                alpha_star: Some(result.alpha_star),
                split_fallback: Some(outcome.fallback),
                wall_ms: 0.0,
            }
        }),
        Algorithm::Greedy => random_feasible_group(workers, task, opts.seed).map(|group| {
            let outcome = greedy_partition(&group, task.critical_mass, d, None)
                .expect("default order is valid");
            let assembly = Assembly::new(outcome.subgroups).expect("partition covers the group");
            let feasibility =
                check_feasibility(&assembly, workers, task).expect("solver ids are in range");
            SolveReport {
                algorithm: algorithm.name().into(),
                objective: total_objective(&assembly, d, opts.objective),
                assembly,
                feasibility,
                alpha_star: None,
                split_fallback: None,
                wall_ms: 0.0,
            }
        }),
    };

    Ok(report.map(|mut r| {
        r.wall_ms = start.elapsed().as_secs_f64() * 1e3;
        r
    }))
}
