//! Exhaustive exact solver for the combined group-and-partition problem at
//! desk scale, and an LP-format emitter of the equivalent integer program
//! for external solvers. The problem is NP-hard, so both carry explicit
//! size guards rather than pretending to scale.

mod ilp;

pub use ilp::emit_ilp_text;

use std::time::Instant;

use crate::error::{Error, Result};
use crate::grp::{grp_candidate_search, SearchMode, SearchOrder};
use crate::model::{
    check_feasibility, Assembly, DistanceMatrix, ObjectiveSpec, SolveReport, Task, Worker,
};
use crate::objective::{intra_distance, partition_inter};
use crate::splt::for_each_capped_partition;

/// Size caps for the exhaustive solver.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExactGuards {
    pub max_workers: usize,
    pub max_group: usize,
}

impl Default for ExactGuards {
    fn default() -> Self {
        Self { max_workers: 12, max_group: 12 }
    }
}

/// Exhaustive solve under the default guards.
pub fn exact_overall(
    workers: &[Worker],
    task: &Task,
    d: &DistanceMatrix,
    spec: ObjectiveSpec,
) -> Result<Option<SolveReport>> {
    exact_overall_with(workers, task, d, spec, ExactGuards::default())
}

/// Enumerates every skill/cost-feasible group (pruned tree search), then
/// every partition of each group into parts within the critical mass, and
/// returns the assembly minimizing the combined objective. Ties break
/// toward the smaller group, then the lexicographically smaller one.
/// `None` means no feasible group exists; exceeding a guard is an error.
pub fn exact_overall_with(
    workers: &[Worker],
    task: &Task,
    d: &DistanceMatrix,
    spec: ObjectiveSpec,
    guards: ExactGuards,
) -> Result<Option<SolveReport>> {
    let start = Instant::now();
    if workers.len() > guards.max_workers {
        return Err(Error::GuardExceeded(format!(
            "exact solver caps at {} workers, got {}",
            guards.max_workers,
            workers.len()
        )));
    }

    let order = SearchOrder::descending_wage(workers);
    let mut groups = grp_candidate_search(workers, task, SearchMode::AllValid, &order, None);
    if groups.is_empty() {
        return Ok(None);
    }
    if let Some(too_big) = groups.iter().find(|g| g.len() > guards.max_group) {
        return Err(Error::GuardExceeded(format!(
            "feasible group of size {} exceeds the partition guard {}",
            too_big.len(),
            guards.max_group
        )));
    }
    groups.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));

    let mut best: Option<(f64, Vec<Vec<usize>>)> = None;
    for group in &groups {
        let intra = intra_distance(group, d, spec.intra);
        // The intra term is fixed per group, so only the inter term needs
        // the partition sweep.
        let mut best_inter: Option<(f64, Vec<Vec<usize>>)> = None;
        if group.len() <= task.critical_mass {
            let parts = if group.is_empty() { Vec::new() } else { vec![group.clone()] };
            best_inter = Some((0.0, parts));
        } else {
            for_each_capped_partition(group, task.critical_mass, &mut |parts| {
                let value = partition_inter(parts, d, spec.inter);
                if best_inter.as_ref().is_none_or(|(b, _)| value < *b) {
                    best_inter = Some((value, parts.to_vec()));
                }
            });
        }
        let (inter, parts) = best_inter.expect("every group has at least one partition");
        let total = intra + inter;
        if best.as_ref().is_none_or(|(b, _)| total < *b) {
            best = Some((total, parts));
        }
    }

    let (objective, parts) = best.expect("at least one feasible group was enumerated");
    let assembly = Assembly::new(parts).expect("enumerated partitions are disjoint");
    let feasibility = check_feasibility(&assembly, workers, task)?;
    Ok(Some(SolveReport {
        algorithm: "exact".into(),
        assembly,
        objective,
        feasibility,
        alpha_star: None,
        split_fallback: None,
        wall_ms: start.elapsed().as_secs_f64() * 1e3,
    }))
}
