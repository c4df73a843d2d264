//! Objective evaluation: intra-group and cross-subgroup distance in both
//! aggregation modes, and the combined value for an assembly.

use crate::error::{Error, Result};
use crate::model::{Assembly, DistanceMatrix, DistanceMode, ObjectiveSpec, WorkerId};

/// Intra-group distance over unordered member pairs: the largest pair in
/// `Dia` mode, the sum of all pairs in `Sum` mode. Groups with at most one
/// member score 0.
pub fn intra_distance(group: &[WorkerId], d: &DistanceMatrix, mode: DistanceMode) -> f64 {
    let mut acc = 0.0;
    for (idx, &i) in group.iter().enumerate() {
        for &j in &group[idx + 1..] {
            let dist = d.get(i, j);
            match mode {
                DistanceMode::Dia => acc = f64::max(acc, dist),
                DistanceMode::Sum => acc += dist,
            }
        }
    }
    acc
}

/// Distance across two disjoint subgroups over all cross pairs. Overlapping
/// inputs are an error.
pub fn inter_distance(
    g1: &[WorkerId],
    g2: &[WorkerId],
    d: &DistanceMatrix,
    mode: DistanceMode,
) -> Result<f64> {
    if g1.iter().any(|id| g2.contains(id)) {
        return Err(Error::InvalidInput("inter_distance on overlapping subgroups".into()));
    }
    Ok(cross_pairs(g1, g2, d, mode))
}

fn cross_pairs(g1: &[WorkerId], g2: &[WorkerId], d: &DistanceMatrix, mode: DistanceMode) -> f64 {
    let mut acc = 0.0;
    for &i in g1 {
        for &j in g2 {
            let dist = d.get(i, j);
            match mode {
                DistanceMode::Dia => acc = f64::max(acc, dist),
                DistanceMode::Sum => acc += dist,
            }
        }
    }
    acc
}

/// Aggregated inter-distance over all subgroup pairs: summed in `Sum` mode,
/// the maximum cross pair in `Dia` mode. A single subgroup (or none) scores
/// 0 — there is nothing across.
pub fn partition_inter(subgroups: &[Vec<WorkerId>], d: &DistanceMatrix, mode: DistanceMode) -> f64 {
    let mut acc = 0.0;
    for (idx, g1) in subgroups.iter().enumerate() {
        for g2 in &subgroups[idx + 1..] {
            let pair = cross_pairs(g1, g2, d, mode);
            match mode {
                DistanceMode::Dia => acc = f64::max(acc, pair),
                DistanceMode::Sum => acc += pair,
            }
        }
    }
    acc
}

/// Combined objective of an assembly: the intra term over the whole group
/// plus the inter term over its partition, each under its own mode. The two
/// terms stay separate even in (Dia, Dia) mode.
pub fn total_objective(assembly: &Assembly, d: &DistanceMatrix, spec: ObjectiveSpec) -> f64 {
    intra_distance(assembly.group(), d, spec.intra)
        + partition_inter(assembly.subgroups(), d, spec.inter)
}
