//! Stage 2 (`Splt`): partition a formed group into subgroups of size at
//! most `K` minimizing the aggregated cross-subgroup distance.
//!
//! The main solver is [`min_star_partition`]: subgroup sizes are fixed to
//! the balanced layout (`K` everywhere except the last subgroup), every
//! choice of subgroup centers is enumerated, and for each choice the
//! remaining workers are placed by an exact transportation solve against
//! star-shaped costs. The candidate partition with the least true
//! objective wins — a 3-approximation of the balanced optimum on metric
//! inputs. A greedy splitter serves as baseline and as fallback when the
//! center enumeration would be too large, and a brute-force oracle covers
//! small groups exactly.

mod transport;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::model::{DistanceMatrix, DistanceMode, WorkerId};
use crate::objective::partition_inter;

/// Center enumeration cap before [`min_star_partition`] falls back to the
/// greedy splitter.
pub const DEFAULT_CENTER_LIMIT: u64 = 1_000_000;

/// Guard for the brute-force oracle.
pub const BRUTE_FORCE_MAX: usize = 12;

/// Subgroup sizes of the balanced layout: `ceil(n' / k)` subgroups, `k`
/// workers in each except the last, which takes the remainder.
pub fn balanced_sizes(n_prime: usize, k: usize) -> Vec<usize> {
    assert!(k >= 1, "critical mass must be at least 1");
    if n_prime == 0 {
        return Vec::new();
    }
    let x = n_prime.div_ceil(k);
    let mut sizes = vec![k; x - 1];
    sizes.push(n_prime - k * (x - 1));
    sizes
}

/// A choice of subgroup centers together with the size each subgroup must
/// reach; center `j` belongs to subgroup `j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CenterSet {
    pub centers: Vec<WorkerId>,
    pub sizes: Vec<usize>,
}

impl CenterSet {
    pub fn new(centers: Vec<WorkerId>, sizes: Vec<usize>) -> Result<Self> {
        if centers.len() != sizes.len() {
            return Err(Error::InvalidInput("one size per center required".into()));
        }
        if sizes.contains(&0) {
            return Err(Error::InvalidInput("subgroup sizes must be positive".into()));
        }
        let mut seen = std::collections::BTreeSet::new();
        if !centers.iter().all(|&c| seen.insert(c)) {
            return Err(Error::InvalidInput("centers must be distinct".into()));
        }
        Ok(Self { centers, sizes })
    }

    pub fn group_size(&self) -> usize {
        self.sizes.iter().sum()
    }
}

/// Which surrogate cost the center-based placement minimizes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum StarCostModel {
    /// Placing `v` into subgroup `j` costs `(n' - k_j) * dist(center_j, v)`:
    /// each subgroup's own star, weighted by the workers outside it. This is
    /// the reading consistent with the triangle-inequality bound and it is
    /// the default.
    #[default]
    OwnCenter,
    /// Placing `v` into subgroup `j` charges every other center:
    /// `sum_{i != j} k_i * dist(center_i, v)`. Kept for experimentation.
    LiteralUnion,
}

/// The capacity-constrained assignment subproblem: one row per non-center
/// worker, one column per subgroup, `costs[row][col]` the placement cost,
/// and `capacities[col]` the seats left next to each center.
#[derive(Debug, Clone, PartialEq)]
pub struct TransportationInstance {
    pub costs: Vec<Vec<f64>>,
    pub capacities: Vec<usize>,
}

/// Star surrogate cost of a concrete partition under the default
/// own-center model:
/// `sum_j (n' - k_j) * sum_{v in G_j, v != c_j} dist(c_j, v)`
/// plus the center-center constant `sum_{i<j} k_i k_j dist(c_i, c_j)`.
pub fn star_cost(cs: &CenterSet, partition: &[Vec<WorkerId>], d: &DistanceMatrix) -> Result<f64> {
    star_cost_with(cs, partition, d, StarCostModel::OwnCenter)
}

/// [`star_cost`] under a chosen cost model.
pub fn star_cost_with(
    cs: &CenterSet,
    partition: &[Vec<WorkerId>],
    d: &DistanceMatrix,
    model: StarCostModel,
) -> Result<f64> {
    if partition.len() != cs.centers.len() {
        return Err(Error::InvalidInput("partition and center set sizes differ".into()));
    }
    let mut seen = std::collections::BTreeSet::new();
    for (j, part) in partition.iter().enumerate() {
        if part.len() != cs.sizes[j] {
            return Err(Error::InvalidInput(format!(
                "subgroup {j} has {} members, expected {}",
                part.len(),
                cs.sizes[j]
            )));
        }
        if !part.contains(&cs.centers[j]) {
            return Err(Error::InvalidInput(format!("center of subgroup {j} is not a member")));
        }
        for &v in part {
            if !seen.insert(v) {
                return Err(Error::InvalidInput(format!("worker {v} in more than one subgroup")));
            }
        }
    }

    let n_prime = cs.group_size() as f64;
    let mut cost = 0.0;
    for (j, part) in partition.iter().enumerate() {
        for &v in part.iter().filter(|&&v| v != cs.centers[j]) {
            cost += match model {
                StarCostModel::OwnCenter => (n_prime - cs.sizes[j] as f64) * d.get(cs.centers[j], v),
                StarCostModel::LiteralUnion => cs
                    .centers
                    .iter()
                    .zip(cs.sizes.iter())
                    .enumerate()
                    .filter(|(i, _)| *i != j)
                    .map(|(_, (&c, &k))| k as f64 * d.get(c, v))
                    .sum(),
            };
        }
    }
    for i in 0..cs.centers.len() {
        for j in (i + 1)..cs.centers.len() {
            cost += (cs.sizes[i] * cs.sizes[j]) as f64 * d.get(cs.centers[i], cs.centers[j]);
        }
    }
    Ok(cost)
}

/// Builds the transportation instance for a center set under the default
/// own-center cost model: `costs[v][j] = (n' - k_j) * dist(c_j, v)` and
/// `capacities[j] = k_j - 1`.
pub fn build_transportation(
    cs: &CenterSet,
    non_centers: &[WorkerId],
    d: &DistanceMatrix,
) -> TransportationInstance {
    build_transportation_with(cs, non_centers, d, StarCostModel::OwnCenter)
}

/// [`build_transportation`] under a chosen cost model.
pub fn build_transportation_with(
    cs: &CenterSet,
    non_centers: &[WorkerId],
    d: &DistanceMatrix,
    model: StarCostModel,
) -> TransportationInstance {
    let n_prime = cs.group_size() as f64;
    let costs = non_centers
        .iter()
        .map(|&v| {
            (0..cs.centers.len())
                .map(|j| match model {
                    StarCostModel::OwnCenter => {
                        (n_prime - cs.sizes[j] as f64) * d.get(cs.centers[j], v)
                    }
                    StarCostModel::LiteralUnion => cs
                        .centers
                        .iter()
                        .zip(cs.sizes.iter())
                        .enumerate()
                        .filter(|(i, _)| *i != j)
                        .map(|(_, (&c, &k))| k as f64 * d.get(c, v))
                        .sum(),
                })
                .collect()
        })
        .collect();
    let capacities = cs.sizes.iter().map(|&k| k - 1).collect();
    TransportationInstance { costs, capacities }
}

/// Exact minimum-cost assignment of rows to columns under the capacity
/// constraints. Deterministic: rows in input order, shortest augmenting
/// paths explored in fixed arc order.
pub fn solve_transportation(inst: &TransportationInstance) -> Result<Vec<usize>> {
    transport::solve(inst)
}

/// A partition of a group together with its aggregated cross-subgroup
/// distance; `fallback` marks results produced by the greedy splitter after
/// a guard trip.
#[derive(Debug, Clone, PartialEq)]
pub struct PartitionOutcome {
    pub subgroups: Vec<Vec<WorkerId>>,
    pub inter: f64,
    pub fallback: bool,
}

impl PartitionOutcome {
    fn single(group: &[WorkerId]) -> Self {
        let mut ids = group.to_vec();
        ids.sort_unstable();
        let subgroups = if ids.is_empty() { Vec::new() } else { vec![ids] };
        Self { subgroups, inter: 0.0, fallback: false }
    }
}

/// Center-enumeration partitioner (3-approximation of the balanced optimum
/// on metric inputs). Enumerates every choice of subgroup centers with the
/// balanced sizes, places the remaining workers per center set by an exact
/// transportation solve, evaluates the true objective of each candidate
/// partition, and returns the best. Groups within the critical mass stay
/// whole at objective 0. When the number of center configurations exceeds
/// [`DEFAULT_CENTER_LIMIT`] the solver falls back to [`greedy_partition`]
/// and flags it.
pub fn min_star_partition(group: &[WorkerId], k: usize, d: &DistanceMatrix) -> PartitionOutcome {
    min_star_partition_with(group, k, d, StarCostModel::OwnCenter, DEFAULT_CENTER_LIMIT)
}

/// [`min_star_partition`] with an explicit cost model and center guard.
pub fn min_star_partition_with(
    group: &[WorkerId],
    k: usize,
    d: &DistanceMatrix,
    model: StarCostModel,
    center_limit: u64,
) -> PartitionOutcome {
    assert!(k >= 1, "critical mass must be at least 1");
    let n_prime = group.len();
    if n_prime <= k {
        return PartitionOutcome::single(group);
    }
    let mut members = group.to_vec();
    members.sort_unstable();

    let sizes = balanced_sizes(n_prime, k);
    let x = sizes.len();
    let size_perms = distinct_permutations(sizes);
    let combinations = binomial(n_prime as u64, x as u64);
    if combinations.saturating_mul(size_perms.len() as u64) > center_limit {
        let mut outcome =
            greedy_partition(group, k, d, None).expect("default order is always valid");
        outcome.fallback = true;
        return outcome;
    }

    let mut best: Option<(f64, Vec<Vec<WorkerId>>)> = None;
    for centers in members.iter().copied().combinations(x) {
        let non_centers: Vec<WorkerId> =
            members.iter().copied().filter(|v| !centers.contains(v)).collect();
        for sizes in &size_perms {
            let cs = CenterSet::new(centers.clone(), sizes.clone())
                .expect("enumerated centers are distinct");
            let inst = build_transportation_with(&cs, &non_centers, d, model);
            let assignment =
                transport::solve(&inst).expect("capacities match rows by construction");
            let mut parts: Vec<Vec<WorkerId>> = centers.iter().map(|&c| vec![c]).collect();
            for (row, &col) in assignment.iter().enumerate() {
                parts[col].push(non_centers[row]);
            }
            for part in &mut parts {
                part.sort_unstable();
            }
            let value = partition_inter(&parts, d, DistanceMode::Sum);
            if best.as_ref().is_none_or(|(b, _)| value < *b) {
                best = Some((value, parts));
            }
        }
    }
    let (inter, subgroups) = best.expect("at least one center configuration exists");
    PartitionOutcome { subgroups, inter, fallback: false }
}

/// Greedy baseline: workers join, in the given order (ascending id by
/// default), the still-open subgroup whose members they are closest to in
/// summed distance; ties go to the lowest subgroup index. Subgroup
/// capacities follow the balanced layout.
pub fn greedy_partition(
    group: &[WorkerId],
    k: usize,
    d: &DistanceMatrix,
    order: Option<&[WorkerId]>,
) -> Result<PartitionOutcome> {
    assert!(k >= 1, "critical mass must be at least 1");
    let mut default_order = group.to_vec();
    default_order.sort_unstable();
    let order = match order {
        Some(o) => {
            let mut check = o.to_vec();
            check.sort_unstable();
            if check != default_order {
                return Err(Error::InvalidInput(
                    "greedy order must be a permutation of the group".into(),
                ));
            }
            o.to_vec()
        }
        None => default_order,
    };

    let sizes = balanced_sizes(group.len(), k);
    let mut parts: Vec<Vec<WorkerId>> = vec![Vec::new(); sizes.len()];
    for &w in &order {
        let slot = (0..parts.len())
            .filter(|&j| parts[j].len() < sizes[j])
            .min_by(|&a, &b| {
                let cost = |j: usize| parts[j].iter().map(|&v| d.get(w, v)).sum::<f64>();
                cost(a).partial_cmp(&cost(b)).expect("distance is NaN").then(a.cmp(&b))
            })
            .expect("balanced sizes always leave an open subgroup");
        parts[slot].push(w);
    }
    for part in &mut parts {
        part.sort_unstable();
    }
    let inter = partition_inter(&parts, d, DistanceMode::Sum);
    Ok(PartitionOutcome { subgroups: parts, inter, fallback: false })
}

/// Exhaustive oracle: minimizes the aggregated inter distance over every
/// partition into parts of size at most `k`, or exactly the balanced sizes
/// when `balanced_only` is set. Refuses groups larger than
/// [`BRUTE_FORCE_MAX`].
pub fn brute_force_partition(
    group: &[WorkerId],
    k: usize,
    d: &DistanceMatrix,
    balanced_only: bool,
) -> Result<PartitionOutcome> {
    assert!(k >= 1, "critical mass must be at least 1");
    if group.len() > BRUTE_FORCE_MAX {
        return Err(Error::GuardExceeded(format!(
            "brute-force partitioning caps at {BRUTE_FORCE_MAX} workers, got {}",
            group.len()
        )));
    }
    if group.len() <= k {
        return Ok(PartitionOutcome::single(group));
    }
    let mut members = group.to_vec();
    members.sort_unstable();

    let mut best: Option<(f64, Vec<Vec<WorkerId>>)> = None;
    let mut consider = |parts: &[Vec<WorkerId>]| {
        let value = partition_inter(parts, d, DistanceMode::Sum);
        if best.as_ref().is_none_or(|(b, _)| value < *b) {
            best = Some((value, parts.to_vec()));
        }
    };
    if balanced_only {
        let sizes = balanced_sizes(members.len(), k);
        for_each_sized_partition(&members, &sizes, &mut consider);
    } else {
        for_each_capped_partition(&members, k, &mut consider);
    }
    let (inter, subgroups) = best.expect("every non-empty group has a partition");
    Ok(PartitionOutcome { subgroups, inter, fallback: false })
}

/// Calls `visit` once per partition of `elems` into parts of size at most
/// `cap`. Parts are anchored on their smallest member, so each partition
/// appears exactly once, parts ordered by their minimum.
pub(crate) fn for_each_capped_partition(
    elems: &[WorkerId],
    cap: usize,
    visit: &mut impl FnMut(&[Vec<WorkerId>]),
) {
    fn recurse(
        remaining: &[WorkerId],
        cap: usize,
        parts: &mut Vec<Vec<WorkerId>>,
        visit: &mut impl FnMut(&[Vec<WorkerId>]),
    ) {
        let Some((&anchor, rest)) = remaining.split_first() else {
            visit(parts);
            return;
        };
        for extra in 0..cap.min(rest.len() + 1) {
            for_each_index_combination(rest.len(), extra, &mut |picked| {
                let mut part = vec![anchor];
                part.extend(picked.iter().map(|&i| rest[i]));
                let next: Vec<WorkerId> = (0..rest.len())
                    .filter(|i| !picked.contains(i))
                    .map(|i| rest[i])
                    .collect();
                parts.push(part);
                recurse(&next, cap, parts, visit);
                parts.pop();
            });
        }
    }
    recurse(elems, cap, &mut Vec::new(), visit);
}

/// Calls `visit` once per partition of `elems` whose part sizes realize the
/// `sizes` multiset exactly.
fn for_each_sized_partition(
    elems: &[WorkerId],
    sizes: &[usize],
    visit: &mut impl FnMut(&[Vec<WorkerId>]),
) {
    fn recurse(
        remaining: &[WorkerId],
        sizes_left: &mut Vec<usize>,
        parts: &mut Vec<Vec<WorkerId>>,
        visit: &mut impl FnMut(&[Vec<WorkerId>]),
    ) {
        let Some((&anchor, rest)) = remaining.split_first() else {
            visit(parts);
            return;
        };
        // sizes_left stays sorted, so adjacent duplicates are the only ones.
        for idx in 0..sizes_left.len() {
            let size = sizes_left[idx];
            if idx > 0 && sizes_left[idx - 1] == size {
                continue;
            }
            sizes_left.remove(idx);
            for_each_index_combination(rest.len(), size - 1, &mut |picked| {
                let mut part = vec![anchor];
                part.extend(picked.iter().map(|&i| rest[i]));
                let next: Vec<WorkerId> = (0..rest.len())
                    .filter(|i| !picked.contains(i))
                    .map(|i| rest[i])
                    .collect();
                parts.push(part);
                recurse(&next, sizes_left, parts, visit);
                parts.pop();
            });
            sizes_left.insert(idx, size);
        }
    }
    let mut sizes_left = sizes.to_vec();
    sizes_left.sort_unstable();
    recurse(elems, &mut sizes_left, &mut Vec::new(), visit);
}

/// Lexicographic enumeration of `choose`-element index subsets of `0..n`.
fn for_each_index_combination(n: usize, choose: usize, visit: &mut impl FnMut(&[usize])) {
    fn recurse(n: usize, start: usize, picked: &mut Vec<usize>, left: usize, visit: &mut impl FnMut(&[usize])) {
        if left == 0 {
            visit(picked);
            return;
        }
        for i in start..=(n - left) {
            picked.push(i);
            recurse(n, i + 1, picked, left - 1, visit);
            picked.pop();
        }
    }
    if choose > n {
        return;
    }
    recurse(n, 0, &mut Vec::new(), choose, visit);
}

/// All distinct permutations of a size multiset, in lexicographic order.
fn distinct_permutations(mut sizes: Vec<usize>) -> Vec<Vec<usize>> {
    sizes.sort_unstable();
    let mut out = vec![sizes.clone()];
    while next_permutation(&mut sizes) {
        out.push(sizes.clone());
    }
    out
}

fn next_permutation(arr: &mut [usize]) -> bool {
    let Some(pivot) = arr.windows(2).rposition(|w| w[0] < w[1]) else {
        return false;
    };
    let successor = arr.iter().rposition(|&v| v > arr[pivot]).expect("pivot has a successor");
    arr.swap(pivot, successor);
    arr[pivot + 1..].reverse();
    true
}

fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul((n - i) as u128) / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    acc as u64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    /// The staged pipeline's group {u1,u2,u3,u5,u6} in 0-based ids.
    const GROUP: [WorkerId; 5] = [0, 1, 2, 4, 5];

    fn d() -> DistanceMatrix {
        fixtures::six_worker_instance().distances
    }

    #[test]
    fn balanced_sizes_examples() {
        assert_eq!(balanced_sizes(5, 3), vec![3, 2]);
        assert_eq!(balanced_sizes(6, 3), vec![3, 3]);
        assert_eq!(balanced_sizes(3, 5), vec![3]);
        assert_eq!(balanced_sizes(0, 4), Vec::<usize>::new());
    }

    #[test]
    fn star_cost_hand_example() {
        let d = d();
        let cs = CenterSet::new(vec![0, 2], vec![3, 2]).unwrap();
        let parts = vec![vec![0, 1, 4], vec![2, 5]];
        let cost = star_cost(&cs, &parts, &d).unwrap();
        assert!((cost - 8.86).abs() < 1e-9, "got {cost}");
    }

    #[test]
    fn star_cost_single_subgroup_is_zero() {
        let d = d();
        let cs = CenterSet::new(vec![0], vec![5]).unwrap();
        let parts = vec![GROUP.to_vec()];
        assert_eq!(star_cost(&cs, &parts, &d).unwrap(), 0.0);
    }

    #[test]
    fn star_cost_zero_distances() {
        let d = DistanceMatrix::zeros(4);
        let cs = CenterSet::new(vec![0, 1], vec![2, 2]).unwrap();
        let parts = vec![vec![0, 2], vec![1, 3]];
        assert_eq!(star_cost(&cs, &parts, &d).unwrap(), 0.0);
    }

    #[test]
    fn star_cost_rejects_inconsistent_partitions() {
        let d = d();
        let cs = CenterSet::new(vec![0, 2], vec![3, 2]).unwrap();
        assert!(star_cost(&cs, &[vec![0, 1], vec![2, 5]], &d).is_err(), "size mismatch");
        assert!(star_cost(&cs, &[vec![1, 4, 5], vec![0, 2]], &d).is_err(), "center not member");
    }

    #[test]
    fn transportation_build_matches_hand_numbers() {
        let d = d();
        let cs = CenterSet::new(vec![0, 2], vec![3, 2]).unwrap();
        let inst = build_transportation(&cs, &[1, 4, 5], &d);
        let expect = [vec![2.0, 1.98], vec![1.7, 1.98], vec![1.32, 1.2]];
        for (row, want) in inst.costs.iter().zip(expect.iter()) {
            for (a, b) in row.iter().zip(want.iter()) {
                assert!((a - b).abs() < 1e-12, "{inst:?}");
            }
        }
        assert_eq!(inst.capacities, vec![2, 1]);

        let assignment = solve_transportation(&inst).unwrap();
        assert_eq!(assignment, vec![0, 0, 1], "u2,u5 join u1; u6 joins u3");
        let total: f64 = assignment.iter().enumerate().map(|(r, &c)| inst.costs[r][c]).sum();
        assert!((total - 4.9).abs() < 1e-12);
    }

    #[test]
    fn transportation_single_column_takes_everything() {
        let inst = TransportationInstance {
            costs: vec![vec![0.0], vec![0.3], vec![0.7]],
            capacities: vec![3],
        };
        assert_eq!(solve_transportation(&inst).unwrap(), vec![0, 0, 0]);
    }

    #[test]
    fn single_center_instance_is_a_zero_column() {
        // One subgroup: the (n' - k_1) weight vanishes, so every placement
        // is free and the column holds everyone else.
        let cs = CenterSet::new(vec![2], vec![5]).unwrap();
        let inst = build_transportation(&cs, &[0, 1, 4, 5], &d());
        assert_eq!(inst.capacities, vec![4]);
        assert!(inst.costs.iter().all(|row| row == &vec![0.0]));
        assert_eq!(solve_transportation(&inst).unwrap(), vec![0, 0, 0, 0]);
    }

    #[test]
    fn transportation_prefers_the_diagonal() {
        let inst = TransportationInstance {
            costs: vec![vec![0.0, 9.0], vec![9.0, 0.0]],
            capacities: vec![1, 1],
        };
        assert_eq!(solve_transportation(&inst).unwrap(), vec![0, 1]);
    }

    #[test]
    fn transportation_rejects_capacity_mismatch() {
        let inst = TransportationInstance {
            costs: vec![vec![0.0], vec![1.0]],
            capacities: vec![3],
        };
        assert!(solve_transportation(&inst).is_err());
    }

    #[test]
    fn min_star_reproduces_the_worked_split() {
        let outcome = min_star_partition(&GROUP, 3, &d());
        assert!((outcome.inter - 3.89).abs() < 1e-9, "got {}", outcome.inter);
        assert_eq!(outcome.subgroups, vec![vec![0, 1, 4], vec![2, 5]]);
        assert!(!outcome.fallback);
    }

    #[test]
    fn min_star_keeps_small_groups_whole() {
        let outcome = min_star_partition(&GROUP, 5, &d());
        assert_eq!(outcome.subgroups, vec![GROUP.to_vec()]);
        assert_eq!(outcome.inter, 0.0);
    }

    #[test]
    fn min_star_falls_back_when_the_center_guard_trips() {
        let outcome = min_star_partition_with(&GROUP, 3, &d(), StarCostModel::OwnCenter, 1);
        assert!(outcome.fallback);
        assert_eq!(outcome.subgroups.iter().map(Vec::len).sum::<usize>(), GROUP.len());
    }

    #[test]
    fn literal_union_model_still_produces_a_valid_partition() {
        let outcome = min_star_partition_with(
            &GROUP,
            3,
            &d(),
            StarCostModel::LiteralUnion,
            DEFAULT_CENTER_LIMIT,
        );
        assert!(!outcome.fallback);
        assert_eq!(outcome.subgroups.iter().map(Vec::len).sum::<usize>(), GROUP.len());
        assert!(outcome.subgroups.iter().all(|p| p.len() <= 3));
    }

    #[test]
    fn brute_force_balanced_optimum_beats_the_surrogate() {
        let outcome = brute_force_partition(&GROUP, 3, &d(), true).unwrap();
        assert!((outcome.inter - 3.63).abs() < 1e-9, "got {}", outcome.inter);
        assert_eq!(outcome.subgroups, vec![vec![0, 1, 5], vec![2, 4]]);
        // The surrogate stays within three times the balanced optimum here.
        assert!(3.89 <= 3.0 * outcome.inter + 1e-9);
    }

    #[test]
    fn brute_force_singletons_under_unit_mass() {
        // {u4, u6} sit at distance zero.
        let outcome = brute_force_partition(&[3, 5], 1, &d(), false).unwrap();
        assert_eq!(outcome.subgroups, vec![vec![3], vec![5]]);
        assert!(outcome.inter.abs() < 1e-12);
    }

    #[test]
    fn brute_force_respects_its_guard() {
        let big: Vec<WorkerId> = (0..13).collect();
        let d = DistanceMatrix::zeros(13);
        assert!(brute_force_partition(&big, 3, &d, false).is_err());
    }

    #[test]
    fn greedy_produces_a_valid_balanced_partition() {
        let outcome = greedy_partition(&GROUP, 3, &d(), None).unwrap();
        let mut covered: Vec<WorkerId> = outcome.subgroups.concat();
        covered.sort_unstable();
        assert_eq!(covered, GROUP.to_vec());
        assert!(outcome.subgroups.iter().all(|p| p.len() <= 3));
        // Never better than the balanced optimum.
        assert!(outcome.inter >= 3.63 - 1e-9, "got {}", outcome.inter);
    }

    #[test]
    fn greedy_edge_cases() {
        let d = d();
        let single = greedy_partition(&[2], 3, &d, None).unwrap();
        assert_eq!(single.subgroups, vec![vec![2]]);
        assert_eq!(single.inter, 0.0);

        let zeros = DistanceMatrix::zeros(6);
        let outcome = greedy_partition(&GROUP, 2, &zeros, None).unwrap();
        assert_eq!(outcome.inter, 0.0);

        assert!(greedy_partition(&GROUP, 3, &d, Some(&[0, 1])).is_err(), "bad order");
    }

    #[test]
    fn all_partitioners_agree_on_single_subgroup_groups() {
        let d = d();
        let group = [1, 2, 4];
        assert_eq!(min_star_partition(&group, 3, &d).inter, 0.0);
        assert_eq!(greedy_partition(&group, 3, &d, None).unwrap().inter, 0.0);
        assert_eq!(brute_force_partition(&group, 3, &d, false).unwrap().inter, 0.0);
    }
}
