//! Stage 1 (`Grp`): form one skill- and cost-feasible worker group.
//!
//! The workhorse is [`grp_candidate_search`], a pruned include/exclude tree
//! over the candidate workers. On top of it sit:
//!
//! - [`opt_grp`] — instance-optimal: enumerate all feasible groups, keep the
//!   one with the smallest intra distance;
//! - [`grp_dia`] / [`apprx_grp`] — the star-graph subroutine and the binary
//!   search over distance levels that together give a 2-approximation of
//!   the minimum diameter whenever the distance matrix is metric;
//! - [`bucketize_wages`] — wage discretization that turns the search tree
//!   polynomial for a constant bucket count (the `cons-k` variants);
//! - [`random_feasible_group`] — the seeded random baseline.

mod search;

pub use search::SearchStats;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::model::{DistanceMatrix, DistanceMode, Task, Worker, WorkerId, FEAS_TOL};
use crate::objective::intra_distance;

/// The order in which the candidate search decides workers; it also defines
/// the candidate set itself.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchOrder {
    ids: Vec<WorkerId>,
}

impl SearchOrder {
    /// An explicit order. Duplicate ids are rejected.
    pub fn new(ids: Vec<WorkerId>) -> Result<Self> {
        let mut seen = std::collections::BTreeSet::new();
        for &id in &ids {
            if !seen.insert(id) {
                return Err(Error::InvalidInput(format!("duplicate worker {id} in search order")));
            }
        }
        Ok(Self { ids })
    }

    /// Default order over the whole pool: descending wage, ties broken by
    /// descending id.
    pub fn descending_wage(workers: &[Worker]) -> Self {
        Self::descending_wage_among(workers, &(0..workers.len()).collect::<Vec<_>>())
    }

    /// Descending-wage order restricted to the given candidate ids.
    pub fn descending_wage_among(workers: &[Worker], ids: &[WorkerId]) -> Self {
        let mut ids = ids.to_vec();
        ids.sort_by(|&a, &b| {
            workers[b]
                .wage
                .partial_cmp(&workers[a].wage)
                .expect("wage is NaN")
                .then(b.cmp(&a))
        });
        Self { ids }
    }

    pub fn ids(&self) -> &[WorkerId] {
        &self.ids
    }
}

/// Wage discretization: bucket `b` holds wages up to `boundaries[b]`, and
/// cost accounting replaces a member's wage by the bucket representative.
#[derive(Debug, Clone, PartialEq)]
pub struct BucketConfig {
    boundaries: Vec<f64>,
    representatives: Vec<f64>,
}

impl BucketConfig {
    /// `boundaries` are the strictly ascending upper wage cutoffs, one per
    /// bucket; `representatives` carry the wage each bucket accounts with.
    pub fn new(boundaries: Vec<f64>, representatives: Vec<f64>) -> Result<Self> {
        if boundaries.is_empty() {
            return Err(Error::InvalidInput("bucket count must be at least 1".into()));
        }
        if boundaries.len() != representatives.len() {
            return Err(Error::InvalidInput(
                "bucket boundaries and representatives differ in length".into(),
            ));
        }
        if boundaries.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidInput("bucket boundaries must be strictly ascending".into()));
        }
        Ok(Self { boundaries, representatives })
    }

    pub fn k(&self) -> usize {
        self.boundaries.len()
    }

    pub fn boundaries(&self) -> &[f64] {
        &self.boundaries
    }

    /// Bucket index for a wage: the first boundary at or above it. Wages
    /// beyond the last boundary clamp into the last bucket.
    pub fn bucket_of(&self, wage: f64) -> usize {
        self.boundaries
            .iter()
            .position(|&b| wage <= b + FEAS_TOL)
            .unwrap_or(self.boundaries.len() - 1)
    }

    pub fn representative(&self, bucket: usize) -> f64 {
        self.representatives[bucket]
    }
}

/// Equal-width wage buckets over `[min wage, max wage]` with the bucket
/// upper bound as representative — the representative never understates a
/// member's wage, so groups accepted under bucketed accounting stay within
/// the real budget.
pub fn bucketize_wages(workers: &[Worker], k: usize) -> Result<BucketConfig> {
    if k == 0 {
        return Err(Error::InvalidInput("bucket count must be at least 1".into()));
    }
    let (lo, hi) = workers.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), w| {
        (lo.min(w.wage), hi.max(w.wage))
    });
    let (lo, hi) = if workers.is_empty() { (0.0, 0.0) } else { (lo, hi) };
    // A degenerate range still needs ascending cutoffs.
    let width = ((hi - lo) / k as f64).max(1e-9);
    let mut boundaries: Vec<f64> = (1..=k).map(|j| lo + width * j as f64).collect();
    if let Some(last) = boundaries.last_mut() {
        *last = last.max(hi);
    }
    let representatives = boundaries.clone();
    BucketConfig::new(boundaries, representatives)
}

/// Whether the candidate search stops at the first feasible group or
/// enumerates all of them.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchMode {
    FirstValid,
    AllValid,
}

/// Pruned tree search for skill/cost-feasible groups among the workers
/// named by `order`. At each node the path's cost lower bound is checked
/// against the budget and the per-domain skill upper bound (included plus
/// undecided workers) against the thresholds; a failing node's subtree is
/// cut entirely. With `buckets` the tree enumerates per-bucket prefix
/// counts of the skill-ranked members and wages are replaced by bucket
/// representatives.
///
/// Returns feasible groups as sorted id lists; an empty result means no
/// feasible group exists among the candidates.
pub fn grp_candidate_search(
    workers: &[Worker],
    task: &Task,
    mode: SearchMode,
    order: &SearchOrder,
    buckets: Option<&BucketConfig>,
) -> Vec<Vec<WorkerId>> {
    grp_candidate_search_stats(workers, task, mode, order, buckets).0
}

/// [`grp_candidate_search`] plus node accounting, for complexity checks.
pub fn grp_candidate_search_stats(
    workers: &[Worker],
    task: &Task,
    mode: SearchMode,
    order: &SearchOrder,
    buckets: Option<&BucketConfig>,
) -> (Vec<Vec<WorkerId>>, SearchStats) {
    assert!(
        order.ids().iter().all(|&id| id < workers.len()),
        "search order names a worker outside the pool"
    );
    let first_only = mode == SearchMode::FirstValid;
    match buckets {
        None => {
            let mut search = search::PlainSearch::new(workers, task, order.ids(), first_only);
            search.run();
            (search.out, search.stats)
        }
        Some(cfg) => {
            let mut search = search::BucketSearch::new(workers, task, order.ids(), cfg, first_only);
            search.run();
            (search.out, search.stats)
        }
    }
}

/// Result of the instance-optimal group solver.
#[derive(Debug, Clone, PartialEq)]
pub struct GrpResult {
    pub group: Vec<WorkerId>,
    /// Intra distance of the group in the requested mode.
    pub value: f64,
}

/// Instance-optimal stage 1: enumerate every feasible group and return one
/// minimizing the intra distance. Ties break toward smaller cardinality,
/// then the lexicographically smallest id list. `None` means infeasible.
pub fn opt_grp(
    workers: &[Worker],
    task: &Task,
    d: &DistanceMatrix,
    intra_mode: DistanceMode,
    buckets: Option<&BucketConfig>,
) -> Option<GrpResult> {
    let order = SearchOrder::descending_wage(workers);
    let groups = grp_candidate_search(workers, task, SearchMode::AllValid, &order, buckets);
    groups
        .into_iter()
        .map(|group| {
            let value = intra_distance(&group, d, intra_mode);
            (value, group)
        })
        .min_by(|(va, ga), (vb, gb)| {
            va.partial_cmp(vb)
                .expect("objective is NaN")
                .then(ga.len().cmp(&gb.len()))
                .then(ga.cmp(gb))
        })
        .map(|(value, group)| GrpResult { group, value })
}

/// Star subroutine: for each center (ascending id) take the star set of
/// workers within `alpha` of it and run the first-valid candidate search
/// restricted to that set. Returns the first feasible group found, which by
/// the triangle inequality has diameter at most `2 * alpha` when the matrix
/// is metric.
pub fn grp_dia(
    workers: &[Worker],
    task: &Task,
    d: &DistanceMatrix,
    alpha: f64,
    buckets: Option<&BucketConfig>,
) -> Option<Vec<WorkerId>> {
    for center in 0..workers.len() {
        let star = star_set(d, center, alpha);
        let order = SearchOrder::descending_wage_among(workers, &star);
        let mut found =
            grp_candidate_search(workers, task, SearchMode::FirstValid, &order, buckets);
        if let Some(group) = found.pop() {
            return Some(group);
        }
    }
    None
}

/// The star around `center`: itself plus every worker within `alpha`.
pub fn star_set(d: &DistanceMatrix, center: WorkerId, alpha: f64) -> Vec<WorkerId> {
    (0..d.n())
        .filter(|&v| v == center || d.get(center, v) <= alpha + FEAS_TOL)
        .collect()
}

/// Result of the 2-approximation.
#[derive(Debug, Clone, PartialEq)]
pub struct ApprxResult {
    pub group: Vec<WorkerId>,
    /// Smallest distance level at which the star subroutine succeeded; the
    /// group diameter is at most twice this on metric inputs.
    pub alpha_star: f64,
}

/// The ascending list of distinct distance values in the matrix — the
/// levels the approximation binary-searches over.
pub fn distance_levels(d: &DistanceMatrix) -> Vec<f64> {
    d.unique_values_sorted()
}

/// 2-approximate minimum-diameter group: binary search over the distance
/// levels for the smallest `alpha` at which [`grp_dia`] succeeds. Success
/// is monotone in `alpha` (stars only grow), which is what makes the
/// binary search sound.
pub fn apprx_grp(
    workers: &[Worker],
    task: &Task,
    d: &DistanceMatrix,
    buckets: Option<&BucketConfig>,
) -> Option<ApprxResult> {
    let levels = distance_levels(d);
    if levels.is_empty() {
        return None;
    }
    let mut memo: Vec<Option<Option<Vec<WorkerId>>>> = vec![None; levels.len()];
    let run = |idx: usize, memo: &mut Vec<Option<Option<Vec<WorkerId>>>>| {
        if memo[idx].is_none() {
            memo[idx] = Some(grp_dia(workers, task, d, levels[idx], buckets));
        }
        memo[idx].clone().expect("memo entry just filled")
    };

    let (mut lo, mut hi) = (0, levels.len() - 1);
    run(hi, &mut memo)?;
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if run(mid, &mut memo).is_some() {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    let group = run(lo, &mut memo).expect("monotone success at final level");
    Some(ApprxResult { group, alpha_star: levels[lo] })
}

/// Maximum reshuffle attempts of the random baseline.
const RANDOM_ATTEMPTS: usize = 1000;

/// Seeded random baseline: shuffle the pool, accumulate workers until every
/// skill threshold is met, reject and reshuffle when the budget is blown.
/// Deterministic for a fixed `(workers, task, seed)`.
pub fn random_feasible_group(workers: &[Worker], task: &Task, seed: u64) -> Option<Vec<WorkerId>> {
    let m = task.domains();
    let totals = crate::model::skill_totals(&(0..workers.len()).collect::<Vec<_>>(), workers, m);
    if totals.iter().zip(task.thresholds.iter()).any(|(&have, &need)| have < need - FEAS_TOL) {
        return None;
    }

    let satisfied = |sums: &[f64]| {
        sums.iter().zip(task.thresholds.iter()).all(|(&have, &need)| have >= need - FEAS_TOL)
    };

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut ids: Vec<WorkerId> = (0..workers.len()).collect();
    for _ in 0..RANDOM_ATTEMPTS {
        ids.shuffle(&mut rng);
        let mut selected = Vec::new();
        let mut sums = vec![0.0; m];
        let mut cost = 0.0;
        if !satisfied(&sums) {
            for &id in &ids {
                selected.push(id);
                cost += workers[id].wage;
                for (acc, &s) in sums.iter_mut().zip(workers[id].skills.iter()) {
                    *acc += s;
                }
                if satisfied(&sums) {
                    break;
                }
            }
        }
        if satisfied(&sums) && cost <= task.budget + FEAS_TOL {
            selected.sort_unstable();
            return Some(selected);
        }
    }
    None
}
