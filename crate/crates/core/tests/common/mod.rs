//! Shared helpers for the integration suites: the six-worker fixture,
//! random instance generation, and independent brute-force oracles that
//! never touch the solver code paths they are checking.

#![allow(dead_code)]

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use teamform::affinity::euclidean_distance;
use teamform::model::FEAS_TOL;
use teamform::{DistanceMatrix, Instance, Task, Worker, WorkerId};

pub fn six_worker_instance() -> Instance {
    let text = include_str!("../data/instance_six.json");
    let inst = Instance::from_json(text).expect("fixture parses");
    assert!(inst.validate().is_empty(), "fixture must be valid");
    inst
}

/// Random instance on metric (Euclidean) distances. Thresholds and budget
/// are drawn as fractions of the pool totals so that most instances are
/// feasible but the constraints still bite.
pub fn random_metric_instance(rng: &mut ChaCha8Rng, n: usize, domains: usize) -> Instance {
    random_instance_with(rng, n, domains, 0.3..0.7, 0.6..1.0, 2..=4)
}

/// [`random_metric_instance`] with explicit threshold/budget fractions and
/// critical mass range. Higher skill fractions mean fewer feasible groups,
/// which keeps exhaustive sweeps affordable.
pub fn random_instance_with(
    rng: &mut ChaCha8Rng,
    n: usize,
    domains: usize,
    skill_frac: std::ops::Range<f64>,
    budget_frac: std::ops::Range<f64>,
    mass: std::ops::RangeInclusive<usize>,
) -> Instance {
    let workers: Vec<Worker> = (0..n)
        .map(|id| {
            let skills = (0..domains).map(|_| rng.gen_range(0.0..1.0)).collect();
            Worker::new(id, skills, rng.gen_range(0.05..1.0))
        })
        .collect();
    let points: Vec<Vec<f64>> =
        (0..n).map(|_| vec![rng.gen_range(0.0..1.0), rng.gen_range(0.0..1.0)]).collect();
    let distances = euclidean_distance(&points).expect("points share a dimension");

    let mut thresholds = Vec::with_capacity(domains);
    for dom in 0..domains {
        let total: f64 = workers.iter().map(|w| w.skills[dom]).sum();
        thresholds.push(total * rng.gen_range(skill_frac.clone()));
    }
    let total_wage: f64 = workers.iter().map(|w| w.wage).sum();
    let budget = total_wage * rng.gen_range(budget_frac);
    let critical_mass = rng.gen_range(mass);

    Instance::new(domains, workers, Task::new(thresholds, budget, critical_mass), distances)
}

/// All feasible subsets by raw 2^n enumeration, sorted. Intentionally
/// primitive: bitmask loop, direct sums, same boundary tolerance as the
/// solvers.
pub fn naive_feasible_subsets(workers: &[Worker], task: &Task) -> Vec<Vec<WorkerId>> {
    let n = workers.len();
    assert!(n <= 20, "oracle is for small instances");
    let m = task.domains();
    let mut feasible = Vec::new();
    for mask in 0u32..(1 << n) {
        let mut skill = vec![0.0; m];
        let mut cost = 0.0;
        let mut ids = Vec::new();
        for (id, worker) in workers.iter().enumerate() {
            if mask & (1 << id) != 0 {
                ids.push(id);
                cost += worker.wage;
                for (acc, &s) in skill.iter_mut().zip(worker.skills.iter()) {
                    *acc += s;
                }
            }
        }
        let skills_ok =
            skill.iter().zip(task.thresholds.iter()).all(|(&have, &need)| have >= need - FEAS_TOL);
        if skills_ok && cost <= task.budget + FEAS_TOL {
            feasible.push(ids);
        }
    }
    feasible.sort();
    feasible
}

/// Sum of cross-subgroup distances, computed directly.
pub fn naive_inter_sum(parts: &[Vec<WorkerId>], d: &DistanceMatrix) -> f64 {
    let mut total = 0.0;
    for (i, a) in parts.iter().enumerate() {
        for b in &parts[i + 1..] {
            for &u in a {
                for &v in b {
                    total += d.get(u, v);
                }
            }
        }
    }
    total
}

/// Minimum cross-subgroup sum over every partition of `elems` into parts
/// of at most `cap` members, by direct recursion over anchored parts.
pub fn naive_best_partition(elems: &[WorkerId], cap: usize, d: &DistanceMatrix) -> f64 {
    fn recurse(remaining: &[WorkerId], cap: usize, parts: &mut Vec<Vec<WorkerId>>, best: &mut f64, d: &DistanceMatrix) {
        let Some((&anchor, rest)) = remaining.split_first() else {
            let value = naive_inter_sum(parts, d);
            if value < *best {
                *best = value;
            }
            return;
        };
        let rest: Vec<WorkerId> = rest.to_vec();
        let max_extra = cap.min(rest.len() + 1);
        for extra in 0..max_extra {
            let mut mask = vec![false; rest.len()];
            choose(&rest, 0, extra, &mut mask, &mut |chosen, mask| {
                let mut part = vec![anchor];
                part.extend_from_slice(chosen);
                let next: Vec<WorkerId> =
                    rest.iter().enumerate().filter(|(i, _)| !mask[*i]).map(|(_, &v)| v).collect();
                parts.push(part);
                recurse(&next, cap, parts, best, d);
                parts.pop();
            });
        }
    }
    fn choose(
        rest: &[WorkerId],
        start: usize,
        left: usize,
        mask: &mut Vec<bool>,
        visit: &mut impl FnMut(&[WorkerId], &[bool]),
    ) {
        if left == 0 {
            let chosen: Vec<WorkerId> =
                rest.iter().enumerate().filter(|(i, _)| mask[*i]).map(|(_, &v)| v).collect();
            visit(&chosen, mask);
            return;
        }
        for i in start..=(rest.len() - left) {
            mask[i] = true;
            choose(rest, i + 1, left - 1, mask, visit);
            mask[i] = false;
        }
    }
    let mut best = f64::INFINITY;
    recurse(elems, cap, &mut Vec::new(), &mut best, d);
    best
}

/// Exhaustive minimum of a capacity-constrained assignment, by recursion
/// over rows.
pub fn naive_assignment_min(costs: &[Vec<f64>], capacities: &[usize]) -> f64 {
    fn recurse(costs: &[Vec<f64>], row: usize, left: &mut Vec<usize>, acc: f64, best: &mut f64) {
        if row == costs.len() {
            if acc < *best {
                *best = acc;
            }
            return;
        }
        if acc >= *best {
            return;
        }
        for col in 0..left.len() {
            if left[col] > 0 {
                left[col] -= 1;
                recurse(costs, row + 1, left, acc + costs[row][col], best);
                left[col] += 1;
            }
        }
    }
    let mut best = f64::INFINITY;
    recurse(costs, 0, &mut capacities.to_vec(), 0.0, &mut best);
    best
}
