//! Core domain types shared by all solvers: workers, tasks, the pairwise
//! distance matrix, assemblies (a group plus its partition), instance
//! validation, and constraint feasibility checks.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Dense 0-based worker ordinal. All tie-breaking across the crate uses
/// ascending id so that solver output is deterministic.
pub type WorkerId = usize;

/// Tolerance applied to every threshold comparison (skill `>=`, cost `<=`,
/// distance `<= alpha`). The canonical six-worker example sits exactly on
/// its cost budget, so strict comparisons would be wrong.
pub const FEAS_TOL: f64 = 1e-9;

/// A worker: per-domain skill vector plus the wage they charge.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Worker {
    pub id: WorkerId,
    pub skills: Vec<f64>,
    pub wage: f64,
}

impl Worker {
    pub fn new(id: WorkerId, skills: Vec<f64>, wage: f64) -> Self {
        Self { id, skills, wage }
    }
}

/// A collaborative task: one skill threshold per domain, a cost budget, and
/// the upper critical mass `K` (hard cap on subgroup size).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Task {
    pub thresholds: Vec<f64>,
    pub budget: f64,
    pub critical_mass: usize,
}

impl Task {
    pub fn new(thresholds: Vec<f64>, budget: f64, critical_mass: usize) -> Self {
        Self { thresholds, budget, critical_mass }
    }

    pub fn domains(&self) -> usize {
        self.thresholds.len()
    }
}

/// Intra- or inter-distance aggregation mode.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DistanceMode {
    /// Largest pairwise distance.
    Dia,
    /// Sum of pairwise distances.
    Sum,
}

/// Which aggregation to use for the intra-group term and for the
/// cross-subgroup term. The default pairing is diameter inside, summed
/// distances across.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObjectiveSpec {
    pub intra: DistanceMode,
    pub inter: DistanceMode,
}

impl Default for ObjectiveSpec {
    fn default() -> Self {
        Self { intra: DistanceMode::Dia, inter: DistanceMode::Sum }
    }
}

/// Symmetric pairwise worker distances in `[0,1]` with a zero diagonal,
/// stored as a flat row-major `n x n` block.
#[derive(Debug, Clone, PartialEq)]
pub struct DistanceMatrix {
    n: usize,
    entries: Vec<f64>,
}

impl DistanceMatrix {
    /// Builds a matrix from square row data. Only the shape is enforced
    /// here; value-level invariants (symmetry, zero diagonal, range) are
    /// reported by [`validate_instance`] so that broken inputs can still be
    /// inspected.
    pub fn from_rows(rows: Vec<Vec<f64>>) -> Result<Self> {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidInput(format!(
                    "distance row {i} has {} entries, expected {n}",
                    row.len()
                )));
            }
            entries.extend_from_slice(row);
        }
        Ok(Self { n, entries })
    }

    /// All-zero matrix for `n` workers.
    pub fn zeros(n: usize) -> Self {
        Self { n, entries: vec![0.0; n * n] }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: WorkerId, j: WorkerId) -> f64 {
        self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: WorkerId, j: WorkerId, value: f64) {
        self.entries[i * self.n + j] = value;
    }

    /// Symmetric write of one off-diagonal entry.
    pub fn set_sym(&mut self, i: WorkerId, j: WorkerId, value: f64) {
        self.set(i, j, value);
        self.set(j, i, value);
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        (0..self.n)
            .map(|i| self.entries[i * self.n..(i + 1) * self.n].to_vec())
            .collect()
    }

    /// Ascending list of the distinct values appearing in the matrix
    /// (diagonal included, so 0 is always present for `n >= 1`).
    pub fn unique_values_sorted(&self) -> Vec<f64> {
        let mut values = self.entries.clone();
        values.sort_by(|a, b| a.partial_cmp(b).expect("distance is NaN"));
        values.dedup();
        values
    }
}

/// A selected group together with its partition into subgroups. Subgroups
/// are pairwise disjoint, non-empty, and cover the group exactly; the empty
/// assembly (no workers, no subgroups) is legal.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Assembly {
    group: Vec<WorkerId>,
    subgroups: Vec<Vec<WorkerId>>,
}

impl Assembly {
    /// Builds an assembly from its subgroups; the group is the union. Each
    /// subgroup is sorted, and the invariants are checked.
    pub fn new(subgroups: Vec<Vec<WorkerId>>) -> Result<Self> {
        let mut seen = std::collections::BTreeSet::new();
        let mut sorted_subgroups = Vec::with_capacity(subgroups.len());
        for sub in subgroups {
            if sub.is_empty() {
                return Err(Error::InvalidInput("empty subgroup in assembly".into()));
            }
            let mut sub = sub;
            sub.sort_unstable();
            for &id in &sub {
                if !seen.insert(id) {
                    return Err(Error::InvalidInput(format!(
                        "worker {id} appears in more than one subgroup"
                    )));
                }
            }
            sorted_subgroups.push(sub);
        }
        Ok(Self { group: seen.into_iter().collect(), subgroups: sorted_subgroups })
    }

    /// An assembly whose single subgroup is the whole group; empty input
    /// yields the empty assembly.
    pub fn single_group(mut ids: Vec<WorkerId>) -> Self {
        ids.sort_unstable();
        ids.dedup();
        if ids.is_empty() {
            Self::empty()
        } else {
            Self { group: ids.clone(), subgroups: vec![ids] }
        }
    }

    pub fn empty() -> Self {
        Self { group: Vec::new(), subgroups: Vec::new() }
    }

    /// Sorted ids of the whole group.
    pub fn group(&self) -> &[WorkerId] {
        &self.group
    }

    pub fn subgroups(&self) -> &[Vec<WorkerId>] {
        &self.subgroups
    }

    pub fn is_empty(&self) -> bool {
        self.group.is_empty()
    }

    pub fn len(&self) -> usize {
        self.group.len()
    }
}

/// Per-constraint feasibility flags for an assembly against a task.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FeasibilityReport {
    /// One flag per skill domain: aggregated group skill meets the threshold.
    pub skill: Vec<bool>,
    /// Total wage within budget.
    pub cost: bool,
    /// Every subgroup within the critical mass cap.
    pub mass: bool,
}

impl FeasibilityReport {
    pub fn all_ok(&self) -> bool {
        self.cost && self.mass && self.skill.iter().all(|&s| s)
    }
}

/// Outcome of one solver run.
#[derive(Debug, Clone, Serialize)]
pub struct SolveReport {
    pub algorithm: String,
    pub assembly: Assembly,
    pub objective: f64,
    pub feasibility: FeasibilityReport,
    /// Smallest successful distance level, for the star-graph approximation.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha_star: Option<f64>,
    /// Set when the partition stage hit its center-enumeration guard and
    /// fell back to the greedy splitter.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub split_fallback: Option<bool>,
    pub wall_ms: f64,
}

/// Flat rendering of a report with deterministic key order, shared by the
/// CLI and the C bindings.
#[derive(Serialize)]
struct ReportJson<'a> {
    algorithm: &'a str,
    feasible: bool,
    group: &'a [WorkerId],
    subgroups: &'a [Vec<WorkerId>],
    objective: f64,
    feasibility: &'a FeasibilityReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    alpha_star: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    split_fallback: Option<bool>,
    wall_ms: f64,
}

impl SolveReport {
    /// Pretty JSON with stable key order, `feasible` always true (an
    /// infeasible solve produces no report).
    pub fn to_json_pretty(&self) -> String {
        let flat = ReportJson {
            algorithm: &self.algorithm,
            feasible: true,
            group: self.assembly.group(),
            subgroups: self.assembly.subgroups(),
            objective: self.objective,
            feasibility: &self.feasibility,
            alpha_star: self.alpha_star,
            split_fallback: self.split_fallback,
            wall_ms: self.wall_ms,
        };
        serde_json::to_string_pretty(&flat).expect("report serialization cannot fail")
    }
}

/// One violated instance invariant, as reported by [`validate_instance`].
#[derive(Debug, Clone, PartialEq)]
pub enum Violation {
    SkillCount { worker: WorkerId, expected: usize, got: usize },
    NegativeSkill { worker: WorkerId, domain: usize, value: f64 },
    NegativeWage { worker: WorkerId, value: f64 },
    IdMismatch { position: usize, id: WorkerId },
    ThresholdCount { expected: usize, got: usize },
    NegativeThreshold { domain: usize, value: f64 },
    NegativeBudget { value: f64 },
    ZeroCriticalMass,
    SizeMismatch { workers: usize, matrix: usize },
    Asymmetry { i: usize, j: usize, forward: f64, backward: f64 },
    NonzeroDiagonal { i: usize, value: f64 },
    OutOfRange { i: usize, j: usize, value: f64 },
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Violation::SkillCount { worker, expected, got } => {
                write!(f, "worker {worker}: {got} skills, expected {expected}")
            }
            Violation::NegativeSkill { worker, domain, value } => {
                write!(f, "worker {worker}: negative skill {value} in domain {domain}")
            }
            Violation::NegativeWage { worker, value } => {
                write!(f, "worker {worker}: negative wage {value}")
            }
            Violation::IdMismatch { position, id } => {
                write!(f, "worker at position {position} carries id {id}")
            }
            Violation::ThresholdCount { expected, got } => {
                write!(f, "task has {got} thresholds, expected {expected}")
            }
            Violation::NegativeThreshold { domain, value } => {
                write!(f, "task: negative threshold {value} in domain {domain}")
            }
            Violation::NegativeBudget { value } => write!(f, "task: negative budget {value}"),
            Violation::ZeroCriticalMass => write!(f, "task: critical mass must be at least 1"),
            Violation::SizeMismatch { workers, matrix } => {
                write!(f, "distance matrix is {matrix}x{matrix} but there are {workers} workers")
            }
            Violation::Asymmetry { i, j, forward, backward } => {
                write!(f, "distance asymmetry: d({i},{j})={forward} but d({j},{i})={backward}")
            }
            Violation::NonzeroDiagonal { i, value } => {
                write!(f, "distance diagonal d({i},{i})={value} is not zero")
            }
            Violation::OutOfRange { i, j, value } => {
                write!(f, "distance d({i},{j})={value} outside [0,1]")
            }
        }
    }
}

/// Checks every type-level invariant of an instance and returns the full
/// list of violations (empty means valid). Nothing is thrown: broken
/// instances are data to report on, not programming errors.
pub fn validate_instance(workers: &[Worker], task: &Task, d: &DistanceMatrix) -> Vec<Violation> {
    let mut violations = Vec::new();
    let m = task.domains();

    if m == 0 {
        violations.push(Violation::ThresholdCount { expected: 1, got: 0 });
    }
    for (domain, &q) in task.thresholds.iter().enumerate() {
        if q < 0.0 {
            violations.push(Violation::NegativeThreshold { domain, value: q });
        }
    }
    if task.budget < 0.0 {
        violations.push(Violation::NegativeBudget { value: task.budget });
    }
    if task.critical_mass == 0 {
        violations.push(Violation::ZeroCriticalMass);
    }

    for (position, worker) in workers.iter().enumerate() {
        if worker.id != position {
            violations.push(Violation::IdMismatch { position, id: worker.id });
        }
        if worker.skills.len() != m {
            violations.push(Violation::SkillCount {
                worker: worker.id,
                expected: m,
                got: worker.skills.len(),
            });
        }
        for (domain, &s) in worker.skills.iter().enumerate() {
            if s < 0.0 {
                violations.push(Violation::NegativeSkill { worker: worker.id, domain, value: s });
            }
        }
        if worker.wage < 0.0 {
            violations.push(Violation::NegativeWage { worker: worker.id, value: worker.wage });
        }
    }

    if d.n() != workers.len() {
        violations.push(Violation::SizeMismatch { workers: workers.len(), matrix: d.n() });
    }
    for i in 0..d.n() {
        let diag = d.get(i, i);
        if diag != 0.0 {
            violations.push(Violation::NonzeroDiagonal { i, value: diag });
        }
        for j in 0..d.n() {
            let v = d.get(i, j);
            if !(0.0..=1.0).contains(&v) {
                violations.push(Violation::OutOfRange { i, j, value: v });
            }
            if j > i && d.get(i, j) != d.get(j, i) {
                violations.push(Violation::Asymmetry {
                    i,
                    j,
                    forward: d.get(i, j),
                    backward: d.get(j, i),
                });
            }
        }
    }

    violations
}

/// Aggregated per-domain skill of a set of workers.
pub fn skill_totals(ids: &[WorkerId], workers: &[Worker], domains: usize) -> Vec<f64> {
    let mut totals = vec![0.0; domains];
    for &id in ids {
        for (t, &s) in totals.iter_mut().zip(workers[id].skills.iter()) {
            *t += s;
        }
    }
    totals
}

/// Total wage of a set of workers.
pub fn wage_total(ids: &[WorkerId], workers: &[Worker]) -> f64 {
    ids.iter().map(|&id| workers[id].wage).sum()
}

/// Evaluates the three constraint families for an assembly: per-domain
/// aggregated skill against the thresholds, total wage against the budget,
/// and every subgroup size against the critical mass. Comparisons use
/// [`FEAS_TOL`] on the boundary.
pub fn check_feasibility(
    assembly: &Assembly,
    workers: &[Worker],
    task: &Task,
) -> Result<FeasibilityReport> {
    for &id in assembly.group() {
        if id >= workers.len() {
            return Err(Error::IdOutOfRange { id, n: workers.len() });
        }
    }

    let totals = skill_totals(assembly.group(), workers, task.domains());
    let skill = totals
        .iter()
        .zip(task.thresholds.iter())
        .map(|(&have, &need)| have >= need - FEAS_TOL)
        .collect();
    let cost = wage_total(assembly.group(), workers) <= task.budget + FEAS_TOL;
    let mass = assembly.subgroups().iter().all(|sub| sub.len() <= task.critical_mass);

    Ok(FeasibilityReport { skill, cost, mass })
}

/// Skill- and cost-only feasibility of a bare group (stage 1 ignores the
/// critical mass constraint).
pub fn group_feasible(ids: &[WorkerId], workers: &[Worker], task: &Task) -> bool {
    let totals = skill_totals(ids, workers, task.domains());
    totals.iter().zip(task.thresholds.iter()).all(|(&have, &need)| have >= need - FEAS_TOL)
        && wage_total(ids, workers) <= task.budget + FEAS_TOL
}

/// A full problem instance: worker pool, task, and pairwise distances.
#[derive(Debug, Clone, PartialEq)]
pub struct Instance {
    pub domains: usize,
    pub workers: Vec<Worker>,
    pub task: Task,
    pub distances: DistanceMatrix,
}

/// On-disk shape of an instance; worker ids are positional.
#[derive(Serialize, Deserialize)]
struct InstanceFile {
    domains: usize,
    workers: Vec<WorkerFile>,
    task: Task,
    distances: Vec<Vec<f64>>,
}

#[derive(Serialize, Deserialize)]
struct WorkerFile {
    skills: Vec<f64>,
    wage: f64,
}

impl Instance {
    pub fn new(domains: usize, workers: Vec<Worker>, task: Task, distances: DistanceMatrix) -> Self {
        Self { domains, workers, task, distances }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: InstanceFile = serde_json::from_str(text)?;
        let workers = file
            .workers
            .into_iter()
            .enumerate()
            .map(|(id, w)| Worker::new(id, w.skills, w.wage))
            .collect();
        Ok(Self {
            domains: file.domains,
            workers,
            task: file.task,
            distances: DistanceMatrix::from_rows(file.distances)?,
        })
    }

    pub fn from_path(path: &std::path::Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn to_json(&self) -> String {
        let file = InstanceFile {
            domains: self.domains,
            workers: self
                .workers
                .iter()
                .map(|w| WorkerFile { skills: w.skills.clone(), wage: w.wage })
                .collect(),
            task: self.task.clone(),
            distances: self.distances.rows(),
        };
        serde_json::to_string_pretty(&file).expect("instance serialization cannot fail")
    }

    pub fn validate(&self) -> Vec<Violation> {
        let mut violations = validate_instance(&self.workers, &self.task, &self.distances);
        if self.task.domains() != self.domains {
            violations.push(Violation::ThresholdCount {
                expected: self.domains,
                got: self.task.domains(),
            });
        }
        violations
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn six_worker_example_is_valid() {
        let inst = fixtures::six_worker_instance();
        assert!(inst.validate().is_empty());
    }

    #[test]
    fn asymmetry_is_reported_once() {
        let inst = fixtures::six_worker_instance();
        let mut d = inst.distances.clone();
        d.set(0, 1, 0.5);
        d.set(1, 0, 0.6);
        let violations = validate_instance(&inst.workers, &inst.task, &d);
        assert_eq!(
            violations,
            vec![Violation::Asymmetry { i: 0, j: 1, forward: 0.5, backward: 0.6 }]
        );
    }

    #[test]
    fn nonzero_diagonal_is_reported() {
        let inst = fixtures::six_worker_instance();
        let mut d = inst.distances.clone();
        d.set(2, 2, 0.1);
        let violations = validate_instance(&inst.workers, &inst.task, &d);
        assert_eq!(violations, vec![Violation::NonzeroDiagonal { i: 2, value: 0.1 }]);
    }

    #[test]
    fn empty_pool_with_one_domain_is_legal() {
        let task = Task::new(vec![0.0], 0.0, 1);
        let d = DistanceMatrix::zeros(0);
        assert!(validate_instance(&[], &task, &d).is_empty());
    }

    #[test]
    fn example_group_with_split_satisfies_all_constraints() {
        let inst = fixtures::six_worker_instance();
        // {u1,u2,u4} and {u3,u6} in 1-based u_k labels.
        let assembly = Assembly::new(vec![vec![0, 1, 3], vec![2, 5]]).unwrap();
        let report = check_feasibility(&assembly, &inst.workers, &inst.task).unwrap();
        assert!(report.all_ok(), "expected all-true flags, got {report:?}");
        // Cost sits exactly on the 3.0 budget; the tolerance must cover it.
        assert!((wage_total(assembly.group(), &inst.workers) - 3.0).abs() < 1e-12);
    }

    #[test]
    fn empty_group_with_zero_task_is_feasible() {
        let task = Task::new(vec![0.0, 0.0, 0.0], 0.0, 1);
        let report = check_feasibility(&Assembly::empty(), &[], &task).unwrap();
        assert!(report.all_ok());
    }

    #[test]
    fn missing_skill_domain_flag_goes_false() {
        let inst = fixtures::six_worker_instance();
        // {u1,u3,u4,u6}: domain d1 sums to 0.66+0.53+0+0 = 1.19 < 1.8.
        let assembly = Assembly::single_group(vec![0, 2, 3, 5]);
        let report = check_feasibility(&assembly, &inst.workers, &inst.task).unwrap();
        assert!(!report.skill[0], "d1 must fail: 1.19 < 1.8");
    }

    #[test]
    fn out_of_range_id_is_an_input_error() {
        let inst = fixtures::six_worker_instance();
        let assembly = Assembly::single_group(vec![0, 17]);
        match check_feasibility(&assembly, &inst.workers, &inst.task) {
            Err(Error::IdOutOfRange { id: 17, n: 6 }) => {}
            other => panic!("expected IdOutOfRange, got {other:?}"),
        }
    }

    #[test]
    fn assembly_rejects_overlap_and_empty_subgroups() {
        assert!(Assembly::new(vec![vec![0, 1], vec![1, 2]]).is_err());
        assert!(Assembly::new(vec![vec![0], vec![]]).is_err());
    }

    #[test]
    fn instance_json_round_trip() {
        let inst = fixtures::six_worker_instance();
        let text = inst.to_json();
        let back = Instance::from_json(&text).unwrap();
        assert_eq!(inst, back);
    }
}
