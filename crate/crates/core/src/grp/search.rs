//! Include/exclude tree search over a candidate worker set with
//! branch-and-bound pruning, plus the bucketed (discretized wage) variant
//! whose tree enumerates per-bucket prefix counts.
//!
//! Both trees prune a node as soon as the cost lower bound of the path
//! exceeds the budget or the skill upper bound (included plus everything
//! not yet decided) falls below a threshold. A leaf that survives pruning
//! is exactly a feasible group, so `first_only` can stop at the first leaf
//! reached. Traversal is depth-first with the exclude branch (respectively
//! prefix count 0) visited first; with the default descending-wage order
//! this reaches cheap feasible groups quickly even on large pools.

use crate::model::{Task, Worker, WorkerId, FEAS_TOL};

use super::BucketConfig;

/// Node accounting for one search run.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SearchStats {
    /// Nodes entered (including pruned ones and leaves).
    pub nodes: u64,
    /// Feasible leaves reached.
    pub leaves: u64,
    /// Subtrees cut by the cost or skill bound.
    pub pruned: u64,
}

pub(super) struct PlainSearch<'a> {
    workers: &'a [Worker],
    thresholds: &'a [f64],
    budget: f64,
    order: &'a [WorkerId],
    /// `suffix[t * m + dom]`: total skill in `dom` over positions `t..`.
    suffix: Vec<f64>,
    m: usize,
    first_only: bool,
    included: Vec<WorkerId>,
    skill: Vec<f64>,
    cost: f64,
    done: bool,
    pub out: Vec<Vec<WorkerId>>,
    pub stats: SearchStats,
}

impl<'a> PlainSearch<'a> {
    pub fn new(workers: &'a [Worker], task: &'a Task, order: &'a [WorkerId], first_only: bool) -> Self {
        let m = task.domains();
        let mut suffix = vec![0.0; (order.len() + 1) * m];
        for t in (0..order.len()).rev() {
            let skills = &workers[order[t]].skills;
            for dom in 0..m {
                suffix[t * m + dom] = suffix[(t + 1) * m + dom] + skills[dom];
            }
        }
        Self {
            workers,
            thresholds: &task.thresholds,
            budget: task.budget,
            order,
            suffix,
            m,
            first_only,
            included: Vec::new(),
            skill: vec![0.0; m],
            cost: 0.0,
            done: false,
            out: Vec::new(),
            stats: SearchStats::default(),
        }
    }

    pub fn run(&mut self) {
        self.visit(0);
    }

    fn visit(&mut self, t: usize) {
        self.stats.nodes += 1;
        if self.cost > self.budget + FEAS_TOL {
            self.stats.pruned += 1;
            return;
        }
        for dom in 0..self.m {
            if self.skill[dom] + self.suffix[t * self.m + dom] < self.thresholds[dom] - FEAS_TOL {
                self.stats.pruned += 1;
                return;
            }
        }
        if t == self.order.len() {
            self.stats.leaves += 1;
            let mut group = self.included.clone();
            group.sort_unstable();
            self.out.push(group);
            if self.first_only {
                self.done = true;
            }
            return;
        }

        self.visit(t + 1);
        if self.done {
            return;
        }

        let id = self.order[t];
        let saved_cost = self.cost;
        let saved_skill = self.skill.clone();
        self.cost += self.workers[id].wage;
        for (acc, &s) in self.skill.iter_mut().zip(self.workers[id].skills.iter()) {
            *acc += s;
        }
        self.included.push(id);
        self.visit(t + 1);
        self.included.pop();
        self.cost = saved_cost;
        self.skill = saved_skill;
    }
}

pub(super) struct BucketSearch<'a> {
    thresholds: &'a [f64],
    budget: f64,
    /// Candidate ids per bucket, sorted by descending skill score.
    members: Vec<Vec<WorkerId>>,
    representatives: Vec<f64>,
    /// `prefix[b][c]`: per-domain skill of the first `c` members of bucket `b`.
    prefix: Vec<Vec<Vec<f64>>>,
    /// `suffix_all[b][dom]`: total skill over every candidate in buckets `b..`.
    suffix_all: Vec<Vec<f64>>,
    m: usize,
    first_only: bool,
    counts: Vec<usize>,
    skill: Vec<f64>,
    cost: f64,
    done: bool,
    pub out: Vec<Vec<WorkerId>>,
    pub stats: SearchStats,
}

impl<'a> BucketSearch<'a> {
    pub fn new(
        workers: &'a [Worker],
        task: &'a Task,
        candidates: &[WorkerId],
        buckets: &BucketConfig,
        first_only: bool,
    ) -> Self {
        let m = task.domains();
        let k = buckets.k();
        let mut members: Vec<Vec<WorkerId>> = vec![Vec::new(); k];
        for &id in candidates {
            members[buckets.bucket_of(workers[id].wage)].push(id);
        }
        // Within a bucket every wage is the same representative, so trading
        // a member for a higher-score one never hurts: prefixes of this
        // order cover the bucket's useful selections.
        let score = |id: WorkerId| -> f64 {
            workers[id]
                .skills
                .iter()
                .zip(task.thresholds.iter())
                .map(|(&s, &q)| s / q.max(1.0))
                .sum()
        };
        for bucket in &mut members {
            bucket.sort_by(|&a, &b| {
                score(b).partial_cmp(&score(a)).expect("skill score is NaN").then(a.cmp(&b))
            });
        }

        let prefix: Vec<Vec<Vec<f64>>> = members
            .iter()
            .map(|bucket| {
                let mut acc = vec![vec![0.0; m]];
                for &id in bucket {
                    let mut next = acc.last().expect("non-empty prefix table").clone();
                    for (n, &s) in next.iter_mut().zip(workers[id].skills.iter()) {
                        *n += s;
                    }
                    acc.push(next);
                }
                acc
            })
            .collect();

        let mut suffix_all = vec![vec![0.0; m]; k + 1];
        for b in (0..k).rev() {
            let full = prefix[b].last().expect("non-empty prefix table");
            for dom in 0..m {
                suffix_all[b][dom] = suffix_all[b + 1][dom] + full[dom];
            }
        }

        Self {
            thresholds: &task.thresholds,
            budget: task.budget,
            members,
            representatives: (0..k).map(|b| buckets.representative(b)).collect(),
            prefix,
            suffix_all,
            m,
            first_only,
            counts: Vec::new(),
            skill: vec![0.0; m],
            cost: 0.0,
            done: false,
            out: Vec::new(),
            stats: SearchStats::default(),
        }
    }

    pub fn run(&mut self) {
        self.visit(0);
    }

    fn visit(&mut self, b: usize) {
        self.stats.nodes += 1;
        if self.cost > self.budget + FEAS_TOL {
            self.stats.pruned += 1;
            return;
        }
        for dom in 0..self.m {
            if self.skill[dom] + self.suffix_all[b][dom] < self.thresholds[dom] - FEAS_TOL {
                self.stats.pruned += 1;
                return;
            }
        }
        if b == self.members.len() {
            self.stats.leaves += 1;
            let mut group: Vec<WorkerId> = self
                .counts
                .iter()
                .enumerate()
                .flat_map(|(bucket, &c)| self.members[bucket][..c].iter().copied())
                .collect();
            group.sort_unstable();
            self.out.push(group);
            if self.first_only {
                self.done = true;
            }
            return;
        }

        let saved_cost = self.cost;
        let saved_skill = self.skill.clone();
        for c in 0..=self.members[b].len() {
            self.cost = saved_cost + c as f64 * self.representatives[b];
            for (dom, acc) in self.skill.iter_mut().enumerate() {
                *acc = saved_skill[dom] + self.prefix[b][c][dom];
            }
            self.counts.push(c);
            self.visit(b + 1);
            self.counts.pop();
            if self.done {
                break;
            }
        }
        self.cost = saved_cost;
        self.skill = saved_skill;
    }
}
