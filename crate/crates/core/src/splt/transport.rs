//! Exact solver for the capacity-constrained assignment subproblem:
//! minimum-cost flow by successive shortest augmenting paths on the
//! bipartite row/column graph. Row count and column capacities are small
//! here (one row per non-center worker), so the generic polynomial method
//! is plenty; paths are found with Bellman-Ford over the residual graph,
//! which stays correct once residual arcs carry negative costs.

use crate::error::{Error, Result};

use super::TransportationInstance;

#[derive(Debug, Clone, Copy)]
struct Arc {
    to: usize,
    cap: i64,
    cost: f64,
    /// Index of the reverse arc in `graph[to]`.
    rev: usize,
}

struct FlowGraph {
    graph: Vec<Vec<Arc>>,
}

impl FlowGraph {
    fn new(nodes: usize) -> Self {
        Self { graph: vec![Vec::new(); nodes] }
    }

    fn add_edge(&mut self, from: usize, to: usize, cap: i64, cost: f64) {
        let rev_from = self.graph[to].len();
        let rev_to = self.graph[from].len();
        self.graph[from].push(Arc { to, cap, cost, rev: rev_from });
        self.graph[to].push(Arc { to: from, cap: 0, cost: -cost, rev: rev_to });
    }

    /// One Bellman-Ford pass; returns per-node (distance, incoming arc).
    fn shortest_path(&self, source: usize) -> Vec<(f64, Option<(usize, usize)>)> {
        let n = self.graph.len();
        let mut state: Vec<(f64, Option<(usize, usize)>)> = vec![(f64::INFINITY, None); n];
        state[source].0 = 0.0;
        let mut queue = std::collections::VecDeque::from([source]);
        let mut queued = vec![false; n];
        queued[source] = true;
        while let Some(u) = queue.pop_front() {
            queued[u] = false;
            let du = state[u].0;
            for (idx, arc) in self.graph[u].iter().enumerate() {
                if arc.cap > 0 && du + arc.cost < state[arc.to].0 - 1e-15 {
                    state[arc.to] = (du + arc.cost, Some((u, idx)));
                    if !queued[arc.to] {
                        queued[arc.to] = true;
                        queue.push_back(arc.to);
                    }
                }
            }
        }
        state
    }
}

/// Solves the instance exactly. Returns the per-row column assignment; the
/// instance must have as many units of column capacity as rows.
pub(super) fn solve(inst: &TransportationInstance) -> Result<Vec<usize>> {
    let rows = inst.costs.len();
    let cols = inst.capacities.len();
    let total_cap: usize = inst.capacities.iter().sum();
    if total_cap != rows {
        return Err(Error::InvalidInput(format!(
            "transportation capacities sum to {total_cap}, expected {rows} rows"
        )));
    }
    for (r, row) in inst.costs.iter().enumerate() {
        if row.len() != cols {
            return Err(Error::InvalidInput(format!(
                "transportation cost row {r} has {} columns, expected {cols}",
                row.len()
            )));
        }
        if row.iter().any(|c| !c.is_finite() || *c < 0.0) {
            return Err(Error::InvalidInput(format!(
                "transportation cost row {r} has a negative or non-finite entry"
            )));
        }
    }
    if rows == 0 {
        return Ok(Vec::new());
    }

    // Nodes: 0 = source, 1..=rows, rows+1..=rows+cols, last = sink.
    let source = 0;
    let sink = rows + cols + 1;
    let mut net = FlowGraph::new(rows + cols + 2);
    for r in 0..rows {
        net.add_edge(source, 1 + r, 1, 0.0);
        for c in 0..cols {
            net.add_edge(1 + r, 1 + rows + c, 1, inst.costs[r][c]);
        }
    }
    for c in 0..cols {
        net.add_edge(1 + rows + c, sink, inst.capacities[c] as i64, 0.0);
    }

    for _ in 0..rows {
        let state = net.shortest_path(source);
        if state[sink].0.is_infinite() {
            return Err(Error::InvalidInput("transportation instance has no full assignment".into()));
        }
        // Augment one unit along the path.
        let mut v = sink;
        while v != source {
            let (u, idx) = state[v].1.expect("path is connected");
            let rev = net.graph[u][idx].rev;
            net.graph[u][idx].cap -= 1;
            net.graph[v][rev].cap += 1;
            v = u;
        }
    }

    let mut assignment = vec![usize::MAX; rows];
    for (r, slot) in assignment.iter_mut().enumerate() {
        for arc in &net.graph[1 + r] {
            let is_column = (1 + rows..1 + rows + cols).contains(&arc.to);
            if is_column && arc.cap == 0 {
                *slot = arc.to - 1 - rows;
            }
        }
        debug_assert_ne!(*slot, usize::MAX, "row {r} left unassigned");
    }
    Ok(assignment)
}
