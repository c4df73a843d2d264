//! Distance matrix construction from worker attributes or embedded points,
//! and verification of the metric (triangle inequality) assumption that the
//! approximation bounds rely on.

use crate::error::{Error, Result};
use crate::model::DistanceMatrix;

/// One categorical attribute (age bucket, region, ...) with a label per
/// worker. Affinity is 1 for equal labels and 0 otherwise, and distance is
/// `1 - affinity`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AttributeProfile {
    pub labels: Vec<String>,
}

impl AttributeProfile {
    pub fn new(labels: Vec<String>) -> Self {
        Self { labels }
    }

    pub fn from_strs(labels: &[&str]) -> Self {
        Self { labels: labels.iter().map(|s| s.to_string()).collect() }
    }
}

/// Binary attribute distance: 0 when two workers share the label, 1
/// otherwise. Label equality is transitive, so the result is always a
/// pseudometric (it certifies with zero tolerance).
pub fn attribute_distance(profile: &AttributeProfile) -> DistanceMatrix {
    let n = profile.labels.len();
    let mut d = DistanceMatrix::zeros(n);
    for i in 0..n {
        for j in (i + 1)..n {
            if profile.labels[i] != profile.labels[j] {
                d.set_sym(i, j, 1.0);
            }
        }
    }
    d
}

/// Euclidean distance between embedded points, normalized by `sqrt(dim)` so
/// that points inside the unit hypercube map into `[0,1]`. Mixed dimensions
/// are an input error.
pub fn euclidean_distance(points: &[Vec<f64>]) -> Result<DistanceMatrix> {
    let n = points.len();
    let dim = points.first().map_or(0, Vec::len);
    for (i, p) in points.iter().enumerate() {
        if p.len() != dim {
            return Err(Error::InvalidInput(format!(
                "point {i} has dimension {}, expected {dim}",
                p.len()
            )));
        }
    }
    let mut d = DistanceMatrix::zeros(n);
    if dim == 0 {
        return Ok(d);
    }
    let scale = (dim as f64).sqrt();
    for i in 0..n {
        for j in (i + 1)..n {
            let dist2: f64 = points[i]
                .iter()
                .zip(points[j].iter())
                .map(|(a, b)| (a - b) * (a - b))
                .sum();
            // min() only trims float noise at the hypercube diagonal.
            d.set_sym(i, j, (dist2.sqrt() / scale).min(1.0));
        }
    }
    Ok(d)
}

/// Exhaustive triangle inequality check. Returns every triple `(i, j, k)`
/// with `i < j`, `k` distinct from both, and
/// `d(i,j) > d(i,k) + d(k,j) + tol`. Because the matrix is symmetric the
/// `i < j` canonical form covers both orientations of each pair; an empty
/// result certifies the metric assumption.
pub fn metric_violations(d: &DistanceMatrix, tol: f64) -> Vec<(usize, usize, usize)> {
    let n = d.n();
    let mut violations = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            let direct = d.get(i, j);
            for k in 0..n {
                if k == i || k == j {
                    continue;
                }
                if direct > d.get(i, k) + d.get(k, j) + tol {
                    violations.push((i, j, k));
                }
            }
        }
    }
    violations
}
