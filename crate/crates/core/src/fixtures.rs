//! Shared test fixture: the six-worker, three-domain example instance used
//! by the golden tests across modules.

use crate::model::{DistanceMatrix, Instance, Task, Worker};

/// Six workers, three skill domains, thresholds (1.8, 1.4, 1.66), budget
/// 3.0, critical mass 3. Worker `u_k` of the written-out tables is id
/// `k - 1` here.
pub fn six_worker_instance() -> Instance {
    let skills = [
        vec![0.66, 0.0, 0.0],
        vec![1.0, 0.0, 0.33],
        vec![0.53, 0.66, 0.53],
        vec![0.0, 0.73, 0.0],
        vec![0.13, 0.66, 0.8],
        vec![0.0, 0.13, 0.93],
    ];
    let wages = [0.4, 0.3, 0.7, 0.8, 0.5, 0.8];
    let workers = skills
        .into_iter()
        .zip(wages)
        .enumerate()
        .map(|(id, (skills, wage))| Worker::new(id, skills, wage))
        .collect();

    let distances = DistanceMatrix::from_rows(vec![
        vec![0.0, 1.0, 0.66, 0.66, 0.85, 0.66],
        vec![1.0, 0.0, 0.66, 0.85, 0.66, 0.85],
        vec![0.66, 0.66, 0.0, 0.4, 0.66, 0.40],
        vec![0.66, 0.85, 0.4, 0.0, 0.4, 0.0],
        vec![0.85, 0.66, 0.66, 0.4, 0.0, 0.4],
        vec![0.66, 0.85, 0.4, 0.0, 0.4, 0.0],
    ])
    .unwrap();

    Instance::new(3, workers, Task::new(vec![1.8, 1.4, 1.66], 3.0, 3), distances)
}
