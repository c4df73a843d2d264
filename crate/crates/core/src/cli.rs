//! Command-line front end: instance ingestion, solver dispatch, simulator
//! driving, metric certification, and the LP emitter. Exit codes: 0 on
//! success, 1 when the instance is infeasible, 2 on input or usage errors
//! (clap itself exits 2 on parse failures).

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use rand::prelude::*;
use serde::Serialize;

use crate::affinity::{euclidean_distance, metric_violations};
use crate::error::{Error, Result};
use crate::exact::emit_ilp_text;
use crate::model::{DistanceMode, Instance, ObjectiveSpec, Task, WorkerId};
use crate::pipeline::{solve, Algorithm, SolveOptions};
use crate::sim::{metrics_to_csv, run_simulation, sample_worker, SimAlgorithm, SimConfig};
use crate::splt::{
    brute_force_partition, greedy_partition, min_star_partition_with, PartitionOutcome,
    StarCostModel, DEFAULT_CENTER_LIMIT,
};

pub const EXIT_OK: u8 = 0;
pub const EXIT_INFEASIBLE: u8 = 1;
pub const EXIT_INPUT: u8 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "teamform",
    version,
    about = "Form cohesive worker groups under skill and budget constraints, split them into size-bounded subgroups, and benchmark the solvers on a synthetic crowd"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum AlgoArg {
    Exact,
    OptGrp,
    ApprxGrp,
    GrpSplit,
    Greedy,
    ConsKOpt,
    ConsKApprx,
}

impl From<AlgoArg> for Algorithm {
    fn from(value: AlgoArg) -> Self {
        match value {
            AlgoArg::Exact => Algorithm::Exact,
            AlgoArg::OptGrp => Algorithm::OptGrp,
            AlgoArg::ApprxGrp => Algorithm::ApprxGrp,
            AlgoArg::GrpSplit => Algorithm::GrpSplit,
            AlgoArg::Greedy => Algorithm::Greedy,
            AlgoArg::ConsKOpt => Algorithm::ConsKOpt,
            AlgoArg::ConsKApprx => Algorithm::ConsKApprx,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Dia,
    Sum,
}

impl From<ModeArg> for DistanceMode {
    fn from(value: ModeArg) -> Self {
        match value {
            ModeArg::Dia => DistanceMode::Dia,
            ModeArg::Sum => DistanceMode::Sum,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PartitionAlgoArg {
    MinStar,
    Greedy,
    Brute,
    BruteBalanced,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SimAlgoArg {
    GrpSplit,
    GreedyBaseline,
    Exact,
}

impl From<SimAlgoArg> for SimAlgorithm {
    fn from(value: SimAlgoArg) -> Self {
        match value {
            SimAlgoArg::GrpSplit => SimAlgorithm::GrpSplit,
            SimAlgoArg::GreedyBaseline => SimAlgorithm::GreedyBaseline,
            SimAlgoArg::Exact => SimAlgorithm::ExactOverall,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve an instance end to end and print a JSON report.
    Solve {
        #[arg(long, value_enum, default_value_t = AlgoArg::Exact)]
        algo: AlgoArg,
        /// Intra-group aggregation.
        #[arg(long, value_enum, default_value_t = ModeArg::Dia)]
        intra: ModeArg,
        /// Cross-subgroup aggregation.
        #[arg(long, value_enum, default_value_t = ModeArg::Sum)]
        inter: ModeArg,
        /// Wage bucket count for the cons-k variants.
        #[arg(long, default_value_t = 15)]
        k_buckets: usize,
        /// Seed for the random baseline.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Center enumeration cap of the partition stage.
        #[arg(long, default_value_t = DEFAULT_CENTER_LIMIT)]
        limit_centers: u64,
        /// Instance JSON file.
        instance: PathBuf,
    },
    /// Partition an explicit worker group of an instance.
    Partition {
        /// Comma-separated worker ids forming the group.
        #[arg(long, value_delimiter = ',', required = true)]
        group: Vec<WorkerId>,
        /// Subgroup size cap; defaults to the instance's critical mass.
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, value_enum, default_value_t = PartitionAlgoArg::MinStar)]
        algo: PartitionAlgoArg,
        #[arg(long, default_value_t = DEFAULT_CENTER_LIMIT)]
        limit_centers: u64,
        /// Instance JSON file.
        instance: PathBuf,
    },
    /// Run the crowd simulator and emit per-task metrics as CSV.
    Simulate {
        /// Simulator config JSON; defaults apply when omitted.
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = SimAlgoArg::GrpSplit)]
        algo: SimAlgoArg,
        /// Overrides the config seed.
        #[arg(long)]
        seed: Option<u64>,
        /// Write the CSV here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Certify the triangle inequality on an instance's distance matrix.
    CheckMetric {
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        /// Instance JSON file.
        instance: PathBuf,
    },
    /// Emit the instance's integer program as LP-format text.
    EmitIlp {
        /// Write the model here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Instance JSON file.
        instance: PathBuf,
    },
    /// Generate a synthetic instance JSON.
    Gen {
        #[arg(long, default_value_t = 20)]
        workers: usize,
        #[arg(long, default_value_t = 1)]
        domains: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Per-domain skill threshold; defaults to a quarter of the
        /// expected pool skill.
        #[arg(long)]
        threshold: Option<f64>,
        /// Cost budget; defaults to 30% of the expected pool wage.
        #[arg(long)]
        budget: Option<f64>,
        #[arg(long, default_value_t = 3)]
        critical_mass: usize,
        /// Write the instance here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Serialize)]
struct PartitionOutput<'a> {
    algorithm: &'a str,
    k: usize,
    group: &'a [WorkerId],
    subgroups: &'a [Vec<WorkerId>],
    inter_value: f64,
    fallback: bool,
}

#[derive(Serialize)]
struct MetricOutput {
    count: usize,
    violations: Vec<(usize, usize, usize)>,
}

fn load_instance(path: &Path) -> Result<Instance> {
    let inst = Instance::from_path(path)?;
    let violations = inst.validate();
    if !violations.is_empty() {
        let lines: Vec<String> = violations.iter().map(|v| v.to_string()).collect();
        return Err(Error::InvalidInput(format!("instance invalid:\n  {}", lines.join("\n  "))));
    }
    Ok(inst)
}

fn write_or_print(out: Option<&Path>, content: &str) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, content)?,
        None => print!("{content}"),
    }
    Ok(())
}

/// Executes a parsed command; the returned byte is the process exit code.
pub fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Solve { algo, intra, inter, k_buckets, seed, limit_centers, instance } => {
            let inst = load_instance(&instance)?;
            let opts = SolveOptions {
                objective: ObjectiveSpec { intra: intra.into(), inter: inter.into() },
                k_buckets,
                seed,
                center_limit: limit_centers,
                ..SolveOptions::default()
            };
            match solve(&inst, algo.into(), &opts)? {
                Some(report) => {
                    println!("{}", report.to_json_pretty());
                    Ok(EXIT_OK)
                }
                None => {
                    println!("{{\"feasible\": false}}");
                    Ok(EXIT_INFEASIBLE)
                }
            }
        }
        Command::Partition { group, k, algo, limit_centers, instance } => {
            let inst = load_instance(&instance)?;
            let mut ids = group;
            ids.sort_unstable();
            ids.dedup();
            for &id in &ids {
                if id >= inst.workers.len() {
                    return Err(Error::IdOutOfRange { id, n: inst.workers.len() });
                }
            }
            if ids.is_empty() {
                return Err(Error::InvalidInput("partition group is empty".into()));
            }
            let k = k.unwrap_or(inst.task.critical_mass);
            if k == 0 {
                return Err(Error::InvalidInput("k must be at least 1".into()));
            }
            let d = &inst.distances;
            let (name, outcome): (&str, PartitionOutcome) = match algo {
                PartitionAlgoArg::MinStar => (
                    "min-star",
                    min_star_partition_with(&ids, k, d, StarCostModel::OwnCenter, limit_centers),
                ),
                PartitionAlgoArg::Greedy => ("greedy", greedy_partition(&ids, k, d, None)?),
                PartitionAlgoArg::Brute => ("brute", brute_force_partition(&ids, k, d, false)?),
                PartitionAlgoArg::BruteBalanced => {
                    ("brute-balanced", brute_force_partition(&ids, k, d, true)?)
                }
            };
            let output = PartitionOutput {
                algorithm: name,
                k,
                group: &ids,
                subgroups: &outcome.subgroups,
                inter_value: outcome.inter,
                fallback: outcome.fallback,
            };
            println!("{}", serde_json::to_string_pretty(&output)?);
            Ok(EXIT_OK)
        }
        Command::Simulate { config, algo, seed, out } => {
            let cfg: SimConfig = match config {
                Some(path) => serde_json::from_str(&std::fs::read_to_string(path)?)?,
                None => SimConfig::default(),
            };
            let seed = seed.unwrap_or(cfg.seed);
            let rows = run_simulation(&cfg, algo.into(), seed)?;
            write_or_print(out.as_deref(), &metrics_to_csv(&rows))?;
            Ok(EXIT_OK)
        }
        Command::CheckMetric { tol, instance } => {
            let inst = load_instance(&instance)?;
            let violations = metric_violations(&inst.distances, tol);
            let output = MetricOutput { count: violations.len(), violations };
            println!("{}", serde_json::to_string_pretty(&output)?);
            Ok(EXIT_OK)
        }
        Command::EmitIlp { out, instance } => {
            let inst = load_instance(&instance)?;
            let text = emit_ilp_text(&inst.workers, &inst.task, &inst.distances);
            write_or_print(out.as_deref(), &text)?;
            Ok(EXIT_OK)
        }
        Command::Gen { workers, domains, seed, threshold, budget, critical_mass, out } => {
            if domains == 0 {
                return Err(Error::InvalidInput("domains must be at least 1".into()));
            }
            if critical_mass == 0 {
                return Err(Error::InvalidInput("critical mass must be at least 1".into()));
            }
            let cfg = SimConfig::default();
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let mut pool = Vec::with_capacity(workers);
            let mut points = Vec::with_capacity(workers);
            for id in 0..workers {
                let (worker, point) = sample_worker(&mut rng, id, domains, &cfg);
                pool.push(worker);
                points.push(point);
            }
            let distances = euclidean_distance(&points)?;
            let threshold =
                threshold.unwrap_or(0.25 * workers as f64 * cfg.skill_mean).max(0.0);
            let budget = budget.unwrap_or(0.3 * workers as f64 * cfg.wage_mean).max(0.0);
            let task = Task::new(vec![threshold; domains], budget, critical_mass);
            let inst = Instance::new(domains, pool, task, distances);
            write_or_print(out.as_deref(), &format!("{}\n", inst.to_json()))?;
            Ok(EXIT_OK)
        }
    }
}
