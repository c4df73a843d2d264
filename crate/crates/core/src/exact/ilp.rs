//! LP-format text emitter for the pairwise integer program equivalent to
//! the exhaustive solver under the (diameter, summed inter) objective.
//!
//! Variables (all 1-based in the text):
//!
//! - `u_i_j`  — worker `i` sits in subgroup slot `j` (`n` slots; unused
//!   slots stay empty, which fixes the open subgroup count at its upper
//!   bound `n`);
//! - `s_i`    — worker `i` selected, linked to `sum_j u_i_j`;
//! - `e_i_k`  — pair selected: `s_i AND s_k` (three-inequality AND);
//! - `p_i_k_j` — pair co-located in slot `j`: `u_i_j AND u_k_j`;
//! - `c_i_k`  — pair selected across different subgroups:
//!   `e_i_k - sum_j p_i_k_j`;
//! - `t`      — diameter bound, `t >= dist(i,k) * e_i_k` for every pair.
//!
//! Objective: `t + sum_{i<k} dist(i,k) * c_i_k`. Skill, cost, critical
//! mass, and single membership rows quantify over the `u_i_j` exactly as
//! in the source formulation. Output is byte-deterministic for a fixed
//! instance.

use std::fmt::Write;

use crate::model::{DistanceMatrix, Task, Worker};

struct Term {
    coef: f64,
    var: String,
}

fn push_expr(out: &mut String, terms: &[Term]) {
    if terms.is_empty() {
        // Keeps degenerate rows (no workers) parseable: t always exists.
        let _ = write!(out, "0 t");
        return;
    }
    for (idx, term) in terms.iter().enumerate() {
        let coef = term.coef;
        if idx == 0 {
            if coef == 1.0 {
                let _ = write!(out, "{}", term.var);
            } else if coef == -1.0 {
                let _ = write!(out, "- {}", term.var);
            } else {
                let _ = write!(out, "{} {}", coef, term.var);
            }
        } else if coef < 0.0 {
            if coef == -1.0 {
                let _ = write!(out, " - {}", term.var);
            } else {
                let _ = write!(out, " - {} {}", -coef, term.var);
            }
        } else if coef == 1.0 {
            let _ = write!(out, " + {}", term.var);
        } else {
            let _ = write!(out, " + {} {}", coef, term.var);
        }
    }
}

fn push_row(out: &mut String, name: &str, terms: &[Term], sense: &str, rhs: f64) {
    let _ = write!(out, " {name}: ");
    push_expr(out, terms);
    let _ = writeln!(out, " {sense} {rhs}");
}

fn term(coef: f64, var: String) -> Term {
    Term { coef, var }
}

/// Emits the model as LP-format text. Deterministic variable naming and
/// ordering make the output byte-comparable across runs.
pub fn emit_ilp_text(workers: &[Worker], task: &Task, d: &DistanceMatrix) -> String {
    let n = workers.len();
    let m = task.domains();
    let mut out = String::new();
    let _ = writeln!(out, "\\ affinity-aware group formation, pairwise integer program");
    let _ = writeln!(out, "\\ workers: {n}, domains: {m}, critical mass: {}", task.critical_mass);
    let _ = writeln!(out, "Minimize");

    let mut objective = vec![term(1.0, "t".into())];
    for i in 1..=n {
        for k in (i + 1)..=n {
            objective.push(term(d.get(i - 1, k - 1), format!("c_{i}_{k}")));
        }
    }
    let _ = write!(out, " obj: ");
    push_expr(&mut out, &objective);
    out.push('\n');

    let _ = writeln!(out, "Subject To");

    for l in 1..=m {
        let terms: Vec<Term> = (1..=n)
            .flat_map(|i| (1..=n).map(move |j| (i, j)))
            .map(|(i, j)| term(workers[i - 1].skills[l - 1], format!("u_{i}_{j}")))
            .collect();
        push_row(&mut out, &format!("skill_{l}"), &terms, ">=", task.thresholds[l - 1]);
    }

    let cost_terms: Vec<Term> = (1..=n)
        .flat_map(|i| (1..=n).map(move |j| (i, j)))
        .map(|(i, j)| term(workers[i - 1].wage, format!("u_{i}_{j}")))
        .collect();
    push_row(&mut out, "cost", &cost_terms, "<=", task.budget);

    for j in 1..=n {
        let terms: Vec<Term> = (1..=n).map(|i| term(1.0, format!("u_{i}_{j}"))).collect();
        push_row(&mut out, &format!("mass_{j}"), &terms, "<=", task.critical_mass as f64);
    }

    for i in 1..=n {
        let terms: Vec<Term> = (1..=n).map(|j| term(1.0, format!("u_{i}_{j}"))).collect();
        push_row(&mut out, &format!("member_{i}"), &terms, "<=", 1.0);
    }

    for i in 1..=n {
        let mut terms = vec![term(1.0, format!("s_{i}"))];
        terms.extend((1..=n).map(|j| term(-1.0, format!("u_{i}_{j}"))));
        push_row(&mut out, &format!("sel_{i}"), &terms, "=", 0.0);
    }

    for i in 1..=n {
        for k in (i + 1)..=n {
            let e = format!("e_{i}_{k}");
            push_row(
                &mut out,
                &format!("e_ub1_{i}_{k}"),
                &[term(1.0, e.clone()), term(-1.0, format!("s_{i}"))],
                "<=",
                0.0,
            );
            push_row(
                &mut out,
                &format!("e_ub2_{i}_{k}"),
                &[term(1.0, e.clone()), term(-1.0, format!("s_{k}"))],
                "<=",
                0.0,
            );
            push_row(
                &mut out,
                &format!("e_lb_{i}_{k}"),
                &[
                    term(1.0, e),
                    term(-1.0, format!("s_{i}")),
                    term(-1.0, format!("s_{k}")),
                ],
                ">=",
                -1.0,
            );
        }
    }

    for i in 1..=n {
        for k in (i + 1)..=n {
            for j in 1..=n {
                let p = format!("p_{i}_{k}_{j}");
                push_row(
                    &mut out,
                    &format!("p_ub1_{i}_{k}_{j}"),
                    &[term(1.0, p.clone()), term(-1.0, format!("u_{i}_{j}"))],
                    "<=",
                    0.0,
                );
                push_row(
                    &mut out,
                    &format!("p_ub2_{i}_{k}_{j}"),
                    &[term(1.0, p.clone()), term(-1.0, format!("u_{k}_{j}"))],
                    "<=",
                    0.0,
                );
                push_row(
                    &mut out,
                    &format!("p_lb_{i}_{k}_{j}"),
                    &[
                        term(1.0, p),
                        term(-1.0, format!("u_{i}_{j}")),
                        term(-1.0, format!("u_{k}_{j}")),
                    ],
                    ">=",
                    -1.0,
                );
            }
        }
    }

    for i in 1..=n {
        for k in (i + 1)..=n {
            let mut terms = vec![term(1.0, format!("c_{i}_{k}")), term(-1.0, format!("e_{i}_{k}"))];
            terms.extend((1..=n).map(|j| term(1.0, format!("p_{i}_{k}_{j}"))));
            push_row(&mut out, &format!("c_def_{i}_{k}"), &terms, "=", 0.0);
        }
    }

    for i in 1..=n {
        for k in (i + 1)..=n {
            push_row(
                &mut out,
                &format!("dia_{i}_{k}"),
                &[term(1.0, "t".into()), term(-d.get(i - 1, k - 1), format!("e_{i}_{k}"))],
                ">=",
                0.0,
            );
        }
    }

    let _ = writeln!(out, "Binary");
    for i in 1..=n {
        for j in 1..=n {
            let _ = writeln!(out, " u_{i}_{j}");
        }
    }
    for i in 1..=n {
        let _ = writeln!(out, " s_{i}");
    }
    for i in 1..=n {
        for k in (i + 1)..=n {
            let _ = writeln!(out, " e_{i}_{k}");
            let _ = writeln!(out, " c_{i}_{k}");
            for j in 1..=n {
                let _ = writeln!(out, " p_{i}_{k}_{j}");
            }
        }
    }
    let _ = writeln!(out, "End");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn count_rows(text: &str, prefix: &str) -> usize {
        text.lines().filter(|l| l.trim_start().starts_with(prefix)).count()
    }

    #[test]
    fn structural_row_counts() {
        let inst = fixtures::six_worker_instance();
        let text = emit_ilp_text(&inst.workers, &inst.task, &inst.distances);
        assert_eq!(count_rows(&text, "skill_"), 3, "one skill row per domain");
        assert_eq!(count_rows(&text, "cost:"), 1);
        assert_eq!(count_rows(&text, "mass_"), 6, "one critical-mass row per slot");
        assert_eq!(count_rows(&text, "member_"), 6);
        assert_eq!(count_rows(&text, "dia_"), 15, "one diameter row per pair");
    }

    #[test]
    fn single_worker_model_has_no_pair_variables() {
        let workers = vec![Worker::new(0, vec![0.5], 0.2)];
        let task = Task::new(vec![0.4], 1.0, 1);
        let text = emit_ilp_text(&workers, &task, &DistanceMatrix::zeros(1));
        assert!(text.contains("u_1_1"));
        assert!(!text.contains("e_1_"));
        assert!(!text.contains("c_1_"));
        assert!(!text.contains("p_1_"));
    }

    #[test]
    fn output_is_byte_deterministic() {
        let inst = fixtures::six_worker_instance();
        let a = emit_ilp_text(&inst.workers, &inst.task, &inst.distances);
        let b = emit_ilp_text(&inst.workers, &inst.task, &inst.distances);
        assert_eq!(a, b);
    }
}
