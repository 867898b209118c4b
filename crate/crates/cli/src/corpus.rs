//! Corpus runner: applies the chosen checks to a batch of graphs in
//! parallel and assembles one deterministic report. Worker count follows
//! the SQUARECHECK_WORKERS environment variable when set.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use squarecheck_core::{
    audit, chromatic_number, find_planar_embedding, solve_list_coloring, AuditVerdict, Graph,
    ListAssignment,
};

use crate::report::RunReport;

pub const SAMPLE_LIST_SIZE: usize = 7;
pub const SAMPLE_POOL: u32 = 14;
pub const WORKERS_ENV: &str = "SQUARECHECK_WORKERS";

#[derive(Debug, Clone, Copy, Default)]
pub struct CorpusTasks {
    /// Exact chromatic number of the square; flags values above 7.
    pub chi_square: bool,
    /// Plane-embedding audit where an embedding exists.
    pub audit: bool,
    /// Random size-7 lists from a 14-color pool, solved on the square; a
    /// falsification probe, not a proof.
    pub sample_lists: Option<(u64, u64)>, // (trials, seed)
}

/// Runs every requested task on every graph. The second component is the
/// overall verdict: true when nothing contradicted the expected behavior.
pub fn run_corpus(graphs: &[Graph], tasks: CorpusTasks) -> (RunReport, bool) {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(
            std::env::var(WORKERS_ENV)
                .ok()
                .and_then(|s| s.parse().ok())
                .unwrap_or(0),
        )
        .build()
        .expect("thread pool construction");
    let results: Vec<(RunReport, bool)> = pool.install(|| {
        graphs
            .par_iter()
            .enumerate()
            .map(|(i, g)| run_one(i, g, tasks))
            .collect()
    });
    let mut report = RunReport::new();
    let mut ok = true;
    report.push("graphs", graphs.len());
    for (sub, sub_ok) in results {
        report.extend(sub);
        ok &= sub_ok;
    }
    report.push("verdict", if ok { "pass" } else { "fail" });
    (report, ok)
}

fn run_one(i: usize, g: &Graph, tasks: CorpusTasks) -> (RunReport, bool) {
    let mut r = RunReport::new();
    let mut ok = true;
    let key = |s: &str| format!("graph.{i}.{s}");
    r.push(key("n"), g.vertex_count());
    r.push(key("m"), g.edge_count());
    if tasks.chi_square {
        match chromatic_number(&g.square()) {
            Ok(chi) => {
                r.push(key("chi_square"), chi);
                if chi > 7 {
                    r.push(key("chi_square_excess"), "true");
                    ok = false;
                }
            }
            Err(e) => {
                r.push(key("chi_square_error"), e);
                ok = false;
            }
        }
    }
    if tasks.audit {
        match find_planar_embedding(g) {
            Ok(Some(e)) => match audit(&e) {
                Ok(report) => {
                    r.push(key("audit.verdict"), verdict_word(report.verdict));
                    r.push(
                        key("audit.failed_predicates"),
                        report.failed_predicates().join(","),
                    );
                    r.push(
                        key("audit.negative_charges"),
                        report.negative_vertices.len() + report.negative_faces.len(),
                    );
                    if report.verdict == AuditVerdict::AnomalousPass {
                        ok = false;
                    }
                }
                Err(e) => {
                    r.push(key("audit.error"), e);
                    ok = false;
                }
            },
            Ok(None) => r.push(key("audit.skipped"), "not planar"),
            Err(e) => {
                r.push(key("audit.skipped"), e);
            }
        }
    }
    if let Some((trials, seed)) = tasks.sample_lists {
        let sq = g.square();
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (i as u64).wrapping_mul(0x9e3779b97f4a7c15));
        let pool: Vec<u32> = (0..SAMPLE_POOL).collect();
        let mut successes = 0u64;
        for _ in 0..trials {
            let lists: Vec<Vec<u32>> = (0..g.vertex_count())
                .map(|_| {
                    let mut l: Vec<u32> = pool
                        .choose_multiple(&mut rng, SAMPLE_LIST_SIZE)
                        .copied()
                        .collect();
                    l.sort_unstable();
                    l
                })
                .collect();
            let lists = ListAssignment::new(lists).expect("sampled lists are nonempty");
            if solve_list_coloring(&sq, &lists).is_some() {
                successes += 1;
            }
        }
        r.push(key("sample_lists.trials"), trials);
        r.push(key("sample_lists.successes"), successes);
        if successes != trials {
            // a failed sample would refute the theorem outright
            ok = false;
        }
    }
    (r, ok)
}

pub fn verdict_word(v: AuditVerdict) -> &'static str {
    match v {
        AuditVerdict::HypothesisViolated => "hypothesis-violated",
        AuditVerdict::ContradictionFound => "contradiction-found",
        AuditVerdict::AnomalousPass => "ANOMALOUS-PASS",
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use squarecheck_core::families::*;

    #[test]
    fn chi_square_on_c7() {
        let (report, ok) = run_corpus(
            &[cycle(7)],
            CorpusTasks {
                chi_square: true,
                ..Default::default()
            },
        );
        assert!(ok);
        assert_eq!(report.get("graph.0.chi_square"), Some("4"));
    }

    #[test]
    fn sample_lists_on_c6_always_succeed() {
        // size-7 lists exceed the degree of square(C6), so greedy always
        // works and every trial must succeed
        let (report, ok) = run_corpus(
            &[cycle(6)],
            CorpusTasks {
                sample_lists: Some((1000, 42)),
                ..Default::default()
            },
        );
        assert!(ok);
        assert_eq!(report.get("graph.0.sample_lists.successes"), Some("1000"));
    }

    #[test]
    fn reports_are_deterministic_for_fixed_seed() {
        let graphs = [cycle(6), cycle(7), complete(4)];
        let tasks = CorpusTasks {
            chi_square: true,
            audit: true,
            sample_lists: Some((50, 7)),
        };
        let (a, _) = run_corpus(&graphs, tasks);
        let (b, _) = run_corpus(&graphs, tasks);
        assert_eq!(a.render(), b.render());
    }

    #[test]
    fn audit_task_reports_contradiction() {
        let (report, ok) = run_corpus(
            &[cycle(7)],
            CorpusTasks {
                audit: true,
                ..Default::default()
            },
        );
        assert!(ok);
        assert_eq!(
            report.get("graph.0.audit.verdict"),
            Some("contradiction-found")
        );
    }
}
