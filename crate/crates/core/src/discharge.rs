//! Charge bookkeeping on plane embeddings, the two discharging rules, the
//! cyclic mark-spacing bound, and the minimal-counterexample audit.
//!
//! The audit exists to be failed: on any input meeting the hypotheses, at
//! least one structural predicate must fail or some final charge must go
//! negative. An input that passes everything is an anomaly, reported as
//! such rather than silently accepted.

use num_rational::Rational64;
use num_traits::Zero;
use thiserror::Error;

use crate::embed::PlaneEmbedding;
use crate::graph::Graph;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DischargeError {
    #[error("total initial charge is {0}, expected -12")]
    EulerMismatch(Rational64),
    #[error("cycle length {0} outside the supported range 7..=40")]
    OutOfRange(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Target {
    Vertex(usize),
    Face(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Transfer {
    pub from_face: usize,
    pub to: Target,
    pub amount: Rational64,
}

/// Exact rational charges on vertices and faces, with the transfer log
/// that produced them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChargeLedger {
    pub vertex_charge: Vec<Rational64>,
    pub face_charge: Vec<Rational64>,
    pub transfers: Vec<Transfer>,
}

impl ChargeLedger {
    pub fn total(&self) -> Rational64 {
        self.vertex_charge.iter().sum::<Rational64>() + self.face_charge.iter().sum::<Rational64>()
    }
}

/// Charge `2d(x) - 6` on each vertex and `len - 6` on each face. The total
/// is `-12` on every connected plane embedding; anything else means the
/// embedding itself is broken.
pub fn initial_charges(e: &PlaneEmbedding) -> Result<ChargeLedger, DischargeError> {
    let g = e.graph();
    let ledger = ChargeLedger {
        vertex_charge: (0..g.vertex_count())
            .map(|v| Rational64::from_integer(2 * g.degree(v) as i64 - 6))
            .collect(),
        face_charge: (0..e.face_count())
            .map(|f| Rational64::from_integer(e.face_len(f) as i64 - 6))
            .collect(),
        transfers: Vec::new(),
    };
    let total = ledger.total();
    if total != Rational64::from_integer(-12) {
        return Err(DischargeError::EulerMismatch(total));
    }
    Ok(ledger)
}

/// Both discharging rules: every face of length at least 7 gives charge 1
/// to each 2-vertex on it (per incidence) and charge 1 to each adjacent
/// 3-face (per big face, regardless of how many edges they share). The
/// total is conserved exactly.
pub fn apply_rules(e: &PlaneEmbedding, ledger: &ChargeLedger) -> ChargeLedger {
    let one = Rational64::from_integer(1);
    let mut out = ledger.clone();
    let stats = e.face_stats();
    let face_edge_sets: Vec<Vec<(usize, usize)>> = e
        .faces()
        .iter()
        .map(|walk| {
            let mut es: Vec<(usize, usize)> =
                walk.iter().map(|&(u, v)| (u.min(v), u.max(v))).collect();
            es.sort_unstable();
            es.dedup();
            es
        })
        .collect();
    for (f, info) in stats.faces.iter().enumerate() {
        if info.length < 7 {
            continue;
        }
        for &v in &info.two_vertices {
            out.transfers.push(Transfer {
                from_face: f,
                to: Target::Vertex(v),
                amount: one,
            });
            out.face_charge[f] -= one;
            out.vertex_charge[v] += one;
        }
        for t in 0..e.face_count() {
            if t == f || e.face_len(t) != 3 {
                continue;
            }
            let shares_edge = face_edge_sets[t]
                .iter()
                .any(|edge| face_edge_sets[f].binary_search(edge).is_ok());
            if shares_edge {
                out.transfers.push(Transfer {
                    from_face: f,
                    to: Target::Face(t),
                    amount: one,
                });
                out.face_charge[f] -= one;
                out.face_charge[t] += one;
            }
        }
    }
    debug_assert_eq!(out.total(), ledger.total());
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum MarkKind {
    Vertex,
    Edge,
}

/// Maximum number of marks placeable on a cycle of `len` positions, where a
/// vertex-mark occupies one position, an edge-mark occupies two consecutive
/// positions, and cyclic footprint distances obey vertex-vertex >= 4,
/// vertex-edge >= 4, edge-edge >= 3. Exhaustive, so the returned maximum is
/// exact.
pub fn spacing_max_marks(len: usize) -> Result<usize, DischargeError> {
    if !(7..=40).contains(&len) {
        return Err(DischargeError::OutOfRange(len));
    }
    fn footprint(kind: MarkKind, start: usize, len: usize) -> Vec<usize> {
        match kind {
            MarkKind::Vertex => vec![start],
            MarkKind::Edge => vec![start, (start + 1) % len],
        }
    }
    fn cyc_dist(a: usize, b: usize, len: usize) -> usize {
        let d = a.abs_diff(b);
        d.min(len - d)
    }
    fn compatible(a: (MarkKind, usize), b: (MarkKind, usize), len: usize) -> bool {
        let need = match (a.0, b.0) {
            (MarkKind::Edge, MarkKind::Edge) => 3,
            _ => 4,
        };
        let fa = footprint(a.0, a.1, len);
        let fb = footprint(b.0, b.1, len);
        fa.iter()
            .all(|&x| fb.iter().all(|&y| cyc_dist(x, y, len) >= need))
    }
    fn recurse(
        len: usize,
        next_start: usize,
        placed: &mut Vec<(MarkKind, usize)>,
        best: &mut usize,
    ) {
        *best = (*best).max(placed.len());
        for start in next_start..len {
            for kind in [MarkKind::Vertex, MarkKind::Edge] {
                let mark = (kind, start);
                if placed.iter().all(|&p| compatible(p, mark, len)) {
                    placed.push(mark);
                    recurse(len, start + 1, placed, best);
                    placed.pop();
                }
            }
        }
    }
    let mut best = 0;
    recurse(len, 0, &mut Vec::new(), &mut best);
    Ok(best)
}

pub const PREDICATE_NAMES: [&str; 9] = [
    "no-1-vertex",
    "2-vertices-spread",
    "no-2-vertex-cut",
    "no-2-vertex-on-6-cycle",
    "no-2-vertex-on-3-cycle",
    "no-6-cycle-by-3-cycle",
    "3-cycles-spread",
    "3-cycle-far-from-2-vertex",
    "face-mark-budget",
];

#[derive(Debug, Clone)]
pub struct PredicateResult {
    pub name: &'static str,
    pub holds: bool,
    /// Human-readable account of the first violation, if any.
    pub violation: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AuditVerdict {
    /// Some hypothesis of the theorem fails, so the audit carries no weight.
    HypothesisViolated,
    /// A predicate failed or a final charge is negative: the input cannot be
    /// a minimal counterexample. This is the expected outcome.
    ContradictionFound,
    /// Everything passed, which contradicts the theorem; report loudly.
    AnomalousPass,
}

#[derive(Debug, Clone)]
pub struct AuditReport {
    /// Failed hypotheses (connected and max degree 3 with no 4- or 5-cycle),
    /// empty when the input qualifies.
    pub hypothesis_failures: Vec<String>,
    pub predicates: Vec<PredicateResult>,
    pub initial: ChargeLedger,
    pub final_ledger: ChargeLedger,
    pub negative_vertices: Vec<(usize, Rational64)>,
    pub negative_faces: Vec<(usize, Rational64)>,
    pub verdict: AuditVerdict,
}

impl AuditReport {
    pub fn failed_predicates(&self) -> Vec<&'static str> {
        self.predicates
            .iter()
            .filter(|p| !p.holds)
            .map(|p| p.name)
            .collect()
    }

    pub fn predicate(&self, name: &str) -> Option<&PredicateResult> {
        self.predicates.iter().find(|p| p.name == name)
    }
}

fn cycles_up_to_6(g: &Graph) -> Vec<Vec<Vec<usize>>> {
    g.girth_and_cycles(6)
        .expect("k_max 6 is within the enumeration bound")
        .1
}

fn cycle_shares_edge(g_cycle: &[usize], other: &[usize]) -> bool {
    let edges = |c: &[usize]| -> Vec<(usize, usize)> {
        (0..c.len())
            .map(|i| {
                let (a, b) = (c[i], c[(i + 1) % c.len()]);
                (a.min(b), a.max(b))
            })
            .collect()
    };
    let ea = edges(g_cycle);
    edges(other).iter().any(|e| ea.contains(e))
}

fn evaluate_predicates(e: &PlaneEmbedding) -> Vec<PredicateResult> {
    let g = e.graph();
    let n = g.vertex_count();
    let cycles = cycles_up_to_6(g);
    let triangles = &cycles[3];
    let six_cycles = &cycles[6];
    let two_vertices: Vec<usize> = (0..n).filter(|&v| g.degree(v) == 2).collect();
    let mut results = Vec::with_capacity(9);
    let mut push = |name: &'static str, violation: Option<String>| {
        results.push(PredicateResult {
            name,
            holds: violation.is_none(),
            violation,
        });
    };

    push(
        PREDICATE_NAMES[0],
        (0..n)
            .find(|&v| g.degree(v) == 1)
            .map(|v| format!("vertex {v} has degree 1")),
    );

    let mut close_pair = None;
    'outer: for (i, &u) in two_vertices.iter().enumerate() {
        let dist = g.distances_from(u);
        for &v in &two_vertices[i + 1..] {
            if dist[v].finite().is_some_and(|d| d < 4) {
                close_pair = Some(format!("2-vertices {u} and {v} are within distance 3"));
                break 'outer;
            }
        }
    }
    push(PREDICATE_NAMES[1], close_pair);

    let cuts = g.articulation_points();
    push(
        PREDICATE_NAMES[2],
        two_vertices
            .iter()
            .find(|v| cuts.contains(v))
            .map(|v| format!("2-vertex {v} is a cut vertex")),
    );

    push(
        PREDICATE_NAMES[3],
        six_cycles
            .iter()
            .find(|c| c.iter().any(|&v| g.degree(v) == 2))
            .map(|c| format!("6-cycle {c:?} contains a 2-vertex")),
    );

    push(
        PREDICATE_NAMES[4],
        triangles
            .iter()
            .find(|c| c.iter().any(|&v| g.degree(v) == 2))
            .map(|c| format!("3-cycle {c:?} contains a 2-vertex")),
    );

    let mut six_by_three = None;
    'outer: for c6 in six_cycles {
        for c3 in triangles {
            if cycle_shares_edge(c6, c3) {
                six_by_three = Some(format!("6-cycle {c6:?} shares an edge with 3-cycle {c3:?}"));
                break 'outer;
            }
        }
    }
    push(PREDICATE_NAMES[5], six_by_three);

    let mut tri_close = None;
    'outer: for (i, a) in triangles.iter().enumerate() {
        for b in &triangles[i + 1..] {
            let d = g
                .set_distance(a, b)
                .expect("cycle vertices are in range")
                .finite();
            if d.is_some_and(|d| d < 3) {
                tri_close = Some(format!("3-cycles {a:?} and {b:?} are within distance 2"));
                break 'outer;
            }
        }
    }
    push(PREDICATE_NAMES[6], tri_close);

    let mut tri_near_two = None;
    'outer: for t in triangles {
        for &v in &two_vertices {
            let d = g
                .set_distance(t, &[v])
                .expect("cycle vertices are in range")
                .finite();
            if d.is_some_and(|d| d < 4) {
                tri_near_two = Some(format!("3-cycle {t:?} is within distance 3 of 2-vertex {v}"));
                break 'outer;
            }
        }
    }
    push(PREDICATE_NAMES[7], tri_near_two);

    // mark budget: 2-vertices on a big face plus 3-cycles adjacent to it
    // (as cycles, not only as faces) must fit in floor(len/4)
    let stats = e.face_stats();
    let mut over_budget = None;
    for (f, info) in stats.faces.iter().enumerate() {
        if info.length < 7 {
            continue;
        }
        let marks = info.two_vertices.len() + info.adjacent_triangles.len();
        if marks > info.length / 4 {
            over_budget = Some(format!(
                "face {f} of length {} carries {marks} marks, budget {}",
                info.length,
                info.length / 4
            ));
            break;
        }
    }
    push(PREDICATE_NAMES[8], over_budget);

    results
}

fn hypothesis_failures(g: &Graph) -> Vec<String> {
    let mut out = Vec::new();
    if g.max_degree() > 3 {
        out.push(format!("maximum degree {} exceeds 3", g.max_degree()));
    }
    let cycles = g
        .girth_and_cycles(5)
        .expect("k_max 5 is within the enumeration bound")
        .1;
    if let Some(c) = cycles[4].first() {
        out.push(format!("contains the 4-cycle {c:?}"));
    }
    if let Some(c) = cycles[5].first() {
        out.push(format!("contains the 5-cycle {c:?}"));
    }
    out
}

/// Full minimal-counterexample audit: hypothesis screen, the nine
/// structural predicates, and the charge ledger before and after the
/// discharging rules. Connectivity is guaranteed by the embedding itself.
pub fn audit(e: &PlaneEmbedding) -> Result<AuditReport, DischargeError> {
    let hypothesis_failures = hypothesis_failures(e.graph());
    let predicates = evaluate_predicates(e);
    let initial = initial_charges(e)?;
    let final_ledger = apply_rules(e, &initial);
    let negative_vertices: Vec<(usize, Rational64)> = final_ledger
        .vertex_charge
        .iter()
        .enumerate()
        .filter(|(_, c)| **c < Rational64::zero())
        .map(|(v, c)| (v, *c))
        .collect();
    let negative_faces: Vec<(usize, Rational64)> = final_ledger
        .face_charge
        .iter()
        .enumerate()
        .filter(|(_, c)| **c < Rational64::zero())
        .map(|(f, c)| (f, *c))
        .collect();
    let contradiction = predicates.iter().any(|p| !p.holds)
        || !negative_vertices.is_empty()
        || !negative_faces.is_empty();
    let verdict = if !hypothesis_failures.is_empty() {
        AuditVerdict::HypothesisViolated
    } else if contradiction {
        AuditVerdict::ContradictionFound
    } else {
        AuditVerdict::AnomalousPass
    };
    Ok(AuditReport {
        hypothesis_failures,
        predicates,
        initial,
        final_ledger,
        negative_vertices,
        negative_faces,
        verdict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embed::find_planar_embedding;
    use crate::graph::families::*;

    fn rat(n: i64) -> Rational64 {
        Rational64::from_integer(n)
    }

    fn embed(g: &Graph) -> PlaneEmbedding {
        find_planar_embedding(g).unwrap().expect("planar input")
    }

    #[test]
    fn initial_charges_examples() {
        let e = embed(&cycle(6));
        let l = initial_charges(&e).unwrap();
        assert!(l.vertex_charge.iter().all(|&c| c == rat(-2)));
        assert!(l.face_charge.iter().all(|&c| c == rat(0)));
        assert_eq!(l.total(), rat(-12));

        let e = embed(&complete(4));
        let l = initial_charges(&e).unwrap();
        assert!(l.vertex_charge.iter().all(|&c| c == rat(0)));
        assert!(l.face_charge.iter().all(|&c| c == rat(-3)));

        let e = embed(&cycle(7));
        let l = initial_charges(&e).unwrap();
        assert!(l.vertex_charge.iter().all(|&c| c == rat(-2)));
        assert!(l.face_charge.iter().all(|&c| c == rat(1)));
    }

    #[test]
    fn rules_on_c7() {
        let e = embed(&cycle(7));
        let after = apply_rules(&e, &initial_charges(&e).unwrap());
        // each 2-vertex collects 1 from both 7-faces
        assert!(after.vertex_charge.iter().all(|&c| c == rat(0)));
        assert!(after.face_charge.iter().all(|&c| c == rat(-6)));
        assert_eq!(after.total(), rat(-12));
        assert_eq!(after.transfers.len(), 14);
    }

    #[test]
    fn rules_leave_k4_alone() {
        let e = embed(&complete(4));
        let before = initial_charges(&e).unwrap();
        let after = apply_rules(&e, &before);
        assert_eq!(after, before);
    }

    #[test]
    fn spacing_values() {
        assert_eq!(spacing_max_marks(7).unwrap(), 1);
        assert_eq!(spacing_max_marks(8).unwrap(), 2);
        assert_eq!(spacing_max_marks(12).unwrap(), 3);
        assert_eq!(spacing_max_marks(6), Err(DischargeError::OutOfRange(6)));
        assert_eq!(spacing_max_marks(41), Err(DischargeError::OutOfRange(41)));
    }

    #[test]
    fn audit_c7() {
        let report = audit(&embed(&cycle(7))).unwrap();
        assert!(report.hypothesis_failures.is_empty());
        assert!(!report.predicate("2-vertices-spread").unwrap().holds);
        assert!(report.predicate("no-2-vertex-on-6-cycle").unwrap().holds);
        assert!(!report.negative_faces.is_empty());
        assert_eq!(report.verdict, AuditVerdict::ContradictionFound);
    }

    #[test]
    fn audit_k4() {
        // K4 fails the 4-cycle hypothesis, yet its predicates still
        // evaluate: the triangles meet, nothing else is violated
        let report = audit(&embed(&complete(4))).unwrap();
        assert!(!report.hypothesis_failures.is_empty());
        assert_eq!(report.failed_predicates(), vec!["3-cycles-spread"]);
        assert!(report
            .final_ledger
            .face_charge
            .iter()
            .all(|&c| c == rat(-3)));
        assert_eq!(report.verdict, AuditVerdict::HypothesisViolated);
    }

    #[test]
    fn audit_c6() {
        let report = audit(&embed(&cycle(6))).unwrap();
        assert!(report.hypothesis_failures.is_empty());
        let failed = report.failed_predicates();
        assert!(failed.contains(&"2-vertices-spread"));
        assert!(failed.contains(&"no-2-vertex-on-6-cycle"));
        assert_eq!(report.verdict, AuditVerdict::ContradictionFound);
    }
}
