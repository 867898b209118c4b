//! The catalog of reducible configurations, the worst-case residual
//! list-size bounds for each, machine verification of reducibility, and an
//! interpreter that replays each configuration's written coloring strategy
//! against concrete list assignments.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::choose::{
    greedy_order_certificate, is_f_choosable_with, BadAssignmentWitness, ChooseError,
    ChooseOptions, ChooseOutcome, SearchStats, SizeVector,
};
use crate::color::{check_proper, Coloring, ListAssignment};
use crate::graph::Graph;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ConfigError {
    #[error("invalid configuration: {0}")]
    InvalidConfiguration(String),
    #[error("configuration has no strategy script")]
    ScriptMissing,
    #[error("list at vertex {vertex} has {size} colors, below the bound {bound}")]
    ListBelowBound {
        vertex: usize,
        size: usize,
        bound: usize,
    },
    #[error(transparent)]
    Choose(#[from] ChooseError),
}

/// A catalog entry: the modeled local subgraph, the delete-and-recolor set,
/// per-vertex degree caps in the host graph, the published residual list
/// sizes, and the written coloring strategy.
#[derive(Debug, Clone)]
pub struct Configuration {
    pub name: &'static str,
    pub h_full: Graph,
    /// Vertices to delete and recolor, in the order the residual vector and
    /// conflict graph use.
    pub deleted: Vec<usize>,
    /// Maximum degree each vertex may have in the host graph (3 unless the
    /// configuration designates a 2-vertex).
    pub caps: Vec<usize>,
    pub paper_vector: SizeVector,
    pub strategy: Option<StrategyScript>,
    pub vertex_names: Vec<&'static str>,
}

impl Configuration {
    /// Conflict graph for reducibility: the square of the modeled subgraph
    /// restricted to the deleted set, vertices in `deleted` order.
    pub fn conflict_graph(&self) -> Graph {
        self.h_full.square().induced(&self.deleted)
    }

    /// Name of conflict-graph vertex `i`.
    pub fn deleted_name(&self, i: usize) -> &'static str {
        self.vertex_names[self.deleted[i]]
    }
}

/// A coloring recipe over the conflict graph: steps assign colors or bind
/// color variables, branches follow the case analysis. Current lists shrink
/// whenever a conflict neighbor is colored.
#[derive(Debug, Clone)]
pub struct StrategyScript {
    pub steps: Vec<Step>,
}

#[derive(Debug, Clone)]
pub enum Step {
    /// Give `x` and `y` one common color from both current lists.
    PickCommon { x: usize, y: usize },
    /// Color `x` with the lowest color leaving at least `keep` colors in
    /// `y`'s list, and bind that color to `bind`.
    PickPreserving {
        x: usize,
        y: usize,
        keep: usize,
        bind: &'static str,
    },
    /// Bind `var` to the lowest color in `x`'s list outside `y`'s, without
    /// assigning anything.
    ReserveOutside {
        var: &'static str,
        x: usize,
        y: usize,
    },
    /// Color `x` with the lowest list color distinct from every named
    /// bound variable.
    PickAvoiding { x: usize, avoid: Vec<&'static str> },
    /// Color `x` with the color bound to `var`.
    Assign { x: usize, var: &'static str },
    /// Color the vertices in order, lowest remaining color each.
    Greedy { order: Vec<usize> },
    Branch {
        cond: Cond,
        label_then: &'static str,
        label_else: &'static str,
        then_steps: Vec<Step>,
        else_steps: Vec<Step>,
    },
}

#[derive(Debug, Clone)]
pub enum Cond {
    /// Current lists of `x` and `y` intersect.
    Intersects(usize, usize),
    /// The color bound to the variable lies in the input list of `x`.
    Member(&'static str, usize),
    /// Current list of `x` has at least `k` colors.
    SizeAtLeast(usize, usize),
    /// `x` was colored with the variable's color.
    ChosenEq(usize, &'static str),
}

/// Where and why a strategy got stuck.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrategyFailure {
    pub step: String,
    pub vertex: Option<usize>,
    pub reason: String,
}

/// One interpreter run: the outcome plus the branch labels traversed.
#[derive(Debug, Clone)]
pub struct StrategyRun {
    pub outcome: Result<Coloring, StrategyFailure>,
    pub branches: Vec<&'static str>,
}

/// The seven configurations, in stable CLI-identifier order.
pub fn catalog() -> Vec<Configuration> {
    vec![tri2v(), config_h(), w1(), w2(), q1(), q2(), q3()]
}

pub fn find_config(name: &str) -> Option<Configuration> {
    catalog().into_iter().find(|c| c.name.eq_ignore_ascii_case(name))
}

fn tri2v() -> Configuration {
    Configuration {
        name: "TRI2V",
        h_full: Graph::build(3, &[(0, 1), (0, 2), (1, 2)]).unwrap(),
        deleted: vec![2],
        caps: vec![3, 3, 2],
        paper_vector: SizeVector::new(vec![3]).unwrap(),
        strategy: Some(StrategyScript {
            steps: vec![Step::Greedy { order: vec![0] }],
        }),
        vertex_names: vec!["u", "v", "w"],
    }
}

/// 6-cycle v1..v6 with v7 completing a triangle on v1, v6.
fn config_h() -> Configuration {
    let (v1, v2, v3, v4, v5, v6, v7) = (0, 1, 2, 3, 4, 5, 6);
    let strategy = StrategyScript {
        steps: vec![Step::Branch {
            cond: Cond::Intersects(v3, v7),
            label_then: "case1",
            label_else: "case2",
            then_steps: vec![
                Step::PickCommon { x: v3, y: v7 },
                Step::Greedy {
                    order: vec![v4, v2, v5, v6, v1],
                },
            ],
            else_steps: vec![
                Step::PickPreserving {
                    x: v2,
                    y: v4,
                    keep: 2,
                    bind: "alpha",
                },
                Step::Branch {
                    cond: Cond::Member("alpha", v7),
                    label_then: "case2.2",
                    label_else: "case2.1",
                    then_steps: vec![Step::Branch {
                        cond: Cond::SizeAtLeast(v7, 4),
                        label_then: "case2.2-wide-v7",
                        label_else: "case2.2-tight-v7",
                        then_steps: vec![Step::Greedy {
                            order: vec![v3, v4, v5, v1, v6, v7],
                        }],
                        else_steps: vec![
                            Step::ReserveOutside {
                                var: "beta",
                                x: v1,
                                y: v7,
                            },
                            Step::PickAvoiding {
                                x: v3,
                                avoid: vec!["beta"],
                            },
                            Step::Greedy { order: vec![v4, v5] },
                            Step::Branch {
                                cond: Cond::ChosenEq(v5, "beta"),
                                label_then: "case2.2-c5-eq-beta",
                                label_else: "case2.2-c5-ne-beta",
                                then_steps: vec![Step::Greedy {
                                    order: vec![v1, v6, v7],
                                }],
                                else_steps: vec![
                                    Step::Assign { x: v1, var: "beta" },
                                    Step::Greedy { order: vec![v6, v7] },
                                ],
                            },
                        ],
                    }],
                    else_steps: vec![Step::Greedy {
                        order: vec![v3, v4, v5, v1, v6, v7],
                    }],
                },
            ],
        }],
    };
    Configuration {
        name: "H",
        h_full: Graph::build(
            7,
            &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0), (5, 6), (6, 0)],
        )
        .unwrap(),
        deleted: (0..7).collect(),
        caps: vec![3; 7],
        paper_vector: SizeVector::new(vec![5, 3, 2, 2, 3, 5, 4]).unwrap(),
        strategy: Some(strategy),
        vertex_names: vec!["v1", "v2", "v3", "v4", "v5", "v6", "v7"],
    }
}

/// Two triangles joined by the edge v3 v4.
fn w1() -> Configuration {
    let (v1, v2, v3, v4, v5, v6) = (0, 1, 2, 3, 4, 5);
    let strategy = StrategyScript {
        steps: vec![
            Step::Branch {
                cond: Cond::SizeAtLeast(v6, 4),
                label_then: "free-v3",
                label_else: "guard-v6",
                then_steps: vec![Step::PickAvoiding { x: v3, avoid: vec![] }],
                else_steps: vec![
                    Step::ReserveOutside {
                        var: "alpha",
                        x: v3,
                        y: v6,
                    },
                    Step::Assign { x: v3, var: "alpha" },
                ],
            },
            Step::Greedy {
                order: vec![v1, v2, v4, v5, v6],
            },
        ],
    };
    Configuration {
        name: "W1",
        h_full: Graph::build(6, &[(0, 1), (0, 2), (1, 2), (3, 4), (3, 5), (4, 5), (2, 3)])
            .unwrap(),
        deleted: (0..6).collect(),
        caps: vec![3; 6],
        paper_vector: SizeVector::new(vec![3, 3, 5, 5, 3, 3]).unwrap(),
        strategy: Some(strategy),
        vertex_names: vec!["v1", "v2", "v3", "v4", "v5", "v6"],
    }
}

/// Two triangles joined by the path v3 v7 v4.
fn w2() -> Configuration {
    let (v1, v2, v3, v4, v5, v6, v7) = (0, 1, 2, 3, 4, 5, 6);
    let strategy = StrategyScript {
        steps: vec![
            Step::Branch {
                cond: Cond::SizeAtLeast(v6, 4),
                label_then: "free-v7",
                label_else: "guard-v6",
                then_steps: vec![Step::PickAvoiding { x: v7, avoid: vec![] }],
                else_steps: vec![
                    Step::ReserveOutside {
                        var: "beta",
                        x: v7,
                        y: v6,
                    },
                    Step::Assign { x: v7, var: "beta" },
                ],
            },
            Step::Greedy {
                order: vec![v1, v2, v3, v4, v5, v6],
            },
        ],
    };
    Configuration {
        name: "W2",
        h_full: Graph::build(
            7,
            &[(0, 1), (0, 2), (1, 2), (3, 4), (3, 5), (4, 5), (2, 6), (6, 3)],
        )
        .unwrap(),
        deleted: (0..7).collect(),
        caps: vec![3; 7],
        paper_vector: SizeVector::new(vec![3, 3, 4, 4, 3, 3, 4]).unwrap(),
        strategy: Some(strategy),
        vertex_names: vec!["v1", "v2", "v3", "v4", "v5", "v6", "v7"],
    }
}

/// Triangle v1 v2 v3 with a pendant 2-vertex w at v3.
fn q1() -> Configuration {
    Configuration {
        name: "Q1",
        h_full: Graph::build(4, &[(0, 1), (0, 2), (1, 2), (2, 3)]).unwrap(),
        deleted: (0..4).collect(),
        caps: vec![3, 3, 3, 2],
        paper_vector: SizeVector::new(vec![3, 3, 4, 4]).unwrap(),
        strategy: Some(StrategyScript {
            steps: vec![Step::Greedy {
                order: vec![0, 1, 2, 3],
            }],
        }),
        vertex_names: vec!["v1", "v2", "v3", "w"],
    }
}

/// Triangle plus the path v3 v4 w; w is a 2-vertex.
fn q2() -> Configuration {
    let (v1, _v2, v3, v4, w) = (0, 1, 2, 3, 4);
    Configuration {
        name: "Q2",
        h_full: Graph::build(5, &[(0, 1), (0, 2), (1, 2), (2, 3), (3, 4)]).unwrap(),
        deleted: (0..5).collect(),
        caps: vec![3, 3, 3, 3, 2],
        paper_vector: SizeVector::new(vec![3, 3, 4, 3, 3]).unwrap(),
        strategy: Some(StrategyScript {
            steps: vec![
                Step::PickPreserving {
                    x: v3,
                    y: v1,
                    keep: 3,
                    bind: "c",
                },
                Step::Greedy {
                    order: vec![w, v4, 1, v1],
                },
            ],
        }),
        vertex_names: vec!["v1", "v2", "v3", "v4", "w"],
    }
}

/// Triangle plus the path v3 v4 v5 w; w is a 2-vertex.
fn q3() -> Configuration {
    let (v1, v2, v3, v4, v5, w) = (0, 1, 2, 3, 4, 5);
    Configuration {
        name: "Q3",
        h_full: Graph::build(6, &[(0, 1), (0, 2), (1, 2), (2, 3), (3, 4), (4, 5)]).unwrap(),
        deleted: (0..6).collect(),
        caps: vec![3, 3, 3, 3, 3, 2],
        paper_vector: SizeVector::new(vec![3, 3, 4, 3, 2, 3]).unwrap(),
        strategy: Some(StrategyScript {
            steps: vec![
                Step::PickPreserving {
                    x: v3,
                    y: v1,
                    keep: 3,
                    bind: "alpha",
                },
                Step::Greedy {
                    order: vec![v5, v4, w, v2, v1],
                },
            ],
        }),
        vertex_names: vec!["v1", "v2", "v3", "v4", "v5", "w"],
    }
}

/// Worst-case residual list sizes over the deleted set: 7 minus the largest
/// possible number of already-colored square-neighbors outside the deleted
/// set. Exterior square-neighbors come from three sources: modeled vertices
/// outside the deleted set within distance 2, unmodeled neighbors allowed
/// by the vertex's own degree slack (each reaches the vertex and brings up
/// to two distance-2 vertices, so 3 per slack), and unmodeled neighbors of
/// modeled neighbors (1 per neighbor slack). Internal pairs at modeled
/// distance at least 3 contribute nothing because the host graph cannot
/// shortcut them below distance 3.
pub fn derive_residual_bounds(c: &Configuration) -> Result<SizeVector, ConfigError> {
    let h = &c.h_full;
    let n = h.vertex_count();
    if c.caps.len() != n {
        return Err(ConfigError::InvalidConfiguration(
            "caps length differs from vertex count".into(),
        ));
    }
    for v in 0..n {
        if c.caps[v] < h.degree(v) {
            return Err(ConfigError::InvalidConfiguration(format!(
                "cap at {} below modeled degree",
                c.vertex_names[v]
            )));
        }
    }
    let in_deleted = {
        let mut m = vec![false; n];
        for &v in &c.deleted {
            m[v] = true;
        }
        m
    };
    let mut bounds = Vec::with_capacity(c.deleted.len());
    for &v in &c.deleted {
        let dist = h.distances_from(v);
        let exterior_modeled = (0..n)
            .filter(|&x| {
                x != v && !in_deleted[x] && dist[x].finite().is_some_and(|d| d <= 2)
            })
            .count();
        let own_slack = c.caps[v] - h.degree(v);
        let neighbor_slack: usize = h
            .neighbors(v)
            .iter()
            .map(|&u| c.caps[u] - h.degree(u))
            .sum();
        let colored_neighbors = exterior_modeled + 3 * own_slack + neighbor_slack;
        let bound = 7usize.saturating_sub(colored_neighbors);
        if bound == 0 {
            return Err(ConfigError::InvalidConfiguration(format!(
                "residual bound at {} is zero",
                c.vertex_names[v]
            )));
        }
        bounds.push(bound);
    }
    Ok(SizeVector::new(bounds).expect("bounds are positive"))
}

/// Proof record produced when a configuration checks out.
#[derive(Debug, Clone)]
pub struct ReducibilityCertificate {
    pub name: &'static str,
    pub f: SizeVector,
    pub stats: SearchStats,
    pub greedy_order: Option<Vec<usize>>,
}

#[derive(Debug, Clone)]
pub enum ReduceOutcome {
    Certificate(ReducibilityCertificate),
    Bad(BadAssignmentWitness),
}

/// Complete choosability check of the conflict graph at the derived
/// residual sizes.
pub fn verify_reducible(
    c: &Configuration,
    opts: &ChooseOptions,
) -> Result<ReduceOutcome, ConfigError> {
    let f = derive_residual_bounds(c)?;
    let conflict = c.conflict_graph();
    match is_f_choosable_with(&conflict, &f, opts)? {
        ChooseOutcome::Bad(w) => Ok(ReduceOutcome::Bad(w)),
        ChooseOutcome::Choosable(stats) => {
            let greedy_order = greedy_order_certificate(&conflict, &f)?;
            Ok(ReduceOutcome::Certificate(ReducibilityCertificate {
                name: c.name,
                f,
                stats,
                greedy_order,
            }))
        }
    }
}

struct Interp<'a> {
    conflict: &'a Graph,
    initial: &'a ListAssignment,
    lists: Vec<Vec<u32>>,
    colors: Vec<Option<u32>>,
    bindings: BTreeMap<&'static str, u32>,
    branches: Vec<&'static str>,
}

impl<'a> Interp<'a> {
    fn new(conflict: &'a Graph, initial: &'a ListAssignment) -> Self {
        Interp {
            conflict,
            initial,
            lists: initial.lists().to_vec(),
            colors: vec![None; conflict.vertex_count()],
            bindings: BTreeMap::new(),
            branches: Vec::new(),
        }
    }

    fn assign(&mut self, v: usize, c: u32, step: &str) -> Result<(), StrategyFailure> {
        if self.colors[v].is_some() {
            return Err(StrategyFailure {
                step: step.into(),
                vertex: Some(v),
                reason: "vertex already colored".into(),
            });
        }
        if !self.lists[v].contains(&c) {
            return Err(StrategyFailure {
                step: step.into(),
                vertex: Some(v),
                reason: format!("color {c} not in current list"),
            });
        }
        self.colors[v] = Some(c);
        for &u in self.conflict.neighbors(v) {
            if self.colors[u].is_none() {
                self.lists[u].retain(|&x| x != c);
            }
        }
        Ok(())
    }

    fn eval(&self, cond: &Cond) -> bool {
        match *cond {
            Cond::Intersects(x, y) => self.lists[x].iter().any(|c| self.lists[y].contains(c)),
            Cond::Member(var, x) => self
                .bindings
                .get(var)
                .is_some_and(|c| self.initial.list(x).contains(c)),
            Cond::SizeAtLeast(x, k) => self.lists[x].len() >= k,
            Cond::ChosenEq(x, var) => {
                self.colors[x].is_some() && self.colors[x] == self.bindings.get(var).copied()
            }
        }
    }

    fn run(&mut self, steps: &[Step]) -> Result<(), StrategyFailure> {
        for step in steps {
            match step {
                Step::PickCommon { x, y } => {
                    let (x, y) = (*x, *y);
                    if self.conflict.has_edge(x, y) {
                        return Err(StrategyFailure {
                            step: "PickCommon".into(),
                            vertex: Some(x),
                            reason: "vertices are conflict-adjacent".into(),
                        });
                    }
                    let common = self.lists[x]
                        .iter()
                        .copied()
                        .find(|c| self.lists[y].contains(c));
                    let Some(c) = common else {
                        return Err(StrategyFailure {
                            step: "PickCommon".into(),
                            vertex: Some(x),
                            reason: "lists do not intersect".into(),
                        });
                    };
                    self.assign(x, c, "PickCommon")?;
                    self.assign(y, c, "PickCommon")?;
                }
                Step::PickPreserving { x, y, keep, bind } => {
                    let choice = self.lists[*x]
                        .iter()
                        .copied()
                        .find(|c| {
                            self.lists[*y].iter().filter(|&d| d != c).count() >= *keep
                        });
                    let Some(c) = choice else {
                        return Err(StrategyFailure {
                            step: "PickPreserving".into(),
                            vertex: Some(*x),
                            reason: format!(
                                "no color keeps {keep} colors at {}",
                                y
                            ),
                        });
                    };
                    self.bindings.insert(bind, c);
                    self.assign(*x, c, "PickPreserving")?;
                }
                Step::ReserveOutside { var, x, y } => {
                    let c = self.lists[*x]
                        .iter()
                        .copied()
                        .find(|c| !self.lists[*y].contains(c));
                    let Some(c) = c else {
                        return Err(StrategyFailure {
                            step: "ReserveOutside".into(),
                            vertex: Some(*x),
                            reason: "no color outside the other list".into(),
                        });
                    };
                    self.bindings.insert(var, c);
                }
                Step::PickAvoiding { x, avoid } => {
                    let banned: Vec<u32> = avoid
                        .iter()
                        .filter_map(|v| self.bindings.get(v).copied())
                        .collect();
                    let c = self.lists[*x]
                        .iter()
                        .copied()
                        .find(|c| !banned.contains(c));
                    let Some(c) = c else {
                        return Err(StrategyFailure {
                            step: "PickAvoiding".into(),
                            vertex: Some(*x),
                            reason: "every list color is banned".into(),
                        });
                    };
                    self.assign(*x, c, "PickAvoiding")?;
                }
                Step::Assign { x, var } => {
                    let Some(&c) = self.bindings.get(var) else {
                        return Err(StrategyFailure {
                            step: "Assign".into(),
                            vertex: Some(*x),
                            reason: format!("variable {var} unbound"),
                        });
                    };
                    self.assign(*x, c, "Assign")?;
                }
                Step::Greedy { order } => {
                    for &v in order {
                        let Some(&c) = self.lists[v].first() else {
                            return Err(StrategyFailure {
                                step: "Greedy".into(),
                                vertex: Some(v),
                                reason: "list exhausted".into(),
                            });
                        };
                        self.assign(v, c, "Greedy")?;
                    }
                }
                Step::Branch {
                    cond,
                    label_then,
                    label_else,
                    then_steps,
                    else_steps,
                } => {
                    if self.eval(cond) {
                        self.branches.push(label_then);
                        self.run(then_steps)?;
                    } else {
                        self.branches.push(label_else);
                        self.run(else_steps)?;
                    }
                }
            }
        }
        Ok(())
    }
}

/// Replays the configuration's strategy on a concrete assignment whose list
/// sizes meet the derived bounds. A failure here on conforming lists is a
/// counterexample to the written argument, independent of actual
/// choosability.
pub fn run_strategy(
    c: &Configuration,
    lists: &ListAssignment,
) -> Result<StrategyRun, ConfigError> {
    let script = c.strategy.as_ref().ok_or(ConfigError::ScriptMissing)?;
    let bounds = derive_residual_bounds(c)?;
    let conflict = c.conflict_graph();
    if lists.len() != conflict.vertex_count() {
        return Err(ConfigError::InvalidConfiguration(
            "list assignment does not match the deleted set".into(),
        ));
    }
    for v in 0..lists.len() {
        if lists.list(v).len() < bounds.get(v) {
            return Err(ConfigError::ListBelowBound {
                vertex: v,
                size: lists.list(v).len(),
                bound: bounds.get(v),
            });
        }
    }
    let mut interp = Interp::new(&conflict, lists);
    let outcome = match interp.run(&script.steps) {
        Ok(()) => {
            let coloring = Coloring::from_partial(interp.colors.clone());
            if coloring.is_total() && check_proper(&conflict, &coloring, Some(lists)) {
                Ok(coloring)
            } else {
                Err(StrategyFailure {
                    step: "final".into(),
                    vertex: None,
                    reason: "script finished without a total proper coloring".into(),
                })
            }
        }
        Err(f) => Err(f),
    };
    Ok(StrategyRun {
        outcome,
        branches: interp.branches,
    })
}

#[derive(Debug, Clone)]
pub enum CheckMode {
    Random { trials: u64, seed: u64 },
    Adversarial,
}

/// Aggregate report of a strategy-falsification run.
#[derive(Debug, Clone)]
pub struct StrategyReport {
    pub name: &'static str,
    pub trials: u64,
    pub failures: u64,
    /// Up to five failing assignments with their stuck step.
    pub sample_failures: Vec<(ListAssignment, StrategyFailure)>,
    pub branch_hits: BTreeMap<&'static str, u64>,
}

/// Stress-tests a strategy script: `Random` samples assignments with sizes
/// exactly at the bounds from a pool of `total(f)` colors; `Adversarial`
/// replays structured families (nested, shifted, disjoint, and per-pair
/// aligned/anti-aligned lists).
pub fn check_strategy(c: &Configuration, mode: &CheckMode) -> Result<StrategyReport, ConfigError> {
    if c.strategy.is_none() {
        return Err(ConfigError::ScriptMissing);
    }
    let bounds = derive_residual_bounds(c)?;
    let assignments: Box<dyn Iterator<Item = ListAssignment>> = match *mode {
        CheckMode::Random { trials, seed } => {
            Box::new(RandomAssignments::new(bounds.clone(), seed).take(trials as usize))
        }
        CheckMode::Adversarial => Box::new(adversarial_assignments(&bounds).into_iter()),
    };
    let mut report = StrategyReport {
        name: c.name,
        trials: 0,
        failures: 0,
        sample_failures: Vec::new(),
        branch_hits: BTreeMap::new(),
    };
    for lists in assignments {
        report.trials += 1;
        let run = run_strategy(c, &lists)?;
        for b in &run.branches {
            *report.branch_hits.entry(b).or_insert(0) += 1;
        }
        if let Err(failure) = run.outcome {
            report.failures += 1;
            if report.sample_failures.len() < 5 {
                report.sample_failures.push((lists, failure));
            }
        }
    }
    Ok(report)
}

struct RandomAssignments {
    bounds: SizeVector,
    pool: Vec<u32>,
    rng: ChaCha8Rng,
}

impl RandomAssignments {
    fn new(bounds: SizeVector, seed: u64) -> Self {
        let pool: Vec<u32> = (0..bounds.total() as u32).collect();
        RandomAssignments {
            bounds,
            pool,
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }
}

impl Iterator for RandomAssignments {
    type Item = ListAssignment;

    fn next(&mut self) -> Option<ListAssignment> {
        let lists: Vec<Vec<u32>> = self
            .bounds
            .sizes()
            .iter()
            .map(|&k| {
                let mut picked: Vec<u32> = self
                    .pool
                    .choose_multiple(&mut self.rng, k)
                    .copied()
                    .collect();
                picked.sort_unstable();
                picked
            })
            .collect();
        Some(ListAssignment::new(lists).expect("bounds are positive"))
    }
}

/// Deterministic structured assignments with sizes exactly at the bounds.
fn adversarial_assignments(bounds: &SizeVector) -> Vec<ListAssignment> {
    let n = bounds.len();
    let total = bounds.total() as u32;
    let prefix = |k: usize| -> Vec<u32> { (0..k as u32).collect() };
    let block = |start: u32, k: usize| -> Vec<u32> { (start..start + k as u32).collect() };
    let mut out: Vec<Vec<Vec<u32>>> = Vec::new();
    // all lists nested at the bottom of the pool
    out.push((0..n).map(|v| prefix(bounds.get(v))).collect());
    // all lists nested at the top of the pool
    out.push(
        (0..n)
            .map(|v| block(total - bounds.get(v) as u32, bounds.get(v)))
            .collect(),
    );
    // pairwise-disjoint blocks
    {
        let mut start = 0u32;
        let lists = (0..n)
            .map(|v| {
                let l = block(start, bounds.get(v));
                start += bounds.get(v) as u32;
                l
            })
            .collect();
        out.push(lists);
    }
    // for each ordered pair: x and y disjoint, everyone else nested low
    for x in 0..n {
        for y in 0..n {
            if x == y {
                continue;
            }
            let lists: Vec<Vec<u32>> = (0..n)
                .map(|v| {
                    if v == y {
                        block(bounds.get(x) as u32, bounds.get(y))
                    } else {
                        prefix(bounds.get(v))
                    }
                })
                .collect();
            out.push(lists);
        }
    }
    // for each vertex: that vertex disjoint from everyone else
    for x in 0..n {
        let lists: Vec<Vec<u32>> = (0..n)
            .map(|v| {
                if v == x {
                    block(total - bounds.get(x) as u32, bounds.get(x))
                } else {
                    prefix(bounds.get(v))
                }
            })
            .collect();
        out.push(lists);
    }
    out.into_iter()
        .map(|lists| ListAssignment::new(lists).expect("bounds are positive"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_shapes() {
        let cat = catalog();
        let names: Vec<&str> = cat.iter().map(|c| c.name).collect();
        assert_eq!(names, vec!["TRI2V", "H", "W1", "W2", "Q1", "Q2", "Q3"]);
        let h = find_config("H").unwrap();
        assert_eq!(h.h_full.edge_count(), 8);
        let w2 = find_config("w2").unwrap();
        assert_eq!(w2.h_full.edge_count(), 8);
        let tri = find_config("TRI2V").unwrap();
        assert_eq!(tri.deleted, vec![2]);
    }

    #[test]
    fn residual_bounds_match_published_vectors() {
        for c in catalog() {
            let bounds = derive_residual_bounds(&c).unwrap();
            assert_eq!(bounds, c.paper_vector, "config {}", c.name);
        }
    }

    #[test]
    fn q1_conflict_graph_is_k4() {
        let q1 = find_config("Q1").unwrap();
        let g = q1.conflict_graph();
        assert_eq!(g.vertex_count(), 4);
        assert_eq!(g.edge_count(), 6);
    }

    #[test]
    fn tri2v_reduces_trivially() {
        let tri = find_config("TRI2V").unwrap();
        let out = verify_reducible(&tri, &ChooseOptions::default()).unwrap();
        assert!(matches!(out, ReduceOutcome::Certificate(_)));
    }

    #[test]
    fn q1_has_greedy_certificate() {
        let q1 = find_config("Q1").unwrap();
        match verify_reducible(&q1, &ChooseOptions::default()).unwrap() {
            ReduceOutcome::Certificate(cert) => {
                assert_eq!(cert.greedy_order, Some(vec![0, 1, 2, 3]));
            }
            ReduceOutcome::Bad(_) => panic!("Q1 must be reducible"),
        }
    }

    #[test]
    fn strategies_succeed_on_simple_assignments() {
        for c in catalog() {
            let bounds = derive_residual_bounds(&c).unwrap();
            for lists in adversarial_assignments(&bounds) {
                let run = run_strategy(&c, &lists).unwrap();
                assert!(
                    run.outcome.is_ok(),
                    "{} failed on {:?}: {:?}",
                    c.name,
                    lists,
                    run.outcome
                );
            }
        }
    }

    #[test]
    fn run_strategy_rejects_undersized_lists() {
        let q1 = find_config("Q1").unwrap();
        let lists =
            ListAssignment::new(vec![vec![0, 1], vec![0, 1, 2], vec![0, 1, 2, 3], vec![0, 1, 2, 3]])
                .unwrap();
        assert!(matches!(
            run_strategy(&q1, &lists),
            Err(ConfigError::ListBelowBound { vertex: 0, .. })
        ));
    }

    #[test]
    fn h_case1_branch_taken_when_lists_intersect() {
        let h = find_config("H").unwrap();
        // nested lists intersect everywhere, so case 1 fires
        let bounds = derive_residual_bounds(&h).unwrap();
        let lists = ListAssignment::new(
            bounds.sizes().iter().map(|&k| (0..k as u32).collect()).collect(),
        )
        .unwrap();
        let run = run_strategy(&h, &lists).unwrap();
        assert!(run.outcome.is_ok());
        assert_eq!(run.branches, vec!["case1"]);
    }

    #[test]
    fn wrong_script_is_caught() {
        // K3 modeled with slack one everywhere gives bounds (2,2,2); a bare
        // greedy script must fail on the all-equal assignment
        let fake = Configuration {
            name: "FAKE",
            h_full: Graph::build(3, &[(0, 1), (0, 2), (1, 2)]).unwrap(),
            deleted: vec![0, 1, 2],
            caps: vec![3, 3, 3],
            paper_vector: SizeVector::new(vec![2, 2, 2]).unwrap(),
            strategy: Some(StrategyScript {
                steps: vec![Step::Greedy {
                    order: vec![0, 1, 2],
                }],
            }),
            vertex_names: vec!["a", "b", "c"],
        };
        let report = check_strategy(&fake, &CheckMode::Adversarial).unwrap();
        assert!(report.failures >= 1);
        assert!(!report.sample_failures.is_empty());
    }

    #[test]
    fn missing_script_is_an_error() {
        let mut tri = find_config("TRI2V").unwrap();
        tri.strategy = None;
        assert!(matches!(
            check_strategy(&tri, &CheckMode::Adversarial),
            Err(ConfigError::ScriptMissing)
        ));
    }
}
