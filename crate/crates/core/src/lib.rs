//! Verification toolkit for distance-2 list coloring of sparse plane
//! graphs: exact solvers, complete choosability search over small conflict
//! graphs, a reducible-configuration catalog with replayable coloring
//! strategies, and a discharging audit over plane embeddings.

pub mod choose;
pub mod color;
pub mod configs;
pub mod discharge;
pub mod embed;
pub mod graph;

pub use choose::{
    greedy_order_certificate, is_f_choosable, is_f_choosable_with, naive_f_choosable,
    BadAssignmentWitness, ChooseError, ChooseOptions, ChooseOutcome, SearchStats, SizeVector,
};
pub use color::{
    check_proper, chromatic_number, greedy_extend, solve_list_coloring, ColorError, Coloring,
    GreedyOutcome, ListAssignment,
};
pub use configs::{
    catalog, check_strategy, derive_residual_bounds, find_config, run_strategy, verify_reducible,
    CheckMode, ConfigError, Configuration, ReduceOutcome, ReducibilityCertificate, StrategyFailure,
    StrategyReport, StrategyRun, StrategyScript,
};
pub use discharge::{
    apply_rules, audit, initial_charges, spacing_max_marks, AuditReport, AuditVerdict,
    ChargeLedger, DischargeError, PredicateResult,
};
pub use embed::{find_planar_embedding, EmbedError, FaceInfo, FaceStats, PlaneEmbedding};
pub use num_rational::Rational64;
pub use graph::{families, Distance, Graph, GraphError};
