//! Conjectural-link analysis for undirected networks.
//!
//! A conjectural link is a node pair with no direct edge whose topology
//! suggests one should (or used to) exist. This crate ranks such pairs by
//! several scores — weighted walk counts between the pair (`h`), effective
//! electrical conductance when edges are unit resistors (`g`), regular
//! equivalence (`sigma`), and the Jaccard, Adamic–Adar, and
//! Resource-Allocation neighborhood indices — and measures how well each
//! score rebuilds a network after its top-ranked links are removed.
//!
//! The main entry points:
//!
//! - [`Graph`]: immutable simple undirected graphs with string labels,
//!   parsed from edge-list text or one of the bundled datasets
//!   ([`Graph::builtin_dataset`]: `karate`, `lesmis`).
//! - [`score`](score()): rank one pair universe of a graph under a
//!   [`ScoreConfig`].
//! - [`damage`] / [`restore_scenario_one`] / [`restore_scenario_two`]: the
//!   removal/restoration protocol with its quality measures Q and eta.
//! - [`run_grid`]: removal-method x creation-method quality matrix over
//!   generated graphs ([`GeneratorConfig`]: preferential-attachment `ba` or
//!   uniform `er`), averaged over seeded realizations.
//! - [`OutputRecord`]: versioned CSV/JSON emission that round-trips.
//!
//! Determinism is part of every contract: fixed inputs and seeds give
//! byte-identical rankings, reports, and emitted documents.

pub mod error;
pub mod generate;
pub mod graph;
pub mod kernel;
pub mod matrix;
pub mod output;
pub mod restore;
pub mod score;

pub use error::{Error, ErrorCategory, Result};
pub use generate::{generate, GeneratorConfig, GeneratorKind};
pub use graph::{Graph, LoadResult, Pair};
pub use kernel::SpectralEstimate;
pub use matrix::DenseMatrix;
pub use output::OutputRecord;
pub use restore::{
    damage, quality_q, restore_scenario_one, restore_scenario_two, run_grid, DamageRecord,
    ExperimentGrid, GridCell, RestorationReport, Scenario,
};
pub use score::{
    rank, raw_scores, score, Horizon, Method, PairScore, RankedList, ScoreConfig, Universe,
};
