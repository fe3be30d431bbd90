//! Minimal-order realizations consistent with a dynamical structure function.
//!
//! The pipeline factors the residues of `[sQ sP]` into rank-one modes,
//! finds the largest set of modes that a single constant diagonal `R*` can
//! cancel (a maximum clique of the compatibility graph), and assembles a
//! realization of order `p + l - phi` around that `R*`.

mod clique;
mod graph;
mod modes;
mod pipeline;
mod realize;
mod rstar;

pub use clique::{maximum_cliques, CliqueResult};
pub use graph::{compatibility_graph, CompatGraph, EdgeRule};
pub use modes::{extract_modes, GilbertData, ShiftMode};
pub use pipeline::{
    minimal_order, minreal_pipeline, v_subsystem, zero_checks, MinrealOptions, MinrealOutput,
    MinrealReport, OrderSummary, RealizationReport, ZeroCheck,
};
pub use realize::{cancellation_check, realize, realize_unpruned};
pub use rstar::{construct_rstar, RStar, RStarEntry, DEFAULT_FREE_VALUE};
