//! Fiber products of monomial ideals, Betti splittings, edge ideals and
//! scripted verification scenarios producing structured reports.

pub mod engine;
pub mod fiber;
pub mod formulas;
pub mod graphs;
pub mod report;
pub mod samples;
pub mod scenarios;
pub mod splitting;
pub mod suite;
pub mod torlemma;

pub use engine::Engine;
pub use fiber::{filtration, FiberSetup, Filtration};
pub use graphs::{detect_bipartite_join, edge_ideal, Graph};
pub use report::{Provenance, Report, Verdict};
pub use splitting::{check_betti_splitting, verify_betti_splitting};
pub use torlemma::{verify_tor_vanishing_lemma, TorMode};
pub use scenarios::{run_scenario, ScenarioRun, SCENARIOS};
