//! Deletion list homomorphism toward bipartite targets: exact solvers, the
//! compression pipeline for skew decomposable targets, circular-arc targets
//! and chain formulas.

pub mod graph;
pub mod instance;
pub mod lhom;
pub mod target;
pub mod fsfc;
pub mod pipeline;
pub mod generate;
pub mod chainsat;
pub mod encode;
