//! Chain formulas: implication chains plus unary clauses, decided by
//! propagation, with exact clause and variable deletion solvers and the
//! reductions linking them to fixed-side list homomorphism.

mod formula;
mod propagate;
mod reduce;
mod solve;

pub use formula::{CdcsInstance, Chain, ChainFormula, ClauseRef, FormulaError, Unary, VdcsInstance};
pub use propagate::{propagate, Propagation};
pub use reduce::{
    reduce_cdcs_to_vdcs, reduce_fs_to_vdcs, reduce_vdcs_to_cdcs, reduce_vdcs_to_fsfc, FsImage, FsReductionError,
    FsfcImage, GadgetPath, VertexChain,
};
pub use solve::{solve_cdcs, solve_vdcs};
