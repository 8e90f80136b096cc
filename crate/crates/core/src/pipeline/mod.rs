//! Reduction pipeline from DL-Hom with a skew decomposable target down to
//! fixed-side fixed-component instances.
//!
//! Budgets are tried in increasing order, so the first solution found is a
//! minimum one. Within a budget the chain is: iterative compression, a guess
//! of which old deletions stay, a guess of the images of the kept ones,
//! conflict branching, restriction to forced sides, and the shadow search.

mod bipcomp;
mod compression;
mod shadow;

pub use bipcomp::{detect_conflicts, restrict_to_fixed_side, BipCompInstance, Conflict, ConflictKind, PipelineError};
pub use compression::{disjoint_compression, guess_partial_homs, iterative_compression_drive, PartialHomGuess};
pub use shadow::{prune_bad_components, FsfcIgInstance, PrunedInstance};

use crate::graph::Graph;
use crate::instance::{BipartiteTarget, DeletionSolution, DlhomInstance, ListAssignment};
use crate::lhom::lhom_decide_within;
use crate::target::{try_skew_decompose, SkewDecompTree};

/// Minimum solution of `inst` within its budget. Fails if the target is not
/// skew decomposable.
pub fn solve_dlhom(inst: &DlhomInstance) -> Result<Option<DeletionSolution>, PipelineError> {
    let tree = try_skew_decompose(&inst.target)
        .ok()
        .flatten()
        .ok_or(PipelineError::NotDecomposable)?;
    Ok(solve_with_tree(
        &inst.graph,
        inst.lists.as_slice(),
        &inst.target,
        &tree,
        inst.k,
    ))
}

/// As [`solve_dlhom`] with a decomposition already at hand.
pub fn solve_with_tree(
    g: &Graph,
    lists: &[Vec<usize>],
    h: &BipartiteTarget,
    tree: &SkewDecompTree,
    k: usize,
) -> Option<DeletionSolution> {
    (0..=k).find_map(|budget| solve_within(g, lists, h, tree, budget))
}

/// Some solution with at most `budget` deletions.
fn solve_within(
    g: &Graph,
    lists: &[Vec<usize>],
    h: &BipartiteTarget,
    tree: &SkewDecompTree,
    budget: usize,
) -> Option<DeletionSolution> {
    let n = g.vertex_count();
    let forced: Vec<usize> = (0..n).filter(|&v| lists[v].is_empty()).collect();
    if forced.len() > budget {
        return None;
    }
    let keep: Vec<usize> = (0..n).filter(|&v| !lists[v].is_empty()).collect();
    let (rest, _) = g.induced(&keep);
    let inst = DlhomInstance {
        graph: rest,
        target: h.clone(),
        lists: ListAssignment::new(keep.iter().map(|&v| lists[v].clone()).collect()),
        k: budget - forced.len(),
    };
    let sol = iterative_compression_drive(&inst, |prefix, w| {
        disjoint_compression(prefix, w, |sub, w0| solve_disjoint(sub, w0, tree))
    })?;
    let mut deleted = forced;
    deleted.extend(sol.deleted.iter().map(|&v| keep[v]));
    deleted.sort_unstable();
    let mut alive = vec![true; n];
    for &v in &deleted {
        alive[v] = false;
    }
    let hom = lhom_decide_within(g, lists, h, &alive).expect("pipeline returns valid deletion sets");
    Some(DeletionSolution { deleted, hom })
}

/// Solution of `inst` of at most `inst.k` vertices avoiding `w0`, given that
/// `G ∖ w0` has a list homomorphism.
fn solve_disjoint(inst: &DlhomInstance, w0: &[usize], tree: &SkewDecompTree) -> Option<Vec<usize>> {
    let g = &inst.graph;
    let n = g.vertex_count();
    let lists = inst.lists.as_slice();
    let mut outside = vec![true; n];
    for &w in w0 {
        outside[w] = false;
    }
    let phi = lhom_decide_within(g, lists, &inst.target, &outside)?;
    let mut touches_w0 = vec![false; n];
    for &w in w0 {
        for &u in g.neighbors(w) {
            touches_w0[u] = true;
        }
    }
    for guess in guess_partial_homs(g, lists, w0, &inst.target) {
        if guess.forced.len() > inst.k {
            continue;
        }
        let keep: Vec<usize> = (0..n)
            .filter(|&v| outside[v] && !guess.forced.contains(&v))
            .collect();
        let (g0, _) = g.induced(&keep);
        let n0: Vec<usize> = (0..keep.len()).filter(|&i| touches_w0[keep[i]]).collect();
        let phi0 = keep
            .iter()
            .map(|&v| if touches_w0[v] { None } else { phi[v] })
            .collect();
        let bip = BipCompInstance {
            graph: g0,
            target: inst.target.clone(),
            lists: keep.iter().map(|&v| guess.lists[v].clone()).collect(),
            n0,
            phi0,
            k: inst.k - guess.forced.len(),
        };
        if let Some(w) = bipcomp::solve_bipcomp(&bip, tree) {
            let mut out = guess.forced.clone();
            out.extend(w.into_iter().map(|i| keep[i]));
            return Some(out);
        }
    }
    None
}
