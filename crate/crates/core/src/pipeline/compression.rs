//! Iterative compression over vertex prefixes and the guess of which part of
//! the old solution survives.

use crate::graph::Graph;
use crate::instance::{BipartiteTarget, DeletionSolution, DlhomInstance};
use crate::lhom::lhom_decide_within;

fn with_hom(g: &Graph, lists: &[Vec<usize>], h: &BipartiteTarget, mut deleted: Vec<usize>) -> Option<DeletionSolution> {
    deleted.sort_unstable();
    deleted.dedup();
    let mut alive = vec![true; g.vertex_count()];
    for &v in &deleted {
        alive[v] = false;
    }
    let hom = lhom_decide_within(g, lists, h, &alive)?;
    Some(DeletionSolution { deleted, hom })
}

/// Solves prefixes `V_1 ⊂ V_2 ⊂ … ⊂ V(G)` in index order. Whenever the
/// previous solution plus the new vertex exceeds `k`, `step` receives the
/// prefix instance and that solution of size `k + 1` and must return one of
/// size at most `k`.
pub fn iterative_compression_drive<F>(inst: &DlhomInstance, mut step: F) -> Option<DeletionSolution>
where
    F: FnMut(&DlhomInstance, &[usize]) -> Option<DeletionSolution>,
{
    let n = inst.graph.vertex_count();
    let mut x: Vec<usize> = Vec::new();
    for i in 0..n {
        let mut w = x.clone();
        w.push(i);
        if w.len() <= inst.k {
            x = w;
            continue;
        }
        let prefix: Vec<usize> = (0..=i).collect();
        let sub = inst.induced(&prefix, inst.k);
        x = step(&sub, &w)?.deleted;
    }
    with_hom(&inst.graph, inst.lists.as_slice(), &inst.target, x)
}

/// Guesses the part `I` of `w0` that stays deleted, in increasing mask
/// order, and asks `step` for a solution of `G ∖ I` within `k − |I|` that
/// avoids `w0 ∖ I`. The first success is returned together with `I`.
///
/// `G ∖ w0` must have a list homomorphism.
pub fn disjoint_compression<F>(inst: &DlhomInstance, w0: &[usize], mut step: F) -> Option<DeletionSolution>
where
    F: FnMut(&DlhomInstance, &[usize]) -> Option<Vec<usize>>,
{
    assert!(w0.len() < 64, "compression set too large");
    let n = inst.graph.vertex_count();
    for mask in 0u64..(1u64 << w0.len()) {
        let guessed: Vec<usize> = (0..w0.len()).filter(|&i| mask & (1 << i) != 0).map(|i| w0[i]).collect();
        if guessed.len() > inst.k {
            continue;
        }
        let keep: Vec<usize> = (0..n).filter(|v| !guessed.contains(v)).collect();
        let sub = inst.induced(&keep, inst.k - guessed.len());
        let kept: Vec<usize> = w0
            .iter()
            .filter(|v| !guessed.contains(v))
            .map(|v| keep.binary_search(v).unwrap())
            .collect();
        if let Some(w) = step(&sub, &kept) {
            debug_assert!(w.iter().all(|v| !kept.contains(v)));
            let mut deleted = guessed;
            deleted.extend(w.iter().map(|&v| keep[v]));
            if let Some(sol) = with_hom(&inst.graph, inst.lists.as_slice(), &inst.target, deleted) {
                return Some(sol);
            }
            debug_assert!(false, "disjoint step returned an invalid deletion set");
        }
    }
    None
}

/// One guess of images for the undeletable set together with the lists it
/// induces on the rest of the graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialHomGuess {
    /// `(w, γ(w))` for each `w ∈ W0`, in the order of `W0`.
    pub gamma: Vec<(usize, usize)>,
    /// Lists of all vertices; neighbours of `W0` are cut down to
    /// `L(u) ∩ N(γ(w))`, entries of `W0` itself are `{γ(w)}`.
    pub lists: Vec<Vec<usize>>,
    /// Vertices outside `W0` whose list became empty.
    pub forced: Vec<usize>,
}

/// Lazily enumerates the list homomorphisms `γ` of `G[W0]`, with the first
/// vertex of `W0` varying slowest.
pub fn guess_partial_homs<'a>(
    g: &'a Graph,
    lists: &'a [Vec<usize>],
    w0: &'a [usize],
    h: &'a BipartiteTarget,
) -> impl Iterator<Item = PartialHomGuess> + 'a {
    let choices: Vec<&[usize]> = w0.iter().map(|&w| lists[w].as_slice()).collect();
    let mut counter = vec![0usize; w0.len()];
    let mut done = choices.iter().any(|c| c.is_empty());
    std::iter::from_fn(move || loop {
        if done {
            return None;
        }
        let gamma: Vec<(usize, usize)> = w0.iter().zip(&counter).map(|(&w, &i)| (w, lists[w][i])).collect();
        // advance the odometer, last position fastest
        done = true;
        for pos in (0..counter.len()).rev() {
            counter[pos] += 1;
            if counter[pos] < choices[pos].len() {
                done = false;
                break;
            }
            counter[pos] = 0;
        }
        let consistent = gamma.iter().enumerate().all(|(i, &(w, a))| {
            gamma[i + 1..]
                .iter()
                .all(|&(x, b)| !g.has_edge(w, x) || h.adjacent(a, b))
        });
        if consistent {
            return Some(trim_by_guess(g, lists, h, gamma));
        }
    })
}

fn trim_by_guess(g: &Graph, lists: &[Vec<usize>], h: &BipartiteTarget, gamma: Vec<(usize, usize)>) -> PartialHomGuess {
    let mut out: Vec<Vec<usize>> = lists.to_vec();
    let mut in_w0 = vec![false; g.vertex_count()];
    for &(w, a) in &gamma {
        in_w0[w] = true;
        out[w] = vec![a];
    }
    for &(w, a) in &gamma {
        for &u in g.neighbors(w) {
            if !in_w0[u] {
                out[u].retain(|&b| h.adjacent(a, b));
            }
        }
    }
    let forced = (0..g.vertex_count())
        .filter(|&u| !in_w0[u] && out[u].is_empty())
        .collect();
    PartialHomGuess {
        gamma,
        lists: out,
        forced,
    }
}
