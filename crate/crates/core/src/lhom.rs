//! List homomorphism decision by arc consistency plus backtracking, and the
//! exhaustive deletion oracle built on top of it.

use fixedbitset::FixedBitSet;
use itertools::Itertools;

use crate::graph::Graph;
use crate::instance::{BipartiteTarget, DeletionSolution, DlhomInstance, ListAssignment};

/// Lists after propagation. `lists[v] ⊆ L(v)` always.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropagationState {
    pub lists: Vec<Vec<usize>>,
    pub emptied: bool,
}

fn to_domains(lists: &[Vec<usize>], h: usize) -> Vec<FixedBitSet> {
    lists
        .iter()
        .map(|list| {
            let mut set = FixedBitSet::with_capacity(h);
            for &a in list {
                set.insert(a);
            }
            set
        })
        .collect()
}

/// Revises `dom[u]` against `dom[v]` for every edge until nothing changes.
/// Returns false iff some alive domain became empty.
fn propagate(g: &Graph, h: &BipartiteTarget, alive: &[bool], dom: &mut [FixedBitSet], seeds: &[usize]) -> bool {
    let n = g.vertex_count();
    let mut queued = vec![false; n];
    let mut queue: Vec<usize> = Vec::with_capacity(n);
    for &v in seeds {
        if alive[v] && !queued[v] {
            queued[v] = true;
            queue.push(v);
        }
    }
    let mut support = FixedBitSet::with_capacity(h.vertex_count());
    while let Some(v) = queue.pop() {
        queued[v] = false;
        if dom[v].count_ones(..) == 0 {
            return false;
        }
        support.clear();
        for b in dom[v].ones() {
            support.union_with(h.neighbor_set(b));
        }
        for &u in g.neighbors(v) {
            if !alive[u] {
                continue;
            }
            let before = dom[u].count_ones(..);
            dom[u].intersect_with(&support);
            let after = dom[u].count_ones(..);
            if after == 0 {
                return false;
            }
            if after != before && !queued[u] {
                queued[u] = true;
                queue.push(u);
            }
        }
    }
    true
}

/// Greatest arc-consistent sub-lists of `l`.
pub fn arc_consistency(g: &Graph, l: &ListAssignment, h: &BipartiteTarget) -> PropagationState {
    let n = g.vertex_count();
    let mut dom = to_domains(l.as_slice(), h.vertex_count());
    let mut support = FixedBitSet::with_capacity(h.vertex_count());
    let mut changed = true;
    while changed {
        changed = false;
        for v in 0..n {
            support.clear();
            for b in dom[v].ones() {
                support.union_with(h.neighbor_set(b));
            }
            for &u in g.neighbors(v) {
                let before = dom[u].count_ones(..);
                dom[u].intersect_with(&support);
                changed |= dom[u].count_ones(..) != before;
            }
        }
    }
    PropagationState {
        emptied: dom.iter().any(|d| d.count_ones(..) == 0),
        lists: dom.iter().map(|d| d.ones().collect()).collect(),
    }
}

fn backtrack(g: &Graph, h: &BipartiteTarget, alive: &[bool], dom: Vec<FixedBitSet>) -> Option<Vec<FixedBitSet>> {
    let branch = (0..g.vertex_count())
        .filter(|&v| alive[v])
        .map(|v| (dom[v].count_ones(..), v))
        .filter(|&(c, _)| c >= 2)
        .min();
    let Some((_, v)) = branch else {
        return Some(dom);
    };
    for a in dom[v].ones() {
        let mut next = dom.clone();
        next[v].clear();
        next[v].insert(a);
        if propagate(g, h, alive, &mut next, &[v]) {
            if let Some(done) = backtrack(g, h, alive, next) {
                return Some(done);
            }
        }
    }
    None
}

/// List homomorphism of the subgraph induced by `alive`, if one exists.
/// Dead vertices get `None`.
pub(crate) fn lhom_decide_within(
    g: &Graph,
    lists: &[Vec<usize>],
    h: &BipartiteTarget,
    alive: &[bool],
) -> Option<Vec<Option<usize>>> {
    let n = g.vertex_count();
    let mut dom = to_domains(lists, h.vertex_count());
    if (0..n).any(|v| alive[v] && dom[v].count_ones(..) == 0) {
        return None;
    }
    let all: Vec<usize> = (0..n).collect();
    if !propagate(g, h, alive, &mut dom, &all) {
        return None;
    }
    let done = backtrack(g, h, alive, dom)?;
    Some(
        (0..n)
            .map(|v| alive[v].then(|| done[v].ones().next().unwrap()))
            .collect(),
    )
}

/// A list homomorphism from `(g, l)` to `h`, if one exists.
pub fn lhom_decide(g: &Graph, l: &ListAssignment, h: &BipartiteTarget) -> Option<Vec<usize>> {
    let alive = vec![true; g.vertex_count()];
    lhom_decide_within(g, l.as_slice(), h, &alive).map(|m| m.into_iter().map(Option::unwrap).collect())
}

/// Minimum deletion solution with at most `cap` deletions, found by trying
/// deletion sets by size and then lexicographically.
pub(crate) fn min_deletion_exhaustive(
    g: &Graph,
    lists: &[Vec<usize>],
    h: &BipartiteTarget,
    cap: usize,
) -> Option<DeletionSolution> {
    let n = g.vertex_count();
    // Empty-list vertices belong to every solution; adding them to each
    // candidate keeps the lexicographic order among the remaining sets.
    let forced: Vec<usize> = (0..n).filter(|&v| lists[v].is_empty()).collect();
    let free: Vec<usize> = (0..n).filter(|&v| !lists[v].is_empty()).collect();
    if forced.len() > cap {
        return None;
    }
    for extra in 0..=(cap - forced.len()).min(free.len()) {
        for chosen in free.iter().copied().combinations(extra) {
            let mut alive = vec![true; n];
            for &v in forced.iter().chain(&chosen) {
                alive[v] = false;
            }
            if let Some(hom) = lhom_decide_within(g, lists, h, &alive) {
                let mut deleted: Vec<usize> = forced.iter().chain(&chosen).copied().collect();
                deleted.sort_unstable();
                return Some(DeletionSolution { deleted, hom });
            }
        }
    }
    None
}

/// Minimum-size solution of `inst`, or `None` when every solution exceeds `k`.
pub fn solve_exact_oracle(inst: &DlhomInstance) -> Option<DeletionSolution> {
    min_deletion_exhaustive(&inst.graph, inst.lists.as_slice(), &inst.target, inst.k)
}

/// Minimum number of deletions, ignoring the budget of `inst`.
pub fn min_deletions(inst: &DlhomInstance) -> DeletionSolution {
    let n = inst.graph.vertex_count();
    min_deletion_exhaustive(&inst.graph, inst.lists.as_slice(), &inst.target, n)
        .expect("deleting every vertex always works")
}
