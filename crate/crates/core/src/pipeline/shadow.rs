//! Instances that may ignore anchor-free components, and their reduction to
//! plain fixed-side fixed-component instances through a shadow set `Z`.

use std::collections::HashSet;

use super::bipcomp::PipelineError;
use crate::fsfc::fsfc_min;
use crate::graph::Graph;
use crate::instance::{BipartiteTarget, DeletionSolution};
use crate::lhom::lhom_decide_within;
use crate::target::SkewDecompTree;

/// Fixed-side fixed-component lists with anchors `n0`: a solution must
/// colour every component of `G ∖ W` that meets `n0`, and nothing else.
#[derive(Debug, Clone)]
pub struct FsfcIgInstance {
    pub graph: Graph,
    pub target: BipartiteTarget,
    pub lists: Vec<Vec<usize>>,
    /// Sorted.
    pub n0: Vec<usize>,
    pub k: usize,
}

impl FsfcIgInstance {
    /// Whether `w` is a solution.
    pub fn accepts(&self, w: &[usize]) -> bool {
        if w.len() > self.k {
            return false;
        }
        let mut alive = vec![true; self.graph.vertex_count()];
        for &v in w {
            alive[v] = false;
        }
        let mut keep = vec![false; alive.len()];
        for comp in self.graph.components_within(&alive) {
            if comp.iter().any(|v| self.n0.binary_search(v).is_ok()) {
                for v in comp {
                    keep[v] = true;
                }
            }
        }
        lhom_decide_within(&self.graph, &self.lists, &self.target, &keep).is_some()
    }

    /// Vertices reachable from `n0` in `G ∖ w`.
    pub fn reach(&self, w: &[usize]) -> Vec<usize> {
        let mut alive = vec![true; self.graph.vertex_count()];
        for &v in w {
            alive[v] = false;
        }
        let mut out: Vec<usize> = self
            .graph
            .components_within(&alive)
            .into_iter()
            .filter(|c| c.iter().any(|v| self.n0.binary_search(v).is_ok()))
            .flatten()
            .collect();
        out.sort_unstable();
        out
    }
}

/// Result of removing the bad components of `G[Z]` and their neighbourhood.
#[derive(Debug, Clone)]
pub struct PrunedInstance {
    pub graph: Graph,
    pub lists: Vec<Vec<usize>>,
    /// `k − |X|`.
    pub k: usize,
    /// Neighbours of bad components outside `Z`; they must be deleted.
    pub forced: Vec<usize>,
    /// Vertices of bad components.
    pub bad: Vec<usize>,
    /// Vertex `i` of the pruned graph is `origin[i]` of the input.
    pub origin: Vec<usize>,
}

/// Classifies the components of `G[Z]` by whether they admit a list
/// homomorphism, forces the outside neighbours `X` of the bad ones into the
/// solution and returns `(G ∖ (X ∪ B), L, k − |X|)`; `Ok(None)` if `|X| > k`.
/// `Z` must avoid `n0`.
pub fn prune_bad_components(inst: &FsfcIgInstance, z: &[usize]) -> Result<Option<PrunedInstance>, PipelineError> {
    let n = inst.graph.vertex_count();
    let mut in_z = vec![false; n];
    for &v in z {
        if inst.n0.binary_search(&v).is_ok() {
            return Err(PipelineError::ShadowMeetsAnchors(v));
        }
        in_z[v] = true;
    }
    let mut removed = vec![false; n];
    let mut forced = Vec::new();
    let mut bad = Vec::new();
    for comp in inst.graph.components_within(&in_z) {
        let mut mask = vec![false; n];
        for &v in &comp {
            mask[v] = true;
        }
        if lhom_decide_within(&inst.graph, &inst.lists, &inst.target, &mask).is_some() {
            continue;
        }
        for &v in &comp {
            removed[v] = true;
            bad.push(v);
            for &x in inst.graph.neighbors(v) {
                if !in_z[x] && !forced.contains(&x) {
                    forced.push(x);
                }
            }
        }
    }
    forced.sort_unstable();
    bad.sort_unstable();
    if forced.len() > inst.k {
        return Ok(None);
    }
    for &x in &forced {
        removed[x] = true;
    }
    let origin: Vec<usize> = (0..n).filter(|&v| !removed[v]).collect();
    let (graph, _) = inst.graph.induced(&origin);
    Ok(Some(PrunedInstance {
        graph,
        lists: origin.iter().map(|&v| inst.lists[v].clone()).collect(),
        k: inst.k - forced.len(),
        forced,
        bad,
        origin,
    }))
}

/// Solves the pruned instance as a plain fixed-side fixed-component instance
/// and lifts the answer back to `inst`.
pub(crate) fn solve_pruned(
    inst: &FsfcIgInstance,
    pruned: &PrunedInstance,
    tree: &SkewDecompTree,
) -> Option<DeletionSolution> {
    let sol = fsfc_min(&pruned.graph, &pruned.lists, &inst.target, tree, pruned.k)?;
    let mut deleted = pruned.forced.clone();
    deleted.extend(sol.deleted.iter().map(|&v| pruned.origin[v]));
    deleted.sort_unstable();
    let mut hom = vec![None; inst.graph.vertex_count()];
    for (i, a) in sol.hom.into_iter().enumerate() {
        hom[pruned.origin[i]] = a;
    }
    Some(DeletionSolution { deleted, hom })
}

/// Grows a coloured region `A` from the anchors one frontier vertex at a
/// time, either deleting it or adding it while `G[A]` stays colourable. At
/// each leaf the unreached vertices form a shadow set `Z`, which is pruned
/// and solved as a plain instance.
pub(crate) fn solve_fsfc_ig(inst: &FsfcIgInstance, tree: &SkewDecompTree) -> Option<Vec<usize>> {
    let n = inst.graph.vertex_count();
    let mut search = RegionSearch {
        inst,
        tree,
        in_region: vec![false; n],
        deleted: Vec::new(),
        tried: HashSet::new(),
    };
    search.run()
}

struct RegionSearch<'a> {
    inst: &'a FsfcIgInstance,
    tree: &'a SkewDecompTree,
    in_region: Vec<bool>,
    deleted: Vec<usize>,
    tried: HashSet<Vec<usize>>,
}

impl RegionSearch<'_> {
    fn frontier(&self) -> Option<usize> {
        let g = &self.inst.graph;
        let open = |v: usize| !self.in_region[v] && !self.deleted.contains(&v);
        let from_anchor = self.inst.n0.iter().copied().find(|&v| open(v));
        let from_region = (0..g.vertex_count())
            .filter(|&v| self.in_region[v])
            .flat_map(|v| g.neighbors(v).iter().copied())
            .filter(|&v| open(v))
            .min();
        match (from_anchor, from_region) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        }
    }

    fn run(&mut self) -> Option<Vec<usize>> {
        let Some(f) = self.frontier() else {
            return self.leaf();
        };
        self.in_region[f] = true;
        let colourable = lhom_decide_within(&self.inst.graph, &self.inst.lists, &self.inst.target, &self.in_region).is_some();
        if colourable {
            if let Some(w) = self.run() {
                self.in_region[f] = false;
                return Some(w);
            }
        }
        self.in_region[f] = false;
        if self.deleted.len() < self.inst.k {
            self.deleted.push(f);
            let found = self.run();
            self.deleted.pop();
            return found;
        }
        None
    }

    fn leaf(&mut self) -> Option<Vec<usize>> {
        let z: Vec<usize> = (0..self.inst.graph.vertex_count())
            .filter(|&v| !self.in_region[v] && !self.deleted.contains(&v))
            .collect();
        if !self.tried.insert(z.clone()) {
            return None;
        }
        let pruned = prune_bad_components(self.inst, &z).expect("shadow avoids anchors")?;
        solve_pruned(self.inst, &pruned, self.tree).map(|sol| sol.deleted)
    }
}
