//! Compression instances with an anchor set `N0`: conflicts between anchors,
//! branching on conflicts, and restriction of all lists to the forced side.

use thiserror::Error;

use super::shadow::{solve_fsfc_ig, FsfcIgInstance};
use crate::graph::Graph;
use crate::instance::{BipartiteTarget, Side};
use crate::target::SkewDecompTree;

/// Bipartite `G` whose anchors `n0` carry fixed-side fixed-component lists
/// and whose other vertices are coloured by `phi0`.
#[derive(Debug, Clone)]
pub struct BipCompInstance {
    pub graph: Graph,
    pub target: BipartiteTarget,
    pub lists: Vec<Vec<usize>>,
    /// Sorted.
    pub n0: Vec<usize>,
    /// Defined exactly off `n0`.
    pub phi0: Vec<Option<usize>>,
    pub k: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PipelineError {
    #[error("graph is not bipartite")]
    NotBipartite,
    #[error("anchor {0} has a list that is empty or not inside one side of one component")]
    AnchorList(usize),
    #[error("phi0 is not a list homomorphism off the anchors (vertex {0})")]
    BadPhi0(usize),
    #[error("anchors {0} and {1} are in conflict")]
    Conflict(usize, usize),
    #[error("target is not skew decomposable")]
    NotDecomposable,
    #[error("shadow set meets the anchors at vertex {0}")]
    ShadowMeetsAnchors(usize),
}

impl BipCompInstance {
    pub fn new(
        graph: Graph,
        target: BipartiteTarget,
        lists: Vec<Vec<usize>>,
        mut n0: Vec<usize>,
        phi0: Vec<Option<usize>>,
        k: usize,
    ) -> Result<Self, PipelineError> {
        n0.sort_unstable();
        n0.dedup();
        if !graph.is_bipartite() {
            return Err(PipelineError::NotBipartite);
        }
        for &v in &n0 {
            if target.fixed_side_component(&lists[v]).is_none() {
                return Err(PipelineError::AnchorList(v));
            }
        }
        for v in 0..graph.vertex_count() {
            let anchor = n0.binary_search(&v).is_ok();
            match phi0[v] {
                Some(a) if !anchor && lists[v].contains(&a) => {}
                None if anchor => {}
                _ => return Err(PipelineError::BadPhi0(v)),
            }
        }
        for (u, v) in graph.edges() {
            if let (Some(a), Some(b)) = (phi0[u], phi0[v]) {
                if !target.adjacent(a, b) {
                    return Err(PipelineError::BadPhi0(u));
                }
            }
        }
        Ok(BipCompInstance {
            graph,
            target,
            lists,
            n0,
            phi0,
            k,
        })
    }

    pub fn is_anchor(&self, v: usize) -> bool {
        self.n0.binary_search(&v).is_ok()
    }

    /// Sub-instance on `keep` (ascending) with budget `k`.
    pub(crate) fn induced(&self, keep: &[usize], k: usize) -> BipCompInstance {
        let (graph, _) = self.graph.induced(keep);
        let n0 = keep
            .iter()
            .enumerate()
            .filter(|&(_, &v)| self.is_anchor(v))
            .map(|(i, _)| i)
            .collect();
        BipCompInstance {
            graph,
            target: self.target.clone(),
            lists: keep.iter().map(|&v| self.lists[v].clone()).collect(),
            n0,
            phi0: keep.iter().map(|&v| self.phi0[v]).collect(),
            k,
        }
    }

    /// Vertices of components containing an anchor, ascending.
    pub fn anchored_vertices(&self) -> Vec<usize> {
        let mut keep: Vec<usize> = self
            .graph
            .components()
            .into_iter()
            .filter(|c| c.iter().any(|&v| self.is_anchor(v)))
            .flatten()
            .collect();
        keep.sort_unstable();
        keep
    }

    /// Side of each vertex within its component: 0 on the lowest vertex.
    fn parity(&self) -> Vec<u8> {
        self.graph.two_coloring().expect("compression graphs are bipartite")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConflictKind {
    /// The two lists lie in different components of the target.
    Component,
    /// Same target component, but the sides disagree with the parity of
    /// the distance between the anchors.
    Parity,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Conflict {
    pub u: usize,
    pub v: usize,
    pub kind: ConflictKind,
}

/// Every conflicting anchor pair `u < v` sharing a component of `G`.
pub fn detect_conflicts(inst: &BipCompInstance) -> Vec<Conflict> {
    let parity = inst.parity();
    let comp_of = {
        let mut c = vec![0; inst.graph.vertex_count()];
        for (i, comp) in inst.graph.components().iter().enumerate() {
            for &v in comp {
                c[v] = i;
            }
        }
        c
    };
    let h = &inst.target;
    let fixed: Vec<(usize, usize, Side)> = inst
        .n0
        .iter()
        .map(|&v| {
            let (c, s) = h.fixed_side_component(&inst.lists[v]).expect("anchor lists are fixed");
            (v, c, s)
        })
        .collect();
    let mut out = Vec::new();
    for (i, &(u, cu, su)) in fixed.iter().enumerate() {
        for &(v, cv, sv) in &fixed[i + 1..] {
            if comp_of[u] != comp_of[v] {
                continue;
            }
            let kind = if cu != cv {
                Some(ConflictKind::Component)
            } else if (parity[u] == parity[v]) != (su == sv) {
                Some(ConflictKind::Parity)
            } else {
                None
            };
            if let Some(kind) = kind {
                out.push(Conflict { u, v, kind });
            }
        }
    }
    out
}

/// Drops anchor-free components and intersects every remaining list with
/// the side its component's anchors force. Vertex `i` of the result is
/// `anchored_vertices()[i]` of the input.
pub fn restrict_to_fixed_side(inst: &BipCompInstance) -> Result<FsfcIgInstance, PipelineError> {
    if let Some(c) = detect_conflicts(inst).first() {
        return Err(PipelineError::Conflict(c.u, c.v));
    }
    let keep = inst.anchored_vertices();
    let sub = inst.induced(&keep, inst.k);
    let parity = sub.parity();
    let h = &sub.target;
    let mut lists = sub.lists.clone();
    for comp in sub.graph.components() {
        let anchor = *comp.iter().find(|&&v| sub.is_anchor(v)).expect("anchored component");
        let (c, side) = h.fixed_side_component(&sub.lists[anchor]).unwrap();
        for &u in &comp {
            let want = if parity[u] == parity[anchor] { side } else { side.opposite() };
            lists[u].retain(|&a| h.component_of(a) == c && h.side(a) == want);
        }
    }
    Ok(FsfcIgInstance {
        graph: sub.graph,
        target: sub.target,
        lists,
        n0: sub.n0,
        k: sub.k,
    })
}

/// A deletion set of at most `k` vertices after which every component meets
/// no anchor or has a list homomorphism. Conflicts are resolved by
/// branching on a shortest path between the closest conflicting pair.
pub(crate) fn solve_bipcomp(inst: &BipCompInstance, tree: &SkewDecompTree) -> Option<Vec<usize>> {
    let keep = inst.anchored_vertices();
    let inst = inst.induced(&keep, inst.k);
    let conflicts = detect_conflicts(&inst);
    if conflicts.is_empty() {
        let ig = restrict_to_fixed_side(&inst).expect("no conflicts");
        let w = solve_fsfc_ig(&ig, tree)?;
        return Some(w.into_iter().map(|v| keep[v]).collect());
    }
    if inst.k == 0 {
        return None;
    }
    let all = vec![true; inst.graph.vertex_count()];
    let dist = |c: &Conflict| inst.graph.distances_from(c.u)[c.v].expect("same component");
    let pick = conflicts.iter().min_by_key(|c| (dist(c), c.u, c.v)).unwrap();
    let path = inst.graph.shortest_path_within(pick.u, pick.v, &all).unwrap();
    for &x in &path {
        let rest: Vec<usize> = (0..inst.graph.vertex_count()).filter(|&v| v != x).collect();
        let sub = inst.induced(&rest, inst.k - 1);
        if let Some(w) = solve_bipcomp(&sub, tree) {
            let mut out: Vec<usize> = w.into_iter().map(|v| keep[rest[v]]).collect();
            out.push(keep[x]);
            return Some(out);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k2_pair() -> BipartiteTarget {
        BipartiteTarget::matching(2)
    }

    fn bip(graph: Graph, target: BipartiteTarget, lists: Vec<Vec<usize>>, n0: Vec<usize>, k: usize) -> BipCompInstance {
        let n = graph.vertex_count();
        // colour non-anchors with a proper 2-colouring onto edge (0, 1)
        let col = graph.two_coloring().unwrap();
        let phi0 = (0..n)
            .map(|v| (!n0.contains(&v)).then(|| col[v] as usize))
            .collect();
        BipCompInstance::new(graph, target, lists, n0, phi0, k).unwrap()
    }

    #[test]
    fn component_conflict() {
        let g = Graph::new(3, [(0, 1), (1, 2)]).unwrap();
        let inst = bip(g, k2_pair(), vec![vec![1], vec![0, 1], vec![2]], vec![0, 2], 1);
        assert_eq!(
            detect_conflicts(&inst),
            vec![Conflict {
                u: 0,
                v: 2,
                kind: ConflictKind::Component
            }]
        );
    }

    #[test]
    fn parity_conflict_at_distance_two() {
        let g = Graph::new(3, [(0, 1), (1, 2)]).unwrap();
        let inst = bip(g, k2_pair(), vec![vec![0], vec![0, 1], vec![1]], vec![0, 2], 1);
        assert_eq!(detect_conflicts(&inst)[0].kind, ConflictKind::Parity);
    }

    #[test]
    fn separate_components_never_conflict() {
        let g = Graph::new(2, []).unwrap();
        let inst = bip(g, k2_pair(), vec![vec![0], vec![3]], vec![0, 1], 0);
        assert!(detect_conflicts(&inst).is_empty());
    }

    #[test]
    fn restriction_follows_parity() {
        let g = Graph::new(3, [(0, 1)]).unwrap();
        let h = BipartiteTarget::single_edge();
        let inst = bip(g, h, vec![vec![0], vec![0, 1], vec![0, 1]], vec![0], 0);
        let ig = restrict_to_fixed_side(&inst).unwrap();
        // vertex 2 has no anchor in its component and is dropped
        assert_eq!(ig.graph.vertex_count(), 2);
        assert_eq!(ig.lists, vec![vec![0], vec![1]]);
    }

    #[test]
    fn restriction_refuses_conflicts() {
        let g = Graph::new(3, [(0, 1), (1, 2)]).unwrap();
        let inst = bip(g, k2_pair(), vec![vec![0], vec![0, 1], vec![1]], vec![0, 2], 1);
        assert_eq!(restrict_to_fixed_side(&inst).unwrap_err(), PipelineError::Conflict(0, 2));
    }
}
