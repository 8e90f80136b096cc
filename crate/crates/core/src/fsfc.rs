//! Deletion to a skew decomposable target when every list is fixed side and
//! fixed component, by induction on the decomposition tree.

use std::collections::HashMap;

use thiserror::Error;

use crate::graph::Graph;
use crate::instance::{BipartiteTarget, DeletionSolution, DlhomInstance, Side};
use crate::target::{evaluate_decomposition, DecompError, SkewDecompTree};

/// Minimum vertex cover of `g` if it has at most `cap` vertices.
pub fn min_vertex_cover(g: &Graph, cap: usize) -> Option<Vec<usize>> {
    let mut alive = vec![true; g.vertex_count()];
    (0..=cap).find_map(|c| {
        let mut cover = Vec::new();
        cover_within(g, &mut alive, c, &mut cover).then(|| {
            cover.sort_unstable();
            cover
        })
    })
}

fn cover_within(g: &Graph, alive: &mut [bool], cap: usize, cover: &mut Vec<usize>) -> bool {
    let edge = g.edges().find(|&(u, v)| alive[u] && alive[v]);
    let Some((u, v)) = edge else {
        return true;
    };
    if cap == 0 {
        return false;
    }
    for x in [u, v] {
        alive[x] = false;
        cover.push(x);
        if cover_within(g, alive, cap - 1, cover) {
            alive[x] = true;
            return true;
        }
        cover.pop();
        alive[x] = true;
    }
    false
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FsfcError {
    #[error("decomposition is malformed: {0}")]
    Decomposition(#[from] DecompError),
    #[error("decomposition does not evaluate to the target")]
    TreeMismatch,
    #[error("list of vertex {0} is not inside one side of one target component")]
    ListNotFixed(usize),
    #[error("vertices {0} and {1} share a component but their lists lie in different target components")]
    MixedComponent(usize, usize),
}

/// A DL-Hom instance with fixed-side fixed-component lists and a
/// decomposition of its target.
#[derive(Debug, Clone)]
pub struct FsfcInstance {
    inst: DlhomInstance,
    tree: SkewDecompTree,
}

impl FsfcInstance {
    pub fn new(inst: DlhomInstance, tree: SkewDecompTree) -> Result<Self, FsfcError> {
        if evaluate_decomposition(&tree)? != inst.target {
            return Err(FsfcError::TreeMismatch);
        }
        let h = &inst.target;
        for (v, list) in inst.lists.as_slice().iter().enumerate() {
            if !list.is_empty() && h.fixed_side_component(list).is_none() {
                return Err(FsfcError::ListNotFixed(v));
            }
        }
        for comp in inst.graph.components() {
            let mut owner: Option<(usize, usize)> = None;
            for &v in &comp {
                let Some(&a) = inst.lists.get(v).first() else {
                    continue;
                };
                match owner {
                    None => owner = Some((v, h.component_of(a))),
                    Some((w, c)) if c != h.component_of(a) => return Err(FsfcError::MixedComponent(w, v)),
                    _ => {}
                }
            }
        }
        Ok(FsfcInstance { inst, tree })
    }

    pub fn instance(&self) -> &DlhomInstance {
        &self.inst
    }

    pub fn decomposition(&self) -> &SkewDecompTree {
        &self.tree
    }
}

/// Minimum solution of at most `k` deletions.
pub fn solve_fsfc(inst: &FsfcInstance) -> Option<DeletionSolution> {
    let i = &inst.inst;
    fsfc_min(&i.graph, i.lists.as_slice(), &i.target, &inst.tree, i.k)
}

/// Minimum solution with at most `cap` deletions. Lists must be fixed side
/// and fixed component in `h`, and `tree` must evaluate to `h`.
pub(crate) fn fsfc_min(
    g: &Graph,
    lists: &[Vec<usize>],
    h: &BipartiteTarget,
    tree: &SkewDecompTree,
    cap: usize,
) -> Option<DeletionSolution> {
    match tree {
        SkewDecompTree::Leaf { .. } => solve_leaf(g, lists, cap),
        SkewDecompTree::Union(l, r) => {
            let split = Split::new(h, l, r);
            split.solve(g, lists, cap, |a, b| split.in_left[a] != split.in_left[b] || h.side(a) == h.side(b))
        }
        SkewDecompTree::SkewSum(l, r) => {
            let split = Split::new(h, l, r);
            let trimmed = split.trim(lists);
            let reduced = split.drop_complete_edges(g, &trimmed);
            split.solve(&reduced, &trimmed, cap, |a, b| {
                h.side(a) == h.side(b) || split.class(a) == Class::B1 && split.class(b) == Class::T2
                    || split.class(a) == Class::T2 && split.class(b) == Class::B1
            })
        }
    }
}

fn solve_leaf(g: &Graph, lists: &[Vec<usize>], cap: usize) -> Option<DeletionSolution> {
    let n = g.vertex_count();
    let forced: Vec<usize> = (0..n).filter(|&v| lists[v].is_empty()).collect();
    if forced.len() > cap {
        return None;
    }
    let keep: Vec<usize> = (0..n).filter(|&v| !lists[v].is_empty()).collect();
    let (rest, origin) = g.induced(&keep);
    let cover = min_vertex_cover(&rest, cap - forced.len())?;
    let mut deleted = forced;
    deleted.extend(cover.iter().map(|&v| origin[v]));
    deleted.sort_unstable();
    let mut hom = vec![None; n];
    for &v in &keep {
        hom[v] = Some(lists[v][0]);
    }
    for &v in &deleted {
        hom[v] = None;
    }
    Some(DeletionSolution { deleted, hom })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Class {
    T1,
    B1,
    T2,
    B2,
}

struct Child {
    /// Parent-local vertices, ascending; position is the child-local index.
    verts: Vec<usize>,
    target: BipartiteTarget,
    tree: SkewDecompTree,
}

impl Child {
    fn new(h: &BipartiteTarget, tree: &SkewDecompTree) -> Self {
        let mut verts: Vec<usize> = tree.leaves().into_iter().map(|(v, _)| v).collect();
        verts.sort_unstable();
        let (graph, _) = h.graph().induced(&verts);
        let sides = verts.iter().map(|&v| h.side(v)).collect();
        let target = BipartiteTarget::new(graph, sides).expect("induced subgraph of a bipartite target");
        let tree = relabel(tree, &verts);
        Child { verts, target, tree }
    }

    fn local(&self, a: usize) -> usize {
        self.verts.binary_search(&a).expect("list entry inside this child")
    }
}

fn relabel(tree: &SkewDecompTree, verts: &[usize]) -> SkewDecompTree {
    match tree {
        SkewDecompTree::Leaf { vertex, side } => SkewDecompTree::leaf(verts.binary_search(vertex).unwrap(), *side),
        SkewDecompTree::Union(l, r) => SkewDecompTree::union(relabel(l, verts), relabel(r, verts)),
        SkewDecompTree::SkewSum(l, r) => SkewDecompTree::skew_sum(relabel(l, verts), relabel(r, verts)),
    }
}

/// A binary node of the decomposition with both children prepared.
struct Split<'h> {
    h: &'h BipartiteTarget,
    in_left: Vec<bool>,
    children: [Child; 2],
}

/// Minimum deletions known for a component: exact, or a bound it exceeds.
#[derive(Clone)]
enum Known {
    Exact(DeletionSolution),
    Exceeds(usize),
}

impl<'h> Split<'h> {
    fn new(h: &'h BipartiteTarget, l: &SkewDecompTree, r: &SkewDecompTree) -> Self {
        let left = Child::new(h, l);
        let right = Child::new(h, r);
        let mut in_left = vec![false; h.vertex_count()];
        for &v in &left.verts {
            in_left[v] = true;
        }
        Split {
            h,
            in_left,
            children: [left, right],
        }
    }

    fn class(&self, a: usize) -> Class {
        match (self.in_left[a], self.h.side(a)) {
            (true, Side::Top) => Class::T1,
            (true, Side::Bottom) => Class::B1,
            (false, Side::Top) => Class::T2,
            (false, Side::Bottom) => Class::B2,
        }
    }

    fn list_class(&self, list: &[usize]) -> Option<Class> {
        list.first().map(|&a| self.class(a))
    }

    /// Top lists meeting `T1` shrink to `T1`; bottom lists meeting `B2`
    /// shrink to `B2`.
    fn trim(&self, lists: &[Vec<usize>]) -> Vec<Vec<usize>> {
        lists
            .iter()
            .map(|list| {
                let keep = |c: Class| -> Vec<usize> { list.iter().copied().filter(|&a| self.class(a) == c).collect() };
                match list.first().map(|&a| self.h.side(a)) {
                    Some(Side::Top) if list.iter().any(|&a| self.class(a) == Class::T1) => keep(Class::T1),
                    Some(Side::Bottom) if list.iter().any(|&a| self.class(a) == Class::B2) => keep(Class::B2),
                    _ => list.clone(),
                }
            })
            .collect()
    }

    /// Removes edges whose endpoints have lists in `T1` and `B2`; every such
    /// edge is preserved by any choice of images.
    fn drop_complete_edges(&self, g: &Graph, lists: &[Vec<usize>]) -> Graph {
        let edges = g.edges().filter(|&(u, v)| {
            let pair = (self.list_class(&lists[u]), self.list_class(&lists[v]));
            !matches!(pair, (Some(Class::T1), Some(Class::B2)) | (Some(Class::B2), Some(Class::T1)))
        });
        Graph::from_edges_dedup(g.vertex_count(), edges)
    }

    fn solve(
        &self,
        g: &Graph,
        lists: &[Vec<usize>],
        cap: usize,
        bad: impl Fn(usize, usize) -> bool,
    ) -> Option<DeletionSolution> {
        let n = g.vertex_count();
        let mut alive = vec![true; n];
        let mut deleted: Vec<usize> = (0..n).filter(|&v| lists[v].is_empty()).collect();
        if deleted.len() > cap {
            return None;
        }
        for &v in &deleted {
            alive[v] = false;
        }
        let bad_edges: Vec<(usize, usize)> = g
            .edges()
            .filter(|&(u, v)| alive[u] && alive[v] && bad(lists[u][0], lists[v][0]))
            .collect();
        let mut memo = HashMap::new();
        let best = self.branch(g, lists, &bad_edges, &mut alive, &mut deleted, cap, &mut memo)?;
        Some(best)
    }

    /// Exhausts the bad edges, lowest first and the lower endpoint first,
    /// keeping the smallest complete solution.
    #[allow(clippy::too_many_arguments)]
    fn branch(
        &self,
        g: &Graph,
        lists: &[Vec<usize>],
        bad_edges: &[(usize, usize)],
        alive: &mut Vec<bool>,
        deleted: &mut Vec<usize>,
        cap: usize,
        memo: &mut HashMap<Vec<usize>, Known>,
    ) -> Option<DeletionSolution> {
        let Some(&(u, v)) = bad_edges.iter().find(|&&(u, v)| alive[u] && alive[v]) else {
            return self.combine(g, lists, alive, deleted, cap, memo);
        };
        let mut best: Option<DeletionSolution> = None;
        for x in [u, v] {
            let limit = match &best {
                Some(b) => b.size() - 1,
                None => cap,
            };
            if deleted.len() + 1 > limit {
                continue;
            }
            alive[x] = false;
            deleted.push(x);
            if let Some(sol) = self.branch(g, lists, bad_edges, alive, deleted, limit, memo) {
                best = Some(sol);
            }
            deleted.pop();
            alive[x] = true;
        }
        best
    }

    fn combine(
        &self,
        g: &Graph,
        lists: &[Vec<usize>],
        alive: &[bool],
        deleted: &[usize],
        cap: usize,
        memo: &mut HashMap<Vec<usize>, Known>,
    ) -> Option<DeletionSolution> {
        let n = g.vertex_count();
        let mut budget = cap.checked_sub(deleted.len())?;
        let mut all_deleted = deleted.to_vec();
        let mut hom = vec![None; n];
        for comp in g.components_within(alive) {
            if comp.len() == 1 {
                hom[comp[0]] = Some(lists[comp[0]][0]);
                continue;
            }
            let part = self.component_minimum(g, lists, &comp, budget, memo)?;
            budget -= part.size();
            all_deleted.extend(&part.deleted);
            for (v, a) in part.hom.iter().enumerate() {
                if let Some(a) = a {
                    hom[v] = Some(*a);
                }
            }
        }
        all_deleted.sort_unstable();
        Some(DeletionSolution {
            deleted: all_deleted,
            hom,
        })
    }

    /// `d(C)` with a witness in the coordinates of `g`.
    fn component_minimum(
        &self,
        g: &Graph,
        lists: &[Vec<usize>],
        comp: &[usize],
        budget: usize,
        memo: &mut HashMap<Vec<usize>, Known>,
    ) -> Option<DeletionSolution> {
        match memo.get(comp) {
            Some(Known::Exact(sol)) => return (sol.size() <= budget).then(|| sol.clone()),
            Some(Known::Exceeds(b)) if *b >= budget => return None,
            _ => {}
        }
        let child = &self.children[usize::from(!self.in_left[lists[comp[0]][0]])];
        let (sub, _) = g.induced(comp);
        let sub_lists: Vec<Vec<usize>> = comp
            .iter()
            .map(|&v| lists[v].iter().map(|&a| child.local(a)).collect())
            .collect();
        let found = (0..=budget).find_map(|b| solve_child(&sub, &sub_lists, child, b));
        memo.insert(
            comp.to_vec(),
            match &found {
                Some(sol) => Known::Exact(sol.clone()),
                None => Known::Exceeds(budget),
            },
        );
        let local = found?;
        let mut hom = vec![None; g.vertex_count()];
        for (i, &v) in comp.iter().enumerate() {
            hom[v] = local.hom[i].map(|a| child.verts[a]);
        }
        Some(DeletionSolution {
            deleted: local.deleted.iter().map(|&i| comp[i]).collect(),
            hom,
        })
    }
}

/// Deletion to the child target within `budget`, by the FS-FC recursion when
/// the lists stay fixed side and fixed component there, otherwise by the
/// general pipeline for the child.
fn solve_child(g: &Graph, lists: &[Vec<usize>], child: &Child, budget: usize) -> Option<DeletionSolution> {
    let h = &child.target;
    let fixed = lists.iter().all(|l| l.is_empty() || h.fixed_side_component(l).is_some());
    let consistent = g.components().iter().all(|comp| {
        let mut owners = comp.iter().filter_map(|&v| lists[v].first()).map(|&a| h.component_of(a));
        match owners.next() {
            Some(c) => owners.all(|d| d == c),
            None => true,
        }
    });
    if fixed && consistent {
        fsfc_min(g, lists, h, &child.tree, budget)
    } else {
        crate::pipeline::solve_with_tree(g, lists, h, &child.tree, budget)
    }
}

/// List trimming at a special-sum root; `None` if the root is not a special sum.
pub fn trim_special_sum_lists(inst: &FsfcInstance) -> Option<Vec<Vec<usize>>> {
    match &inst.tree {
        SkewDecompTree::SkewSum(l, r) => Some(Split::new(&inst.inst.target, l, r).trim(inst.inst.lists.as_slice())),
        _ => None,
    }
}

/// Drops the edges between `T1`-lists and `B2`-lists at a special-sum root.
pub fn drop_special_sum_edges(inst: &FsfcInstance, lists: &[Vec<usize>]) -> Option<Graph> {
    match &inst.tree {
        SkewDecompTree::SkewSum(l, r) => {
            Some(Split::new(&inst.inst.target, l, r).drop_complete_edges(&inst.inst.graph, lists))
        }
        _ => None,
    }
}
