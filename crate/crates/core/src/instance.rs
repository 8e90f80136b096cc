//! Instance data model: bipartite targets, list assignments, DL-Hom
//! instances and deletion solutions, plus their JSON forms.

use std::fmt;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, GraphError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Side {
    #[serde(rename = "T")]
    Top,
    #[serde(rename = "B")]
    Bottom,
}

impl Side {
    pub fn opposite(self) -> Side {
        match self {
            Side::Top => Side::Bottom,
            Side::Bottom => Side::Top,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TargetError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("{sides} side labels for {vertices} vertices")]
    SideCount { sides: usize, vertices: usize },
    #[error("edge ({0}, {1}) joins two vertices on the same side")]
    EdgeWithinSide(usize, usize),
}

/// Bipartite target graph with an explicit side labelling.
#[derive(Debug, Clone)]
pub struct BipartiteTarget {
    graph: Graph,
    sides: Vec<Side>,
    components: Vec<Vec<usize>>,
    component_of: Vec<usize>,
    neighbor_sets: Vec<FixedBitSet>,
}

impl PartialEq for BipartiteTarget {
    fn eq(&self, other: &Self) -> bool {
        self.graph == other.graph && self.sides == other.sides
    }
}

impl Eq for BipartiteTarget {}

impl BipartiteTarget {
    pub fn new(graph: Graph, sides: Vec<Side>) -> Result<Self, TargetError> {
        let n = graph.vertex_count();
        if sides.len() != n {
            return Err(TargetError::SideCount {
                sides: sides.len(),
                vertices: n,
            });
        }
        if let Some((a, b)) = graph.edges().find(|&(a, b)| sides[a] == sides[b]) {
            return Err(TargetError::EdgeWithinSide(a, b));
        }
        let components = graph.components();
        let mut component_of = vec![0; n];
        for (i, comp) in components.iter().enumerate() {
            for &v in comp {
                component_of[v] = i;
            }
        }
        let neighbor_sets = (0..n)
            .map(|a| {
                let mut set = FixedBitSet::with_capacity(n);
                for &b in graph.neighbors(a) {
                    set.insert(b);
                }
                set
            })
            .collect();
        Ok(BipartiteTarget {
            graph,
            sides,
            components,
            component_of,
            neighbor_sets,
        })
    }

    /// The single vertex `K1` labelled Top.
    pub fn single_vertex() -> Self {
        Self::new(Graph::empty(1), vec![Side::Top]).unwrap()
    }

    /// `K2` with vertex 0 on top and vertex 1 on the bottom.
    pub fn single_edge() -> Self {
        Self::new(Graph::new(2, [(0, 1)]).unwrap(), vec![Side::Top, Side::Bottom]).unwrap()
    }

    /// Perfect matching on `2d` vertices: edge `i` is `(2i, 2i+1)`, tops even.
    pub fn matching(d: usize) -> Self {
        let g = Graph::new(2 * d, (0..d).map(|i| (2 * i, 2 * i + 1))).unwrap();
        let sides = (0..2 * d)
            .map(|v| if v % 2 == 0 { Side::Top } else { Side::Bottom })
            .collect();
        Self::new(g, sides).unwrap()
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn vertex_count(&self) -> usize {
        self.graph.vertex_count()
    }

    pub fn side(&self, a: usize) -> Side {
        self.sides[a]
    }

    pub fn sides(&self) -> &[Side] {
        &self.sides
    }

    pub fn components(&self) -> &[Vec<usize>] {
        &self.components
    }

    pub fn component_of(&self, a: usize) -> usize {
        self.component_of[a]
    }

    pub fn adjacent(&self, a: usize, b: usize) -> bool {
        self.neighbor_sets[a].contains(b)
    }

    pub(crate) fn neighbor_set(&self, a: usize) -> &FixedBitSet {
        &self.neighbor_sets[a]
    }

    /// Vertices of component `c` on side `side`.
    pub fn side_of_component(&self, c: usize, side: Side) -> Vec<usize> {
        self.components[c]
            .iter()
            .copied()
            .filter(|&a| self.sides[a] == side)
            .collect()
    }

    /// `Some((component, side))` if the nonempty `list` lies inside one side
    /// of one component.
    pub fn fixed_side_component(&self, list: &[usize]) -> Option<(usize, Side)> {
        let (&first, rest) = list.split_first()?;
        let key = (self.component_of[first], self.sides[first]);
        rest.iter()
            .all(|&a| (self.component_of[a], self.sides[a]) == key)
            .then_some(key)
    }
}

/// Per-vertex lists of allowed images; each list is sorted and duplicate-free.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ListAssignment {
    lists: Vec<Vec<usize>>,
}

impl ListAssignment {
    pub fn new(mut lists: Vec<Vec<usize>>) -> Self {
        for list in lists.iter_mut() {
            list.sort_unstable();
            list.dedup();
        }
        ListAssignment { lists }
    }

    pub fn full(vertices: usize, target_size: usize) -> Self {
        ListAssignment {
            lists: vec![(0..target_size).collect(); vertices],
        }
    }

    pub fn len(&self) -> usize {
        self.lists.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lists.is_empty()
    }

    pub fn get(&self, v: usize) -> &[usize] {
        &self.lists[v]
    }

    pub fn as_slice(&self) -> &[Vec<usize>] {
        &self.lists
    }

    pub fn into_inner(self) -> Vec<Vec<usize>> {
        self.lists
    }

    /// Lists of the vertices in `keep`, in that order.
    pub fn restrict(&self, keep: &[usize]) -> ListAssignment {
        ListAssignment {
            lists: keep.iter().map(|&v| self.lists[v].clone()).collect(),
        }
    }
}

impl From<Vec<Vec<usize>>> for ListAssignment {
    fn from(lists: Vec<Vec<usize>>) -> Self {
        ListAssignment::new(lists)
    }
}

/// One DL-Hom(H) instance: delete at most `k` vertices of `graph` so that
/// the rest has a list homomorphism to `target`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DlhomInstance {
    pub graph: Graph,
    pub target: BipartiteTarget,
    pub lists: ListAssignment,
    pub k: usize,
}

impl DlhomInstance {
    pub fn new(
        graph: Graph,
        target: BipartiteTarget,
        lists: ListAssignment,
        k: usize,
    ) -> Result<Self, ValidationReport> {
        let inst = DlhomInstance {
            graph,
            target,
            lists,
            k,
        };
        let report = inst.check_lists();
        if report.is_ok() {
            Ok(inst)
        } else {
            Err(report)
        }
    }

    fn check_lists(&self) -> ValidationReport {
        let mut violations = Vec::new();
        if self.lists.len() != self.graph.vertex_count() {
            violations.push(Violation::ListCount {
                lists: self.lists.len(),
                vertices: self.graph.vertex_count(),
            });
        }
        let h = self.target.vertex_count();
        for (v, list) in self.lists.as_slice().iter().enumerate() {
            for &a in list {
                if a >= h {
                    violations.push(Violation::ListEntryOutOfRange { vertex: v, entry: a });
                }
            }
        }
        ValidationReport { violations }
    }

    /// The same instance on the subgraph induced by `keep`, with the given budget.
    pub fn induced(&self, keep: &[usize], k: usize) -> DlhomInstance {
        let (graph, _) = self.graph.induced(keep);
        DlhomInstance {
            graph,
            target: self.target.clone(),
            lists: self.lists.restrict(keep),
            k,
        }
    }

    pub fn to_file(&self) -> InstanceFile {
        InstanceFile {
            graph: GraphFile::from_graph(&self.graph),
            target: TargetFile::from_target(&self.target),
            lists: self.lists.as_slice().to_vec(),
            k: self.k,
        }
    }
}

/// A deletion set together with a homomorphism on the surviving vertices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeletionSolution {
    pub deleted: Vec<usize>,
    /// `hom[v]` is `None` exactly for deleted vertices.
    pub hom: Vec<Option<usize>>,
}

impl DeletionSolution {
    pub fn size(&self) -> usize {
        self.deleted.len()
    }

    pub fn from_parts(n: usize, mut deleted: Vec<usize>, assignment: &[(usize, usize)]) -> Self {
        deleted.sort_unstable();
        deleted.dedup();
        let mut hom = vec![None; n];
        for &(v, a) in assignment {
            hom[v] = Some(a);
        }
        DeletionSolution { deleted, hom }
    }

    pub fn to_file(&self) -> WitnessFile {
        WitnessFile {
            deleted: self.deleted.clone(),
            hom: self
                .hom
                .iter()
                .enumerate()
                .filter_map(|(v, a)| a.map(|a| [v, a]))
                .collect(),
        }
    }

    pub fn from_file(file: &WitnessFile, n: usize) -> Result<Self, SolutionViolation> {
        let mut hom = vec![None; n];
        for &[v, a] in &file.hom {
            if v >= n {
                return Err(SolutionViolation::VertexOutOfRange(v));
            }
            hom[v] = Some(a);
        }
        let mut deleted = file.deleted.clone();
        deleted.sort_unstable();
        deleted.dedup();
        Ok(DeletionSolution { deleted, hom })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolutionViolation {
    #[error("{deleted} deletions exceed the budget {k}")]
    OverBudget { deleted: usize, k: usize },
    #[error("vertex {0} is out of range")]
    VertexOutOfRange(usize),
    #[error("vertex {0} is deleted but has an image")]
    DeletedButMapped(usize),
    #[error("surviving vertex {0} has no image")]
    Unmapped(usize),
    #[error("vertex {vertex} maps to {image}, which is not in its list")]
    NotInList { vertex: usize, image: usize },
    #[error("edge ({0}, {1}) maps to a non-edge of the target")]
    EdgeNotPreserved(usize, usize),
}

/// Checks `sol` against `inst`; `Ok(())` iff it is a valid solution.
pub fn verify_solution(inst: &DlhomInstance, sol: &DeletionSolution) -> Result<(), SolutionViolation> {
    let n = inst.graph.vertex_count();
    if sol.deleted.len() > inst.k {
        return Err(SolutionViolation::OverBudget {
            deleted: sol.deleted.len(),
            k: inst.k,
        });
    }
    if sol.hom.len() != n {
        return Err(SolutionViolation::VertexOutOfRange(sol.hom.len().min(n)));
    }
    let mut deleted = vec![false; n];
    for &v in &sol.deleted {
        if v >= n {
            return Err(SolutionViolation::VertexOutOfRange(v));
        }
        deleted[v] = true;
    }
    for (v, (&gone, &image)) in deleted.iter().zip(&sol.hom).enumerate() {
        match (gone, image) {
            (true, Some(_)) => return Err(SolutionViolation::DeletedButMapped(v)),
            (false, None) => return Err(SolutionViolation::Unmapped(v)),
            (false, Some(a)) if inst.lists.get(v).binary_search(&a).is_err() => {
                return Err(SolutionViolation::NotInList { vertex: v, image: a })
            }
            _ => {}
        }
    }
    for (u, v) in inst.graph.edges() {
        if let (Some(a), Some(b)) = (sol.hom[u], sol.hom[v]) {
            if !inst.target.adjacent(a, b) {
                return Err(SolutionViolation::EdgeNotPreserved(u, v));
            }
        }
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    GraphSelfLoop { vertex: usize },
    GraphEdgeOutOfRange { u: usize, v: usize },
    GraphDuplicateEdge { u: usize, v: usize },
    TargetSelfLoop { vertex: usize },
    TargetEdgeOutOfRange { a: usize, b: usize },
    TargetDuplicateEdge { a: usize, b: usize },
    SideCount { sides: usize, vertices: usize },
    EdgeWithinSide { a: usize, b: usize },
    TargetNotBipartite,
    ListCount { lists: usize, vertices: usize },
    ListEntryOutOfRange { vertex: usize, entry: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::GraphSelfLoop { vertex } => write!(f, "graph: self-loop at {vertex}"),
            Violation::GraphEdgeOutOfRange { u, v } => write!(f, "graph: edge ({u}, {v}) out of range"),
            Violation::GraphDuplicateEdge { u, v } => write!(f, "graph: parallel edge ({u}, {v})"),
            Violation::TargetSelfLoop { vertex } => write!(f, "target: self-loop at {vertex}"),
            Violation::TargetEdgeOutOfRange { a, b } => write!(f, "target: edge ({a}, {b}) out of range"),
            Violation::TargetDuplicateEdge { a, b } => write!(f, "target: parallel edge ({a}, {b})"),
            Violation::SideCount { sides, vertices } => {
                write!(f, "target: {sides} side labels for {vertices} vertices")
            }
            Violation::EdgeWithinSide { a, b } => write!(f, "target: edge within side ({a}, {b})"),
            Violation::TargetNotBipartite => write!(f, "target: not bipartite"),
            Violation::ListCount { lists, vertices } => {
                write!(f, "lists: {lists} lists for {vertices} vertices")
            }
            Violation::ListEntryOutOfRange { vertex, entry } => {
                write!(f, "lists: list entry out of range ({entry} in list of {vertex})")
            }
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Error)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return write!(f, "ok");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphFile {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
}

impl GraphFile {
    pub fn from_graph(g: &Graph) -> Self {
        GraphFile {
            n: g.vertex_count(),
            edges: g.edges().map(|(u, v)| [u, v]).collect(),
        }
    }

    pub fn to_graph(&self) -> Result<Graph, GraphError> {
        Graph::new(self.n, self.edges.iter().map(|&[u, v]| (u, v)))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TargetFile {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
    pub side: Vec<Side>,
}

impl TargetFile {
    pub fn from_target(h: &BipartiteTarget) -> Self {
        TargetFile {
            n: h.vertex_count(),
            edges: h.graph().edges().map(|(a, b)| [a, b]).collect(),
            side: h.sides().to_vec(),
        }
    }

    pub fn to_target(&self) -> Result<BipartiteTarget, TargetError> {
        let g = Graph::new(self.n, self.edges.iter().map(|&[a, b]| (a, b)))?;
        BipartiteTarget::new(g, self.side.clone())
    }
}

/// JSON instance: `{"graph": .., "target": .., "lists": .., "k": ..}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceFile {
    pub graph: GraphFile,
    pub target: TargetFile,
    pub lists: Vec<Vec<usize>>,
    pub k: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessFile {
    pub deleted: Vec<usize>,
    pub hom: Vec<[usize; 2]>,
}

fn edge_violations(
    n: usize,
    edges: &[[usize; 2]],
    self_loop: impl Fn(usize) -> Violation,
    out_of_range: impl Fn(usize, usize) -> Violation,
    duplicate: impl Fn(usize, usize) -> Violation,
) -> (Vec<Violation>, Vec<(usize, usize)>) {
    let mut violations = Vec::new();
    let mut good = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for &[u, v] in edges {
        if u >= n || v >= n {
            violations.push(out_of_range(u, v));
        } else if u == v {
            violations.push(self_loop(u));
        } else if !seen.insert((u.min(v), u.max(v))) {
            violations.push(duplicate(u.min(v), u.max(v)));
        } else {
            good.push((u, v));
        }
    }
    (violations, good)
}

/// Reports every invariant violation of a raw instance.
pub fn validate_instance(file: &InstanceFile) -> ValidationReport {
    let mut violations = Vec::new();
    let (mut vs, _) = edge_violations(
        file.graph.n,
        &file.graph.edges,
        |vertex| Violation::GraphSelfLoop { vertex },
        |u, v| Violation::GraphEdgeOutOfRange { u, v },
        |u, v| Violation::GraphDuplicateEdge { u, v },
    );
    violations.append(&mut vs);

    let t = &file.target;
    let (mut vs, good) = edge_violations(
        t.n,
        &t.edges,
        |vertex| Violation::TargetSelfLoop { vertex },
        |a, b| Violation::TargetEdgeOutOfRange { a, b },
        |a, b| Violation::TargetDuplicateEdge { a, b },
    );
    violations.append(&mut vs);
    if t.side.len() != t.n {
        violations.push(Violation::SideCount {
            sides: t.side.len(),
            vertices: t.n,
        });
    } else {
        for &(a, b) in &good {
            if t.side[a] == t.side[b] {
                violations.push(Violation::EdgeWithinSide {
                    a: a.min(b),
                    b: a.max(b),
                });
            }
        }
    }
    if !Graph::from_edges_dedup(t.n, good.iter().copied()).is_bipartite() {
        violations.push(Violation::TargetNotBipartite);
    }

    if file.lists.len() != file.graph.n {
        violations.push(Violation::ListCount {
            lists: file.lists.len(),
            vertices: file.graph.n,
        });
    }
    for (v, list) in file.lists.iter().enumerate() {
        for &a in list {
            if a >= t.n {
                violations.push(Violation::ListEntryOutOfRange { vertex: v, entry: a });
            }
        }
    }
    ValidationReport { violations }
}

impl InstanceFile {
    pub fn into_instance(&self) -> Result<DlhomInstance, ValidationReport> {
        let report = validate_instance(self);
        if !report.is_ok() {
            return Err(report);
        }
        let graph = self.graph.to_graph().expect("validated");
        let target = self.target.to_target().expect("validated");
        DlhomInstance::new(graph, target, ListAssignment::new(self.lists.clone()), self.k)
    }
}
