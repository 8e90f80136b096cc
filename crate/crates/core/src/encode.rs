//! Vertex Cover, Odd Cycle Transversal and Multiway Cut as deletion list
//! homomorphism instances.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::Graph;
use crate::instance::{BipartiteTarget, DeletionSolution, DlhomInstance, ListAssignment};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ProblemKind {
    VertexCover,
    OddCycleTransversal,
    MultiwayCut,
}

#[derive(Debug, Clone)]
pub struct EncodedProblem {
    pub kind: ProblemKind,
    pub source: Graph,
    /// Empty unless the kind is Multiway Cut.
    pub terminals: Vec<usize>,
    pub instance: DlhomInstance,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EncodeError {
    #[error("multiway cut needs at least two terminals, got {0}")]
    TooFewTerminals(usize),
    #[error("terminal {0} is out of range")]
    TerminalOutOfRange(usize),
    #[error("terminal {0} is listed twice")]
    DuplicateTerminal(usize),
}

impl EncodedProblem {
    /// Source-problem solution of at most the same size. A deleted
    /// subdivision vertex is replaced by the lower end of its edge.
    pub fn back_map(&self, sol: &DeletionSolution) -> Vec<usize> {
        let n = self.source.vertex_count();
        let edges: Vec<(usize, usize)> = self.source.edges().collect();
        let mut out: Vec<usize> = sol
            .deleted
            .iter()
            .map(|&v| if v < n { v } else { edges[v - n].0 })
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }
}

fn full(kind: ProblemKind, g: &Graph, h: BipartiteTarget, k: usize) -> EncodedProblem {
    let lists = ListAssignment::full(g.vertex_count(), h.vertex_count());
    EncodedProblem {
        kind,
        source: g.clone(),
        terminals: Vec::new(),
        instance: DlhomInstance::new(g.clone(), h, lists, k).expect("full lists are valid"),
    }
}

/// A single target vertex: exactly the edgeless graphs map.
pub fn encode_vertex_cover(g: &Graph, k: usize) -> EncodedProblem {
    full(ProblemKind::VertexCover, g, BipartiteTarget::single_vertex(), k)
}

/// A single target edge: exactly the bipartite graphs map.
pub fn encode_oct(g: &Graph, k: usize) -> EncodedProblem {
    full(ProblemKind::OddCycleTransversal, g, BipartiteTarget::single_edge(), k)
}

/// Subdivides every edge of `g` (edge of rank `r` in sorted order becomes
/// vertex `n + r`) and maps into a matching of `d` edges, terminal `t_i`
/// restricted to edge `i`. Terminals may be deleted.
pub fn encode_multiway_cut(g: &Graph, terminals: &[usize], k: usize) -> Result<EncodedProblem, EncodeError> {
    let n = g.vertex_count();
    let d = terminals.len();
    if d < 2 {
        return Err(EncodeError::TooFewTerminals(d));
    }
    for (i, &t) in terminals.iter().enumerate() {
        if t >= n {
            return Err(EncodeError::TerminalOutOfRange(t));
        }
        if terminals[..i].contains(&t) {
            return Err(EncodeError::DuplicateTerminal(t));
        }
    }
    let edges: Vec<(usize, usize)> = g.edges().collect();
    let mut sub_edges = Vec::with_capacity(2 * edges.len());
    for (r, &(u, v)) in edges.iter().enumerate() {
        sub_edges.push((u, n + r));
        sub_edges.push((v, n + r));
    }
    let total = n + edges.len();
    let subdivided = Graph::new(total, sub_edges).expect("subdivision is simple");
    let mut lists = ListAssignment::full(total, 2 * d).into_inner();
    for (i, &t) in terminals.iter().enumerate() {
        lists[t] = vec![2 * i, 2 * i + 1];
    }
    let instance = DlhomInstance::new(subdivided, BipartiteTarget::matching(d), ListAssignment::new(lists), k)
        .expect("lists come from the matching");
    Ok(EncodedProblem {
        kind: ProblemKind::MultiwayCut,
        source: g.clone(),
        terminals: terminals.to_vec(),
        instance,
    })
}
