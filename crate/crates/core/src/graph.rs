//! Simple undirected graphs over dense vertex indices `0..n`.

use std::collections::VecDeque;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("edge ({0}, {1}) has an endpoint outside 0..{2}")]
    OutOfRange(usize, usize, usize),
    #[error("parallel edge ({0}, {1})")]
    ParallelEdge(usize, usize),
}

/// Loopless simple graph. Adjacency lists are kept sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    edge_count: usize,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
            edge_count: 0,
        }
    }

    pub fn new<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut adj = vec![Vec::new(); n];
        let mut edge_count = 0;
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(GraphError::OutOfRange(u, v, n));
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            adj[u].push(v);
            adj[v].push(u);
            edge_count += 1;
        }
        for (u, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                return Err(GraphError::ParallelEdge(u.min(w[0]), u.max(w[0])));
            }
        }
        Ok(Graph { adj, edge_count })
    }

    /// Builds a graph from edges known to be valid, silently merging duplicates.
    pub(crate) fn from_edges_dedup<I>(n: usize, edges: I) -> Self
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut adj = vec![Vec::new(); n];
        for (u, v) in edges {
            debug_assert!(u != v && u < n && v < n);
            adj[u].push(v);
            adj[v].push(u);
        }
        let mut edge_count = 0;
        for list in adj.iter_mut() {
            list.sort_unstable();
            list.dedup();
            edge_count += list.len();
        }
        Graph {
            adj,
            edge_count: edge_count / 2,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    /// Subgraph induced by `keep` (in the given order). Returns the new graph
    /// and the map from new indices back to old ones.
    pub fn induced(&self, keep: &[usize]) -> (Graph, Vec<usize>) {
        let mut index = vec![usize::MAX; self.vertex_count()];
        for (i, &v) in keep.iter().enumerate() {
            index[v] = i;
        }
        let adj = keep
            .iter()
            .map(|&v| {
                let mut list: Vec<usize> = self.adj[v]
                    .iter()
                    .filter_map(|&w| (index[w] != usize::MAX).then_some(index[w]))
                    .collect();
                list.sort_unstable();
                list
            })
            .collect::<Vec<_>>();
        let edge_count = adj.iter().map(Vec::len).sum::<usize>() / 2;
        (Graph { adj, edge_count }, keep.to_vec())
    }

    /// Induced subgraph on the vertices whose `alive` flag is set, keeping
    /// the original relative order.
    pub fn induced_mask(&self, alive: &[bool]) -> (Graph, Vec<usize>) {
        let keep: Vec<usize> = (0..self.vertex_count()).filter(|&v| alive[v]).collect();
        self.induced(&keep)
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        self.components_within(&vec![true; self.vertex_count()])
    }

    /// Components of the subgraph induced by the `alive` vertices.
    pub fn components_within(&self, alive: &[bool]) -> Vec<Vec<usize>> {
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if !alive[s] || seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut i = 0;
            while i < comp.len() {
                let v = comp[i];
                i += 1;
                for &w in &self.adj[v] {
                    if alive[w] && !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// BFS distances from `src`; `None` for unreachable vertices.
    pub fn distances_from(&self, src: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.vertex_count()];
        dist[src] = Some(0);
        let mut queue = VecDeque::from([src]);
        while let Some(v) = queue.pop_front() {
            let d = dist[v].unwrap() + 1;
            for &w in &self.adj[v] {
                if dist[w].is_none() {
                    dist[w] = Some(d);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// A shortest path from `src` to `dst` (inclusive) among `alive` vertices.
    /// Ties are broken towards lower-indexed predecessors.
    pub fn shortest_path_within(&self, src: usize, dst: usize, alive: &[bool]) -> Option<Vec<usize>> {
        if !alive[src] || !alive[dst] {
            return None;
        }
        let mut parent = vec![usize::MAX; self.vertex_count()];
        parent[src] = src;
        let mut queue = VecDeque::from([src]);
        while let Some(v) = queue.pop_front() {
            if v == dst {
                break;
            }
            for &w in &self.adj[v] {
                if alive[w] && parent[w] == usize::MAX {
                    parent[w] = v;
                    queue.push_back(w);
                }
            }
        }
        if parent[dst] == usize::MAX {
            return None;
        }
        let mut path = vec![dst];
        let mut v = dst;
        while v != src {
            v = parent[v];
            path.push(v);
        }
        path.reverse();
        Some(path)
    }

    /// Proper 2-colouring (colour 0 on the smallest vertex of each
    /// component), or an odd closed walk if the graph is not bipartite.
    pub fn two_coloring(&self) -> Result<Vec<u8>, OddCycle> {
        let n = self.vertex_count();
        let mut color = vec![u8::MAX; n];
        let mut parent = vec![usize::MAX; n];
        let mut depth = vec![0usize; n];
        for s in 0..n {
            if color[s] != u8::MAX {
                continue;
            }
            color[s] = 0;
            parent[s] = s;
            let mut queue = VecDeque::from([s]);
            while let Some(v) = queue.pop_front() {
                for &w in &self.adj[v] {
                    if color[w] == u8::MAX {
                        color[w] = 1 - color[v];
                        parent[w] = v;
                        depth[w] = depth[v] + 1;
                        queue.push_back(w);
                    } else if color[w] == color[v] {
                        return Err(OddCycle::from_bfs_tree(v, w, &parent, &depth));
                    }
                }
            }
        }
        Ok(color)
    }

    pub fn is_bipartite(&self) -> bool {
        self.two_coloring().is_ok()
    }
}

/// Odd closed walk: consecutive vertices are adjacent and the last vertex is
/// adjacent to the first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OddCycle {
    pub walk: Vec<usize>,
}

impl OddCycle {
    fn from_bfs_tree(x: usize, y: usize, parent: &[usize], depth: &[usize]) -> Self {
        let (mut a, mut b) = (x, y);
        let mut left = vec![a];
        let mut right = vec![b];
        while depth[a] > depth[b] {
            a = parent[a];
            left.push(a);
        }
        while depth[b] > depth[a] {
            b = parent[b];
            right.push(b);
        }
        while a != b {
            a = parent[a];
            b = parent[b];
            left.push(a);
            right.push(b);
        }
        // `right` ends at the common ancestor already present in `left`.
        right.pop();
        right.reverse();
        left.extend(right);
        OddCycle { walk: left }
    }

    pub fn len(&self) -> usize {
        self.walk.len()
    }

    pub fn is_empty(&self) -> bool {
        self.walk.is_empty()
    }
}

/// Bundle of the structural queries other modules rely on.
#[derive(Debug, Clone)]
pub struct GraphQueries {
    pub components: Vec<Vec<usize>>,
    pub coloring: Result<Vec<u8>, OddCycle>,
    /// `distances[u][v]`, `None` across components.
    pub distances: Vec<Vec<Option<usize>>>,
}

pub fn graph_queries(g: &Graph) -> GraphQueries {
    GraphQueries {
        components: g.components(),
        coloring: g.two_coloring(),
        distances: (0..g.vertex_count()).map(|v| g.distances_from(v)).collect(),
    }
}
