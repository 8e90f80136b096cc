//! Seeded random instances. The same spec always yields the same instance.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::Graph;
use crate::instance::{BipartiteTarget, DlhomInstance, ListAssignment, Side, TargetError, TargetFile};
use crate::target::{build_chain_target, evaluate_decomposition, SkewDecompTree};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum TargetSpec {
    /// Random skew decomposable target built from a random tree.
    Decomposable {
        size: usize,
        #[serde(default = "default_attempts")]
        attempts: usize,
    },
    /// The chain target `H_ℓ`.
    Chain { ell: usize },
    Explicit { target: TargetFile },
}

fn default_attempts() -> usize {
    1000
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GenSpec {
    pub n: usize,
    pub edge_prob: f64,
    pub target: TargetSpec,
    /// Probability that a target vertex appears in a list.
    pub list_density: f64,
    pub k: usize,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenError {
    #[error("no decomposable target on {size} vertices found in {attempts} attempts")]
    AttemptsExhausted { size: usize, attempts: usize },
    #[error("probability {0} outside [0, 1]")]
    Probability(String),
    #[error("target size must be positive")]
    EmptyTarget,
    #[error("chain target needs ell >= 1")]
    ChainLength,
    #[error(transparent)]
    Target(#[from] TargetError),
}

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_tree<R: Rng>(rng: &mut R, ids: &[usize]) -> Option<SkewDecompTree> {
    if ids.len() == 1 {
        let side = if rng.gen_bool(0.5) { Side::Top } else { Side::Bottom };
        return Some(SkewDecompTree::leaf(ids[0], side));
    }
    let cut = rng.gen_range(1..ids.len());
    let special = rng.gen_bool(0.5);
    let left = random_tree(rng, &ids[..cut])?;
    let right = random_tree(rng, &ids[cut..])?;
    if special {
        let ok = !left.vertices_on(Side::Top).is_empty() && !right.vertices_on(Side::Bottom).is_empty();
        ok.then(|| SkewDecompTree::skew_sum(left, right))
    } else {
        Some(SkewDecompTree::union(left, right))
    }
}

/// Random decomposition tree on `size` shuffled vertex ids and its target.
pub fn random_decomposable_target<R: Rng>(
    rng: &mut R,
    size: usize,
    attempts: usize,
) -> Result<(BipartiteTarget, SkewDecompTree), GenError> {
    if size == 0 {
        return Err(GenError::EmptyTarget);
    }
    for _ in 0..attempts {
        let mut ids: Vec<usize> = (0..size).collect();
        ids.shuffle(rng);
        if let Some(tree) = random_tree(rng, &ids) {
            let h = evaluate_decomposition(&tree).expect("random trees are well formed");
            return Ok((h, tree));
        }
    }
    Err(GenError::AttemptsExhausted { size, attempts })
}

/// Erdős–Rényi graph.
pub fn random_graph<R: Rng>(rng: &mut R, n: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, edges).expect("simple by construction")
}

pub fn random_lists<R: Rng>(rng: &mut R, n: usize, h: usize, density: f64) -> ListAssignment {
    ListAssignment::new((0..n).map(|_| (0..h).filter(|_| rng.gen_bool(density)).collect()).collect())
}

fn check_prob(p: f64) -> Result<(), GenError> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(GenError::Probability(p.to_string()))
    }
}

pub fn gen_random(spec: &GenSpec) -> Result<DlhomInstance, GenError> {
    check_prob(spec.edge_prob)?;
    check_prob(spec.list_density)?;
    let mut rng = rng_from_seed(spec.seed);
    let target = match &spec.target {
        TargetSpec::Decomposable { size, attempts } => random_decomposable_target(&mut rng, *size, *attempts)?.0,
        TargetSpec::Chain { ell } => {
            if *ell == 0 {
                return Err(GenError::ChainLength);
            }
            build_chain_target(*ell).target
        }
        TargetSpec::Explicit { target } => target.to_target()?,
    };
    let graph = random_graph(&mut rng, spec.n, spec.edge_prob);
    let lists = random_lists(&mut rng, spec.n, target.vertex_count(), spec.list_density);
    Ok(DlhomInstance::new(graph, target, lists, spec.k).expect("lists drawn from the target"))
}

/// Lists of `inst` cut down to be fixed side and fixed component: every
/// component of `G` picks one target component, every vertex one side of it
/// (opposite sides along a 2-colouring when `G` is bipartite).
pub fn fsfc_lists<R: Rng>(rng: &mut R, inst: &DlhomInstance) -> ListAssignment {
    let h = &inst.target;
    let g = &inst.graph;
    let colouring = g.two_coloring().ok();
    let mut lists = vec![Vec::new(); g.vertex_count()];
    for comp in g.components() {
        let c = rng.gen_range(0..h.components().len());
        let flip = rng.gen_bool(0.5);
        for &v in &comp {
            let side = match &colouring {
                Some(col) if (col[v] == 0) != flip => Side::Top,
                Some(_) => Side::Bottom,
                None if rng.gen_bool(0.5) => Side::Top,
                None => Side::Bottom,
            };
            let pool = h.side_of_component(c, side);
            let mut list: Vec<usize> = inst.lists.get(v).iter().copied().filter(|a| pool.contains(a)).collect();
            if list.is_empty() && !pool.is_empty() && rng.gen_bool(0.8) {
                list.push(*pool.choose(rng).unwrap());
            }
            lists[v] = list;
        }
    }
    ListAssignment::new(lists)
}
