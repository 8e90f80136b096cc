//! The four reductions between clause deletion, variable deletion and
//! fixed-side list homomorphism instances. All of them keep the budget.

use thiserror::Error;

use super::formula::{CdcsInstance, Chain, ChainFormula, Unary, VdcsInstance};
use crate::graph::Graph;
use crate::instance::{BipartiteTarget, DlhomInstance, ListAssignment, Side};
use crate::target::{build_chain_target, validate_arc_representation, ArcRepresentation, ArcViolation, ChainTarget};

struct Vars(usize);

impl Vars {
    fn fresh(&mut self) -> usize {
        self.0 += 1;
        self.0 - 1
    }
}

/// Chain of length `2m + 4` replacing an ordinary clause of length `m + 1`,
/// with the positions of the tilde variables and of each `x_i` and `x_i′`.
struct Expanded {
    chain: Vec<usize>,
    first_tilde: usize,
    last_tilde: usize,
    plain: Vec<usize>,
    primed: Vec<usize>,
}

fn expand(len: usize, vars: &mut Vars) -> Expanded {
    let m = len - 1;
    let plain: Vec<usize> = (0..=m).map(|_| vars.fresh()).collect();
    let primed: Vec<usize> = (0..=m).map(|_| vars.fresh()).collect();
    let first_tilde = vars.fresh();
    let last_tilde = vars.fresh();
    let chain = if m == 0 {
        vec![last_tilde, plain[0], primed[0], first_tilde]
    } else {
        let mut c = vec![plain[0], primed[0], first_tilde];
        for i in 1..m {
            c.extend([plain[i], primed[i]]);
        }
        c.extend([last_tilde, plain[m], primed[m]]);
        c
    };
    Expanded {
        chain,
        first_tilde,
        last_tilde,
        plain,
        primed,
    }
}

/// Variable deletion to clause deletion. Ordinary chains that carry `x_i`
/// and `¬x_j` with `i ≤ j` become a contradictory singleton, forced ends of
/// the others are collapsed, and each survivor is expanded into a chain
/// with primed and tilde variables. Unaries and implications become
/// undeletable (multiplicity `k + 1`).
pub fn reduce_vdcs_to_cdcs(inst: &VdcsInstance) -> CdcsInstance {
    inst.validate().expect("malformed variable deletion instance");
    let f = &inst.formula;
    let heavy = inst.k + 1;
    let mut vars = Vars(0);
    let mut chains = Vec::new();
    let mut unary = Vec::new();
    // images of x and x′ for every surviving source variable
    let mut plain: Vec<Option<usize>> = vec![None; f.vars];
    let mut primed: Vec<Option<usize>> = vec![None; f.vars];

    for &c in &inst.deletable {
        let clause = &f.chains[c].vars;
        let position = |v: usize| clause.iter().position(|&x| x == v);
        let lits: Vec<(usize, bool)> = f
            .unary
            .iter()
            .filter_map(|u| position(u.var).map(|p| (p, u.neg)))
            .collect();
        let last_neg = lits.iter().filter(|l| l.1).map(|l| l.0).max();
        let first_pos = lits.iter().filter(|l| !l.1).map(|l| l.0).min();
        let doomed = matches!((first_pos, last_neg), (Some(i), Some(j)) if i <= j);
        let (lo, hi) = if doomed {
            (0, 0)
        } else {
            (last_neg.unwrap_or(0), first_pos.unwrap_or(clause.len() - 1))
        };
        let e = expand(hi - lo + 1, &mut vars);
        chains.push(Chain::new(e.chain.clone()));
        if last_neg.is_some() {
            unary.push(Unary { var: e.first_tilde, neg: true, mult: heavy });
        }
        if first_pos.is_some() {
            unary.push(Unary { var: e.last_tilde, neg: false, mult: heavy });
        }
        if doomed {
            continue;
        }
        for (p, &v) in clause.iter().enumerate() {
            let q = p.clamp(lo, hi) - lo;
            plain[v] = Some(e.plain[q]);
            primed[v] = Some(e.primed[q]);
        }
    }
    for c in f.chains.iter().filter(|c| !c.is_ordinary()) {
        let (x, y) = (c.vars[0], c.vars[1]);
        if let (Some(a), Some(b)) = (primed[x], plain[y]) {
            chains.push(Chain { vars: vec![a, b], mult: heavy });
        }
    }
    let formula = ChainFormula {
        vars: vars.0,
        chains,
        unary,
        ell: 2 * f.ell.max(1) + 2,
    };
    CdcsInstance::new(formula, inst.k).expect("expanded chains fit 2ℓ + 2")
}

/// Clause deletion to variable deletion. Occurrences beyond `k + 1` are
/// dropped, length-2 chains get a fresh third variable, and every
/// occurrence gets its own copies of its variables. A unary occurrence
/// becomes a length-1 chain carrying the unary, and copies of one variable
/// are tied together by implications in both directions.
pub fn reduce_cdcs_to_vdcs(inst: &CdcsInstance) -> VdcsInstance {
    let f = &inst.formula;
    let cap = inst.k + 1;
    let mut vars = Vars(0);
    let mut copies: Vec<Vec<usize>> = vec![Vec::new(); f.vars];
    let mut chains = Vec::new();
    let mut unary = Vec::new();
    for c in &f.chains {
        for _ in 0..c.mult.min(cap) {
            let mut image: Vec<usize> = c
                .vars
                .iter()
                .map(|&v| {
                    let x = vars.fresh();
                    copies[v].push(x);
                    x
                })
                .collect();
            if image.len() == 2 {
                image.push(vars.fresh());
            }
            chains.push(Chain::new(image));
        }
    }
    for u in &f.unary {
        for _ in 0..u.mult.min(cap) {
            let x = vars.fresh();
            copies[u.var].push(x);
            chains.push(Chain::new(vec![x]));
            unary.push(Unary { var: x, neg: u.neg, mult: 1 });
        }
    }
    for group in &copies {
        for &a in group {
            for &b in group {
                if a != b {
                    chains.push(Chain::new(vec![a, b]));
                }
            }
        }
    }
    let longest = chains.iter().map(Chain::len).max().unwrap_or(0);
    let formula = ChainFormula {
        vars: vars.0,
        chains,
        unary,
        ell: f.ell.max(longest),
    };
    VdcsInstance::new(formula, inst.k).expect("occurrence copies are disjoint")
}

/// One gadget path `α(C) – U – V – W – α(C′)` with `k + 1` copies of each
/// inner level.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GadgetPath {
    /// The implication it encodes.
    pub clause: usize,
    pub from: usize,
    pub to: usize,
    pub levels: [Vec<usize>; 3],
}

#[derive(Debug, Clone)]
pub struct FsfcImage {
    pub instance: DlhomInstance,
    pub chain: ChainTarget,
    /// `alpha[i]` is the vertex of ordinary chain `deletable[i]`.
    pub alpha: Vec<usize>,
    pub paths: Vec<GadgetPath>,
}

/// Variable deletion to a fixed-side fixed-component instance over `H_ℓ`.
/// An ordinary chain `x_0 … x_m` becomes a vertex with list `a_0 … a_{m+1}`,
/// where `a_i` stands for the assignment whose first 1 sits at position `i`.
pub fn reduce_vdcs_to_fsfc(inst: &VdcsInstance) -> FsfcImage {
    inst.validate().expect("malformed variable deletion instance");
    let f = &inst.formula;
    let ct = build_chain_target(f.ell.max(1));
    let owner = inst.owners();
    let pos_in = |v: usize| f.chains[owner[v]].vars.iter().position(|&x| x == v).unwrap();
    let mut vertex_of = vec![usize::MAX; f.chains.len()];
    let mut lists = Vec::new();
    for (i, &c) in inst.deletable.iter().enumerate() {
        vertex_of[c] = i;
        let len = f.chains[c].len();
        let mut keep: Vec<bool> = vec![true; len + 1];
        for u in f.unary.iter().filter(|u| owner[u.var] == c) {
            let p = pos_in(u.var);
            for (j, slot) in keep.iter_mut().enumerate() {
                // x_p = 1 iff the first 1 sits at or before p
                if (j <= p) == u.neg {
                    *slot = false;
                }
            }
        }
        lists.push((0..=len).filter(|&j| keep[j]).map(|j| ct.value[j]).collect::<Vec<_>>());
    }
    let alpha: Vec<usize> = (0..inst.deletable.len()).collect();
    let mut edges = Vec::new();
    let mut paths = Vec::new();
    for (d, c) in f.chains.iter().enumerate().filter(|(_, c)| !c.is_ordinary()) {
        let (x, y) = (c.vars[0], c.vars[1]);
        let gd = ct.gadget(pos_in(x), pos_in(y));
        let from = vertex_of[owner[x]];
        let to = vertex_of[owner[y]];
        let mut levels: [Vec<usize>; 3] = Default::default();
        for (level, pair) in levels.iter_mut().zip([[gd.u1, gd.u2], [gd.v1, gd.v2], [gd.w1, gd.w2]]) {
            for _ in 0..=inst.k {
                level.push(lists.len());
                lists.push(pair.to_vec());
            }
        }
        for &a in &levels[0] {
            edges.push((from, a));
        }
        for pair in levels.windows(2) {
            for &a in &pair[0] {
                for &b in &pair[1] {
                    edges.push((a, b));
                }
            }
        }
        for &b in &levels[2] {
            edges.push((b, to));
        }
        paths.push(GadgetPath { clause: d, from, to, levels });
    }
    let graph = Graph::from_edges_dedup(lists.len(), edges);
    let instance = DlhomInstance::new(graph, ct.target.clone(), ListAssignment::new(lists), inst.k)
        .expect("gadget lists come from the chain target");
    FsfcImage {
        instance,
        chain: ct,
        alpha,
        paths,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FsReductionError {
    #[error("arc representation does not match the target: {0}")]
    Representation(ArcViolation),
    #[error("graph has {graph} vertices but {lists} lists were given")]
    ListCount { graph: usize, lists: usize },
    #[error("list of vertex {0} names a vertex outside the target")]
    OutOfRange(usize),
    #[error("list of vertex {0} mixes both sides")]
    NotFixedSide(usize),
}

/// Variables standing for one vertex of `G`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexChain {
    /// `x_0 … x_t`.
    pub vars: Vec<usize>,
    /// The surviving list in transition order: `x_i = 0, x_{i+1} = 1` picks
    /// `arcs[i]`.
    pub arcs: Vec<usize>,
    /// Fresh third variable of a padded length-2 chain.
    pub pad: Option<usize>,
}

#[derive(Debug, Clone)]
pub struct FsImage {
    /// Chain `v` belongs to vertex `v`; implications follow.
    pub vdcs: VdcsInstance,
    pub vertices: Vec<VertexChain>,
}

impl FsImage {
    /// Assignment encoding `hom`: a vertex mapped to `arcs[i]` gets
    /// `x_j = 0` for `j ≤ i` and `x_j = 1` above. Deleted vertices get
    /// zeros. `None` if some image is outside the surviving list.
    pub fn assignment_from_hom(&self, hom: &[Option<usize>]) -> Option<Vec<bool>> {
        let mut out = vec![false; self.vdcs.formula.vars];
        for (vc, image) in self.vertices.iter().zip(hom) {
            let Some(a) = image else { continue };
            let i = vc.arcs.iter().position(|b| b == a)?;
            for (j, &x) in vc.vars.iter().enumerate() {
                out[x] = j > i;
            }
            if let Some(w) = vc.pad {
                out[w] = true;
            }
        }
        Some(out)
    }

    /// Homomorphism encoded by an assignment of the vertices still present.
    pub fn hom_from_assignment(&self, assignment: &[bool], alive: &[bool]) -> Vec<Option<usize>> {
        self.vertices
            .iter()
            .zip(alive)
            .map(|(vc, &live)| {
                if !live {
                    return None;
                }
                let i = vc.vars.windows(2).position(|w| !assignment[w[0]] && assignment[w[1]])?;
                Some(vc.arcs[i])
            })
            .collect()
    }
}

/// Drops every arc of `list` that contains another one; of identical arcs
/// the lowest vertex stays.
fn undominated(rep: &ArcRepresentation, list: &[usize]) -> Vec<usize> {
    list.iter()
        .copied()
        .filter(|&a| {
            !list.iter().any(|&b| {
                b != a
                    && rep.arc_contains_arc(rep.arcs[a], rep.arcs[b])
                    && (rep.arcs[a] != rep.arcs[b] || b < a)
            })
        })
        .collect()
}

/// Fixed-side instance over a co-circular-arc target to variable deletion
/// with `ℓ = max(|V(H)| + 1, 3)`. Each vertex becomes the chain of its
/// 0→1 transitions; each edge becomes two families of implications read
/// off the arc endpoints on either half of the circle. An edge whose ends
/// have lists on the same side becomes an unsatisfiable implication.
pub fn reduce_fs_to_vdcs(
    g: &Graph,
    lists: &[Vec<usize>],
    h: &BipartiteTarget,
    rep: &ArcRepresentation,
    k: usize,
) -> Result<FsImage, FsReductionError> {
    if let Some(v) = validate_arc_representation(h, rep).violation {
        return Err(FsReductionError::Representation(v));
    }
    let n = g.vertex_count();
    if lists.len() != n {
        return Err(FsReductionError::ListCount { graph: n, lists: lists.len() });
    }
    let mut sides = Vec::with_capacity(n);
    for (v, list) in lists.iter().enumerate() {
        if list.iter().any(|&a| a >= h.vertex_count()) {
            return Err(FsReductionError::OutOfRange(v));
        }
        let side = list.first().map(|&a| h.side(a));
        if list.iter().any(|&a| Some(h.side(a)) != side) {
            return Err(FsReductionError::NotFixedSide(v));
        }
        sides.push(side);
    }

    let (north, south) = (rep.north, rep.south);
    let mut vars = Vars(0);
    let mut chains = Vec::new();
    let mut unary = Vec::new();
    let mut vertices = Vec::with_capacity(n);
    for (v, list) in lists.iter().enumerate() {
        let mut arcs = undominated(rep, list);
        // northern arcs: start nearest N first; southern arcs: start
        // nearest S first
        match sides[v] {
            Some(Side::Top) => arcs.sort_by_key(|&a| std::cmp::Reverse(rep.offset(south, rep.arcs[a][0]))),
            _ => arcs.sort_by_key(|&a| std::cmp::Reverse(rep.offset(north, rep.arcs[a][0]))),
        }
        let xs: Vec<usize> = (0..=arcs.len()).map(|_| vars.fresh()).collect();
        unary.push(Unary::neg(xs[0]));
        unary.push(Unary::pos(xs[arcs.len()]));
        let mut chain = xs.clone();
        let pad = (chain.len() == 2).then(|| vars.fresh());
        chain.extend(pad);
        chains.push(Chain::new(chain));
        vertices.push(VertexChain { vars: xs, arcs, pad });
    }

    for (u, v) in g.edges() {
        let (Some(su), Some(sv)) = (sides[u], sides[v]) else { continue };
        if su == sv {
            let (x, y) = (&vertices[u], &vertices[v]);
            chains.push(Chain::new(vec![*x.vars.last().unwrap(), y.vars[0]]));
            continue;
        }
        let (top, bottom) = if su == Side::Top { (u, v) } else { (v, u) };
        let (x, y) = (&vertices[top], &vertices[bottom]);
        // x_i = 1 means the top end is among a_0..a_{i−1}
        for i in 1..x.vars.len() {
            let q = rep.arcs[x.arcs[i - 1]][1];
            let j = y
                .arcs
                .iter()
                .filter(|&&b| rep.offset(north, rep.arcs[b][0]) > rep.offset(north, q))
                .count();
            chains.push(Chain::new(vec![x.vars[i], y.vars[j]]));
        }
        for j in 1..y.vars.len() {
            let r = rep.arcs[y.arcs[j - 1]][1];
            let i = x
                .arcs
                .iter()
                .filter(|&&a| rep.offset(south, rep.arcs[a][0]) > rep.offset(south, r))
                .count();
            chains.push(Chain::new(vec![y.vars[j], x.vars[i]]));
        }
    }
    let formula = ChainFormula {
        vars: vars.0,
        chains,
        unary,
        ell: (h.vertex_count() + 1).max(3),
    };
    let vdcs = VdcsInstance::new(formula, k).expect("vertex chains are disjoint");
    Ok(FsImage { vdcs, vertices })
}
