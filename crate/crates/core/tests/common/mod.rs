//! Brute-force reference solvers and small corpora shared by the
//! integration tests. Nothing here calls into the library's solvers.

#![allow(dead_code)]

use itertools::Itertools;
use rand::Rng;

use dlhom_core::chainsat::{Chain, ChainFormula, Unary, VdcsInstance};
use dlhom_core::graph::Graph;
use dlhom_core::instance::{BipartiteTarget, DlhomInstance, Side};
use dlhom_core::target::{graph_from_arcs, ArcRepresentation};

/// Plain depth-first search for a list homomorphism of the alive vertices.
pub fn brute_hom(g: &Graph, lists: &[Vec<usize>], h: &BipartiteTarget, alive: &[bool]) -> bool {
    fn go(v: usize, g: &Graph, lists: &[Vec<usize>], h: &BipartiteTarget, alive: &[bool], img: &mut Vec<usize>) -> bool {
        if v == alive.len() {
            return true;
        }
        if !alive[v] {
            return go(v + 1, g, lists, h, alive, img);
        }
        for &a in &lists[v] {
            let fits = g
                .neighbors(v)
                .iter()
                .all(|&u| u >= v || !alive[u] || h.adjacent(img[u], a));
            if fits {
                img[v] = a;
                if go(v + 1, g, lists, h, alive, img) {
                    return true;
                }
            }
        }
        false
    }
    let mut img = vec![usize::MAX; alive.len()];
    go(0, g, lists, h, alive, &mut img)
}

/// Smallest deletion count up to `cap`, by trying every vertex subset.
pub fn brute_min_deletion(g: &Graph, lists: &[Vec<usize>], h: &BipartiteTarget, cap: usize) -> Option<usize> {
    let n = g.vertex_count();
    (0..=cap.min(n)).find(|&s| {
        (0..n).combinations(s).any(|del| {
            let mut alive = vec![true; n];
            for v in del {
                alive[v] = false;
            }
            brute_hom(g, lists, h, &alive)
        })
    })
}

pub fn brute_answer(inst: &DlhomInstance) -> Option<usize> {
    brute_min_deletion(&inst.graph, inst.lists.as_slice(), &inst.target, inst.k)
}

fn min_subset(n: usize, ok: impl Fn(&[bool]) -> bool) -> usize {
    (0..=n)
        .find(|&s| {
            (0..n).combinations(s).any(|del| {
                let mut gone = vec![false; n];
                for v in del {
                    gone[v] = true;
                }
                ok(&gone)
            })
        })
        .unwrap()
}

pub fn brute_vertex_cover(g: &Graph) -> usize {
    min_subset(g.vertex_count(), |gone| g.edges().all(|(u, v)| gone[u] || gone[v]))
}

pub fn bipartite_without(g: &Graph, gone: &[bool]) -> bool {
    let n = g.vertex_count();
    let mut colour = vec![None; n];
    for s in 0..n {
        if gone[s] || colour[s].is_some() {
            continue;
        }
        colour[s] = Some(false);
        let mut stack = vec![s];
        while let Some(v) = stack.pop() {
            for &u in g.neighbors(v) {
                if gone[u] {
                    continue;
                }
                match colour[u] {
                    None => {
                        colour[u] = Some(!colour[v].unwrap());
                        stack.push(u);
                    }
                    Some(c) if c == colour[v].unwrap() => return false,
                    _ => {}
                }
            }
        }
    }
    true
}

pub fn brute_oct(g: &Graph) -> usize {
    min_subset(g.vertex_count(), |gone| bipartite_without(g, gone))
}

/// Multiway cut where terminals themselves may be deleted.
pub fn brute_multiway_cut(g: &Graph, terminals: &[usize]) -> usize {
    let n = g.vertex_count();
    min_subset(n, |gone| {
        terminals.iter().all(|&t| {
            if gone[t] {
                return true;
            }
            let mut seen = vec![false; n];
            seen[t] = true;
            let mut stack = vec![t];
            while let Some(v) = stack.pop() {
                for &u in g.neighbors(v) {
                    if !gone[u] && !seen[u] {
                        seen[u] = true;
                        stack.push(u);
                    }
                }
            }
            terminals.iter().all(|&s| s == t || !seen[s])
        })
    })
}

/// Satisfiability by trying every assignment.
pub fn brute_sat(f: &ChainFormula) -> bool {
    assert!(f.vars <= 22, "too many variables for enumeration");
    (0u32..1 << f.vars).any(|bits| {
        let a: Vec<bool> = (0..f.vars).map(|i| bits & (1 << i) != 0).collect();
        f.satisfied_by(&a)
    })
}

/// Fewest clause occurrences (up to `k`) whose removal leaves a satisfiable
/// formula.
pub fn brute_cdcs(f: &ChainFormula, k: usize) -> Option<usize> {
    let mut occ: Vec<(bool, usize)> = Vec::new();
    for (i, c) in f.chains.iter().enumerate() {
        occ.extend(std::iter::repeat_n((true, i), c.mult));
    }
    for (i, u) in f.unary.iter().enumerate() {
        occ.extend(std::iter::repeat_n((false, i), u.mult));
    }
    (0..=k.min(occ.len())).find(|&s| {
        occ.iter().combinations(s).any(|del| {
            let mut g = f.clone();
            for &&(is_chain, i) in &del {
                if is_chain {
                    g.chains[i].mult -= 1;
                } else {
                    g.unary[i].mult -= 1;
                }
            }
            g.chains.retain(|c| c.mult > 0);
            g.unary.retain(|u| u.mult > 0);
            brute_sat(&g)
        })
    })
}

/// Fewest ordinary chains (up to `k`) whose variables, once removed with
/// every clause touching them, leave a satisfiable formula.
pub fn brute_vdcs(inst: &VdcsInstance) -> Option<usize> {
    let f = &inst.formula;
    let ordinary: Vec<usize> = (0..f.chains.len()).filter(|&i| f.chains[i].vars.len() != 2).collect();
    (0..=inst.k.min(ordinary.len())).find(|&s| {
        ordinary.iter().combinations(s).any(|del| {
            let mut gone = vec![false; f.vars];
            for &&c in &del {
                for &v in &f.chains[c].vars {
                    gone[v] = true;
                }
            }
            let rest = ChainFormula {
                vars: f.vars,
                chains: f.chains.iter().filter(|c| c.vars.iter().all(|&v| !gone[v])).cloned().collect(),
                unary: f.unary.iter().filter(|u| !gone[u.var]).copied().collect(),
                ell: f.ell,
            };
            brute_sat(&rest)
        })
    })
}

/// Every multiset of at most `max` clauses over `vars` variables with chains
/// of length at most `ell`.
pub fn cdcs_corpus(vars: usize, ell: usize, max: usize) -> Vec<ChainFormula> {
    #[derive(Clone)]
    enum Kind {
        C(Vec<usize>),
        U(usize, bool),
    }
    let mut kinds = Vec::new();
    for len in 1..=ell.min(vars) {
        for p in (0..vars).permutations(len) {
            kinds.push(Kind::C(p));
        }
    }
    for v in 0..vars {
        kinds.push(Kind::U(v, false));
        kinds.push(Kind::U(v, true));
    }
    let mut out = Vec::new();
    for size in 0..=max {
        for pick in (0..kinds.len()).combinations_with_replacement(size) {
            let mut chains: Vec<Chain> = Vec::new();
            let mut unary: Vec<Unary> = Vec::new();
            for (idx, group) in &pick.into_iter().group_by(|&i| i) {
                let mult = group.count();
                match &kinds[idx] {
                    Kind::C(p) => chains.push(Chain { vars: p.clone(), mult }),
                    &Kind::U(var, neg) => unary.push(Unary { var, neg, mult }),
                }
            }
            out.push(ChainFormula { vars, chains, unary, ell });
        }
    }
    out
}

/// Every variable-deletion formula with at most `max` clauses in total and
/// ordinary chains of length at most `ell`, up to renaming variables.
pub fn vdcs_corpus(ell: usize, max: usize) -> Vec<ChainFormula> {
    let lengths: Vec<usize> = (1..=ell).filter(|&l| l != 2).collect();
    let mut out = Vec::new();
    for o in 1..=max {
        for shape in lengths.iter().copied().combinations_with_replacement(o) {
            let mut chains = Vec::new();
            let mut next = 0;
            for &len in &shape {
                chains.push(Chain::new((next..next + len).collect()));
                next += len;
            }
            let vars = next;
            let owner: Vec<usize> = (0..o).flat_map(|c| std::iter::repeat_n(c, shape[c])).collect();
            let mut extras: Vec<Result<(usize, usize), Unary>> = Vec::new();
            for x in 0..vars {
                for y in 0..vars {
                    if ell >= 2 && owner[x] != owner[y] {
                        extras.push(Ok((x, y)));
                    }
                }
                extras.push(Err(Unary::pos(x)));
                extras.push(Err(Unary::neg(x)));
            }
            for size in 0..=max - o {
                for pick in extras.iter().combinations_with_replacement(size) {
                    let mut cs = chains.clone();
                    let mut us = Vec::new();
                    for e in pick {
                        match e {
                            Ok((x, y)) => cs.push(Chain::new(vec![*x, *y])),
                            Err(u) => us.push(*u),
                        }
                    }
                    out.push(ChainFormula { vars, chains: cs, unary: us, ell });
                }
            }
        }
    }
    out
}

/// Random target given by arcs: each vertex gets a northern or southern arc
/// on a circle of `4·size + 4` positions.
pub fn random_arc_target<R: Rng>(rng: &mut R, size: usize) -> (BipartiteTarget, ArcRepresentation) {
    let m = 4 * size + 4;
    let (north, south) = (0, m / 2);
    let arcs = (0..size)
        .map(|_| {
            if rng.gen_bool(0.5) {
                let start = (rng.gen_range(south + 1..=m)) % m;
                let end = rng.gen_range(0..south);
                [start, end]
            } else {
                let start = rng.gen_range(1..=south);
                let end = rng.gen_range(south..m);
                [start, end]
            }
        })
        .collect();
    let rep = ArcRepresentation {
        circle_size: m,
        north,
        south,
        arcs,
    };
    let h = graph_from_arcs(&rep).expect("every arc holds exactly one pole");
    (h, rep)
}

/// Lists each inside one side, chosen at random per vertex.
pub fn random_fixed_side_lists<R: Rng>(rng: &mut R, n: usize, h: &BipartiteTarget) -> Vec<Vec<usize>> {
    (0..n)
        .map(|_| {
            let side = if rng.gen_bool(0.5) { Side::Top } else { Side::Bottom };
            (0..h.vertex_count())
                .filter(|&a| h.side(a) == side && rng.gen_bool(0.6))
                .collect()
        })
        .collect()
}

pub fn random_graph<R: Rng>(rng: &mut R, n: usize, p: f64) -> Graph {
    let edges: Vec<(usize, usize)> = (0..n)
        .tuple_combinations()
        .filter(|_| rng.gen_bool(p))
        .collect();
    Graph::new(n, edges).unwrap()
}

/// Every list homomorphism, in lexicographic order.
pub fn all_homs(g: &Graph, lists: &[Vec<usize>], h: &BipartiteTarget) -> Vec<Vec<usize>> {
    fn go(v: usize, g: &Graph, lists: &[Vec<usize>], h: &BipartiteTarget, img: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if v == lists.len() {
            out.push(img.clone());
            return;
        }
        for &a in &lists[v] {
            if g.neighbors(v).iter().all(|&u| u >= v || h.adjacent(img[u], a)) {
                img.push(a);
                go(v + 1, g, lists, h, img, out);
                img.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(0, g, lists, h, &mut Vec::new(), &mut out);
    out
}

/// Every deletion set of size at most `cap` after which a list
/// homomorphism exists.
pub fn all_solutions(g: &Graph, lists: &[Vec<usize>], h: &BipartiteTarget, cap: usize) -> Vec<Vec<usize>> {
    let n = g.vertex_count();
    (0..=cap.min(n))
        .flat_map(|s| (0..n).combinations(s))
        .filter(|del| {
            let mut alive = vec![true; n];
            for &v in del {
                alive[v] = false;
            }
            brute_hom(g, lists, h, &alive)
        })
        .collect()
}

/// Random side labelling with each Top–Bottom pair joined with
/// probability `p`.
pub fn random_target<R: Rng>(rng: &mut R, size: usize, p: f64) -> BipartiteTarget {
    let sides: Vec<Side> = (0..size)
        .map(|_| if rng.gen_bool(0.5) { Side::Top } else { Side::Bottom })
        .collect();
    let mut edges = Vec::new();
    for a in 0..size {
        for b in a + 1..size {
            if sides[a] != sides[b] && rng.gen_bool(p) {
                edges.push((a, b));
            }
        }
    }
    BipartiteTarget::new(Graph::new(size, edges).unwrap(), sides).unwrap()
}

pub fn random_lists<R: Rng>(rng: &mut R, n: usize, h: usize, density: f64) -> Vec<Vec<usize>> {
    (0..n).map(|_| (0..h).filter(|_| rng.gen_bool(density)).collect()).collect()
}
