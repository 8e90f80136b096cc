//! The eight acceptance criteria, each checked exactly against independent
//! brute-force references. Prints one PASS or FAIL line per criterion and
//! exits nonzero if any fails.

mod common;

use std::panic::{self, AssertUnwindSafe};
use std::time::Instant;

use itertools::Itertools;
use rand::seq::SliceRandom;
use rand::Rng;

use common::*;
use dlhom_core::chainsat::{
    reduce_cdcs_to_vdcs, reduce_fs_to_vdcs, reduce_vdcs_to_cdcs, reduce_vdcs_to_fsfc, solve_cdcs, solve_vdcs,
    CdcsInstance, VdcsInstance,
};
use dlhom_core::encode::{encode_multiway_cut, encode_oct, encode_vertex_cover, EncodedProblem};
use dlhom_core::fsfc::{solve_fsfc, FsfcInstance};
use dlhom_core::generate::{fsfc_lists, gen_random, random_decomposable_target, rng_from_seed, GenSpec, TargetSpec};
use dlhom_core::graph::Graph;
use dlhom_core::instance::{verify_solution, BipartiteTarget, DlhomInstance, ListAssignment, Side};
use dlhom_core::lhom::{lhom_decide, min_deletions, solve_exact_oracle};
use dlhom_core::pipeline::{detect_conflicts, prune_bad_components, solve_dlhom, BipCompInstance, FsfcIgInstance};
use dlhom_core::target::{
    build_chain_target, check_forbidden, evaluate_decomposition, skew_decompose, validate_arc_representation,
};

type Criterion = fn() -> String;

fn main() {
    let criteria: [(&str, Criterion); 8] = [
        ("oracle equivalence sweep", oracle_equivalence),
        ("forbidden subgraphs iff skew decomposable", forbidden_iff_decomposable),
        ("decomposition round trip", decomposition_round_trip),
        ("encoder fidelity", encoder_fidelity),
        ("chain reductions preserve answers", reduction_round_trips),
        ("chain target structure", chain_target_structure),
        ("bad component pruning", bad_component_pruning),
        ("conflict pairs are separated", conflicts_are_separated),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(run));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS  [{}] {name}: {detail} ({secs:.2}s)", i + 1),
            Err(payload) => {
                failed += 1;
                let msg = payload
                    .downcast_ref::<String>()
                    .cloned()
                    .or_else(|| payload.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_default();
                println!("FAIL  [{}] {name}: {msg} ({secs:.2}s)", i + 1);
            }
        }
    }
    let _ = panic::take_hook();
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}

fn size_of(sol: &Option<dlhom_core::instance::DeletionSolution>) -> Option<usize> {
    sol.as_ref().map(|s| s.size())
}

fn check_solution(inst: &DlhomInstance, sol: &Option<dlhom_core::instance::DeletionSolution>, what: &str) {
    if let Some(s) = sol {
        assert_eq!(verify_solution(inst, s), Ok(()), "{what} returned an invalid solution");
    }
}

fn oracle_equivalence() -> String {
    let seeds = 600;
    let mut runs = 0;
    let mut yes = 0;
    for seed in 0..seeds {
        let mut rng = rng_from_seed(seed);
        let size = rng.gen_range(1..=6);
        let spec = GenSpec {
            n: rng.gen_range(4..=10),
            edge_prob: rng.gen_range(0.2..0.5),
            target: TargetSpec::Decomposable { size, attempts: 1000 },
            list_density: rng.gen_range(0.4..0.95),
            k: 0,
            seed,
        };
        let base = gen_random(&spec).unwrap();
        let top = min_deletions(&base).size().min(3);
        let tree = skew_decompose(&base.target).expect("generated targets are decomposable");
        let fs_lists = fsfc_lists(&mut rng, &base);
        let fs_base = DlhomInstance { lists: fs_lists, ..base.clone() };
        let fs_top = min_deletions(&fs_base).size().min(3);
        for k in [top.saturating_sub(1), top] {
            let inst = DlhomInstance { k, ..base.clone() };
            let expected = brute_answer(&inst);
            let oracle = solve_exact_oracle(&inst);
            let pipe = solve_dlhom(&inst).unwrap();
            check_solution(&inst, &pipe, "pipeline");
            assert_eq!(size_of(&oracle), expected, "oracle vs brute force, seed {seed} k {k}");
            assert_eq!(size_of(&pipe), expected, "pipeline vs brute force, seed {seed} k {k}");
            runs += 1;
            yes += usize::from(expected.is_some());
        }
        for k in [fs_top.saturating_sub(1), fs_top] {
            let inst = DlhomInstance { k, ..fs_base.clone() };
            let expected = brute_answer(&inst);
            let fs = solve_fsfc(&FsfcInstance::new(inst.clone(), tree.clone()).unwrap());
            check_solution(&inst, &fs, "fixed side solver");
            let pipe = solve_dlhom(&inst).unwrap();
            assert_eq!(size_of(&solve_exact_oracle(&inst)), expected, "fs oracle, seed {seed} k {k}");
            assert_eq!(size_of(&fs), expected, "fixed side solver vs brute force, seed {seed} k {k}");
            assert_eq!(size_of(&pipe), expected, "pipeline on fixed side lists, seed {seed} k {k}");
            runs += 1;
            yes += usize::from(expected.is_some());
        }
    }
    format!("{seeds} seeds, {runs} solver comparisons, {yes} yes")
}

/// Every side-labelled bipartite graph on `n` vertices.
fn labelled_bipartite(n: usize) -> impl Iterator<Item = BipartiteTarget> {
    (0u32..1 << n).flat_map(move |mask| {
        let sides: Vec<Side> = (0..n).map(|v| if mask >> v & 1 == 1 { Side::Bottom } else { Side::Top }).collect();
        let pairs: Vec<(usize, usize)> = (0..n)
            .tuple_combinations()
            .filter(|&(a, b)| sides[a] != sides[b])
            .collect();
        (0u64..1 << pairs.len()).map(move |bits| {
            let edges = pairs.iter().enumerate().filter(|&(i, _)| bits >> i & 1 == 1).map(|(_, &e)| e);
            BipartiteTarget::new(Graph::new(n, edges).unwrap(), sides.clone()).unwrap()
        })
    })
}

/// Induced P6 or C6 found by trying every vertex ordering.
fn brute_forbidden(h: &BipartiteTarget) -> bool {
    let g = h.graph();
    (0..h.vertex_count()).combinations(6).any(|set| {
        let edges = set.iter().tuple_combinations().filter(|&(&a, &b)| g.has_edge(a, b)).count();
        set.iter().permutations(6).any(|p| {
            let path = p.windows(2).all(|w| g.has_edge(*w[0], *w[1]));
            path && (edges == 5 || (edges == 6 && g.has_edge(*p[0], *p[5])))
        })
    })
}

fn forbidden_iff_decomposable() -> String {
    let (mut total, mut decomposable) = (0, 0);
    for n in 1..=6 {
        for h in labelled_bipartite(n) {
            let check = check_forbidden(&h);
            let forbidden = brute_forbidden(&h);
            assert_eq!(check.witness.is_some(), forbidden, "witness search disagrees with brute force on {h:?}");
            assert_eq!(check.decomposable_candidate, !forbidden);
            assert_eq!(skew_decompose(&h).is_some(), !forbidden, "decomposition disagrees on {h:?}");
            total += 1;
            decomposable += usize::from(!forbidden);
        }
    }
    format!("{total} labelled graphs, {decomposable} decomposable")
}

fn decomposition_round_trip() -> String {
    let mut count = 0;
    for n in 1..=6 {
        for h in labelled_bipartite(n) {
            if let Some(tree) = skew_decompose(&h) {
                assert_eq!(evaluate_decomposition(&tree).as_ref(), Ok(&h), "round trip failed on {h:?}");
                count += 1;
            }
        }
    }
    format!("{count} decomposable targets rebuilt exactly")
}

fn assert_budget_edge(p: &EncodedProblem, min: usize, what: &str) -> dlhom_core::instance::DeletionSolution {
    let at = |k: usize| DlhomInstance { k, ..p.instance.clone() };
    let sol = solve_exact_oracle(&at(min)).unwrap_or_else(|| panic!("{what}: no solution at the minimum {min}"));
    assert_eq!(sol.size(), min, "{what}: oracle minimum differs from the source minimum");
    if min > 0 {
        assert!(solve_exact_oracle(&at(min - 1)).is_none(), "{what}: solved below the minimum");
    }
    sol
}

fn encoder_fidelity() -> String {
    let graphs = 200;
    for seed in 0..graphs {
        let mut rng = rng_from_seed(10_000 + seed);
        let n = rng.gen_range(2..=8);
        let p = rng.gen_range(0.15..0.5);
        let g = random_graph(&mut rng, n, p);
        let what = format!("graph {seed}");

        let vc = brute_vertex_cover(&g);
        let enc = encode_vertex_cover(&g, vc);
        let cover = enc.back_map(&assert_budget_edge(&enc, vc, &format!("vertex cover, {what}")));
        assert!(g.edges().all(|(u, v)| cover.contains(&u) || cover.contains(&v)));

        let oct = brute_oct(&g);
        let enc = encode_oct(&g, oct);
        let cut = enc.back_map(&assert_budget_edge(&enc, oct, &format!("odd cycle transversal, {what}")));
        let gone: Vec<bool> = (0..n).map(|v| cut.contains(&v)).collect();
        assert!(bipartite_without(&g, &gone));

        let mut vs: Vec<usize> = (0..n).collect();
        vs.shuffle(&mut rng);
        let d = rng.gen_range(2..=n.min(3));
        let terminals = &vs[..d];
        let mw = brute_multiway_cut(&g, terminals);
        let enc = encode_multiway_cut(&g, terminals, mw).unwrap();
        let cut = enc.back_map(&assert_budget_edge(&enc, mw, &format!("multiway cut, {what}")));
        assert_eq!(cut.len(), mw);
        let alive: Vec<bool> = (0..n).map(|v| !cut.contains(&v)).collect();
        for comp in g.components_within(&alive) {
            assert!(terminals.iter().filter(|t| comp.contains(t)).count() <= 1, "multiway back map, {what}");
        }
    }
    format!("{graphs} graphs, three encodings each")
}

fn vdcs_sources() -> Vec<VdcsInstance> {
    let mut out = Vec::new();
    for ell in 1..=3 {
        for f in vdcs_corpus(ell, 3) {
            for k in 0..=2 {
                out.push(VdcsInstance::new(f.clone(), k).unwrap());
            }
        }
    }
    out
}

fn reduction_round_trips() -> String {
    let vdcs = vdcs_sources();
    for inst in &vdcs {
        let expected = brute_vdcs(inst).is_some();
        assert_eq!(solve_vdcs(inst).is_some(), expected, "variable deletion solver on {inst:?}");
        let cd = reduce_vdcs_to_cdcs(inst);
        assert_eq!(cd.k, inst.k);
        assert_eq!(solve_cdcs(&cd).is_some(), expected, "to clause deletion: {inst:?}");
        let fs = reduce_vdcs_to_fsfc(inst);
        assert_eq!(fs.instance.k, inst.k);
        assert_eq!(solve_exact_oracle(&fs.instance).is_some(), expected, "to list homomorphism: {inst:?}");
    }
    let mut cdcs = 0;
    for ell in 1..=3 {
        for f in cdcs_corpus(3, ell, 3) {
            for k in 0..=2 {
                let inst = CdcsInstance::new(f.clone(), k).unwrap();
                let expected = brute_cdcs(&f, k).is_some();
                let img = reduce_cdcs_to_vdcs(&inst);
                assert_eq!(img.k, k);
                assert_eq!(brute_vdcs(&img).is_some(), expected, "to variable deletion: {inst:?}");
                cdcs += 1;
            }
        }
    }
    let fs_seeds = 2000;
    for seed in 0..fs_seeds {
        let mut rng = rng_from_seed(20_000 + seed);
        let size = rng.gen_range(1..=4);
        let (h, rep) = random_arc_target(&mut rng, size);
        let n = rng.gen_range(1..=8);
        let p = rng.gen_range(0.1..0.5);
        let g = random_graph(&mut rng, n, p);
        let lists = random_fixed_side_lists(&mut rng, n, &h);
        let k = rng.gen_range(0..=2);
        let img = reduce_fs_to_vdcs(&g, &lists, &h, &rep, k).unwrap();
        assert_eq!(img.vdcs.k, k);
        let expected = brute_min_deletion(&g, &lists, &h, k).is_some();
        assert_eq!(solve_vdcs(&img.vdcs).is_some(), expected, "fixed side to variable deletion, seed {seed}");
    }
    format!(
        "{} variable deletion, {cdcs} clause deletion, {fs_seeds} fixed side instances",
        vdcs.len()
    )
}

fn chain_target_structure() -> String {
    for ell in 1..=3 {
        let ct = build_chain_target(ell);
        let h = &ct.target;
        let rep = &ct.representation;
        assert_eq!(h.vertex_count(), (ell + 1) + 6 * ell * ell, "vertex count at ell {ell}");
        assert_eq!(h.components().len(), 1, "connectivity at ell {ell}");
        let check = validate_arc_representation(h, rep);
        assert!(check.valid, "representation at ell {ell}: {:?}", check.violation);
        for v in 0..h.vertex_count() {
            let side = if rep.is_northern(v) { Side::Top } else { Side::Bottom };
            assert!(rep.is_northern(v) != rep.is_southern(v));
            assert_eq!(h.side(v), side);
        }
        for r in 0..ell {
            for rp in 0..ell {
                let gd = ct.gadget(r, rp);
                for g in [gd.v1, gd.v2] {
                    assert!(rep.is_northern(g));
                }
                for g in [gd.u1, gd.u2, gd.w1, gd.w2] {
                    assert!(rep.is_southern(g));
                }
                for (i, &a) in ct.value.iter().enumerate() {
                    assert!(rep.is_northern(a));
                    assert_eq!(h.adjacent(a, gd.u1), i > r, "a{i} u1 at ({r},{rp})");
                    assert!(h.adjacent(a, gd.u2), "a{i} u2 at ({r},{rp})");
                    assert!(h.adjacent(a, gd.w1), "a{i} w1 at ({r},{rp})");
                    assert_eq!(h.adjacent(a, gd.w2), i <= rp, "a{i} w2 at ({r},{rp})");
                    assert!(!h.adjacent(a, gd.v1) && !h.adjacent(a, gd.v2));
                }
                assert!(h.adjacent(gd.u2, gd.v1) && !h.adjacent(gd.u2, gd.v2));
                assert!(h.adjacent(gd.u1, gd.v2) && !h.adjacent(gd.u1, gd.v1));
                assert!(h.adjacent(gd.v1, gd.w2) && !h.adjacent(gd.v1, gd.w1));
                assert!(h.adjacent(gd.v2, gd.w1) && !h.adjacent(gd.v2, gd.w2));
            }
        }
    }
    "ell 1, 2 and 3".to_string()
}

fn random_bipartite_graph<R: Rng>(rng: &mut R, n: usize, p: f64) -> Graph {
    let side: Vec<bool> = (0..n).map(|_| rng.gen_bool(0.5)).collect();
    let edges: Vec<(usize, usize)> = (0..n)
        .tuple_combinations()
        .filter(|&(u, v)| side[u] != side[v] && rng.gen_bool(p))
        .collect();
    Graph::new(n, edges).unwrap()
}

/// Vertices of components of `G ∖ deleted` that meet `anchors`.
fn anchored(g: &Graph, deleted: &[usize], anchors: &[usize]) -> Vec<bool> {
    let alive: Vec<bool> = (0..g.vertex_count()).map(|v| !deleted.contains(&v)).collect();
    let mut keep = vec![false; alive.len()];
    for comp in g.components_within(&alive) {
        if comp.iter().any(|v| anchors.contains(v)) {
            for v in comp {
                keep[v] = true;
            }
        }
    }
    keep
}

fn ignoring_solution(g: &Graph, lists: &[Vec<usize>], h: &BipartiteTarget, anchors: &[usize], w: &[usize]) -> bool {
    brute_hom(g, lists, h, &anchored(g, w, anchors))
}

fn bad_component_pruning() -> String {
    let wanted = 100;
    let (mut done, mut forced_total, mut seed) = (0, 0, 0u64);
    while done < wanted {
        seed += 1;
        let mut rng = rng_from_seed(30_000 + seed);
        let size = rng.gen_range(1..=5);
        let (h, _) = random_decomposable_target(&mut rng, size, 1000).unwrap();
        let n = rng.gen_range(2..=9);
        let p = rng.gen_range(0.2..0.6);
        let g = random_bipartite_graph(&mut rng, n, p);
        let full = DlhomInstance::new(g.clone(), h.clone(), ListAssignment::full(n, size), 0).unwrap();
        let lists = fsfc_lists(&mut rng, &full).into_inner();
        let n0: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.3)).collect();
        if n0.is_empty() {
            continue;
        }
        let w = (0..=n)
            .flat_map(|s| (0..n).combinations(s))
            .find(|w| ignoring_solution(&g, &lists, &h, &n0, w))
            .unwrap();
        let m = w.len();
        let reach = anchored(&g, &w, &n0);
        let z: Vec<usize> = (0..n).filter(|&v| !reach[v] && !w.contains(&v)).collect();
        assert!(z.iter().all(|v| !w.contains(v) && !n0.contains(v)), "shadow set meets the solution or the anchors at seed {seed}");
        assert!((0..n).all(|v| reach[v] || w.contains(&v) || z.contains(&v)));
        let inst = FsfcIgInstance { graph: g.clone(), target: h.clone(), lists: lists.clone(), n0: n0.clone(), k: m };
        let pruned = prune_bad_components(&inst, &z).unwrap().expect("forced vertices fit the budget");
        assert!(pruned.forced.iter().all(|v| w.contains(v)), "forced vertex outside the solution, seed {seed}");
        assert_eq!(pruned.k, m - pruned.forced.len());
        let rest = brute_min_deletion(&pruned.graph, &pruned.lists, &h, n).unwrap();
        assert_eq!(rest + pruned.forced.len(), m, "pruned minimum at seed {seed}");
        assert_eq!(brute_min_deletion(&pruned.graph, &pruned.lists, &h, pruned.k), Some(rest));
        forced_total += pruned.forced.len();
        done += 1;
    }
    format!("{done} instances, {forced_total} forced deletions")
}

fn conflicts_are_separated() -> String {
    let wanted = 100;
    let (mut done, mut checked, mut seed) = (0, 0, 0u64);
    while done < wanted {
        seed += 1;
        let mut rng = rng_from_seed(40_000 + seed);
        let size = rng.gen_range(2..=5);
        let (h, _) = random_decomposable_target(&mut rng, size, 1000).unwrap();
        let n = rng.gen_range(2..=8);
        let p = rng.gen_range(0.2..0.6);
        let g = random_bipartite_graph(&mut rng, n, p);
        let n0: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.4)).collect();
        let mut lists = vec![(0..size).collect::<Vec<usize>>(); n];
        for &v in &n0 {
            let comps = h.components();
            let c = rng.gen_range(0..comps.len());
            let side = if rng.gen_bool(0.5) { Side::Top } else { Side::Bottom };
            let pool = h.side_of_component(c, side);
            if pool.is_empty() {
                lists[v] = comps[c].clone();
                lists[v].retain(|&a| h.side(a) == side.opposite());
            } else {
                lists[v] = pool.into_iter().filter(|_| rng.gen_bool(0.6)).collect();
                if lists[v].is_empty() {
                    lists[v] = vec![h.side_of_component(c, side)[0]];
                }
            }
        }
        let others: Vec<usize> = (0..n).filter(|v| !n0.contains(v)).collect();
        let (rest, _) = g.induced(&others);
        let rest_lists = ListAssignment::new(others.iter().map(|&v| lists[v].clone()).collect());
        let Some(colours) = lhom_decide(&rest, &rest_lists, &h) else { continue };
        let mut phi0 = vec![None; n];
        for (&v, a) in others.iter().zip(colours) {
            phi0[v] = Some(a);
        }
        let inst = BipCompInstance::new(g.clone(), h.clone(), lists.clone(), n0.clone(), phi0, n).unwrap();
        let conflicts = detect_conflicts(&inst);
        if conflicts.is_empty() {
            continue;
        }
        for s in 0..=n {
            for w in (0..n).combinations(s) {
                if !ignoring_solution(&g, &lists, &h, &n0, &w) {
                    continue;
                }
                checked += 1;
                let alive: Vec<bool> = (0..n).map(|v| !w.contains(&v)).collect();
                for comp in g.components_within(&alive) {
                    for c in &conflicts {
                        assert!(
                            !(comp.contains(&c.u) && comp.contains(&c.v)),
                            "conflict {c:?} survives deleting {w:?}, seed {seed}"
                        );
                    }
                }
            }
        }
        done += 1;
    }
    format!("{done} conflicted instances, {checked} solutions checked")
}
