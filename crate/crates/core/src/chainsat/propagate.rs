use std::cmp::Reverse;
use std::collections::{BinaryHeap, VecDeque};

use serde::{Deserialize, Serialize};

use super::formula::{ChainFormula, ClauseRef};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Propagation {
    /// Variables forced to 1 are 1, all others 0.
    Sat(Vec<bool>),
    /// A positive unary, the chains carrying its value forward, and a
    /// negative unary on the variable reached, in that order.
    Unsat(Vec<ClauseRef>),
}

impl Propagation {
    pub fn is_sat(&self) -> bool {
        matches!(self, Propagation::Sat(_))
    }
}

/// `(chain, position)` for every occurrence of each variable.
fn occurrences(f: &ChainFormula) -> Vec<Vec<(usize, usize)>> {
    let mut occ = vec![Vec::new(); f.vars];
    for (c, chain) in f.chains.iter().enumerate() {
        if chain.mult == 0 {
            continue;
        }
        for (pos, &v) in chain.vars.iter().enumerate() {
            occ[v].push((c, pos));
        }
    }
    occ
}

fn forced(f: &ChainFormula, occ: &[Vec<(usize, usize)>], value: bool) -> Vec<bool> {
    let mut mark = vec![false; f.vars];
    let mut queue = VecDeque::new();
    for u in f.unary.iter().filter(|u| u.mult > 0 && u.value() == value) {
        if !mark[u.var] {
            mark[u.var] = true;
            queue.push_back(u.var);
        }
    }
    while let Some(v) = queue.pop_front() {
        for &(c, pos) in &occ[v] {
            let vars = &f.chains[c].vars;
            let next = if value { vars.get(pos + 1) } else { pos.checked_sub(1).map(|p| &vars[p]) };
            if let Some(&w) = next {
                if !mark[w] {
                    mark[w] = true;
                    queue.push_back(w);
                }
            }
        }
    }
    mark
}

/// Decides a formula by pushing 1 forward and 0 backward from the unary
/// clauses. Unsatisfiable formulas come with a certificate using the fewest
/// clauses, ties broken by the clause sequence.
pub fn propagate(f: &ChainFormula) -> Propagation {
    let occ = occurrences(f);
    let ones = forced(f, &occ, true);
    let zeros = forced(f, &occ, false);
    if (0..f.vars).all(|v| !(ones[v] && zeros[v])) {
        return Propagation::Sat(ones);
    }
    Propagation::Unsat(certificate(f, &occ))
}

fn certificate(f: &ChainFormula, occ: &[Vec<(usize, usize)>]) -> Vec<ClauseRef> {
    let mut best: Vec<Option<Vec<ClauseRef>>> = vec![None; f.vars];
    let mut heap = BinaryHeap::new();
    for (i, u) in f.unary.iter().enumerate() {
        if u.mult > 0 && !u.neg {
            heap.push(Reverse((1, vec![ClauseRef::Unary(i)], u.var)));
        }
    }
    while let Some(Reverse((cost, path, v))) = heap.pop() {
        if best[v].is_some() {
            continue;
        }
        for &(c, pos) in &occ[v] {
            for &w in &f.chains[c].vars[pos + 1..] {
                if best[w].is_none() {
                    let mut next = path.clone();
                    next.push(ClauseRef::Chain(c));
                    heap.push(Reverse((cost + 1, next, w)));
                }
            }
        }
        best[v] = Some(path);
    }
    f.unary
        .iter()
        .enumerate()
        .filter(|(_, u)| u.mult > 0 && u.neg)
        .filter_map(|(i, u)| {
            let mut path = best[u.var].clone()?;
            path.push(ClauseRef::Unary(i));
            Some(path)
        })
        .min_by(|a, b| (a.len(), a).cmp(&(b.len(), b)))
        .expect("a variable forced both ways has a certificate")
}
