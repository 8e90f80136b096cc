use super::formula::{CdcsInstance, ChainFormula, ClauseRef, VdcsInstance};
use super::propagate::{propagate, Propagation};

/// Fewest clause occurrences (at most `k`) whose deletion makes the formula
/// satisfiable. A clause may appear several times, once per occurrence.
pub fn solve_cdcs(inst: &CdcsInstance) -> Option<Vec<ClauseRef>> {
    let mut f = inst.formula.clone();
    let mut chosen = Vec::new();
    let found = (0..=inst.k).any(|budget| cdcs_branch(&mut f, budget, &mut chosen));
    found.then(|| {
        chosen.sort_unstable();
        chosen
    })
}

fn cdcs_branch(f: &mut ChainFormula, budget: usize, chosen: &mut Vec<ClauseRef>) -> bool {
    let cert = match propagate(f) {
        Propagation::Sat(_) => return true,
        Propagation::Unsat(cert) => cert,
    };
    if budget == 0 {
        return false;
    }
    let mut options = cert;
    options.sort_unstable();
    options.dedup();
    for c in options {
        // a clause survives unless every occurrence goes
        if f.mult(c) > budget {
            continue;
        }
        set_mult(f, c, -1);
        chosen.push(c);
        if cdcs_branch(f, budget - 1, chosen) {
            set_mult(f, c, 1);
            return true;
        }
        chosen.pop();
        set_mult(f, c, 1);
    }
    false
}

fn set_mult(f: &mut ChainFormula, c: ClauseRef, delta: isize) {
    let m = match c {
        ClauseRef::Chain(i) => &mut f.chains[i].mult,
        ClauseRef::Unary(i) => &mut f.unary[i].mult,
    };
    *m = m.checked_add_signed(delta).expect("multiplicity stays non-negative");
}

/// Fewest ordinary chains (at most `k`) whose variables, once removed with
/// every clause touching them, leave a satisfiable formula.
pub fn solve_vdcs(inst: &VdcsInstance) -> Option<Vec<usize>> {
    let owner = inst.owners();
    let mut removed = vec![false; inst.formula.vars];
    let mut chosen = Vec::new();
    let found = (0..=inst.k).any(|budget| vdcs_branch(inst, &owner, &mut removed, budget, &mut chosen));
    found.then(|| {
        chosen.sort_unstable();
        chosen
    })
}

fn vdcs_branch(
    inst: &VdcsInstance,
    owner: &[usize],
    removed: &mut Vec<bool>,
    budget: usize,
    chosen: &mut Vec<usize>,
) -> bool {
    let f = inst.formula.without_vars(removed);
    let cert = match propagate(&f) {
        Propagation::Sat(_) => return true,
        Propagation::Unsat(cert) => cert,
    };
    if budget == 0 {
        return false;
    }
    let mut options: Vec<usize> = cert
        .iter()
        .flat_map(|&c| f.clause_vars(c).iter().map(|&v| owner[v]))
        .collect();
    options.sort_unstable();
    options.dedup();
    for c in options {
        let vars = &inst.formula.chains[c].vars;
        for &v in vars {
            removed[v] = true;
        }
        chosen.push(c);
        if vdcs_branch(inst, owner, removed, budget - 1, chosen) {
            for &v in vars {
                removed[v] = false;
            }
            return true;
        }
        chosen.pop();
        for &v in vars {
            removed[v] = false;
        }
    }
    false
}
