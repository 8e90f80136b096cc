use serde::{Deserialize, Serialize};
use thiserror::Error;

/// `vars[0] → vars[1] → … → vars[m]`, present `mult` times.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Chain {
    pub vars: Vec<usize>,
    #[serde(default = "one")]
    pub mult: usize,
}

/// `var` or `¬var`, present `mult` times.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Unary {
    pub var: usize,
    pub neg: bool,
    #[serde(default = "one")]
    pub mult: usize,
}

fn one() -> usize {
    1
}

impl Chain {
    pub fn new(vars: Vec<usize>) -> Self {
        Chain { vars, mult: 1 }
    }

    pub fn len(&self) -> usize {
        self.vars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vars.is_empty()
    }

    /// Length other than two.
    pub fn is_ordinary(&self) -> bool {
        self.vars.len() != 2
    }
}

impl Unary {
    pub fn pos(var: usize) -> Self {
        Unary { var, neg: false, mult: 1 }
    }

    pub fn neg(var: usize) -> Self {
        Unary { var, neg: true, mult: 1 }
    }

    /// The value this clause demands.
    pub fn value(&self) -> bool {
        !self.neg
    }
}

/// Clause of a formula by position.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ClauseRef {
    Chain(usize),
    Unary(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainFormula {
    pub vars: usize,
    pub chains: Vec<Chain>,
    #[serde(default)]
    pub unary: Vec<Unary>,
    pub ell: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormulaError {
    #[error("variable {var} out of range in clause {clause:?}")]
    VarOutOfRange { clause: ClauseRef, var: usize },
    #[error("chain {0} is empty")]
    EmptyChain(usize),
    #[error("chain {0} repeats a variable")]
    RepeatedVar(usize),
    #[error("chain {chain} has length {len} > ell = {ell}")]
    TooLong { chain: usize, len: usize, ell: usize },
    #[error("clause {0:?} has multiplicity 0")]
    ZeroMultiplicity(ClauseRef),
    #[error("ordinary chains {0} and {1} share a variable")]
    OrdinaryOverlap(usize, usize),
    #[error("variable {0} lies in no ordinary chain")]
    Uncovered(usize),
    #[error("implication {0} joins two variables of one long chain")]
    ImplicationInsideChain(usize),
    #[error("deletable set must list exactly the ordinary chains")]
    Deletable,
}

impl ChainFormula {
    pub fn new(vars: usize, chains: Vec<Chain>, unary: Vec<Unary>, ell: usize) -> Result<Self, FormulaError> {
        let f = ChainFormula { vars, chains, unary, ell };
        f.validate()?;
        Ok(f)
    }

    /// Same clauses with `ell` set to the longest chain (at least 1).
    pub fn tight(vars: usize, chains: Vec<Chain>, unary: Vec<Unary>) -> Self {
        let ell = chains.iter().map(Chain::len).max().unwrap_or(0).max(1);
        ChainFormula { vars, chains, unary, ell }
    }

    pub fn validate(&self) -> Result<(), FormulaError> {
        for (i, c) in self.chains.iter().enumerate() {
            let clause = ClauseRef::Chain(i);
            if c.is_empty() {
                return Err(FormulaError::EmptyChain(i));
            }
            if c.mult == 0 {
                return Err(FormulaError::ZeroMultiplicity(clause));
            }
            if c.len() > self.ell {
                return Err(FormulaError::TooLong {
                    chain: i,
                    len: c.len(),
                    ell: self.ell,
                });
            }
            if let Some(&var) = c.vars.iter().find(|&&v| v >= self.vars) {
                return Err(FormulaError::VarOutOfRange { clause, var });
            }
            let mut seen = c.vars.clone();
            seen.sort_unstable();
            if seen.windows(2).any(|w| w[0] == w[1]) {
                return Err(FormulaError::RepeatedVar(i));
            }
        }
        for (i, u) in self.unary.iter().enumerate() {
            let clause = ClauseRef::Unary(i);
            if u.mult == 0 {
                return Err(FormulaError::ZeroMultiplicity(clause));
            }
            if u.var >= self.vars {
                return Err(FormulaError::VarOutOfRange { clause, var: u.var });
            }
        }
        Ok(())
    }

    pub fn satisfied_by(&self, assignment: &[bool]) -> bool {
        self.chains
            .iter()
            .all(|c| c.vars.windows(2).all(|w| !assignment[w[0]] || assignment[w[1]]))
            && self.unary.iter().all(|u| assignment[u.var] == u.value())
    }

    /// Clause occurrences in total.
    pub fn occurrences(&self) -> usize {
        self.chains.iter().map(|c| c.mult).sum::<usize>() + self.unary.iter().map(|u| u.mult).sum::<usize>()
    }

    pub fn mult(&self, c: ClauseRef) -> usize {
        match c {
            ClauseRef::Chain(i) => self.chains[i].mult,
            ClauseRef::Unary(i) => self.unary[i].mult,
        }
    }

    fn mult_mut(&mut self, c: ClauseRef) -> &mut usize {
        match c {
            ClauseRef::Chain(i) => &mut self.chains[i].mult,
            ClauseRef::Unary(i) => &mut self.unary[i].mult,
        }
    }

    /// Variables of a clause.
    pub fn clause_vars(&self, c: ClauseRef) -> &[usize] {
        match c {
            ClauseRef::Chain(i) => &self.chains[i].vars,
            ClauseRef::Unary(i) => std::slice::from_ref(&self.unary[i].var),
        }
    }

    /// The formula after deleting one occurrence per entry of `deleted`;
    /// clauses whose multiplicity drops to zero are removed and indices
    /// shift. `None` if some clause is deleted more often than it occurs.
    pub fn delete_occurrences(&self, deleted: &[ClauseRef]) -> Option<ChainFormula> {
        let mut f = self.clone();
        for &c in deleted {
            let m = f.mult_mut(c);
            *m = m.checked_sub(1)?;
        }
        f.chains.retain(|c| c.mult > 0);
        f.unary.retain(|u| u.mult > 0);
        Some(f)
    }

    /// The formula without the variables flagged in `removed` and every
    /// clause touching them. Variable indices are kept.
    pub fn without_vars(&self, removed: &[bool]) -> ChainFormula {
        ChainFormula {
            vars: self.vars,
            chains: self
                .chains
                .iter()
                .filter(|c| c.vars.iter().all(|&v| !removed[v]))
                .cloned()
                .collect(),
            unary: self.unary.iter().filter(|u| !removed[u.var]).copied().collect(),
            ell: self.ell,
        }
    }
}

/// Clause-deletion instance: delete at most `k` clause occurrences.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CdcsInstance {
    #[serde(flatten)]
    pub formula: ChainFormula,
    pub k: usize,
}

/// Variable-deletion instance: delete at most `k` ordinary chains together
/// with their variables.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VdcsInstance {
    #[serde(flatten)]
    pub formula: ChainFormula,
    pub k: usize,
    /// Indices of the ordinary chains, ascending.
    pub deletable: Vec<usize>,
}

impl CdcsInstance {
    pub fn new(formula: ChainFormula, k: usize) -> Result<Self, FormulaError> {
        formula.validate()?;
        Ok(CdcsInstance { formula, k })
    }
}

impl VdcsInstance {
    pub fn new(formula: ChainFormula, k: usize) -> Result<Self, FormulaError> {
        let deletable = (0..formula.chains.len()).filter(|&i| formula.chains[i].is_ordinary()).collect();
        let inst = VdcsInstance { formula, k, deletable };
        inst.validate()?;
        Ok(inst)
    }

    pub fn validate(&self) -> Result<(), FormulaError> {
        let f = &self.formula;
        f.validate()?;
        let ordinary: Vec<usize> = (0..f.chains.len()).filter(|&i| f.chains[i].is_ordinary()).collect();
        if ordinary != self.deletable {
            return Err(FormulaError::Deletable);
        }
        let owner = self.owners_checked()?;
        if let Some(v) = owner.iter().position(Option::is_none) {
            return Err(FormulaError::Uncovered(v));
        }
        for (i, c) in f.chains.iter().enumerate() {
            if c.len() == 2 {
                let (a, b) = (owner[c.vars[0]].unwrap(), owner[c.vars[1]].unwrap());
                if a == b && f.chains[a].len() >= 3 {
                    return Err(FormulaError::ImplicationInsideChain(i));
                }
            }
        }
        Ok(())
    }

    fn owners_checked(&self) -> Result<Vec<Option<usize>>, FormulaError> {
        let f = &self.formula;
        let mut owner: Vec<Option<usize>> = vec![None; f.vars];
        for &i in &self.deletable {
            for &v in &f.chains[i].vars {
                if let Some(j) = owner[v] {
                    return Err(FormulaError::OrdinaryOverlap(j, i));
                }
                owner[v] = Some(i);
            }
        }
        Ok(owner)
    }

    /// The ordinary chain containing each variable.
    pub fn owners(&self) -> Vec<usize> {
        self.owners_checked()
            .expect("validated instance")
            .into_iter()
            .map(|o| o.expect("validated instance"))
            .collect()
    }

    /// The formula left after deleting the chains in `chosen`.
    pub fn after_deleting(&self, chosen: &[usize]) -> ChainFormula {
        let mut removed = vec![false; self.formula.vars];
        for &c in chosen {
            for &v in &self.formula.chains[c].vars {
                removed[v] = true;
            }
        }
        self.formula.without_vars(&removed)
    }
}
