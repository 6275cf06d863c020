use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::Formula;
use crate::algebra::{product_index, Elem, FiniteGAlgebra};
use crate::functional::make_functional;
use crate::monadic::MonadicGAlgebra;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Op {
    Var(usize),
    Bot,
    Top,
    And(usize, usize),
    Or(usize, usize),
    Imp(usize, usize),
    Sim(usize),
    Box(usize),
    Diamond(usize),
}

/// A formula flattened into postorder with variables numbered by their
/// position in `variables` (sorted by name).
#[derive(Debug, Clone)]
pub struct CompiledFormula {
    ops: Vec<Op>,
    variables: Vec<String>,
}

impl CompiledFormula {
    /// Compiles against an explicit variable order, which must cover every
    /// variable of `f`.
    pub fn with_variables(f: &Formula, variables: &[String]) -> Result<Self> {
        let mut c = CompiledFormula {
            ops: Vec::new(),
            variables: variables.to_vec(),
        };
        c.push(f)?;
        Ok(c)
    }

    pub fn new(f: &Formula) -> Self {
        let vars: Vec<String> = f.variables().into_iter().collect();
        Self::with_variables(f, &vars).expect("own variables are covered")
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    fn push(&mut self, f: &Formula) -> Result<usize> {
        let op = match f {
            Formula::Var(v) => Op::Var(
                self.variables
                    .iter()
                    .position(|x| x == v)
                    .ok_or_else(|| Error::UnassignedVariable(v.clone()))?,
            ),
            Formula::Bot => Op::Bot,
            Formula::Top => Op::Top,
            Formula::And(a, b) => Op::And(self.push(a)?, self.push(b)?),
            Formula::Or(a, b) => Op::Or(self.push(a)?, self.push(b)?),
            Formula::Imp(a, b) => Op::Imp(self.push(a)?, self.push(b)?),
            Formula::Sim(a) => Op::Sim(self.push(a)?),
            Formula::Box(a) => Op::Box(self.push(a)?),
            Formula::Diamond(a) => Op::Diamond(self.push(a)?),
        };
        self.ops.push(op);
        Ok(self.ops.len() - 1)
    }

    /// Value in `m` with `assignment[i]` for the `i`-th variable. `scratch`
    /// is reused between calls.
    pub fn eval(&self, m: &MonadicGAlgebra, assignment: &[Elem], scratch: &mut Vec<Elem>) -> Elem {
        let a = m.base();
        scratch.clear();
        for op in &self.ops {
            let v = match *op {
                Op::Var(i) => assignment[i],
                Op::Bot => a.bottom(),
                Op::Top => a.top(),
                Op::And(x, y) => a.meet(scratch[x], scratch[y]),
                Op::Or(x, y) => a.join(scratch[x], scratch[y]),
                Op::Imp(x, y) => a.imp(scratch[x], scratch[y]),
                Op::Sim(x) => a.sim(scratch[x]),
                Op::Box(x) => m.forall(scratch[x]),
                Op::Diamond(x) => m.exists(scratch[x]),
            };
            scratch.push(v);
        }
        *scratch.last().expect("nonempty formula")
    }

    /// Values at every world of a Kripke structure over the chain `l`;
    /// `valuation[i][w]` is the value of the `i`-th variable at world `w`.
    pub fn eval_worlds(&self, l: &FiniteGAlgebra, worlds: usize, valuation: &[Vec<Elem>]) -> Vec<Elem> {
        let mut vals: Vec<Vec<Elem>> = Vec::with_capacity(self.ops.len());
        for op in &self.ops {
            let row: Vec<Elem> = match *op {
                Op::Var(i) => valuation[i].clone(),
                Op::Bot => vec![l.bottom(); worlds],
                Op::Top => vec![l.top(); worlds],
                Op::And(x, y) => (0..worlds).map(|w| l.meet(vals[x][w], vals[y][w])).collect(),
                Op::Or(x, y) => (0..worlds).map(|w| l.join(vals[x][w], vals[y][w])).collect(),
                Op::Imp(x, y) => (0..worlds).map(|w| l.imp(vals[x][w], vals[y][w])).collect(),
                Op::Sim(x) => vals[x].iter().map(|&v| l.sim(v)).collect(),
                Op::Box(x) => vec![l.meet_all(vals[x].iter().copied()); worlds],
                Op::Diamond(x) => vec![l.join_all(vals[x].iter().copied()); worlds],
            };
            vals.push(row);
        }
        vals.pop().expect("nonempty formula")
    }
}

fn assignment_vector(assignment: &BTreeMap<String, Elem>, vars: &[String], size: usize) -> Result<Vec<Elem>> {
    vars.iter()
        .map(|v| match assignment.get(v) {
            Some(&e) if e < size => Ok(e),
            Some(&e) => Err(Error::InvalidInput(format!("value {e} for `{v}` out of range 0..{size}"))),
            None => Err(Error::UnassignedVariable(v.clone())),
        })
        .collect()
}

/// The homomorphic extension of `assignment`: `[]` is `∀`, `<>` is `∃`.
pub fn eval_algebra(m: &MonadicGAlgebra, assignment: &BTreeMap<String, Elem>, f: &Formula) -> Result<Elem> {
    let c = CompiledFormula::new(f);
    let s = assignment_vector(assignment, c.variables(), m.size())?;
    Ok(c.eval(m, &s, &mut Vec::new()))
}

/// `⟨W, e, L⟩` with `W = {0, …, worlds − 1}` and `L` a finite chain.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KripkeStructure {
    pub worlds: usize,
    /// Size of the chain `L`; elements are `0..chain`.
    pub chain: usize,
    /// Value of each variable at each world.
    pub valuation: BTreeMap<String, Vec<Elem>>,
}

impl KripkeStructure {
    pub fn new(worlds: usize, chain: usize, valuation: BTreeMap<String, Vec<Elem>>) -> Result<Self> {
        if worlds == 0 {
            return Err(Error::InvalidInput("a Kripke structure needs at least one world".into()));
        }
        if chain < 2 {
            return Err(Error::InvalidSize {
                size: chain,
                reason: "the value chain needs at least 2 elements",
            });
        }
        for (v, row) in &valuation {
            if row.len() != worlds || row.iter().any(|&x| x >= chain) {
                return Err(Error::InvalidInput(format!("bad valuation row for `{v}`")));
            }
        }
        Ok(KripkeStructure { worlds, chain, valuation })
    }

    pub fn value_chain(&self) -> FiniteGAlgebra {
        crate::algebra::make_chain(self.chain).expect("chain size checked")
    }

    /// The functional algebra `L^W` and the assignment sending each
    /// variable to its tuple of world values.
    pub fn to_functional(&self) -> Result<(MonadicGAlgebra, BTreeMap<String, Elem>)> {
        let m = make_functional(&self.value_chain(), self.worlds)?;
        let sizes = vec![self.chain; self.worlds];
        let assignment = self
            .valuation
            .iter()
            .map(|(v, row)| (v.clone(), product_index(&sizes, row)))
            .collect();
        Ok((m, assignment))
    }
}

/// `||f||` at world `w`: connectives pointwise in `L`, `[]` the minimum and
/// `<>` the maximum over all worlds.
pub fn eval_kripke(k: &KripkeStructure, w: usize, f: &Formula) -> Result<Elem> {
    if w >= k.worlds {
        return Err(Error::InvalidInput(format!("world {w} out of range 0..{}", k.worlds)));
    }
    let l = k.value_chain();
    fn go(k: &KripkeStructure, l: &FiniteGAlgebra, f: &Formula) -> Result<Vec<Elem>> {
        let n = k.worlds;
        let pointwise2 = |x: Vec<Elem>, y: Vec<Elem>, op: &dyn Fn(Elem, Elem) -> Elem| -> Vec<Elem> {
            x.into_iter().zip(y).map(|(a, b)| op(a, b)).collect()
        };
        Ok(match f {
            Formula::Var(v) => k
                .valuation
                .get(v)
                .cloned()
                .ok_or_else(|| Error::UnassignedVariable(v.clone()))?,
            Formula::Bot => vec![l.bottom(); n],
            Formula::Top => vec![l.top(); n],
            Formula::And(x, y) => pointwise2(go(k, l, x)?, go(k, l, y)?, &|a, b| l.meet(a, b)),
            Formula::Or(x, y) => pointwise2(go(k, l, x)?, go(k, l, y)?, &|a, b| l.join(a, b)),
            Formula::Imp(x, y) => pointwise2(go(k, l, x)?, go(k, l, y)?, &|a, b| l.imp(a, b)),
            Formula::Sim(x) => go(k, l, x)?.into_iter().map(|a| l.sim(a)).collect(),
            Formula::Box(x) => vec![l.meet_all(go(k, l, x)?); n],
            Formula::Diamond(x) => vec![l.join_all(go(k, l, x)?); n],
        })
    }
    Ok(go(k, &l, f)?[w])
}
