use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use super::axioms::first_assignment;
use super::{eval_algebra, parse, CompiledFormula, Formula, KripkeStructure};
use crate::algebra::file::AlgebraFile;
use crate::algebra::{make_chain, Elem};
use crate::monadic::si_cmg_fixed_point_families;
use crate::{Error, Result};

/// Premises, goal and search bounds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConsequenceQuery {
    pub premises: Vec<Formula>,
    pub goal: Formula,
    /// Largest algebra tried by the algebraic search.
    pub max_size: usize,
    /// Largest chain factor of those algebras.
    pub max_factor: usize,
    /// Largest world set and value chain tried by the Kripke search.
    pub max_worlds: usize,
    pub max_chain: usize,
    /// Cap on evaluated (model, assignment) pairs; `None` is unlimited.
    pub budget: Option<u64>,
}

impl ConsequenceQuery {
    pub fn new(premises: Vec<Formula>, goal: Formula) -> Self {
        ConsequenceQuery {
            premises,
            goal,
            max_size: 27,
            max_factor: usize::MAX,
            max_worlds: 3,
            max_chain: 5,
            budget: None,
        }
    }

    /// One formula per line; the last non-empty line starts with `|-` and is
    /// the goal. Lines starting with `#` are ignored.
    pub fn parse_text(text: &str) -> Result<Self> {
        let lines: Vec<&str> = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .collect();
        let (last, init) = lines
            .split_last()
            .ok_or_else(|| Error::InvalidInput("query has no goal line".into()))?;
        let goal = last
            .strip_prefix("|-")
            .ok_or_else(|| Error::InvalidInput("last line of a query must start with `|-`".into()))?;
        let premises = init.iter().map(|l| parse(l)).collect::<std::result::Result<Vec<_>, _>>()?;
        Ok(Self::new(premises, parse(goal.trim())?))
    }

    pub fn check(&self) -> Result<()> {
        if self.max_size == 0 || self.max_factor == 0 || self.max_worlds == 0 || self.max_chain < 2 {
            return Err(Error::InvalidInput("search bounds must be positive (chain bound at least 2)".into()));
        }
        Ok(())
    }

    /// Variables of premises and goal, sorted.
    pub fn variables(&self) -> Vec<String> {
        let mut vars = self.goal.variables();
        for p in &self.premises {
            vars.extend(p.variables());
        }
        vars.into_iter().collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum VerdictKind {
    /// No countermodel up to the bound.
    Valid,
    Countermodel,
    /// The budget ran out first.
    Partial,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Semantics {
    Algebra,
    Kripke,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Model {
    Algebra(AlgebraFile),
    Kripke(KripkeStructure),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Verdict {
    pub verdict: VerdictKind,
    pub semantics: Semantics,
    /// Algebra size bound, or world bound for Kripke search.
    pub bound: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub chain_bound: Option<usize>,
    /// True when `valid` holds outright, not just up to the bound.
    pub conclusive: bool,
    /// (model, assignment) pairs examined, counted in canonical order.
    pub examined: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub model: Option<Model>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub chain_sizes: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub range: Option<Vec<Elem>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub assignment: Option<BTreeMap<String, Elem>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub assignment_names: Option<BTreeMap<String, String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<Elem>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub world: Option<usize>,
    /// For Kripke countermodels: the functional-algebra translation is a
    /// countermodel too.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bridge_verified: Option<bool>,
}

impl Verdict {
    fn empty(verdict: VerdictKind, semantics: Semantics, bound: usize, examined: u64) -> Self {
        Verdict {
            verdict,
            semantics,
            bound,
            chain_bound: None,
            conclusive: false,
            examined,
            model: None,
            chain_sizes: None,
            range: None,
            assignment: None,
            assignment_names: None,
            value: None,
            world: None,
            bridge_verified: None,
        }
    }

    pub fn is_countermodel(&self) -> bool {
        self.verdict == VerdictKind::Countermodel
    }
}

struct Compiled {
    vars: Vec<String>,
    premises: Vec<CompiledFormula>,
    goal: CompiledFormula,
}

impl Compiled {
    fn new(q: &ConsequenceQuery) -> Result<Self> {
        let vars = q.variables();
        Ok(Compiled {
            premises: q
                .premises
                .iter()
                .map(|p| CompiledFormula::with_variables(p, &vars))
                .collect::<Result<_>>()?,
            goal: CompiledFormula::with_variables(&q.goal, &vars)?,
            vars,
        })
    }
}

fn count(n: usize, vars: usize) -> u64 {
    (n as u64).saturating_pow(vars as u32)
}

/// Searches the finite s.i. CMG∼ algebras with a fixed point, smallest
/// first, for an assignment making every premise 1 and the goal not 1.
pub fn consequence_search(q: &ConsequenceQuery) -> Result<Verdict> {
    q.check()?;
    let c = Compiled::new(q)?;
    let nv = c.vars.len();
    let mut families = si_cmg_fixed_point_families(q.max_size, q.max_size)?;
    families.retain(|f| f.chain_sizes.iter().all(|&n| n <= q.max_factor));
    let candidates: Vec<(usize, usize)> = families
        .iter()
        .enumerate()
        .flat_map(|(f, fam)| (0..fam.ranges.len()).map(move |r| (f, r)))
        .collect();
    let mut examined: u64 = 0;
    let mut start = 0;
    while start < candidates.len() {
        let size = families[candidates[start].0].size();
        let end = candidates[start..]
            .iter()
            .position(|&(f, _)| families[f].size() != size)
            .map_or(candidates.len(), |p| start + p);
        let block = &candidates[start..end];
        let cost: u64 = count(size, nv).saturating_mul(block.len() as u64);
        if q.budget.is_some_and(|b| examined.saturating_add(cost) > b) {
            return Ok(Verdict::empty(VerdictKind::Partial, Semantics::Algebra, q.max_size, examined));
        }
        let hit = block.par_iter().enumerate().find_map_first(|(pos, &(f, r))| {
            let m = families[f].attach(r);
            let top = m.base().top();
            let mut scratch = Vec::new();
            let mut tried = 0u64;
            let mut value = top;
            let asg = first_assignment(size, nv, |s| {
                tried += 1;
                if c.premises.iter().any(|p| p.eval(&m, s, &mut scratch) != top) {
                    return false;
                }
                value = c.goal.eval(&m, s, &mut scratch);
                value != top
            })?;
            Some((pos, f, r, m, asg, value, tried))
        });
        if let Some((pos, f, r, m, asg, value, tried)) = hit {
            examined += count(size, nv) * pos as u64 + tried;
            let assignment: BTreeMap<String, Elem> = c.vars.iter().cloned().zip(asg.iter().copied()).collect();
            let names = c.vars.iter().cloned().zip(asg.iter().map(|&e| m.base().name(e))).collect();
            let mut v = Verdict::empty(VerdictKind::Countermodel, Semantics::Algebra, q.max_size, examined);
            v.model = Some(Model::Algebra(AlgebraFile::from_monadic(&m)));
            v.chain_sizes = Some(families[f].chain_sizes.clone());
            v.range = Some(families[f].ranges[r].elements().to_vec());
            v.assignment = Some(assignment);
            v.assignment_names = Some(names);
            v.value = Some(value);
            return Ok(v);
        }
        examined += cost;
        start = end;
    }
    let mut v = Verdict::empty(VerdictKind::Valid, Semantics::Algebra, q.max_size, examined);
    // A closed query takes the same value in every nontrivial algebra, and
    // the 3-chain is always searched.
    v.conclusive = nv == 0 && q.max_size >= 3;
    Ok(v)
}

fn decode(mut index: u64, m: usize, worlds: usize, vars: usize) -> Vec<Vec<Elem>> {
    let mut digits = vec![0; worlds * vars];
    for d in digits.iter_mut().rev() {
        *d = (index % m as u64) as usize;
        index /= m as u64;
    }
    digits.chunks(worlds.max(1)).map(<[Elem]>::to_vec).collect::<Vec<_>>()
        .into_iter()
        .take(vars)
        .collect()
}

/// Searches Kripke structures over finite chains: worlds ascending, then
/// chain size, then valuations lexicographically (variable-major).
pub fn kripke_countermodel(q: &ConsequenceQuery) -> Result<Verdict> {
    q.check()?;
    let c = Compiled::new(q)?;
    let nv = c.vars.len();
    let mut examined: u64 = 0;
    for worlds in 1..=q.max_worlds {
        for m in 2..=q.max_chain {
            let l = make_chain(m)?;
            let top = l.top();
            let total = count(m, worlds * nv);
            if q.budget.is_some_and(|b| examined.saturating_add(total) > b) {
                let mut v = Verdict::empty(VerdictKind::Partial, Semantics::Kripke, q.max_worlds, examined);
                v.chain_bound = Some(q.max_chain);
                return Ok(v);
            }
            let hit = (0..total).into_par_iter().find_map_first(|idx| {
                let val = decode(idx, m, worlds, nv);
                if c.premises.iter().any(|p| p.eval_worlds(&l, worlds, &val).iter().any(|&x| x != top)) {
                    return None;
                }
                let g = c.goal.eval_worlds(&l, worlds, &val);
                let w = g.iter().position(|&x| x != top)?;
                Some((idx, val, w, g[w]))
            });
            if let Some((idx, val, w, value)) = hit {
                examined += idx + 1;
                let valuation: BTreeMap<String, Vec<Elem>> = c.vars.iter().cloned().zip(val).collect();
                let k = KripkeStructure::new(worlds, m, valuation)?;
                let mut v = Verdict::empty(VerdictKind::Countermodel, Semantics::Kripke, q.max_worlds, examined);
                v.chain_bound = Some(q.max_chain);
                v.bridge_verified = Some(bridge_countermodel(q, &k)?);
                v.model = Some(Model::Kripke(k));
                v.world = Some(w);
                v.value = Some(value);
                return Ok(v);
            }
            examined += total;
        }
    }
    let mut v = Verdict::empty(VerdictKind::Valid, Semantics::Kripke, q.max_worlds, examined);
    v.chain_bound = Some(q.max_chain);
    Ok(v)
}

/// Whether the functional algebra of `k` refutes the query under the tuple
/// assignment.
fn bridge_countermodel(q: &ConsequenceQuery, k: &KripkeStructure) -> Result<bool> {
    let (m, asg) = k.to_functional()?;
    let top = m.base().top();
    for p in &q.premises {
        if eval_algebra(&m, &asg, p)? != top {
            return Ok(false);
        }
    }
    Ok(eval_algebra(&m, &asg, &q.goal)? != top)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn query(premises: &[&str], goal: &str, max_size: usize) -> ConsequenceQuery {
        let mut q = ConsequenceQuery::new(
            premises.iter().map(|p| parse(p).unwrap()).collect(),
            parse(goal).unwrap(),
        );
        q.max_size = max_size;
        q
    }

    #[test]
    fn excluded_middle_fails_at_fixed_point() {
        let v = consequence_search(&query(&[], "p | ~p", 9)).unwrap();
        assert!(v.is_countermodel());
        assert_eq!(v.chain_sizes, Some(vec![3]));
        assert_eq!(v.range, Some(vec![0, 1, 2]));
        assert_eq!(v.assignment.unwrap()["p"], 1);
        assert_eq!(v.assignment_names.unwrap()["p"], "d");
        assert_eq!(v.value, Some(1));
        assert_eq!(v.examined, 2);
    }

    #[test]
    fn box_premise_gives_goal() {
        let v = consequence_search(&query(&["[]p"], "p", 9)).unwrap();
        assert_eq!(v.verdict, VerdictKind::Valid);
        assert!(!v.conclusive);
    }

    #[test]
    fn closed_queries_are_conclusive() {
        let v = consequence_search(&query(&[], "1 | 0", 3)).unwrap();
        assert_eq!(v.verdict, VerdictKind::Valid);
        assert!(v.conclusive);
        let v = consequence_search(&query(&[], "0", 3)).unwrap();
        assert!(v.is_countermodel());
    }

    #[test]
    fn budget_gives_partial() {
        let mut q = query(&[], "<>(p & ~p) -> [](p | ~p)", 27);
        q.budget = Some(10);
        let v = consequence_search(&q).unwrap();
        assert_eq!(v.verdict, VerdictKind::Partial);
        assert_eq!(v.examined, 3);
    }

    #[test]
    fn kripke_excluded_middle() {
        let v = kripke_countermodel(&query(&[], "p | ~p", 9)).unwrap();
        assert!(v.is_countermodel());
        match v.model {
            Some(Model::Kripke(k)) => {
                assert_eq!((k.worlds, k.chain), (1, 3));
                assert_eq!(k.valuation["p"], vec![1]);
            }
            other => panic!("unexpected model {other:?}"),
        }
        assert_eq!(v.bridge_verified, Some(true));
    }

    #[test]
    fn query_files() {
        let q = ConsequenceQuery::parse_text("# premises\n[]p\n\n|- p\n").unwrap();
        assert_eq!(q.premises.len(), 1);
        assert_eq!(q.goal, parse("p").unwrap());
        assert!(ConsequenceQuery::parse_text("p\nq").is_err());
        assert!(ConsequenceQuery::parse_text("").is_err());
    }
}
