use std::collections::BTreeMap;

use serde::Serialize;

use super::{parse, CompiledFormula, Formula};
use crate::algebra::Elem;
use crate::monadic::MonadicGAlgebra;
use crate::{Error, Result};

const AXIOMS: &str = include_str!("../../data/axioms.txt");

/// A named schema from the shipped axiom list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Axiom {
    pub name: String,
    pub formula: Formula,
}

/// Parses `name: formula` lines, skipping blanks and `#` comments.
pub fn parse_axioms(text: &str) -> Result<Vec<Axiom>> {
    let mut out = Vec::new();
    for (no, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (name, body) = line
            .split_once(':')
            .ok_or_else(|| Error::InvalidInput(format!("line {}: missing `name:`", no + 1)))?;
        out.push(Axiom {
            name: name.trim().to_string(),
            formula: parse(body.trim())?,
        });
    }
    Ok(out)
}

/// The shipped axiom schemata.
pub fn axioms() -> Vec<Axiom> {
    parse_axioms(AXIOMS).expect("shipped axiom file parses")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomVerdict {
    pub name: String,
    pub formula: String,
    pub valid: bool,
    /// First falsifying assignment and the value it produces.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<BTreeMap<String, Elem>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<Elem>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RuleVerdict {
    pub name: &'static str,
    pub preserved: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<Elem>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SoundnessReport {
    pub axioms: Vec<AxiomVerdict>,
    pub rules: Vec<RuleVerdict>,
}

impl SoundnessReport {
    pub fn failing_axioms(&self) -> Vec<&str> {
        self.axioms.iter().filter(|a| !a.valid).map(|a| a.name.as_str()).collect()
    }

    pub fn passed(&self) -> bool {
        self.axioms.iter().all(|a| a.valid) && self.rules.iter().all(|r| r.preserved)
    }
}

/// Lexicographic walk over all assignments of `vars` elements out of `n`,
/// first variable most significant. Stops when `f` returns `true`.
pub(crate) fn first_assignment(n: usize, vars: usize, mut f: impl FnMut(&[Elem]) -> bool) -> Option<Vec<Elem>> {
    let mut cur = vec![0; vars];
    loop {
        if f(&cur) {
            return Some(cur);
        }
        let mut i = vars;
        loop {
            if i == 0 {
                return None;
            }
            i -= 1;
            cur[i] += 1;
            if cur[i] < n {
                break;
            }
            cur[i] = 0;
        }
    }
}

/// Evaluates one schema under every assignment of its letters.
pub fn check_axiom(m: &MonadicGAlgebra, axiom: &Axiom) -> AxiomVerdict {
    let c = CompiledFormula::new(&axiom.formula);
    let top = m.base().top();
    let mut scratch = Vec::new();
    let mut value = None;
    let hit = first_assignment(m.size(), c.variables().len(), |s| {
        let v = c.eval(m, s, &mut scratch);
        value = Some(v);
        v != top
    });
    AxiomVerdict {
        name: axiom.name.clone(),
        formula: axiom.formula.to_string(),
        valid: hit.is_none(),
        counterexample: hit
            .as_ref()
            .map(|s| c.variables().iter().cloned().zip(s.iter().copied()).collect()),
        value: hit.and(value),
    }
}

/// Every shipped schema plus closure of `{1}` under modus ponens, Δ
/// necessitation and generalization.
pub fn check_axioms(m: &MonadicGAlgebra) -> SoundnessReport {
    let a = m.base();
    let top = a.top();
    let axioms = axioms().iter().map(|ax| check_axiom(m, ax)).collect();
    let mp = a
        .elements()
        .flat_map(|x| a.elements().map(move |y| (x, y)))
        .find(|&(x, y)| x == top && a.imp(x, y) == top && y != top)
        .map(|(x, y)| vec![x, y]);
    let rules = vec![
        RuleVerdict {
            name: "modus-ponens",
            preserved: mp.is_none(),
            witness: mp,
        },
        RuleVerdict {
            name: "delta-necessitation",
            preserved: a.delta(top) == top,
            witness: (a.delta(top) != top).then(|| vec![top]),
        },
        RuleVerdict {
            name: "generalization",
            preserved: m.forall(top) == top,
            witness: (m.forall(top) != top).then(|| vec![top]),
        },
    ];
    SoundnessReport { axioms, rules }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{direct_product, make_chain, Subalgebra};
    use crate::monadic::attach_quantifiers;

    #[test]
    fn shipped_file_parses() {
        let ax = axioms();
        assert!(ax.len() >= 25);
        assert!(ax.iter().any(|a| a.name == "dia2"));
        let mut names: Vec<&str> = ax.iter().map(|a| a.name.as_str()).collect();
        names.sort();
        names.dedup();
        assert_eq!(names.len(), ax.len());
    }

    #[test]
    fn cmg_examples_are_sound() {
        let c3 = make_chain(3).unwrap();
        let m = attach_quantifiers(&c3, &Subalgebra::full(&c3)).unwrap();
        assert!(check_axioms(&m).passed());
        let c2 = make_chain(2).unwrap();
        let m = attach_quantifiers(&c2, &Subalgebra::full(&c2)).unwrap();
        assert!(check_axioms(&m).passed());
    }

    #[test]
    fn only_dia2_fails_on_bounds_range() {
        let c3 = make_chain(3).unwrap();
        let sq = direct_product(&[c3.clone(), c3]).unwrap();
        let m = attach_quantifiers(&sq, &Subalgebra::new(&sq, [0, 8]).unwrap()).unwrap();
        let r = check_axioms(&m);
        assert_eq!(r.failing_axioms(), vec!["dia2"]);
        assert!(r.rules.iter().all(|x| x.preserved));
    }

    #[test]
    fn assignment_walk_is_lexicographic() {
        let mut seen = Vec::new();
        first_assignment(2, 2, |s| {
            seen.push(s.to_vec());
            false
        });
        assert_eq!(seen, vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
        assert_eq!(first_assignment(3, 0, |_| true), Some(vec![]));
    }
}
