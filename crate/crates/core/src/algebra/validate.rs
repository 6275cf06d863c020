use serde::Serialize;

use super::{Elem, FiniteGAlgebra};

/// Outcome of one law family.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LawCheck {
    pub law: &'static str,
    pub passed: bool,
    /// The identity that failed, when one did.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<Elem>>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub checks: Vec<LawCheck>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn first_failure(&self) -> Option<&LawCheck> {
        self.checks.iter().find(|c| !c.passed)
    }

    pub fn get(&self, law: &str) -> Option<&LawCheck> {
        self.checks.iter().find(|c| c.law == law)
    }

    pub fn failures(&self) -> impl Iterator<Item = &LawCheck> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub(crate) fn push(&mut self, law: &'static str, subchecks: Vec<(&'static str, Option<Vec<Elem>>)>) {
        let failed = subchecks.into_iter().find(|(_, w)| w.is_some());
        self.checks.push(match failed {
            Some((detail, witness)) => LawCheck {
                law,
                passed: false,
                detail: Some(detail),
                witness,
            },
            None => LawCheck {
                law,
                passed: true,
                detail: None,
                witness: None,
            },
        });
    }

    pub fn extend(&mut self, other: ValidationReport) {
        self.checks.extend(other.checks);
    }
}

pub(crate) fn all1(n: usize, f: impl Fn(Elem) -> bool) -> Option<Vec<Elem>> {
    (0..n).find(|&a| !f(a)).map(|a| vec![a])
}

pub(crate) fn all2(n: usize, f: impl Fn(Elem, Elem) -> bool) -> Option<Vec<Elem>> {
    for a in 0..n {
        for b in 0..n {
            if !f(a, b) {
                return Some(vec![a, b]);
            }
        }
    }
    None
}

pub(crate) fn all3(n: usize, f: impl Fn(Elem, Elem, Elem) -> bool) -> Option<Vec<Elem>> {
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if !f(a, b, c) {
                    return Some(vec![a, b, c]);
                }
            }
        }
    }
    None
}

pub(crate) fn constant(ok: bool, witness: Vec<Elem>) -> Option<Vec<Elem>> {
    (!ok).then_some(witness)
}

/// Checks every G∼ law family by exhaustive table sweeps.
pub fn validate_gsim(a: &FiniteGAlgebra) -> ValidationReport {
    let n = a.size();
    let (zero, one) = (a.bottom(), a.top());
    let mut r = ValidationReport::default();

    r.push(
        "lattice",
        vec![
            ("nontrivial: 0 != 1", constant(zero != one, vec![zero, one])),
            ("a & a = a", all1(n, |x| a.meet(x, x) == x)),
            ("a | a = a", all1(n, |x| a.join(x, x) == x)),
            ("a & b = b & a", all2(n, |x, y| a.meet(x, y) == a.meet(y, x))),
            ("a | b = b | a", all2(n, |x, y| a.join(x, y) == a.join(y, x))),
            (
                "a & (b & c) = (a & b) & c",
                all3(n, |x, y, z| a.meet(x, a.meet(y, z)) == a.meet(a.meet(x, y), z)),
            ),
            (
                "a | (b | c) = (a | b) | c",
                all3(n, |x, y, z| a.join(x, a.join(y, z)) == a.join(a.join(x, y), z)),
            ),
            ("a & (a | b) = a", all2(n, |x, y| a.meet(x, a.join(x, y)) == x)),
            ("a | (a & b) = a", all2(n, |x, y| a.join(x, a.meet(x, y)) == x)),
            ("0 <= a <= 1", all1(n, |x| a.meet(zero, x) == zero && a.join(x, one) == one)),
        ],
    );
    r.push(
        "distributivity",
        vec![(
            "a & (b | c) = (a & b) | (a & c)",
            all3(n, |x, y, z| {
                a.meet(x, a.join(y, z)) == a.join(a.meet(x, y), a.meet(x, z))
            }),
        )],
    );
    r.push(
        "residuation",
        vec![(
            "a & b <= c iff a <= b -> c",
            all3(n, |x, y, z| a.leq(a.meet(x, y), z) == a.leq(x, a.imp(y, z))),
        )],
    );
    r.push(
        "prelinearity",
        vec![(
            "(a -> b) | (b -> a) = 1",
            all2(n, |x, y| a.join(a.imp(x, y), a.imp(y, x)) == one),
        )],
    );
    r.push(
        "de_morgan",
        vec![
            ("~0 = 1", constant(a.sim(zero) == one, vec![zero])),
            ("~1 = 0", constant(a.sim(one) == zero, vec![one])),
            ("~~a = a", all1(n, |x| a.sim(a.sim(x)) == x)),
            (
                "~(a | b) = ~a & ~b",
                all2(n, |x, y| a.sim(a.join(x, y)) == a.meet(a.sim(x), a.sim(y))),
            ),
        ],
    );
    let n_law = all1(n, |x| a.leq(a.neg(x), a.sim(x)));
    let k_law = all2(n, |x, y| {
        a.leq(a.meet(x, a.sim(x)), a.join(y, a.sim(y)))
    });
    // The equivalence is only claimed in the presence of the other laws.
    let others_hold = r.passed();
    let n_iff_k = constant(!others_hold || n_law.is_some() == k_law.is_some(), vec![]);
    r.push("N", vec![("!a <= ~a", n_law)]);
    r.push("K", vec![("a & ~a <= b | ~b", k_law)]);
    r.push("N_iff_K", vec![("(N) holds iff (K) holds", n_iff_k)]);
    r.push(
        "stone",
        vec![("!a | !!a = 1", all1(n, |x| a.join(a.neg(x), a.neg(a.neg(x))) == one))],
    );
    r.push(
        "delta",
        vec![
            (
                "D(a -> b) = D(~b -> ~a)",
                all2(n, |x, y| {
                    a.delta(a.imp(x, y)) == a.delta(a.imp(a.sim(y), a.sim(x)))
                }),
            ),
            ("Da | !Da = 1", all1(n, |x| a.join(a.delta(x), a.neg(a.delta(x))) == one)),
            (
                "D(a | b) = Da | Db",
                all2(n, |x, y| a.delta(a.join(x, y)) == a.join(a.delta(x), a.delta(y))),
            ),
            (
                "Da & D(a -> b) <= Db",
                all2(n, |x, y| {
                    a.leq(a.meet(a.delta(x), a.delta(a.imp(x, y))), a.delta(y))
                }),
            ),
            ("Da <= a", all1(n, |x| a.leq(a.delta(x), x))),
            ("DDa = Da", all1(n, |x| a.delta(a.delta(x)) == a.delta(x))),
        ],
    );
    r
}
