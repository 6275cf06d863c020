//! Reference implementations used as test oracles. They work from the
//! definitions directly and share no code with the library beyond the
//! table accessors.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use mgsim::algebra::{direct_product, make_chain, product_index, FiniteGAlgebra};
use mgsim::logic::Formula;
use mgsim::monadic::attach_quantifiers;
use mgsim::{Elem, MonadicGAlgebra, Subalgebra};

/// Tables of the n-element Goedel chain with `x ↦ n-1-x`, written out from
/// the definition.
pub struct ChainTables {
    pub meet: Vec<Vec<Elem>>,
    pub join: Vec<Vec<Elem>>,
    pub imp: Vec<Vec<Elem>>,
    pub sim: Vec<Elem>,
}

pub fn chain_tables(n: usize) -> ChainTables {
    let grid = |f: &dyn Fn(usize, usize) -> usize| (0..n).map(|a| (0..n).map(|b| f(a, b)).collect()).collect();
    ChainTables {
        meet: grid(&|a, b| a.min(b)),
        join: grid(&|a, b| a.max(b)),
        imp: grid(&|a, b| if a <= b { n - 1 } else { b }),
        sim: (0..n).map(|a| n - 1 - a).collect(),
    }
}

pub fn product(sizes: &[usize]) -> FiniteGAlgebra {
    let chains: Vec<_> = sizes.iter().map(|&n| make_chain(n).unwrap()).collect();
    direct_product(&chains).unwrap()
}

pub fn attach(a: &FiniteGAlgebra, range: &[Elem]) -> MonadicGAlgebra {
    attach_quantifiers(a, &Subalgebra::new(a, range.iter().copied()).unwrap()).unwrap()
}

/// Diagonal `{(x, …, x)}` of the r-th power of `C_n`.
pub fn diagonal(n: usize, r: usize) -> Vec<Elem> {
    let sizes = vec![n; r];
    (0..n).map(|x| product_index(&sizes, &vec![x; r])).collect()
}

pub fn leq(a: &FiniteGAlgebra, x: Elem, y: Elem) -> bool {
    a.meet(x, y) == x
}

/// `∃(x ∧ ∼x) ≤ ∀(x ∨ ∼x)` for every x; the first failing x otherwise.
pub fn c_failure(m: &MonadicGAlgebra) -> Option<Elem> {
    let a = m.base();
    a.elements().find(|&x| {
        let lo = m.exists(a.meet(x, a.sim(x)));
        let hi = m.forall(a.join(x, a.sim(x)));
        !leq(a, lo, hi)
    })
}

/// Least subset containing the seeds and constants closed under all
/// operations, by naive saturation.
pub fn closure(a: &FiniteGAlgebra, seeds: &[Elem]) -> Vec<Elem> {
    let mut set: BTreeSet<Elem> = seeds.iter().copied().collect();
    set.insert(a.bottom());
    set.insert(a.top());
    loop {
        let cur: Vec<Elem> = set.iter().copied().collect();
        let before = set.len();
        for &x in &cur {
            set.insert(a.sim(x));
            for &y in &cur {
                set.insert(a.meet(x, y));
                set.insert(a.join(x, y));
                set.insert(a.imp(x, y));
            }
        }
        if set.len() == before {
            return set.into_iter().collect();
        }
    }
}

/// Whether the labelling is compatible with every operation of `m`.
pub fn compatible(m: &MonadicGAlgebra, label: &[usize]) -> bool {
    let a = m.base();
    let n = a.size();
    for x in 0..n {
        for y in 0..n {
            if label[x] != label[y] {
                continue;
            }
            if label[a.sim(x)] != label[a.sim(y)]
                || label[m.exists(x)] != label[m.exists(y)]
                || label[m.forall(x)] != label[m.forall(y)]
            {
                return false;
            }
            for z in 0..n {
                let pairs = [
                    (a.meet(x, z), a.meet(y, z)),
                    (a.join(x, z), a.join(y, z)),
                    (a.imp(x, z), a.imp(y, z)),
                    (a.imp(z, x), a.imp(z, y)),
                ];
                if pairs.iter().any(|&(u, v)| label[u] != label[v]) {
                    return false;
                }
            }
        }
    }
    true
}

/// Every congruence of `m` as a sorted list of sorted blocks, found by
/// walking all set partitions.
pub fn all_congruences(m: &MonadicGAlgebra) -> BTreeSet<Vec<Vec<Elem>>> {
    fn go(m: &MonadicGAlgebra, label: &mut Vec<usize>, max: usize, out: &mut BTreeSet<Vec<Vec<Elem>>>) {
        let n = m.size();
        if label.len() == n {
            if compatible(m, label) {
                let mut blocks: Vec<Vec<Elem>> = vec![Vec::new(); max];
                for (x, &l) in label.iter().enumerate() {
                    blocks[l].push(x);
                }
                blocks.sort();
                out.insert(blocks);
            }
            return;
        }
        for l in 0..=max {
            label.push(l);
            go(m, label, max.max(l + 1), out);
            label.pop();
        }
    }
    let mut out = BTreeSet::new();
    go(m, &mut Vec::new(), 0, &mut out);
    out
}

/// Up-set of `f` inside `set`.
pub fn up_within(a: &FiniteGAlgebra, set: &[Elem], f: Elem) -> Vec<Elem> {
    set.iter().copied().filter(|&x| leq(a, f, x)).collect()
}

/// Regular filters of the subalgebra on `set`, from the definition:
/// nonempty up-sets (within `set`) closed under meet and Δ.
pub fn regular_filters_within(a: &FiniteGAlgebra, set: &[Elem]) -> BTreeSet<Vec<Elem>> {
    let mut out = BTreeSet::new();
    for &f in set {
        let up = up_within(a, set, f);
        let meet_closed = up.iter().all(|&x| up.iter().all(|&y| up.contains(&a.meet(x, y))));
        let delta_closed = up.iter().all(|&x| up.contains(&a.imp(a.sim(x), a.bottom())));
        if meet_closed && delta_closed {
            out.insert(up);
        }
    }
    out
}

/// Whether `map` from `m` into `target` preserves the lattice operations,
/// implication and ∼, and (when `quantifiers`) ∃ and ∀.
pub fn is_homomorphism(m: &MonadicGAlgebra, target: &MonadicGAlgebra, map: &[Elem], quantifiers: bool) -> bool {
    let (a, b) = (m.base(), target.base());
    for x in a.elements() {
        if map[a.sim(x)] != b.sim(map[x]) {
            return false;
        }
        if quantifiers && (map[m.exists(x)] != target.exists(map[x]) || map[m.forall(x)] != target.forall(map[x])) {
            return false;
        }
        for y in a.elements() {
            if map[a.meet(x, y)] != b.meet(map[x], map[y])
                || map[a.join(x, y)] != b.join(map[x], map[y])
                || map[a.imp(x, y)] != b.imp(map[x], map[y])
            {
                return false;
            }
        }
    }
    true
}

/// The discriminator term written out with the base operations.
pub fn discriminator_term(m: &MonadicGAlgebra, x: Elem, y: Elem, z: Elem) -> Elem {
    let a = m.base();
    let delta = |u: Elem| a.imp(a.sim(u), a.bottom());
    let t = |u: Elem| delta(m.forall(u));
    let e = a.meet(a.imp(x, y), a.imp(y, x));
    let te = t(e);
    let not_te = a.imp(te, a.bottom());
    a.join(a.meet(te, z), a.meet(not_te, x))
}

/// Recursive evaluation of `f` in `m` straight from the tables.
pub fn eval_oracle(m: &MonadicGAlgebra, asg: &BTreeMap<String, Elem>, f: &Formula) -> Elem {
    let a = m.base();
    let ev = |g: &Formula| eval_oracle(m, asg, g);
    match f {
        Formula::Var(v) => asg[v],
        Formula::Bot => a.bottom(),
        Formula::Top => a.top(),
        Formula::And(x, y) => a.meet(ev(x), ev(y)),
        Formula::Or(x, y) => a.join(ev(x), ev(y)),
        Formula::Imp(x, y) => a.imp(ev(x), ev(y)),
        Formula::Sim(x) => a.sim(ev(x)),
        Formula::Box(x) => m.forall(ev(x)),
        Formula::Diamond(x) => m.exists(ev(x)),
    }
}

/// Truth degree at world `w` of a Kripke model over the chain `0..n`,
/// with min/max over all worlds for the modalities.
pub fn kripke_oracle(n: usize, val: &BTreeMap<String, Vec<Elem>>, w: usize, f: &Formula) -> Elem {
    let worlds = val.values().next().map_or(1, Vec::len);
    let at = |g: &Formula, v: usize| kripke_oracle(n, val, v, g);
    match f {
        Formula::Var(v) => val[v][w],
        Formula::Bot => 0,
        Formula::Top => n - 1,
        Formula::And(x, y) => at(x, w).min(at(y, w)),
        Formula::Or(x, y) => at(x, w).max(at(y, w)),
        Formula::Imp(x, y) => {
            let (u, v) = (at(x, w), at(y, w));
            if u <= v {
                n - 1
            } else {
                v
            }
        }
        Formula::Sim(x) => n - 1 - at(x, w),
        Formula::Box(x) => (0..worlds).map(|v| at(x, v)).min().unwrap(),
        Formula::Diamond(x) => (0..worlds).map(|v| at(x, v)).max().unwrap(),
    }
}
