use std::collections::BTreeSet;

use serde::Serialize;

use super::{FilterKind, FilterSet, MonadicGAlgebra};
use crate::algebra::Elem;
use crate::{Error, Result};

/// A partition of the universe, stored canonically: each block sorted,
/// blocks ordered by least element.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CongruenceRelation {
    pub blocks: Vec<Vec<Elem>>,
}

impl CongruenceRelation {
    /// From a block label per element.
    pub fn from_labels(labels: &[usize]) -> Self {
        let mut first: Vec<Option<usize>> = vec![None; labels.len()];
        let mut blocks: Vec<Vec<Elem>> = Vec::new();
        for (x, &l) in labels.iter().enumerate() {
            let slot = *first[l].get_or_insert_with(|| {
                blocks.push(Vec::new());
                blocks.len() - 1
            });
            blocks[slot].push(x);
        }
        CongruenceRelation { blocks }
    }

    /// Block index per element.
    pub fn labels(&self) -> Vec<usize> {
        let n = self.blocks.iter().map(Vec::len).sum();
        let mut out = vec![0; n];
        for (i, b) in self.blocks.iter().enumerate() {
            for &x in b {
                out[x] = i;
            }
        }
        out
    }

    pub fn related(&self, x: Elem, y: Elem) -> bool {
        self.blocks.iter().any(|b| b.contains(&x) && b.contains(&y))
    }

    pub fn block_of(&self, x: Elem) -> &[Elem] {
        self.blocks.iter().find(|b| b.contains(&x)).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn is_identity(&self) -> bool {
        self.blocks.iter().all(|b| b.len() == 1)
    }

    pub fn is_total(&self) -> bool {
        self.blocks.len() == 1
    }

    /// `self ⊆ other` as relations.
    pub fn is_finer(&self, other: &CongruenceRelation) -> bool {
        let l = other.labels();
        self.blocks.iter().all(|b| b.iter().all(|&x| l[x] == l[b[0]]))
    }
}

/// First pair of related elements whose images under some operation are not
/// related.
pub(crate) fn compatibility_defect(m: &MonadicGAlgebra, labels: &[usize]) -> Option<Vec<Elem>> {
    let a = m.base();
    let n = a.size();
    for x in 0..n {
        for y in (x + 1)..n {
            if labels[x] != labels[y] {
                continue;
            }
            let unary = [
                (a.sim(x), a.sim(y)),
                (m.exists(x), m.exists(y)),
                (m.forall(x), m.forall(y)),
            ];
            if unary.iter().any(|&(u, v)| labels[u] != labels[v]) {
                return Some(vec![x, y]);
            }
            for z in 0..n {
                let pairs = [
                    (a.meet(x, z), a.meet(y, z)),
                    (a.join(x, z), a.join(y, z)),
                    (a.imp(x, z), a.imp(y, z)),
                    (a.imp(z, x), a.imp(z, y)),
                ];
                if pairs.iter().any(|&(u, v)| labels[u] != labels[v]) {
                    return Some(vec![x, y, z]);
                }
            }
        }
    }
    None
}

/// `θ_F`: `x ~ y` iff `(x → y) ∧ (y → x) ∈ F`.
pub fn congruence_from_filter(m: &MonadicGAlgebra, f: &FilterSet) -> Result<CongruenceRelation> {
    let a = m.base();
    let universe: Vec<Elem> = a.elements().collect();
    let f = FilterSet::classify(
        FilterKind::Monadic,
        a,
        &universe,
        Some(m.forall_table()),
        f.elements.iter().copied(),
    );
    if !(f.is_regular && f.is_monadic) {
        return Err(Error::Precondition(format!(
            "{:?} is not a monadic regular filter",
            f.elements
        )));
    }
    let n = a.size();
    let mut labels = vec![usize::MAX; n];
    for x in 0..n {
        if labels[x] == usize::MAX {
            for y in x..n {
                if f.contains(a.biimp(x, y)) {
                    labels[y] = x;
                }
            }
        }
    }
    if let Some(w) = compatibility_defect(m, &labels) {
        return Err(Error::Precondition(format!(
            "relation from filter {:?} is not a congruence at {w:?}",
            f.elements
        )));
    }
    Ok(CongruenceRelation::from_labels(&labels))
}

/// Every congruence, found by walking all set partitions. Refuses algebras
/// above `cap` elements.
pub fn brute_force_congruences(m: &MonadicGAlgebra, cap: usize) -> Result<Vec<CongruenceRelation>> {
    let n = m.size();
    if n > cap {
        return Err(Error::TooLarge { size: n, bound: cap });
    }
    let mut out = Vec::new();
    let mut rgs = vec![0usize; n];
    fn walk(m: &MonadicGAlgebra, rgs: &mut Vec<usize>, i: usize, blocks: usize, out: &mut Vec<CongruenceRelation>) {
        if i == rgs.len() {
            if compatibility_defect(m, rgs).is_none() {
                out.push(CongruenceRelation::from_labels(rgs));
            }
            return;
        }
        for b in 0..=blocks {
            rgs[i] = b;
            walk(m, rgs, i + 1, blocks.max(b + 1), out);
        }
    }
    if n > 0 {
        walk(m, &mut rgs, 1, 1, &mut out);
    }
    out.sort();
    Ok(out)
}

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while parent[r] != r {
        r = parent[r];
    }
    let mut x = x;
    while parent[x] != r {
        let next = parent[x];
        parent[x] = r;
        x = next;
    }
    r
}

/// Least congruence identifying each given pair.
pub fn congruence_generated(m: &MonadicGAlgebra, pairs: &[(Elem, Elem)]) -> CongruenceRelation {
    let a = m.base();
    let n = a.size();
    let mut parent: Vec<usize> = (0..n).collect();
    let union = |parent: &mut Vec<usize>, x: usize, y: usize| -> bool {
        let (rx, ry) = (find(parent, x), find(parent, y));
        if rx == ry {
            return false;
        }
        parent[rx.max(ry)] = rx.min(ry);
        true
    };
    for &(x, y) in pairs {
        union(&mut parent, x, y);
    }
    loop {
        let mut changed = false;
        for x in 0..n {
            for y in (x + 1)..n {
                if find(&mut parent, x) != find(&mut parent, y) {
                    continue;
                }
                changed |= union(&mut parent, a.sim(x), a.sim(y));
                changed |= union(&mut parent, m.exists(x), m.exists(y));
                changed |= union(&mut parent, m.forall(x), m.forall(y));
                for z in 0..n {
                    changed |= union(&mut parent, a.meet(x, z), a.meet(y, z));
                    changed |= union(&mut parent, a.join(x, z), a.join(y, z));
                    changed |= union(&mut parent, a.imp(x, z), a.imp(y, z));
                    changed |= union(&mut parent, a.imp(z, x), a.imp(z, y));
                }
            }
        }
        if !changed {
            break;
        }
    }
    let labels: Vec<usize> = (0..n).map(|x| find(&mut parent, x)).collect();
    CongruenceRelation::from_labels(&labels)
}

/// Every congruence, as joins of principal congruences. Works on sizes
/// where partition enumeration is hopeless.
pub fn congruences_by_generation(m: &MonadicGAlgebra) -> Vec<CongruenceRelation> {
    let n = m.size();
    let pairs_of = |c: &CongruenceRelation| -> Vec<(Elem, Elem)> {
        c.blocks
            .iter()
            .flat_map(|b| b.iter().skip(1).map(move |&y| (b[0], y)))
            .collect()
    };
    let mut principal = BTreeSet::new();
    for x in 0..n {
        for y in (x + 1)..n {
            principal.insert(congruence_generated(m, &[(x, y)]));
        }
    }
    let mut all: BTreeSet<CongruenceRelation> = BTreeSet::new();
    all.insert(congruence_generated(m, &[]));
    let mut frontier: Vec<CongruenceRelation> = all.iter().cloned().collect();
    while let Some(c) = frontier.pop() {
        for p in &principal {
            if p.is_finer(&c) {
                continue;
            }
            let mut pairs = pairs_of(&c);
            pairs.extend(pairs_of(p));
            let j = congruence_generated(m, &pairs);
            if all.insert(j.clone()) {
                frontier.push(j);
            }
        }
    }
    all.into_iter().collect()
}
