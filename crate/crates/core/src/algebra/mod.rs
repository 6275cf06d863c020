//! Finite Gödel algebras with an involutive negation, encoded by operation
//! tables over the index set `0..n`.

mod build;
mod decompose;
pub mod file;
mod iso;
pub(crate) mod validate;

use std::fmt;

use crate::{Error, Result};

pub use build::{direct_product, make_chain, product_coords, product_index};
pub use decompose::{decompose_chains, ChainDecomposition};
pub use iso::{find_isomorphism, find_table_isomorphism, TableSignature};
pub use validate::{validate_gsim, LawCheck, ValidationReport};

/// Elements are identified positionally.
pub type Elem = usize;

/// A finite G∼-algebra given by explicit tables.
///
/// Binary tables are stored row-major: `meet[a * n + b]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGAlgebra {
    size: usize,
    meet: Vec<Elem>,
    join: Vec<Elem>,
    imp: Vec<Elem>,
    sim: Vec<Elem>,
    bottom: Elem,
    top: Elem,
    names: Option<Vec<String>>,
}

impl FiniteGAlgebra {
    /// Builds an algebra from nested tables, checking only their shape and
    /// index bounds. Law checking is [`validate_gsim`]'s job.
    pub fn from_tables(
        meet: Vec<Vec<Elem>>,
        join: Vec<Vec<Elem>>,
        imp: Vec<Vec<Elem>>,
        sim: Vec<Elem>,
        bottom: Elem,
        top: Elem,
        names: Option<Vec<String>>,
    ) -> Result<Self> {
        let n = sim.len();
        if n == 0 {
            return Err(Error::InvalidSize {
                size: 0,
                reason: "an algebra needs at least one element",
            });
        }
        let flat = |table: &'static str, rows: Vec<Vec<Elem>>| -> Result<Vec<Elem>> {
            if rows.len() != n {
                return Err(Error::Structural {
                    table,
                    coords: vec![],
                    reason: format!("expected {n} rows, found {}", rows.len()),
                });
            }
            let mut out = Vec::with_capacity(n * n);
            for (i, row) in rows.into_iter().enumerate() {
                if row.len() != n {
                    return Err(Error::Structural {
                        table,
                        coords: vec![i],
                        reason: format!("expected {n} columns, found {}", row.len()),
                    });
                }
                for (j, v) in row.into_iter().enumerate() {
                    if v >= n {
                        return Err(Error::Structural {
                            table,
                            coords: vec![i, j],
                            reason: format!("entry {v} out of range 0..{n}"),
                        });
                    }
                    out.push(v);
                }
            }
            Ok(out)
        };
        let meet = flat("meet", meet)?;
        let join = flat("join", join)?;
        let imp = flat("imp", imp)?;
        if let Some((i, &v)) = sim.iter().enumerate().find(|(_, &v)| v >= n) {
            return Err(Error::Structural {
                table: "sim",
                coords: vec![i],
                reason: format!("entry {v} out of range 0..{n}"),
            });
        }
        for (table, v) in [("bottom", bottom), ("top", top)] {
            if v >= n {
                return Err(Error::Structural {
                    table,
                    coords: vec![],
                    reason: format!("constant {v} out of range 0..{n}"),
                });
            }
        }
        if let Some(names) = &names {
            if names.len() != n {
                return Err(Error::Structural {
                    table: "names",
                    coords: vec![],
                    reason: format!("expected {n} names, found {}", names.len()),
                });
            }
        }
        Ok(Self::from_flat(n, meet, join, imp, sim, bottom, top, names))
    }

    #[allow(clippy::too_many_arguments)]
    pub(crate) fn from_flat(
        size: usize,
        meet: Vec<Elem>,
        join: Vec<Elem>,
        imp: Vec<Elem>,
        sim: Vec<Elem>,
        bottom: Elem,
        top: Elem,
        names: Option<Vec<String>>,
    ) -> Self {
        debug_assert_eq!(meet.len(), size * size);
        FiniteGAlgebra {
            size,
            meet,
            join,
            imp,
            sim,
            bottom,
            top,
            names,
        }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.size
    }

    pub fn bottom(&self) -> Elem {
        self.bottom
    }

    pub fn top(&self) -> Elem {
        self.top
    }

    #[inline]
    pub fn meet(&self, a: Elem, b: Elem) -> Elem {
        self.meet[a * self.size + b]
    }

    #[inline]
    pub fn join(&self, a: Elem, b: Elem) -> Elem {
        self.join[a * self.size + b]
    }

    #[inline]
    pub fn imp(&self, a: Elem, b: Elem) -> Elem {
        self.imp[a * self.size + b]
    }

    #[inline]
    pub fn sim(&self, a: Elem) -> Elem {
        self.sim[a]
    }

    /// Pseudo-complement `a → 0`.
    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        self.imp(a, self.bottom)
    }

    /// Baaz delta `¬∼a`.
    #[inline]
    pub fn delta(&self, a: Elem) -> Elem {
        self.neg(self.sim(a))
    }

    /// `(a → b) ∧ (b → a)`.
    #[inline]
    pub fn biimp(&self, a: Elem, b: Elem) -> Elem {
        self.meet(self.imp(a, b), self.imp(b, a))
    }

    #[inline]
    pub fn leq(&self, a: Elem, b: Elem) -> bool {
        self.meet(a, b) == a
    }

    #[inline]
    pub fn lt(&self, a: Elem, b: Elem) -> bool {
        a != b && self.leq(a, b)
    }

    pub fn comparable(&self, a: Elem, b: Elem) -> bool {
        self.leq(a, b) || self.leq(b, a)
    }

    pub fn meet_all(&self, items: impl IntoIterator<Item = Elem>) -> Elem {
        items.into_iter().fold(self.top, |acc, x| self.meet(acc, x))
    }

    pub fn join_all(&self, items: impl IntoIterator<Item = Elem>) -> Elem {
        items.into_iter().fold(self.bottom, |acc, x| self.join(acc, x))
    }

    pub fn is_chain(&self) -> bool {
        self.is_chain_on(self.elements())
    }

    /// Whether the given elements are pairwise comparable.
    pub fn is_chain_on(&self, items: impl IntoIterator<Item = Elem> + Clone) -> bool {
        let v: Vec<Elem> = items.into_iter().collect();
        v.iter()
            .enumerate()
            .all(|(i, &a)| v[i + 1..].iter().all(|&b| self.comparable(a, b)))
    }

    /// `b` covers `a`: `a < b` with nothing strictly between.
    pub fn covers(&self, a: Elem, b: Elem) -> bool {
        self.lt(a, b) && !self.elements().any(|c| self.lt(a, c) && self.lt(c, b))
    }

    pub fn fixed_points(&self) -> Vec<Elem> {
        self.elements().filter(|&a| self.sim(a) == a).collect()
    }

    /// Elements sorted along the order; meaningful for chains.
    pub fn chain_order(&self) -> Vec<Elem> {
        let mut v: Vec<Elem> = self.elements().collect();
        v.sort_by_key(|&a| self.elements().filter(|&b| self.leq(b, a)).count());
        v
    }

    pub fn names(&self) -> Option<&[String]> {
        self.names.as_deref()
    }

    pub fn name(&self, a: Elem) -> String {
        match &self.names {
            Some(names) => names[a].clone(),
            None => a.to_string(),
        }
    }

    pub fn with_names(mut self, names: Option<Vec<String>>) -> Self {
        if let Some(v) = &names {
            assert_eq!(v.len(), self.size, "one name per element");
        }
        self.names = names;
        self
    }

    pub(crate) fn meet_flat(&self) -> &[Elem] {
        &self.meet
    }

    pub(crate) fn join_flat(&self) -> &[Elem] {
        &self.join
    }

    pub(crate) fn imp_flat(&self) -> &[Elem] {
        &self.imp
    }

    pub(crate) fn sim_table(&self) -> &[Elem] {
        &self.sim
    }

    pub fn table_rows(&self, table: BinaryOp) -> Vec<Vec<Elem>> {
        let flat = match table {
            BinaryOp::Meet => &self.meet,
            BinaryOp::Join => &self.join,
            BinaryOp::Imp => &self.imp,
        };
        flat.chunks(self.size).map(|r| r.to_vec()).collect()
    }

    /// The algebra induced on a subalgebra, indexed in the subalgebra's
    /// sorted element order.
    pub fn restrict(&self, sub: &Subalgebra) -> FiniteGAlgebra {
        let elems = sub.elements();
        let m = elems.len();
        let mut pos = vec![usize::MAX; self.size];
        for (i, &e) in elems.iter().enumerate() {
            pos[e] = i;
        }
        let mut meet = Vec::with_capacity(m * m);
        let mut join = Vec::with_capacity(m * m);
        let mut imp = Vec::with_capacity(m * m);
        for &a in elems {
            for &b in elems {
                meet.push(pos[self.meet(a, b)]);
                join.push(pos[self.join(a, b)]);
                imp.push(pos[self.imp(a, b)]);
            }
        }
        let sim = elems.iter().map(|&a| pos[self.sim(a)]).collect();
        let names = self
            .names
            .as_ref()
            .map(|ns| elems.iter().map(|&a| ns[a].clone()).collect());
        FiniteGAlgebra::from_flat(
            m,
            meet,
            join,
            imp,
            sim,
            pos[self.bottom],
            pos[self.top],
            names,
        )
    }

    /// Checks that `map` is an injective G∼-homomorphism into `target`.
    /// Returns the first offending element tuple.
    pub fn embedding_defect(&self, target: &FiniteGAlgebra, map: &[Elem]) -> Option<Vec<Elem>> {
        if map.len() != self.size {
            return Some(vec![]);
        }
        let mut seen = vec![false; target.size()];
        for a in self.elements() {
            if map[a] >= target.size() || std::mem::replace(&mut seen[map[a]], true) {
                return Some(vec![a]);
            }
            if map[self.sim(a)] != target.sim(map[a]) {
                return Some(vec![a]);
            }
        }
        if map[self.bottom] != target.bottom() || map[self.top] != target.top() {
            return Some(vec![self.bottom, self.top]);
        }
        for a in self.elements() {
            for b in self.elements() {
                let (x, y) = (map[a], map[b]);
                if map[self.meet(a, b)] != target.meet(x, y)
                    || map[self.join(a, b)] != target.join(x, y)
                    || map[self.imp(a, b)] != target.imp(x, y)
                {
                    return Some(vec![a, b]);
                }
            }
        }
        None
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinaryOp {
    Meet,
    Join,
    Imp,
}

impl fmt::Display for FiniteGAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "G~-algebra with {} elements", self.size)
    }
}

/// A subuniverse of a parent algebra, stored as a sorted element list.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subalgebra {
    elements: Vec<Elem>,
    parent_size: usize,
}

impl Subalgebra {
    /// Wraps `elements` after checking closure under every operation.
    pub fn new(parent: &FiniteGAlgebra, elements: impl IntoIterator<Item = Elem>) -> Result<Self> {
        let mut elements: Vec<Elem> = elements.into_iter().collect();
        elements.sort_unstable();
        elements.dedup();
        if let Some(&e) = elements.iter().find(|&&e| e >= parent.size()) {
            return Err(Error::InvalidInput(format!(
                "element {e} out of range 0..{}",
                parent.size()
            )));
        }
        let sub = Subalgebra {
            elements,
            parent_size: parent.size(),
        };
        if let Some(reason) = sub.closure_defect(parent) {
            return Err(Error::NotSubalgebra(reason));
        }
        Ok(sub)
    }

    /// The whole parent.
    pub fn full(parent: &FiniteGAlgebra) -> Self {
        Subalgebra {
            elements: parent.elements().collect(),
            parent_size: parent.size(),
        }
    }

    /// Least subuniverse containing `seeds` and the constants.
    pub fn generated(parent: &FiniteGAlgebra, seeds: impl IntoIterator<Item = Elem>) -> Result<Self> {
        let n = parent.size();
        let mut member = vec![false; n];
        let mut queue = Vec::new();
        let push = |x: Elem, member: &mut Vec<bool>, queue: &mut Vec<Elem>| {
            if !member[x] {
                member[x] = true;
                queue.push(x);
            }
        };
        push(parent.bottom(), &mut member, &mut queue);
        push(parent.top(), &mut member, &mut queue);
        for s in seeds {
            if s >= n {
                return Err(Error::InvalidInput(format!("seed {s} out of range 0..{n}")));
            }
            push(s, &mut member, &mut queue);
        }
        let mut i = 0;
        while i < queue.len() {
            let x = queue[i];
            push(parent.sim(x), &mut member, &mut queue);
            for j in 0..=i {
                let y = queue[j];
                push(parent.meet(x, y), &mut member, &mut queue);
                push(parent.join(x, y), &mut member, &mut queue);
                push(parent.imp(x, y), &mut member, &mut queue);
                push(parent.imp(y, x), &mut member, &mut queue);
            }
            i += 1;
        }
        let elements = (0..n).filter(|&x| member[x]).collect();
        Ok(Subalgebra {
            elements,
            parent_size: n,
        })
    }

    pub fn elements(&self) -> &[Elem] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn parent_size(&self) -> usize {
        self.parent_size
    }

    pub fn contains(&self, a: Elem) -> bool {
        self.elements.binary_search(&a).is_ok()
    }

    pub fn is_chain(&self, parent: &FiniteGAlgebra) -> bool {
        parent.is_chain_on(self.elements.iter().copied())
    }

    /// Position of `a` in the sorted element list.
    pub fn position(&self, a: Elem) -> Option<usize> {
        self.elements.binary_search(&a).ok()
    }

    fn closure_defect(&self, parent: &FiniteGAlgebra) -> Option<String> {
        if self.parent_size != parent.size() {
            return Some("parent size mismatch".into());
        }
        for c in [parent.bottom(), parent.top()] {
            if !self.contains(c) {
                return Some(format!("constant {c} missing"));
            }
        }
        for &a in &self.elements {
            if !self.contains(parent.sim(a)) {
                return Some(format!("~{a} = {} missing", parent.sim(a)));
            }
            for &b in &self.elements {
                for (op, v) in [
                    ("meet", parent.meet(a, b)),
                    ("join", parent.join(a, b)),
                    ("imp", parent.imp(a, b)),
                ] {
                    if !self.contains(v) {
                        return Some(format!("{op}({a},{b}) = {v} missing"));
                    }
                }
            }
        }
        None
    }

    /// Re-checks closure against `parent`.
    pub fn verify(&self, parent: &FiniteGAlgebra) -> Result<()> {
        match self.closure_defect(parent) {
            None => Ok(()),
            Some(reason) => Err(Error::NotSubalgebra(reason)),
        }
    }
}

/// Free-function form of [`Subalgebra::generated`].
pub fn generated_subalgebra(
    parent: &FiniteGAlgebra,
    seeds: impl IntoIterator<Item = Elem>,
) -> Result<Subalgebra> {
    Subalgebra::generated(parent, seeds)
}

/// Free-function form of [`FiniteGAlgebra::covers`].
pub fn covers(a: &FiniteGAlgebra, x: Elem, y: Elem) -> bool {
    a.covers(x, y)
}

/// Free-function form of [`FiniteGAlgebra::fixed_points`].
pub fn fixed_points(a: &FiniteGAlgebra) -> Vec<Elem> {
    a.fixed_points()
}
