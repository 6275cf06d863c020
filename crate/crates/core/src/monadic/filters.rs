use serde::Serialize;

use super::MonadicGAlgebra;
use crate::algebra::{Elem, FiniteGAlgebra};
use crate::{Error, Result};

/// Which parent a filter lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FilterKind {
    /// A subset of a monadic algebra.
    Monadic,
    /// A subset of the range `∃A`, read as a G∼-algebra.
    Range,
}

/// A subset together with the filter properties it was found to have.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FilterSet {
    pub kind: FilterKind,
    /// Sorted parent indices.
    pub elements: Vec<Elem>,
    pub is_filter: bool,
    pub is_regular: bool,
    pub is_monadic: bool,
}

impl FilterSet {
    /// Tests `elements` inside `universe` (a subuniverse of `a`, sorted).
    /// `forall` is consulted for the monadic flag when given.
    pub fn classify(
        kind: FilterKind,
        a: &FiniteGAlgebra,
        universe: &[Elem],
        forall: Option<&[Elem]>,
        elements: impl IntoIterator<Item = Elem>,
    ) -> Self {
        let mut elements: Vec<Elem> = elements.into_iter().collect();
        elements.sort_unstable();
        elements.dedup();
        let has = |x: Elem| elements.binary_search(&x).is_ok();
        let is_filter = !elements.is_empty()
            && elements.iter().all(|&x| {
                universe.iter().all(|&y| !a.leq(x, y) || has(y))
                    && elements.iter().all(|&y| has(a.meet(x, y)))
            });
        let is_regular = is_filter && elements.iter().all(|&x| has(a.delta(x)));
        let is_monadic = is_filter && forall.is_some_and(|f| elements.iter().all(|&x| has(f[x])));
        FilterSet {
            kind,
            elements,
            is_filter,
            is_regular,
            is_monadic,
        }
    }

    pub fn contains(&self, x: Elem) -> bool {
        self.elements.binary_search(&x).is_ok()
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn is_subset(&self, other: &FilterSet) -> bool {
        self.elements.iter().all(|&x| other.contains(x))
    }

    /// Least element; filters of finite algebras are principal.
    pub fn generator(&self, a: &FiniteGAlgebra) -> Elem {
        a.meet_all(self.elements.iter().copied())
    }
}

fn up_set(a: &FiniteGAlgebra, universe: &[Elem], f: Elem) -> Vec<Elem> {
    universe.iter().copied().filter(|&x| a.leq(f, x)).collect()
}

fn monadic_filter(m: &MonadicGAlgebra, f: Elem) -> FilterSet {
    let a = m.base();
    let universe: Vec<Elem> = a.elements().collect();
    FilterSet::classify(
        FilterKind::Monadic,
        a,
        &universe,
        Some(m.forall_table()),
        up_set(a, &universe, f),
    )
}

/// The least monadic regular filter containing `xs`: everything above
/// `Δ∀x_1 ∧ … ∧ Δ∀x_k`.
pub fn monadic_regular_filter_generated(
    m: &MonadicGAlgebra,
    xs: impl IntoIterator<Item = Elem>,
) -> Result<FilterSet> {
    let a = m.base();
    let xs: Vec<Elem> = xs.into_iter().collect();
    if xs.is_empty() {
        return Err(Error::InvalidInput(
            "a generating set for a monadic regular filter must be nonempty".into(),
        ));
    }
    if let Some(&x) = xs.iter().find(|&&x| x >= a.size()) {
        return Err(Error::InvalidInput(format!("element {x} out of range 0..{}", a.size())));
    }
    let g = a.meet_all(xs.iter().map(|&x| a.delta(m.forall(x))));
    let f = monadic_filter(m, g);
    if !(f.is_regular && f.is_monadic) {
        return Err(Error::Precondition(format!(
            "generated set above {g} is not a monadic regular filter"
        )));
    }
    Ok(f)
}

/// All monadic regular filters and the matching regular filters of `∃A`.
#[derive(Debug, Clone, Serialize)]
pub struct FilterLattice {
    /// Ordered by size, then elements.
    pub filters: Vec<FilterSet>,
    /// Pairs `(i, j)` with `filters[i] ⊆ filters[j]`, `i != j`.
    pub order: Vec<(usize, usize)>,
    /// Regular filters of `⟨∃A, ∼⟩`, same ordering.
    pub range_filters: Vec<FilterSet>,
    /// `correspondence[i]` is the index in `range_filters` of `filters[i] ∩ ∃A`.
    pub correspondence: Vec<usize>,
}

impl FilterLattice {
    pub fn len(&self) -> usize {
        self.filters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.filters.is_empty()
    }
}

fn sort_filters(fs: &mut [FilterSet]) {
    fs.sort_by(|x, y| x.len().cmp(&y.len()).then_with(|| x.elements.cmp(&y.elements)));
}

/// Enumerates the monadic regular filters and checks that intersecting
/// with the range is an order isomorphism onto the regular filters of the
/// range, with inverse given by generation.
pub fn enumerate_monadic_regular_filters(m: &MonadicGAlgebra, bound: usize) -> Result<FilterLattice> {
    let a = m.base();
    if a.size() > bound {
        return Err(Error::TooLarge {
            size: a.size(),
            bound,
        });
    }
    let mut filters: Vec<FilterSet> = a
        .elements()
        .filter(|&f| a.delta(f) == f && m.forall(f) == f)
        .map(|f| monadic_filter(m, f))
        .collect();
    sort_filters(&mut filters);

    let range = m.range();
    let mut range_filters: Vec<FilterSet> = range
        .iter()
        .copied()
        .filter(|&f| a.delta(f) == f)
        .map(|f| FilterSet::classify(FilterKind::Range, a, &range, None, up_set(a, &range, f)))
        .collect();
    sort_filters(&mut range_filters);

    let mut correspondence = Vec::with_capacity(filters.len());
    for f in &filters {
        let meet: Vec<Elem> = f.elements.iter().copied().filter(|x| range.binary_search(x).is_ok()).collect();
        let j = range_filters
            .iter()
            .position(|g| g.elements == meet)
            .ok_or_else(|| Error::Precondition(format!("F ∩ EA = {meet:?} is not a regular filter of EA")))?;
        correspondence.push(j);
    }
    let mut hit = vec![false; range_filters.len()];
    for &j in &correspondence {
        if std::mem::replace(&mut hit[j], true) {
            return Err(Error::Precondition("F ↦ F ∩ EA is not injective".into()));
        }
    }
    if hit.iter().any(|h| !h) {
        return Err(Error::Precondition("F ↦ F ∩ EA is not surjective".into()));
    }
    for (i, f) in filters.iter().enumerate() {
        let back = monadic_regular_filter_generated(m, range_filters[correspondence[i]].elements.iter().copied())?;
        if back.elements != f.elements {
            return Err(Error::Precondition(format!(
                "generation does not invert the correspondence at filter {i}"
            )));
        }
    }
    let mut order = Vec::new();
    for (i, f) in filters.iter().enumerate() {
        for (j, g) in filters.iter().enumerate() {
            if i != j && f.is_subset(g) {
                if !range_filters[correspondence[i]].is_subset(&range_filters[correspondence[j]]) {
                    return Err(Error::Precondition("correspondence is not monotone".into()));
                }
                order.push((i, j));
            } else if i != j && range_filters[correspondence[i]].is_subset(&range_filters[correspondence[j]]) {
                return Err(Error::Precondition("correspondence does not reflect order".into()));
            }
        }
    }
    Ok(FilterLattice {
        filters,
        order,
        range_filters,
        correspondence,
    })
}
