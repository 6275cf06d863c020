use serde::Serialize;

use super::{direct_product, make_chain, product_index, Elem, FiniteGAlgebra};
use crate::{Error, Result};

/// An isomorphism `A ≅ C_{n_1} × … × C_{n_r}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChainDecomposition {
    /// Factor chain sizes `n_i`.
    pub sizes: Vec<usize>,
    /// Boolean-center atom that cuts out each factor.
    pub atoms: Vec<Elem>,
    /// `coords[a][i]` is the position of `a ∧ atoms[i]` in factor `i`.
    pub coords: Vec<Vec<usize>>,
}

impl ChainDecomposition {
    pub fn factors(&self) -> Vec<FiniteGAlgebra> {
        self.sizes
            .iter()
            .map(|&n| make_chain(n).expect("factor chains have at least two elements"))
            .collect()
    }

    /// The product of the factor chains, in mixed-radix encoding.
    pub fn product(&self) -> FiniteGAlgebra {
        direct_product(&self.factors()).expect("at least one factor")
    }

    /// Image of each element in [`Self::product`].
    pub fn to_product(&self) -> Vec<Elem> {
        self.coords
            .iter()
            .map(|c| product_index(&self.sizes, c))
            .collect()
    }

    /// Inverse of [`Self::to_product`].
    pub fn from_product(&self) -> Vec<Elem> {
        let fwd = self.to_product();
        let mut inv = vec![0; fwd.len()];
        for (a, &p) in fwd.iter().enumerate() {
            inv[p] = a;
        }
        inv
    }

    pub fn is_chain(&self) -> bool {
        self.sizes.len() == 1
    }
}

/// Splits a finite G∼-algebra into chains via the atoms of its Boolean center.
///
/// Factors are listed by decreasing atom index, which for algebras built by
/// [`direct_product`] reproduces the original factor order.
pub fn decompose_chains(a: &FiniteGAlgebra) -> Result<ChainDecomposition> {
    if a.size() < 2 {
        return Err(Error::NotDecomposable("trivial algebra".into()));
    }
    let center: Vec<Elem> = a
        .elements()
        .filter(|&x| a.join(x, a.neg(x)) == a.top())
        .collect();
    let mut atoms: Vec<Elem> = center
        .iter()
        .copied()
        .filter(|&e| e != a.bottom())
        .filter(|&e| !center.iter().any(|&c| c != a.bottom() && a.lt(c, e)))
        .collect();
    atoms.sort_unstable_by(|x, y| y.cmp(x));

    let mut ranks = Vec::with_capacity(atoms.len());
    for &e in &atoms {
        let below: Vec<Elem> = a.elements().filter(|&x| a.leq(x, e)).collect();
        if !a.is_chain_on(below.iter().copied()) {
            return Err(Error::NotDecomposable(format!(
                "the ideal below center atom {e} is not totally ordered"
            )));
        }
        let mut rank = vec![usize::MAX; a.size()];
        for &x in &below {
            rank[x] = below.iter().filter(|&&y| a.lt(y, x)).count();
        }
        ranks.push((below.len(), rank));
    }
    let sizes: Vec<usize> = ranks.iter().map(|(n, _)| *n).collect();
    if sizes.iter().any(|&n| n < 2) {
        return Err(Error::NotDecomposable("degenerate factor".into()));
    }
    let coords: Vec<Vec<usize>> = a
        .elements()
        .map(|x| {
            atoms
                .iter()
                .zip(&ranks)
                .map(|(&e, (_, rank))| rank[a.meet(x, e)])
                .collect()
        })
        .collect();
    let dec = ChainDecomposition {
        sizes,
        atoms,
        coords,
    };
    let product_size: usize = dec.sizes.iter().product();
    if product_size != a.size() {
        return Err(Error::NotDecomposable(format!(
            "factor sizes {:?} multiply to {product_size}, not {}",
            dec.sizes,
            a.size()
        )));
    }
    if let Some(w) = a.embedding_defect(&dec.product(), &dec.to_product()) {
        return Err(Error::NotDecomposable(format!(
            "coordinate map is not an isomorphism at {w:?}"
        )));
    }
    Ok(dec)
}
