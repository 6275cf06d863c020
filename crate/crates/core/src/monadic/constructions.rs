use serde::Serialize;

use super::{attach_quantifiers, classify_cmg, is_subdirectly_irreducible, MonadicGAlgebra};
use crate::algebra::{decompose_chains, direct_product, make_chain, product_coords, product_index, Elem, Subalgebra};
use crate::{Error, Result};

fn require_si(m: &MonadicGAlgebra, what: &str) -> Result<()> {
    if is_subdirectly_irreducible(m)?.si {
        Ok(())
    } else {
        Err(Error::Precondition(format!("{what} needs a subdirectly irreducible algebra")))
    }
}

/// Result of shrinking an s.i. algebra around a finite set of elements.
#[derive(Debug, Clone, Serialize)]
pub struct FepShrink {
    /// Quantifiers on the generated subalgebra, indexed by position in
    /// `elements`.
    #[serde(skip)]
    pub algebra: MonadicGAlgebra,
    /// Parent index of each element of the shrunken algebra.
    pub elements: Vec<Elem>,
    /// The new quantifier range, as parent indices.
    pub range: Vec<Elem>,
    /// Elements `a` with `∀a` in the subalgebra; on these `∀_1 a = ∀a`.
    pub forall_agree: Vec<Elem>,
    /// Dually for `∃`.
    pub exists_agree: Vec<Elem>,
}

/// Generates a subalgebra from `seeds` and equips it with quantifiers over
/// its intersection with the original range.
pub fn fep_shrink(m: &MonadicGAlgebra, seeds: impl IntoIterator<Item = Elem>) -> Result<FepShrink> {
    require_si(m, "the shrink construction")?;
    let a = m.base();
    let sub = Subalgebra::generated(a, seeds)?;
    let range = m.range();
    let elements = sub.elements().to_vec();
    let c: Vec<Elem> = elements
        .iter()
        .copied()
        .filter(|x| range.binary_search(x).is_ok())
        .collect();
    let small = a.restrict(&sub);
    let pos = |x: Elem| sub.position(x).expect("element of the subalgebra");
    let c_sub = Subalgebra::new(&small, c.iter().map(|&x| pos(x)))?;
    let algebra = attach_quantifiers(&small, &c_sub)?;
    let mut forall_agree = Vec::new();
    let mut exists_agree = Vec::new();
    for (i, &x) in elements.iter().enumerate() {
        if sub.contains(m.forall(x)) {
            if elements[algebra.forall(i)] != m.forall(x) {
                return Err(Error::Precondition(format!("shrunken forall disagrees at {x}")));
            }
            forall_agree.push(x);
        }
        if sub.contains(m.exists(x)) {
            if elements[algebra.exists(i)] != m.exists(x) {
                return Err(Error::Precondition(format!("shrunken exists disagrees at {x}")));
            }
            exists_agree.push(x);
        }
    }
    if !algebra.range_is_chain() {
        return Err(Error::Precondition("shrunken algebra is not subdirectly irreducible".into()));
    }
    Ok(FepShrink {
        algebra,
        elements,
        range: c,
        forall_agree,
        exists_agree,
    })
}

/// Extension of a finite s.i. algebra to one with a fixed point in the
/// quantifier range.
#[derive(Debug, Clone, Serialize)]
pub struct FixedPointExtension {
    #[serde(skip)]
    pub algebra: MonadicGAlgebra,
    pub chain_sizes: Vec<usize>,
    /// Image of each element of the original algebra.
    pub embedding: Vec<Elem>,
    pub fixed_point: Elem,
    pub range: Vec<Elem>,
    /// `∃` and `∀` commute with the embedding.
    pub preserves_quantifiers: bool,
    /// First element where they do not.
    pub quantifier_defect: Option<Elem>,
}

/// Inserts a midpoint into every even factor chain and adds the resulting
/// fixed point to the range.
pub fn embed_with_fixed_point(m: &MonadicGAlgebra) -> Result<FixedPointExtension> {
    require_si(m, "the fixed-point extension")?;
    let a = m.base();
    let dec = decompose_chains(a)?;
    let new_sizes: Vec<usize> = dec.sizes.iter().map(|&n| n + (n + 1) % 2).collect();
    let chains = new_sizes.iter().map(|&n| make_chain(n)).collect::<Result<Vec<_>>>()?;
    let b = direct_product(&chains)?;
    let to = dec.to_product();
    let embedding: Vec<Elem> = a
        .elements()
        .map(|x| {
            let coords: Vec<usize> = product_coords(&dec.sizes, to[x])
                .into_iter()
                .zip(&dec.sizes)
                .map(|(j, &n)| if n % 2 == 0 && j >= n / 2 { j + 1 } else { j })
                .collect();
            product_index(&new_sizes, &coords)
        })
        .collect();
    let fixed_point = product_index(&new_sizes, &new_sizes.iter().map(|n| n / 2).collect::<Vec<_>>());
    if let Some(w) = a.embedding_defect(&b, &embedding) {
        return Err(Error::Precondition(format!("midpoint insertion is not an embedding at {w:?}")));
    }
    let mut range: Vec<Elem> = m.range().iter().map(|&x| embedding[x]).collect();
    range.push(fixed_point);
    let range_sub = Subalgebra::new(&b, range)?;
    let algebra = attach_quantifiers(&b, &range_sub)?;
    let cmg = classify_cmg(&algebra)?;
    if !(cmg.criterion && cmg.direct && cmg.fixed_point == Some(fixed_point)) {
        return Err(Error::Precondition("extension is not CMG with a fixed point".into()));
    }
    let quantifier_defect = a.elements().find(|&x| {
        embedding[m.exists(x)] != algebra.exists(embedding[x])
            || embedding[m.forall(x)] != algebra.forall(embedding[x])
    });
    if quantifier_defect.is_some() && m.satisfies_c() {
        return Err(Error::Precondition(format!(
            "quantifiers not preserved at {quantifier_defect:?} although (C) holds"
        )));
    }
    Ok(FixedPointExtension {
        chain_sizes: new_sizes,
        embedding,
        fixed_point,
        range: range_sub.elements().to_vec(),
        preserves_quantifiers: quantifier_defect.is_none(),
        quantifier_defect,
        algebra,
    })
}
