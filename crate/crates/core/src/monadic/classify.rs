use serde::Serialize;

use super::{congruence_from_filter, enumerate_monadic_regular_filters, CongruenceRelation, MonadicGAlgebra};
use crate::algebra::{decompose_chains, product_coords, Elem};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassificationReport {
    /// `∃A` totally ordered.
    pub range_chain: bool,
    /// Exactly two monadic regular filters.
    pub simple: bool,
    /// No nontrivial factor pair of congruences.
    pub directly_indecomposable: bool,
    /// A least non-identity congruence exists.
    pub si: bool,
    pub agree: bool,
    pub filter_count: usize,
}

/// Congruences of `m`, read off the monadic regular filters.
pub(crate) fn congruences(m: &MonadicGAlgebra) -> Result<Vec<CongruenceRelation>> {
    let lattice = enumerate_monadic_regular_filters(m, usize::MAX)?;
    lattice
        .filters
        .iter()
        .map(|f| congruence_from_filter(m, f))
        .collect()
}

fn is_factor_pair(x: &CongruenceRelation, y: &CongruenceRelation) -> bool {
    x.blocks
        .iter()
        .all(|bx| y.blocks.iter().all(|by| bx.iter().filter(|e| by.contains(e)).count() == 1))
}

/// Subdirect irreducibility, simplicity and direct indecomposability,
/// computed independently from the congruence lattice.
pub fn is_subdirectly_irreducible(m: &MonadicGAlgebra) -> Result<ClassificationReport> {
    let cons = congruences(m)?;
    let nontrivial: Vec<&CongruenceRelation> = cons.iter().filter(|c| !c.is_identity()).collect();
    let si = nontrivial
        .iter()
        .any(|c| nontrivial.iter().all(|d| c.is_finer(d)));
    let simple = cons.len() == 2;
    let proper: Vec<&CongruenceRelation> = nontrivial.iter().copied().filter(|c| !c.is_total()).collect();
    let directly_indecomposable = m.size() > 1
        && !proper
            .iter()
            .any(|x| proper.iter().any(|y| is_factor_pair(x, y)));
    let range_chain = m.range_is_chain();
    Ok(ClassificationReport {
        range_chain,
        simple,
        directly_indecomposable,
        si,
        agree: range_chain == simple && simple == directly_indecomposable && si == simple,
        filter_count: cons.len(),
    })
}

/// The term `t(x, y, z)` built from `T(a) = Δ∀a`, bound to an s.i. algebra.
#[derive(Debug, Clone, Copy)]
pub struct Discriminator<'a> {
    m: &'a MonadicGAlgebra,
}

impl<'a> Discriminator<'a> {
    pub fn new(m: &'a MonadicGAlgebra) -> Result<Self> {
        if !is_subdirectly_irreducible(m)?.si {
            return Err(Error::Precondition(
                "the discriminator term needs a subdirectly irreducible algebra".into(),
            ));
        }
        Ok(Discriminator { m })
    }

    pub fn eval(&self, x: Elem, y: Elem, z: Elem) -> Result<Elem> {
        let a = self.m.base();
        if [x, y, z].iter().any(|&e| e >= a.size()) {
            return Err(Error::InvalidInput(format!(
                "arguments ({x}, {y}, {z}) out of range 0..{}",
                a.size()
            )));
        }
        let t = a.delta(self.m.forall(a.biimp(x, y)));
        Ok(a.join(a.meet(t, z), a.meet(a.neg(t), x)))
    }
}

/// `t(x, y, z)`: `z` when `x = y`, else `x`. Refuses algebras that are not
/// subdirectly irreducible.
pub fn discriminator_eval(m: &MonadicGAlgebra, x: Elem, y: Elem, z: Elem) -> Result<Elem> {
    Discriminator::new(m)?.eval(x, y, z)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Parity {
    AllOdd,
    AllEven,
    Mixed,
}

impl Parity {
    pub fn of(sizes: &[usize]) -> Parity {
        if sizes.iter().all(|n| n % 2 == 1) {
            Parity::AllOdd
        } else if sizes.iter().all(|n| n % 2 == 0) {
            Parity::AllEven
        } else {
            Parity::Mixed
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CmgClassification {
    pub chain_sizes: Vec<usize>,
    pub fixed_point: Option<Elem>,
    pub parity: Parity,
    /// Verdict from the structural criterion.
    pub criterion: bool,
    /// Range element witnessing the covering criterion, when used.
    pub cover_witness: Option<Elem>,
    /// Verdict from evaluating (C) directly.
    pub direct: bool,
    pub c_witness: Option<Elem>,
    pub agree: bool,
}

/// Decides membership in CMG∼ for a finite s.i. algebra both by the
/// fixed-point/covering criterion and by checking (C) directly.
pub fn classify_cmg(m: &MonadicGAlgebra) -> Result<CmgClassification> {
    if !is_subdirectly_irreducible(m)?.si {
        return Err(Error::Precondition(
            "CMG classification needs a subdirectly irreducible algebra".into(),
        ));
    }
    let a = m.base();
    let dec = decompose_chains(a)?;
    let parity = Parity::of(&dec.sizes);
    let fixed_point = a.fixed_points().first().copied();
    let range = m.range();
    let (criterion, cover_witness) = match fixed_point {
        Some(d) => (range.binary_search(&d).is_ok(), None),
        None => {
            let to = dec.to_product();
            let t = range.iter().copied().find(|&t| {
                product_coords(&dec.sizes, to[t])
                    .iter()
                    .zip(&dec.sizes)
                    .all(|(&j, &n)| n - 1 - j == j + 1)
            });
            (t.is_some(), t)
        }
    };
    let direct = m.satisfies_c();
    let c_witness = if direct { None } else { m.c_witness() };
    Ok(CmgClassification {
        chain_sizes: dec.sizes.clone(),
        fixed_point,
        parity,
        criterion,
        cover_witness,
        direct,
        c_witness,
        agree: criterion == direct,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{direct_product, make_chain, FiniteGAlgebra, Subalgebra};
    use crate::monadic::attach_quantifiers;

    fn attach(a: &FiniteGAlgebra, c: &[Elem]) -> MonadicGAlgebra {
        attach_quantifiers(a, &Subalgebra::new(a, c.iter().copied()).unwrap()).unwrap()
    }

    #[test]
    fn si_examples() {
        let c3 = make_chain(3).unwrap();
        let sq = direct_product(&[c3.clone(), c3]).unwrap();
        let r = is_subdirectly_irreducible(&attach(&sq, &[0, 4, 8])).unwrap();
        assert!(r.si && r.simple && r.range_chain && r.agree);
        let all: Vec<Elem> = sq.elements().collect();
        let r = is_subdirectly_irreducible(&attach(&sq, &all)).unwrap();
        assert!(!r.si && !r.simple && !r.directly_indecomposable && r.agree);
        let c2 = make_chain(2).unwrap();
        assert!(is_subdirectly_irreducible(&attach(&c2, &[0, 1])).unwrap().si);
    }

    #[test]
    fn discriminator_table() {
        let c4 = make_chain(4).unwrap();
        let m = attach(&c4, &[0, 3]);
        for x in 0..4 {
            for y in 0..4 {
                for z in 0..4 {
                    let want = if x == y { z } else { x };
                    assert_eq!(discriminator_eval(&m, x, y, z).unwrap(), want);
                }
            }
        }
        let c3 = make_chain(3).unwrap();
        let sq = direct_product(&[c3.clone(), c3]).unwrap();
        let all: Vec<Elem> = sq.elements().collect();
        assert!(matches!(
            discriminator_eval(&attach(&sq, &all), 0, 1, 2),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn cmg_examples() {
        let c3 = make_chain(3).unwrap();
        let sq = direct_product(&[c3.clone(), c3]).unwrap();
        let k = classify_cmg(&attach(&sq, &[0, 4, 8])).unwrap();
        assert_eq!(k.fixed_point, Some(4));
        assert!(k.criterion && k.direct && k.agree);
        assert_eq!(k.parity, Parity::AllOdd);
        let k = classify_cmg(&attach(&sq, &[0, 8])).unwrap();
        assert!(!k.criterion && !k.direct && k.agree);
        assert!(k.c_witness.is_some());

        let c4 = make_chain(4).unwrap();
        let k = classify_cmg(&attach(&c4, &[0, 1, 2, 3])).unwrap();
        assert_eq!(k.fixed_point, None);
        assert_eq!(k.cover_witness, Some(1));
        assert!(k.criterion && k.direct);
        let k = classify_cmg(&attach(&c4, &[0, 3])).unwrap();
        assert!(!k.criterion && !k.direct && k.agree);
    }
}
