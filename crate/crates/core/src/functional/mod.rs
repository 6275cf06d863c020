//! Functional monadic algebras over finite index sets and the explicit
//! embeddings into them.

mod lemma51;
mod representation;
mod sequence;

use crate::algebra::{direct_product, product_coords, product_index, Elem, FiniteGAlgebra};
use crate::monadic::MonadicGAlgebra;
use crate::{Error, Result};

pub use lemma51::{lemma51_embedding, lemma52_psi, EmbeddingReport, ImageDescriptor, Lemma51Embedding};
pub use representation::{functional_representation, theorem54_representation, Representation};
pub use sequence::{godel_imp, godel_sim, RationalSequenceFamily, Sequence};

fn power(chain: &FiniteGAlgebra, m: usize) -> Result<FiniteGAlgebra> {
    if m == 0 {
        return Err(Error::InvalidInput("index set must be nonempty".into()));
    }
    if !chain.is_chain() {
        return Err(Error::Precondition("value algebra must be totally ordered".into()));
    }
    direct_product(&vec![chain.clone(); m])
}

/// Quantifier tables on `chain^m` given a map from the coordinatewise join
/// (resp. meet) to the broadcast value.
fn broadcast(
    chain: &FiniteGAlgebra,
    m: usize,
    up: impl Fn(Elem) -> Elem,
    down: impl Fn(Elem) -> Elem,
) -> (Vec<Elem>, Vec<Elem>) {
    let sizes = vec![chain.size(); m];
    let total = sizes.iter().product();
    let mut exists = Vec::with_capacity(total);
    let mut forall = Vec::with_capacity(total);
    for x in 0..total {
        let coords = product_coords(&sizes, x);
        let sup = up(chain.join_all(coords.iter().copied()));
        let inf = down(chain.meet_all(coords.iter().copied()));
        exists.push(product_index(&sizes, &vec![sup; m]));
        forall.push(product_index(&sizes, &vec![inf; m]));
    }
    (exists, forall)
}

/// All maps from an `m`-element index set into `chain`, with `∃` the
/// pointwise supremum and `∀` the infimum, each broadcast as a constant map.
pub fn make_functional(chain: &FiniteGAlgebra, m: usize) -> Result<MonadicGAlgebra> {
    let base = power(chain, m)?;
    let (exists, forall) = broadcast(chain, m, |x| x, |x| x);
    Ok(MonadicGAlgebra::trusted(base, exists, forall))
}

/// `M^n` with `∃̄(a)(i) = ∃(a_1 ∨ … ∨ a_n)` and `∀̄(a)(i) = ∀(a_1 ∧ … ∧ a_n)`.
pub fn bar_quantifiers(m: &MonadicGAlgebra, n: usize) -> Result<MonadicGAlgebra> {
    let base = power(m.base(), n)?;
    let (exists, forall) = broadcast(m.base(), n, |x| m.exists(x), |x| m.forall(x));
    Ok(MonadicGAlgebra::trusted(base, exists, forall))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{make_chain, Subalgebra};
    use crate::monadic::{attach_quantifiers, validate_monadic};

    #[test]
    fn functional_square_is_diagonal_attachment() {
        let c3 = make_chain(3).unwrap();
        let f = make_functional(&c3, 2).unwrap();
        let sq = direct_product(&[c3.clone(), c3]).unwrap();
        let m = attach_quantifiers(&sq, &Subalgebra::new(&sq, [0, 4, 8]).unwrap()).unwrap();
        assert_eq!(f, m);
    }

    #[test]
    fn functional_small_cases() {
        let c2 = make_chain(2).unwrap();
        let cube = make_functional(&c2, 3).unwrap();
        assert!(validate_monadic(&cube).passed());
        assert!(cube.satisfies_c());
        let c4 = make_chain(4).unwrap();
        let f = make_functional(&c4, 1).unwrap();
        assert_eq!(f.exists_table(), &[0, 1, 2, 3]);
        assert_eq!(f.forall_table(), &[0, 1, 2, 3]);
    }

    #[test]
    fn functional_rejects_non_chain() {
        let c2 = make_chain(2).unwrap();
        let sq = direct_product(&[c2.clone(), c2.clone()]).unwrap();
        assert!(matches!(make_functional(&sq, 2), Err(Error::Precondition(_))));
        assert!(matches!(make_functional(&c2, 0), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn bar_on_three_chain() {
        let c3 = make_chain(3).unwrap();
        let m = attach_quantifiers(&c3, &Subalgebra::full(&c3)).unwrap();
        assert_eq!(bar_quantifiers(&m, 1).unwrap(), m);
        let p = bar_quantifiers(&m, 2).unwrap();
        // (d, 1) is 1*3 + 2
        assert_eq!(p.exists(5), 8);
        assert_eq!(p.forall(5), 4);
        for n in [2, 3] {
            let p = bar_quantifiers(&m, n).unwrap();
            assert!(validate_monadic(&p).passed());
            assert!(p.satisfies_c());
        }
    }
}
