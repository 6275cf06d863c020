mod common;

use common::{all_congruences, attach, c_failure, diagonal, discriminator_term, is_homomorphism, product};
use mgsim::algebra::{make_chain, product_index, validate_gsim, Elem};
use mgsim::monadic::{
    brute_force_congruences, classify_cmg, congruence_from_filter, discriminator_eval, embed_with_fixed_point,
    enumerate_m_rel_complete, enumerate_mg_algebras, enumerate_monadic_regular_filters, enumerate_si_cmg_fixed_point,
    fep_shrink, is_m_relatively_complete, is_subdirectly_irreducible, monadic_regular_filter_generated,
    validate_monadic, CFlag, FilterKind, FilterSet, Parity,
};
use mgsim::{Error, MonadicGAlgebra, Subalgebra};

fn sq() -> mgsim::FiniteGAlgebra {
    product(&[3, 3])
}

fn d1() -> MonadicGAlgebra {
    attach(&sq(), &diagonal(3, 2))
}

fn d2() -> MonadicGAlgebra {
    attach(&sq(), &[0, 8])
}

fn dd() -> Elem {
    product_index(&[3, 3], &[1, 1])
}

#[test]
fn relative_completeness_examples() {
    let a = sq();
    assert!(is_m_relatively_complete(&a, &Subalgebra::new(&a, diagonal(3, 2)).unwrap()).unwrap());
    assert!(is_m_relatively_complete(&a, &Subalgebra::new(&a, [0, 8]).unwrap()).unwrap());
    // The closure of (d,0) has least upper and greatest lower approximations
    // everywhere, so it is accepted.
    let c = Subalgebra::generated(&a, [product_index(&[3, 3], &[1, 0])]).unwrap();
    assert!(is_m_relatively_complete(&a, &c).unwrap());
}

#[test]
fn enumeration_examples() {
    let c3 = make_chain(3).unwrap();
    let lists: Vec<Vec<Elem>> = enumerate_m_rel_complete(&c3, false, 64)
        .unwrap()
        .iter()
        .map(|s| s.elements().to_vec())
        .collect();
    assert!(lists.contains(&vec![0, 2]));
    assert!(lists.contains(&vec![0, 1, 2]));
    let chains: Vec<Vec<Elem>> = enumerate_m_rel_complete(&sq(), true, 64)
        .unwrap()
        .iter()
        .map(|s| s.elements().to_vec())
        .collect();
    assert!(chains.contains(&diagonal(3, 2)));
    assert!(chains.contains(&vec![0, 8]));
    let c2 = make_chain(2).unwrap();
    assert_eq!(enumerate_m_rel_complete(&c2, false, 64).unwrap().len(), 1);
    assert!(matches!(
        enumerate_m_rel_complete(&product(&[3, 3]), false, 8),
        Err(Error::TooLarge { size: 9, bound: 8 })
    ));
}

#[test]
fn attachment_examples() {
    let c3 = make_chain(3).unwrap();
    let m = attach(&c3, &[0, 2]);
    assert_eq!((m.exists(1), m.forall(1)), (2, 0));
    let m = attach(&c3, &[0, 1, 2]);
    assert_eq!(m.exists_table(), &[0, 1, 2]);
    assert_eq!(m.forall_table(), &[0, 1, 2]);

    let m = d1();
    let a = m.base();
    for x in 0..3 {
        for y in 0..3 {
            let e = product_index(&[3, 3], &[x, y]);
            assert_eq!(m.exists(e), product_index(&[3, 3], &[x.max(y), x.max(y)]));
            assert_eq!(m.forall(e), product_index(&[3, 3], &[x.min(y), x.min(y)]));
        }
    }
    assert_eq!(m.range(), diagonal(3, 2));
    assert_eq!(m.forall_range(), diagonal(3, 2));
    assert!(validate_monadic(&m).passed());
    assert!(validate_gsim(a).passed());
}

#[test]
fn validation_examples() {
    let c4 = make_chain(4).unwrap();
    let m = attach(&c4, &[0, 3]);
    let r = validate_monadic(&m);
    assert!(r.passed());
    assert!(r.get("M2").unwrap().passed);

    let c3 = make_chain(3).unwrap();
    let bad = MonadicGAlgebra::from_tables(c3.clone(), vec![0, 1, 2], vec![0, 0, 0]).unwrap();
    let r = validate_monadic(&bad);
    assert!(!r.get("Q").unwrap().passed);
    assert!(MonadicGAlgebra::checked(c3, vec![0, 1, 2], vec![0, 0, 0]).is_err());
}

#[test]
fn condition_c_examples() {
    let c3 = make_chain(3).unwrap();
    assert!(attach(&c3, &[0, 1, 2]).satisfies_c());
    let m = d2();
    assert_eq!(m.c_flag(), CFlag::Unchecked);
    assert!(!m.satisfies_c());
    assert_eq!(m.c_flag(), CFlag::No);
    let a = m.base();
    let x = dd();
    assert_eq!(m.exists(a.meet(x, a.sim(x))), a.top());
    assert_eq!(m.forall(a.join(x, a.sim(x))), a.bottom());
    assert!(c_failure(&m).is_some());
    assert!(attach(&make_chain(2).unwrap(), &[0, 1]).satisfies_c());
}

#[test]
fn generated_filters() {
    let c3 = make_chain(3).unwrap();
    let m = attach(&c3, &[0, 1, 2]);
    assert_eq!(monadic_regular_filter_generated(&m, [2]).unwrap().elements, vec![2]);
    assert_eq!(monadic_regular_filter_generated(&m, [1]).unwrap().elements, vec![0, 1, 2]);
    assert!(matches!(monadic_regular_filter_generated(&m, []), Err(Error::InvalidInput(_))));

    // Oracle: intersect every monadic regular filter containing X.
    let a4 = product(&[4, 4]);
    let m = attach(&a4, &diagonal(4, 2));
    let x = product_index(&[4, 4], &[3, 1]);
    let got = monadic_regular_filter_generated(&m, [x]).unwrap();
    let all = enumerate_monadic_regular_filters(&m, 64).unwrap();
    let mut expected: Vec<Elem> = m.base().elements().collect();
    for f in all.filters.iter().filter(|f| f.contains(x)) {
        expected.retain(|e| f.contains(*e));
    }
    assert_eq!(got.elements, expected);
}

#[test]
fn filter_lattices() {
    let c3 = make_chain(3).unwrap();
    let m = attach(&c3, &[0, 2]);
    let l = enumerate_monadic_regular_filters(&m, 64).unwrap();
    let sets: Vec<Vec<Elem>> = l.filters.iter().map(|f| f.elements.clone()).collect();
    assert_eq!(sets, vec![vec![2], vec![0, 1, 2]]);
    let range_sets: Vec<Vec<Elem>> = l.range_filters.iter().map(|f| f.elements.clone()).collect();
    assert_eq!(range_sets, vec![vec![2], vec![0, 2]]);
    assert_eq!(l.correspondence, vec![0, 1]);
    assert_eq!(enumerate_monadic_regular_filters(&d1(), 64).unwrap().len(), 2);
    assert!(enumerate_monadic_regular_filters(&d1(), 4).is_err());
}

#[test]
fn congruences_from_filters() {
    let m = d1();
    let l = enumerate_monadic_regular_filters(&m, 64).unwrap();
    let top = l.filters.iter().find(|f| f.len() == 1).unwrap();
    assert!(congruence_from_filter(&m, top).unwrap().is_identity());
    let whole = l.filters.iter().find(|f| f.len() == 9).unwrap();
    assert!(congruence_from_filter(&m, whole).unwrap().is_total());
    let universe: Vec<Elem> = m.base().elements().collect();
    let not_filter = FilterSet::classify(FilterKind::Monadic, m.base(), &universe, Some(m.forall_table()), [0]);
    assert!(congruence_from_filter(&m, &not_filter).is_err());

    for e in enumerate_mg_algebras(9, false, 64).unwrap() {
        let from_filters: std::collections::BTreeSet<Vec<Vec<Elem>>> = enumerate_monadic_regular_filters(&e.algebra, 64)
            .unwrap()
            .filters
            .iter()
            .map(|f| congruence_from_filter(&e.algebra, f).unwrap().blocks)
            .collect();
        assert_eq!(from_filters, all_congruences(&e.algebra), "{:?} {:?}", e.chain_sizes, e.range);
        let brute: std::collections::BTreeSet<_> = brute_force_congruences(&e.algebra, 9)
            .unwrap()
            .into_iter()
            .map(|c| c.blocks)
            .collect();
        assert_eq!(brute, from_filters);
    }
    assert!(brute_force_congruences(&attach(&product(&[2, 5]), &[0, 9]), 9).is_err());
}

#[test]
fn subdirect_irreducibility() {
    let r = is_subdirectly_irreducible(&d1()).unwrap();
    assert!(r.si && r.simple && r.directly_indecomposable && r.agree);
    let full = attach(&sq(), &(0..9).collect::<Vec<_>>());
    let r = is_subdirectly_irreducible(&full).unwrap();
    assert!(!r.si && !r.simple && !r.range_chain && r.agree);
    assert!(is_subdirectly_irreducible(&attach(&make_chain(2).unwrap(), &[0, 1])).unwrap().si);
}

#[test]
fn discriminator() {
    let c4 = make_chain(4).unwrap();
    let m = attach(&c4, &[0, 3]);
    for x in 0..4 {
        for y in 0..4 {
            for z in 0..4 {
                let expected = if x == y { z } else { x };
                assert_eq!(discriminator_eval(&m, x, y, z).unwrap(), expected);
                assert_eq!(discriminator_term(&m, x, y, z), expected);
            }
        }
    }
    let full = attach(&sq(), &(0..9).collect::<Vec<_>>());
    assert!(matches!(discriminator_eval(&full, 0, 1, 2), Err(Error::Precondition(_))));
}

#[test]
fn shrink_examples() {
    let c5 = make_chain(5).unwrap();
    let m = attach(&c5, &[0, 2, 4]);
    let whole = fep_shrink(&m, 0..5).unwrap();
    assert_eq!(whole.elements, vec![0, 1, 2, 3, 4]);
    assert_eq!(whole.algebra.exists_table(), m.exists_table());

    let s = fep_shrink(&m, [1]).unwrap();
    assert_eq!(s.elements, vec![0, 1, 3, 4]);
    assert_eq!(s.range, vec![0, 4]);
    // ∀e1 = 0 lies in the subalgebra; ∃e1 = d does not.
    assert!(s.forall_agree.contains(&1));
    assert!(!s.exists_agree.contains(&1));
    let pos = |x: Elem| s.elements.iter().position(|&e| e == x).unwrap();
    assert_eq!(s.elements[s.algebra.exists(pos(1))], 4);
    assert!(validate_monadic(&s.algebra).passed());

    let s = fep_shrink(&m, [1, m.exists(1)]).unwrap();
    assert_eq!(s.elements, vec![0, 1, 2, 3, 4]);
    assert!(s.exists_agree.contains(&1));
}

#[test]
fn fixed_point_extension_examples() {
    let c4 = make_chain(4).unwrap();
    let m = attach(&c4, &[0, 1, 2, 3]);
    let e = embed_with_fixed_point(&m).unwrap();
    assert_eq!(e.chain_sizes, vec![5]);
    assert_eq!(e.embedding, vec![0, 1, 3, 4]);
    assert_eq!(e.fixed_point, 2);
    assert!(e.preserves_quantifiers);
    let lifted = attach(&make_chain(5).unwrap(), &e.range);
    assert!(is_homomorphism(&m, &lifted, &e.embedding, true));

    let m = attach(&c4, &[0, 3]);
    let e = embed_with_fixed_point(&m).unwrap();
    assert!(!e.preserves_quantifiers);
    assert_eq!(m.exists(1), 3);
    assert_eq!(e.algebra.exists(e.embedding[1]), 2);
    assert!(is_homomorphism(&m, &e.algebra, &e.embedding, false));

    let c3 = make_chain(3).unwrap();
    let e = embed_with_fixed_point(&attach(&c3, &[0, 2])).unwrap();
    assert_eq!(e.chain_sizes, vec![3]);
    assert_eq!(e.embedding, vec![0, 1, 2]);
    assert_eq!(e.range, vec![0, 1, 2]);
}

#[test]
fn cmg_classification_examples() {
    let k = classify_cmg(&d1()).unwrap();
    assert_eq!(k.fixed_point, Some(dd()));
    assert!(k.criterion && k.direct && k.agree);
    assert_eq!(k.parity, Parity::AllOdd);

    let k = classify_cmg(&d2()).unwrap();
    assert!(!k.criterion && !k.direct && k.agree);

    let c4 = make_chain(4).unwrap();
    let k = classify_cmg(&attach(&c4, &[0, 1, 2, 3])).unwrap();
    assert_eq!(k.fixed_point, None);
    assert_eq!(k.cover_witness, Some(1));
    assert!(k.criterion && k.direct);
    assert_eq!(Parity::of(&[3, 4]), Parity::Mixed);
    let full = attach(&sq(), &(0..9).collect::<Vec<_>>());
    assert!(matches!(classify_cmg(&full), Err(Error::Precondition(_))));
}

#[test]
fn si_cmg_fixed_point_listing() {
    let got: Vec<(Vec<usize>, Vec<Elem>)> = enumerate_si_cmg_fixed_point(9, 64)
        .unwrap()
        .into_iter()
        .map(|e| (e.chain_sizes, e.range))
        .collect();
    assert_eq!(got[0], (vec![3], vec![0, 1, 2]));
    for (sizes, range) in &got {
        assert!(sizes.iter().all(|n| n % 2 == 1));
        let a = product(sizes);
        let m = attach(&a, range);
        assert!(c_failure(&m).is_none());
        assert!(range.contains(&a.fixed_points()[0]));
    }
    assert!(got.contains(&(vec![3, 3], diagonal(3, 2))));
    assert!(!got.contains(&(vec![3, 3], vec![0, 8])));
}

#[test]
fn enumerated_algebras_satisfy_range_laws() {
    for e in enumerate_mg_algebras(12, false, 64).unwrap() {
        let m = &e.algebra;
        assert!(validate_monadic(m).passed());
        assert_eq!(m.range(), e.range);
        let a = m.base();
        // a ≤ ∼a iff (a ≤ ∃a and ∃a ≤ ∼a) in CMG algebras, and ∃d = d.
        if c_failure(m).is_none() {
            for x in a.elements() {
                let lhs = a.leq(x, a.sim(x));
                let rhs = a.leq(x, m.exists(x)) && a.leq(m.exists(x), a.sim(x));
                assert_eq!(lhs, rhs);
            }
            for d in a.fixed_points() {
                assert_eq!(m.exists(d), d);
            }
        }
        if m.range_is_chain() {
            let coords = |c: Elem| mgsim::algebra::product_coords(&e.chain_sizes, c);
            for &c in &e.range {
                let cs = coords(c);
                if cs.iter().zip(&e.chain_sizes).any(|(&x, &n)| x == n - 1) {
                    assert_eq!(c, a.top());
                }
                if cs.iter().zip(&e.chain_sizes).any(|(&x, &n)| 2 * x + 1 == n) {
                    assert_eq!(c, a.sim(c));
                }
            }
        }
    }
}

#[test]
fn projections_injective_on_range() {
    for e in enumerate_si_cmg_fixed_point(27, 64).unwrap() {
        for i in 0..e.chain_sizes.len() {
            let mut seen: Vec<usize> = e
                .range
                .iter()
                .map(|&c| mgsim::algebra::product_coords(&e.chain_sizes, c)[i])
                .collect();
            seen.dedup();
            assert_eq!(seen.len(), e.range.len());
        }
    }
}
