use super::{mrc::mrc_defect, MonadicGAlgebra};
use crate::algebra::validate::{all1, all2, constant};
use crate::algebra::{Subalgebra, ValidationReport};

/// Checks the monadic identities, the range conditions and their basic
/// consequences over all tuples. Assumes the base tables are a
/// G∼-algebra.
pub fn validate_monadic(m: &MonadicGAlgebra) -> ValidationReport {
    let a = m.base();
    let n = a.size();
    let (ex, fa) = (|x| m.exists(x), |x| m.forall(x));
    let mut r = ValidationReport::default();

    r.push("M1", vec![("Ax <= x", all1(n, |x| a.leq(fa(x), x)))]);
    r.push(
        "M2",
        vec![(
            "A(x -> Ay) = Ex -> Ay",
            all2(n, |x, y| fa(a.imp(x, fa(y))) == a.imp(ex(x), fa(y))),
        )],
    );
    r.push(
        "M3",
        vec![(
            "A(Ax -> y) = Ax -> Ay",
            all2(n, |x, y| fa(a.imp(fa(x), y)) == a.imp(fa(x), fa(y))),
        )],
    );
    r.push(
        "M4",
        vec![(
            "A(Ex | y) = Ex | Ay",
            all2(n, |x, y| fa(a.join(ex(x), y)) == a.join(ex(x), fa(y))),
        )],
    );
    r.push(
        "Q",
        vec![("Ax = ~E~x", all1(n, |x| fa(x) == a.sim(ex(a.sim(x)))))],
    );
    r.push(
        "consequences",
        vec![
            ("A1 = 1", constant(fa(a.top()) == a.top(), vec![a.top()])),
            ("E1 = 1", constant(ex(a.top()) == a.top(), vec![a.top()])),
            ("A0 = 0", constant(fa(a.bottom()) == a.bottom(), vec![a.bottom()])),
            ("E0 = 0", constant(ex(a.bottom()) == a.bottom(), vec![a.bottom()])),
            ("x <= Ex", all1(n, |x| a.leq(x, ex(x)))),
            ("AAx = Ax", all1(n, |x| fa(fa(x)) == fa(x))),
            ("EEx = Ex", all1(n, |x| ex(ex(x)) == ex(x))),
            (
                "monotone",
                all2(n, |x, y| !a.leq(x, y) || (a.leq(fa(x), fa(y)) && a.leq(ex(x), ex(y)))),
            ),
            (
                "A(x | Ay) = Ax | Ay",
                all2(n, |x, y| fa(a.join(x, fa(y))) == a.join(fa(x), fa(y))),
            ),
        ],
    );

    let range = m.range();
    let forall_range = m.forall_range();
    let range_equal = range == forall_range;
    r.push(
        "range",
        vec![(
            "EA = AA",
            constant(
                range_equal,
                range
                    .iter()
                    .chain(&forall_range)
                    .copied()
                    .find(|x| range.binary_search(x).is_err() || forall_range.binary_search(x).is_err())
                    .into_iter()
                    .collect(),
            ),
        )],
    );
    let sub = Subalgebra::new(a, range.iter().copied());
    r.push(
        "range_subalgebra",
        vec![("EA closed under the operations", constant(sub.is_ok(), vec![]))],
    );
    let mrc = match &sub {
        Ok(s) => match mrc_defect(a, s) {
            Ok(None) => None,
            Ok(Some((_, w))) => Some(w),
            Err(_) => Some(vec![]),
        },
        Err(_) => Some(vec![]),
    };
    r.push("range_mrc", vec![("EA m-relatively complete", mrc)]);
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{direct_product, make_chain};
    use crate::monadic::attach_quantifiers;

    #[test]
    fn attached_algebras_pass() {
        let c3 = make_chain(3).unwrap();
        let sq = direct_product(&[c3.clone(), c3]).unwrap();
        let m = attach_quantifiers(&sq, &Subalgebra::new(&sq, [0, 4, 8]).unwrap()).unwrap();
        assert!(validate_monadic(&m).passed());
        let c4 = make_chain(4).unwrap();
        let m = attach_quantifiers(&c4, &Subalgebra::new(&c4, [0, 3]).unwrap()).unwrap();
        let rep = validate_monadic(&m);
        assert!(rep.passed());
        assert!(rep.get("M2").unwrap().passed);
    }

    #[test]
    fn identity_and_zero_fail_q() {
        let c3 = make_chain(3).unwrap();
        let m = MonadicGAlgebra::from_tables(c3, vec![0, 1, 2], vec![0, 0, 0]).unwrap();
        let rep = validate_monadic(&m);
        let q = rep.get("Q").unwrap();
        assert!(!q.passed);
        assert_eq!(q.witness.as_deref(), Some(&[1][..]));
    }
}
