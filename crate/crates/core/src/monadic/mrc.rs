use std::collections::{HashSet, VecDeque};

use super::MonadicGAlgebra;
use crate::algebra::{Elem, FiniteGAlgebra, Subalgebra};
use crate::{Error, Result};

/// Greatest element of `c` below `a`, if the set of such elements has one.
fn greatest_below(a: &FiniteGAlgebra, c: &[Elem], x: Elem) -> Option<Elem> {
    let below: Vec<Elem> = c.iter().copied().filter(|&y| a.leq(y, x)).collect();
    below
        .iter()
        .copied()
        .find(|&g| below.iter().all(|&y| a.leq(y, g)))
}

fn least_above(a: &FiniteGAlgebra, c: &[Elem], x: Elem) -> Option<Elem> {
    let above: Vec<Elem> = c.iter().copied().filter(|&y| a.leq(x, y)).collect();
    above
        .iter()
        .copied()
        .find(|&l| above.iter().all(|&y| a.leq(l, y)))
}

/// The first failing condition and its witness tuple, or `None` when `c` is
/// m-relatively complete in `a`.
///
/// Witness shapes: `s1` gives `[a]`; `s2` gives `[a, c1, c2]`; `s2'` gives
/// `[c, a]`.
pub fn mrc_defect(a: &FiniteGAlgebra, c: &Subalgebra) -> Result<Option<(&'static str, Vec<Elem>)>> {
    c.verify(a)?;
    let cs = c.elements();
    let mut lower = Vec::with_capacity(a.size());
    for x in a.elements() {
        match (greatest_below(a, cs, x), least_above(a, cs, x)) {
            (Some(g), Some(_)) => lower.push(g),
            _ => return Ok(Some(("s1", vec![x]))),
        }
    }
    if c.is_chain(a) {
        let top = a.top();
        for &k in cs.iter().filter(|&&k| k != top) {
            if let Some(x) = a.elements().find(|&x| x != top && a.join(k, x) == top) {
                return Ok(Some(("s2'", vec![k, x])));
            }
        }
        return Ok(None);
    }
    // The best candidate for c3 is the greatest element of C below a.
    for x in a.elements() {
        for &c1 in cs {
            for &c2 in cs {
                if a.leq(c1, a.join(c2, x)) && !a.leq(c1, a.join(c2, lower[x])) {
                    return Ok(Some(("s2", vec![x, c1, c2])));
                }
            }
        }
    }
    Ok(None)
}

/// Whether `c` is an m-relatively complete subalgebra of `a`.
pub fn is_m_relatively_complete(a: &FiniteGAlgebra, c: &Subalgebra) -> Result<bool> {
    Ok(mrc_defect(a, c)?.is_none())
}

/// (s2) in its general form, used by tests to cross-check (s2').
#[doc(hidden)]
pub fn s2_general_defect(a: &FiniteGAlgebra, c: &Subalgebra) -> Option<Vec<Elem>> {
    let cs = c.elements();
    for x in a.elements() {
        for &c1 in cs {
            for &c2 in cs {
                if a.leq(c1, a.join(c2, x))
                    && !cs
                        .iter()
                        .any(|&c3| a.leq(c3, x) && a.leq(c1, a.join(c2, c3)))
                {
                    return Some(vec![x, c1, c2]);
                }
            }
        }
    }
    None
}

/// Every subalgebra of `a` (only the totally ordered ones when
/// `chains_only`), sorted by element list.
pub fn enumerate_subalgebras(
    a: &FiniteGAlgebra,
    chains_only: bool,
    bound: usize,
) -> Result<Vec<Subalgebra>> {
    if a.size() > bound {
        return Err(Error::TooLarge {
            size: a.size(),
            bound,
        });
    }
    let start = Subalgebra::generated(a, [])?;
    let mut seen: HashSet<Subalgebra> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(start.clone());
    queue.push_back(start);
    while let Some(s) = queue.pop_front() {
        for x in a.elements().filter(|&x| !s.contains(x)) {
            let next = Subalgebra::generated(a, s.elements().iter().copied().chain([x]))?;
            if chains_only && !next.is_chain(a) {
                continue;
            }
            if seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    let mut out: Vec<Subalgebra> = seen.into_iter().collect();
    out.sort();
    Ok(out)
}

/// All m-relatively complete subalgebras, sorted by element list.
pub fn enumerate_m_rel_complete(
    a: &FiniteGAlgebra,
    totally_ordered_only: bool,
    bound: usize,
) -> Result<Vec<Subalgebra>> {
    let subs = enumerate_subalgebras(a, totally_ordered_only, bound)?;
    let mut out = Vec::new();
    for s in subs {
        if is_m_relatively_complete(a, &s)? {
            out.push(s);
        }
    }
    Ok(out)
}

/// Quantifiers with range `c`: `∃a` is the least element of `c` above `a`
/// and `∀a` the greatest below.
pub fn attach_quantifiers(a: &FiniteGAlgebra, c: &Subalgebra) -> Result<MonadicGAlgebra> {
    c.verify(a)?;
    let cs = c.elements();
    let mut exists = Vec::with_capacity(a.size());
    let mut forall = Vec::with_capacity(a.size());
    for x in a.elements() {
        match (least_above(a, cs, x), greatest_below(a, cs, x)) {
            (Some(e), Some(f)) => {
                exists.push(e);
                forall.push(f);
            }
            _ => {
                return Err(Error::Precondition(format!(
                    "no least upper or greatest lower approximation in the range for element {} ({})",
                    x,
                    a.name(x)
                )))
            }
        }
    }
    if let Some((condition, witness)) = mrc_defect(a, c)? {
        return Err(Error::NotRelativelyComplete { condition, witness });
    }
    Ok(MonadicGAlgebra::trusted(a.clone(), exists, forall))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{direct_product, make_chain};

    fn sq3() -> FiniteGAlgebra {
        let c3 = make_chain(3).unwrap();
        direct_product(&[c3.clone(), c3]).unwrap()
    }

    #[test]
    fn diagonals_of_square() {
        let a = sq3();
        let d1 = Subalgebra::new(&a, [0, 4, 8]).unwrap();
        let d2 = Subalgebra::new(&a, [0, 8]).unwrap();
        assert!(is_m_relatively_complete(&a, &d1).unwrap());
        assert!(is_m_relatively_complete(&a, &d2).unwrap());
    }

    #[test]
    fn closure_of_d0_is_complete() {
        let a = sq3();
        let c = Subalgebra::generated(&a, [3]).unwrap();
        assert_eq!(c.elements(), &[0, 2, 3, 5, 6, 8]);
        assert!(is_m_relatively_complete(&a, &c).unwrap());
        assert!(s2_general_defect(&a, &c).is_none());
    }

    #[test]
    fn chain_enumeration() {
        let c3 = make_chain(3).unwrap();
        let all = enumerate_m_rel_complete(&c3, false, 64).unwrap();
        let lists: Vec<&[Elem]> = all.iter().map(|s| s.elements()).collect();
        assert_eq!(lists, vec![&[0, 1, 2][..], &[0, 2][..]]);
        let c2 = make_chain(2).unwrap();
        assert_eq!(enumerate_m_rel_complete(&c2, false, 64).unwrap().len(), 1);
        let sq = enumerate_m_rel_complete(&sq3(), true, 64).unwrap();
        let lists: Vec<&[Elem]> = sq.iter().map(|s| s.elements()).collect();
        assert!(lists.contains(&&[0, 4, 8][..]));
        assert!(lists.contains(&&[0, 8][..]));
    }

    #[test]
    fn enumeration_refuses_large() {
        let a = make_chain(10).unwrap();
        assert!(matches!(
            enumerate_subalgebras(&a, false, 5),
            Err(Error::TooLarge { size: 10, bound: 5 })
        ));
    }

    #[test]
    fn attach_examples() {
        let c3 = make_chain(3).unwrap();
        let m = attach_quantifiers(&c3, &Subalgebra::new(&c3, [0, 2]).unwrap()).unwrap();
        assert_eq!((m.exists(1), m.forall(1)), (2, 0));
        let m = attach_quantifiers(&c3, &Subalgebra::full(&c3)).unwrap();
        assert_eq!(m.exists_table(), &[0, 1, 2]);
        assert_eq!(m.forall_table(), &[0, 1, 2]);

        let a = sq3();
        let m = attach_quantifiers(&a, &Subalgebra::new(&a, [0, 4, 8]).unwrap()).unwrap();
        for e in a.elements() {
            let (x, y) = (e / 3, e % 3);
            let j = a.join(x * 3 + x, y * 3 + y);
            let mt = a.meet(x * 3 + x, y * 3 + y);
            assert_eq!(m.exists(e), j);
            assert_eq!(m.forall(e), mt);
        }
    }

    /// The Gödel algebra 0 < x < b, c < 1 with b, c incomparable, using `¬` as
    /// its unary operation. Not a G∼-algebra, but it has a chain subalgebra
    /// `{0, b, 1}` violating (s2').
    fn fork() -> FiniteGAlgebra {
        let up: [&[Elem]; 5] = [&[0, 1, 2, 3, 4], &[1, 2, 3, 4], &[2, 4], &[3, 4], &[4]];
        let leq = |x: Elem, y: Elem| up[x].contains(&y);
        let glb = |x: Elem, y: Elem| (0..5).filter(|&z| leq(z, x) && leq(z, y)).max_by_key(|&z| up[z].len().wrapping_neg()).unwrap();
        let lub = |x: Elem, y: Elem| (0..5).filter(|&z| leq(x, z) && leq(y, z)).min_by_key(|&z| up[z].len().wrapping_neg()).unwrap();
        let imp = |x: Elem, y: Elem| (0..5).filter(|&z| leq(glb(z, x), y)).min_by_key(|&z| up[z].len()).unwrap();
        let table = |f: &dyn Fn(Elem, Elem) -> Elem| (0..5).map(|x| (0..5).map(|y| f(x, y)).collect()).collect();
        FiniteGAlgebra::from_tables(
            table(&glb),
            table(&lub),
            table(&imp),
            (0..5).map(|x| imp(x, 0)).collect(),
            0,
            4,
            None,
        )
        .unwrap()
    }

    #[test]
    fn fork_fails_s2() {
        let a = fork();
        assert_eq!(a.join(2, 3), 4);
        assert_eq!(a.meet(2, 3), 1);
        assert_eq!(a.imp(2, 3), 3);
        let c = Subalgebra::new(&a, [0, 2, 4]).unwrap();
        assert_eq!(mrc_defect(&a, &c).unwrap(), Some(("s2'", vec![2, 3])));
        assert!(s2_general_defect(&a, &c).is_some());
        assert!(matches!(
            attach_quantifiers(&a, &c),
            Err(Error::NotRelativelyComplete { condition: "s2'", .. })
        ));
    }

    #[test]
    fn non_subalgebra_is_structural() {
        let a = sq3();
        assert!(Subalgebra::new(&a, [0, 3, 8]).is_err());
    }
}
