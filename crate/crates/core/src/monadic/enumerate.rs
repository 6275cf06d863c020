use serde::Serialize;

use super::{attach_quantifiers, enumerate_m_rel_complete, MonadicGAlgebra};
use crate::algebra::{direct_product, make_chain, Elem, FiniteGAlgebra, Subalgebra};
use crate::{Error, Result};

/// Nondecreasing factor lists with every factor at least `min_factor`
/// (odd only when `odd_only`) and product at most `max_size`, ordered by
/// product and then lexicographically.
pub fn chain_partitions(max_size: usize, min_factor: usize, odd_only: bool) -> Vec<Vec<usize>> {
    fn go(rest: usize, min: usize, odd: bool, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if !cur.is_empty() {
            out.push(cur.clone());
        }
        for f in min..=rest {
            if odd && f % 2 == 0 {
                continue;
            }
            cur.push(f);
            go(rest / f, f, odd, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(max_size, min_factor.max(2), odd_only, &mut Vec::new(), &mut out);
    out.sort_by(|x, y| {
        let (px, py): (usize, usize) = (x.iter().product(), y.iter().product());
        px.cmp(&py).then_with(|| x.cmp(y))
    });
    out
}

/// One base algebra together with a list of quantifier ranges on it.
#[derive(Debug, Clone)]
pub struct AlgebraFamily {
    pub chain_sizes: Vec<usize>,
    pub base: FiniteGAlgebra,
    pub ranges: Vec<Subalgebra>,
}

impl AlgebraFamily {
    fn new(chain_sizes: Vec<usize>) -> Result<Self> {
        let chains = chain_sizes.iter().map(|&n| make_chain(n)).collect::<Result<Vec<_>>>()?;
        Ok(AlgebraFamily {
            base: direct_product(&chains)?,
            chain_sizes,
            ranges: Vec::new(),
        })
    }

    pub fn size(&self) -> usize {
        self.base.size()
    }

    pub fn attach(&self, i: usize) -> MonadicGAlgebra {
        attach_quantifiers(&self.base, &self.ranges[i]).expect("enumerated ranges are m-relatively complete")
    }

    pub fn algebras(&self) -> impl Iterator<Item = EnumeratedAlgebra> + '_ {
        (0..self.ranges.len()).map(|i| EnumeratedAlgebra {
            chain_sizes: self.chain_sizes.clone(),
            range: self.ranges[i].elements().to_vec(),
            algebra: self.attach(i),
        })
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct EnumeratedAlgebra {
    pub chain_sizes: Vec<usize>,
    pub range: Vec<Elem>,
    #[serde(skip)]
    pub algebra: MonadicGAlgebra,
}

fn check_bound(max_size: usize, bound: usize) -> Result<()> {
    if max_size > bound {
        return Err(Error::TooLarge { size: max_size, bound });
    }
    Ok(())
}

/// Monadic structures on every product of chains up to `max_size`. With
/// `si_only` only totally ordered ranges are kept.
pub fn mg_families(max_size: usize, si_only: bool, bound: usize) -> Result<Vec<AlgebraFamily>> {
    check_bound(max_size, bound)?;
    chain_partitions(max_size, 2, false)
        .into_iter()
        .map(|sizes| {
            let mut fam = AlgebraFamily::new(sizes)?;
            fam.ranges = enumerate_m_rel_complete(&fam.base, si_only, bound)?;
            Ok(fam)
        })
        .collect()
}

/// The s.i. CMG∼ algebras with a fixed point: products of odd chains with a
/// totally ordered range containing the fixed point.
pub fn si_cmg_fixed_point_families(max_size: usize, bound: usize) -> Result<Vec<AlgebraFamily>> {
    check_bound(max_size, bound)?;
    chain_partitions(max_size, 3, true)
        .into_iter()
        .map(|sizes| {
            let mut fam = AlgebraFamily::new(sizes)?;
            let d = fam.base.fixed_points()[0];
            fam.ranges = enumerate_m_rel_complete(&fam.base, true, bound)?
                .into_iter()
                .filter(|r| r.contains(d))
                .collect();
            debug_assert!((0..fam.ranges.len()).all(|i| fam.attach(i).satisfies_c()));
            Ok(fam)
        })
        .collect()
}

/// Materialized form of [`mg_families`].
pub fn enumerate_mg_algebras(max_size: usize, si_only: bool, bound: usize) -> Result<Vec<EnumeratedAlgebra>> {
    Ok(mg_families(max_size, si_only, bound)?
        .iter()
        .flat_map(|f| f.algebras().collect::<Vec<_>>())
        .collect())
}

/// Materialized form of [`si_cmg_fixed_point_families`].
pub fn enumerate_si_cmg_fixed_point(max_size: usize, bound: usize) -> Result<Vec<EnumeratedAlgebra>> {
    Ok(si_cmg_fixed_point_families(max_size, bound)?
        .iter()
        .flat_map(|f| f.algebras().collect::<Vec<_>>())
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partitions_are_canonical() {
        assert_eq!(
            chain_partitions(9, 2, false),
            vec![
                vec![2],
                vec![3],
                vec![2, 2],
                vec![4],
                vec![5],
                vec![2, 3],
                vec![6],
                vec![7],
                vec![2, 2, 2],
                vec![2, 4],
                vec![8],
                vec![3, 3],
                vec![9]
            ]
        );
        assert_eq!(
            chain_partitions(27, 3, true),
            vec![
                vec![3],
                vec![5],
                vec![7],
                vec![3, 3],
                vec![9],
                vec![11],
                vec![13],
                vec![3, 5],
                vec![15],
                vec![17],
                vec![19],
                vec![3, 7],
                vec![21],
                vec![23],
                vec![5, 5],
                vec![25],
                vec![3, 3, 3],
                vec![3, 9],
                vec![27]
            ]
        );
    }

    #[test]
    fn small_cmg_list() {
        let all = enumerate_si_cmg_fixed_point(5, 64).unwrap();
        let got: Vec<(Vec<usize>, Vec<Elem>)> = all.iter().map(|e| (e.chain_sizes.clone(), e.range.clone())).collect();
        assert_eq!(
            got,
            vec![
                (vec![3], vec![0, 1, 2]),
                (vec![5], vec![0, 1, 2, 3, 4]),
                (vec![5], vec![0, 2, 4]),
            ]
        );
    }
}
