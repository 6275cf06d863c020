use super::{Elem, FiniteGAlgebra};
use crate::{Error, Result};

/// The `n`-element G∼-chain `0 = e_0 < … < e_{n-1} = 1` with Gödel
/// implication and `∼e_i = e_{n-1-i}`.
pub fn make_chain(n: usize) -> Result<FiniteGAlgebra> {
    if n < 2 {
        return Err(Error::InvalidSize {
            size: n,
            reason: "a chain needs at least two elements",
        });
    }
    let top = n - 1;
    let mut meet = Vec::with_capacity(n * n);
    let mut join = Vec::with_capacity(n * n);
    let mut imp = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            meet.push(a.min(b));
            join.push(a.max(b));
            imp.push(if a <= b { top } else { b });
        }
    }
    let sim = (0..n).map(|i| top - i).collect();
    Ok(FiniteGAlgebra::from_flat(
        n,
        meet,
        join,
        imp,
        sim,
        0,
        top,
        Some(chain_names(n)),
    ))
}

fn chain_names(n: usize) -> Vec<String> {
    (0..n)
        .map(|i| match i {
            0 => "0".to_string(),
            i if i == n - 1 => "1".to_string(),
            i if 2 * i == n - 1 => "d".to_string(),
            i => format!("e{i}"),
        })
        .collect()
}

/// Mixed-radix coordinates of `index`, factor 0 most significant.
pub fn product_coords(sizes: &[usize], mut index: usize) -> Vec<usize> {
    let mut coords = vec![0; sizes.len()];
    for (slot, &s) in coords.iter_mut().zip(sizes).rev() {
        *slot = index % s;
        index /= s;
    }
    coords
}

/// Inverse of [`product_coords`].
pub fn product_index(sizes: &[usize], coords: &[usize]) -> usize {
    coords
        .iter()
        .zip(sizes)
        .fold(0, |acc, (&c, &s)| acc * s + c)
}

/// Componentwise product of the factors.
pub fn direct_product(factors: &[FiniteGAlgebra]) -> Result<FiniteGAlgebra> {
    if factors.is_empty() {
        return Err(Error::InvalidInput(
            "direct product needs at least one factor".into(),
        ));
    }
    let sizes: Vec<usize> = factors.iter().map(FiniteGAlgebra::size).collect();
    let n: usize = sizes.iter().product();
    let coords: Vec<Vec<usize>> = (0..n).map(|i| product_coords(&sizes, i)).collect();
    let combine = |x: &[usize], y: &[usize], op: &dyn Fn(&FiniteGAlgebra, Elem, Elem) -> Elem| {
        let out: Vec<usize> = factors
            .iter()
            .enumerate()
            .map(|(k, f)| op(f, x[k], y[k]))
            .collect();
        product_index(&sizes, &out)
    };
    let mut meet = Vec::with_capacity(n * n);
    let mut join = Vec::with_capacity(n * n);
    let mut imp = Vec::with_capacity(n * n);
    for x in &coords {
        for y in &coords {
            meet.push(combine(x, y, &|f, a, b| f.meet(a, b)));
            join.push(combine(x, y, &|f, a, b| f.join(a, b)));
            imp.push(combine(x, y, &|f, a, b| f.imp(a, b)));
        }
    }
    let sim = coords
        .iter()
        .map(|x| {
            let out: Vec<usize> = factors.iter().zip(x).map(|(f, &a)| f.sim(a)).collect();
            product_index(&sizes, &out)
        })
        .collect();
    let bottom = product_index(&sizes, &factors.iter().map(|f| f.bottom()).collect::<Vec<_>>());
    let top = product_index(&sizes, &factors.iter().map(|f| f.top()).collect::<Vec<_>>());
    let names = if factors.len() == 1 {
        factors[0].names().map(|ns| ns.to_vec())
    } else {
        Some(
            coords
                .iter()
                .map(|x| {
                    let parts: Vec<String> =
                        factors.iter().zip(x).map(|(f, &a)| f.name(a)).collect();
                    format!("({})", parts.join(","))
                })
                .collect(),
        )
    };
    Ok(FiniteGAlgebra::from_flat(
        n, meet, join, imp, sim, bottom, top, names,
    ))
}
