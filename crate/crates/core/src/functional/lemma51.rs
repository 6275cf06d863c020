use std::collections::BTreeSet;

use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::Serialize;

use super::sequence::{godel_imp, godel_sim, RationalSequenceFamily, Sequence};
use super::bar_quantifiers;
use crate::algebra::{product_coords, Elem};
use crate::monadic::MonadicGAlgebra;
use crate::{Error, Result};

/// One element's image with its exact bounds as `[numerator, denominator]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ImageDescriptor {
    pub element: String,
    pub sheets: Vec<String>,
    pub inf: [i64; 2],
    pub sup: [i64; 2],
}

/// Outcome of checking a map into a functional algebra of sequences.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EmbeddingReport {
    pub construction: &'static str,
    pub k: usize,
    pub elements: usize,
    pub sheets: usize,
    pub samples: usize,
    pub injective: bool,
    pub operations_preserved: bool,
    pub order_preserved: bool,
    pub quantifiers_preserved: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub defect: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub images: Vec<ImageDescriptor>,
}

impl EmbeddingReport {
    pub fn passed(&self) -> bool {
        self.injective && self.operations_preserved && self.order_preserved && self.quantifiers_preserved
    }
}

fn pair(x: &BigRational) -> [i64; 2] {
    [
        x.numer().to_i64().unwrap_or(i64::MAX),
        x.denom().to_i64().unwrap_or(i64::MAX),
    ]
}

/// Checks an element ↦ (sheet ↦ sequence) assignment: sampled pointwise
/// operations, order, injectivity and the quantifiers against closed-form
/// suprema and infima over all sheets.
pub(crate) fn check_images(
    construction: &'static str,
    m: &MonadicGAlgebra,
    fam: RationalSequenceFamily,
    images: &[Vec<Sequence>],
    samples: usize,
    describe: bool,
) -> EmbeddingReport {
    let a = m.base();
    let size = a.size();
    let sheets = images.first().map_or(0, Vec::len);
    let mut defect: Option<String> = None;
    let note = |d: &mut Option<String>, msg: String| {
        if d.is_none() {
            *d = Some(msg);
        }
    };

    let mut operations_preserved = true;
    let mut order_preserved = true;
    let mut strict_seen = vec![false; size * size];
    let mut signatures: Vec<Vec<BigRational>> = vec![Vec::with_capacity(samples * sheets); size];
    for n in 1..=samples {
        let vals: Vec<Vec<BigRational>> = images
            .iter()
            .map(|sh| sh.iter().map(|&s| fam.value(s, n)).collect())
            .collect();
        for x in 0..size {
            signatures[x].extend(vals[x].iter().cloned());
            for s in 0..sheets {
                if vals[a.sim(x)][s] != godel_sim(&vals[x][s]) {
                    operations_preserved = false;
                    note(&mut defect, format!("~ at element {x}, n = {n}"));
                }
            }
        }
        for x in 0..size {
            for y in 0..size {
                let (meet, join, imp) = (a.meet(x, y), a.join(x, y), a.imp(x, y));
                for s in 0..sheets {
                    let (u, v) = (&vals[x][s], &vals[y][s]);
                    if vals[meet][s] != *u.min(v) || vals[join][s] != *u.max(v) || vals[imp][s] != godel_imp(u, v) {
                        operations_preserved = false;
                        note(&mut defect, format!("binary operation at ({x}, {y}), n = {n}"));
                    }
                    if a.leq(x, y) {
                        if u > v {
                            order_preserved = false;
                            note(&mut defect, format!("order at ({x}, {y}), n = {n}"));
                        }
                        if u < v {
                            strict_seen[x * size + y] = true;
                        }
                    }
                }
            }
        }
    }
    if samples > 0 {
        for x in 0..size {
            for y in 0..size {
                if a.lt(x, y) && !strict_seen[x * size + y] {
                    order_preserved = false;
                    note(&mut defect, format!("order not strict at ({x}, {y})"));
                }
            }
        }
    }
    let distinct: BTreeSet<&Vec<BigRational>> = signatures.iter().collect();
    let injective = distinct.len() == size;
    if !injective {
        note(&mut defect, "two elements share sampled values".into());
    }

    let mut quantifiers_preserved = true;
    let mut descriptors = Vec::new();
    for x in 0..size {
        let sup = images[x].iter().map(|&s| fam.sup(s)).max().expect("nonempty sheets");
        let inf = images[x].iter().map(|&s| fam.inf(s)).min().expect("nonempty sheets");
        let constant = |e: Elem| -> Option<BigRational> {
            let first = images[e][0];
            match first {
                Sequence::Const { .. } if images[e].iter().all(|&s| s == first) => Some(fam.value(first, 1)),
                _ => None,
            }
        };
        if constant(m.exists(x)).as_ref() != Some(&sup) || constant(m.forall(x)).as_ref() != Some(&inf) {
            quantifiers_preserved = false;
            note(&mut defect, format!("quantifier image at element {x}"));
        }
        if describe {
            descriptors.push(ImageDescriptor {
                element: a.name(x),
                sheets: images[x].iter().map(|s| s.to_string()).collect(),
                inf: pair(&inf),
                sup: pair(&sup),
            });
        }
    }
    EmbeddingReport {
        construction,
        k: fam.k,
        elements: size,
        sheets,
        samples,
        injective,
        operations_preserved,
        order_preserved,
        quantifiers_preserved,
        defect,
        images: descriptors,
    }
}

/// The embedding of a finite CMG∼ chain with a fixed point into sequences.
#[derive(Debug, Clone)]
pub struct Lemma51Embedding {
    pub algebra: MonadicGAlgebra,
    pub family: RationalSequenceFamily,
    /// Image of each element.
    pub phi: Vec<Sequence>,
    pub report: EmbeddingReport,
}

/// Sends range elements below the fixed point to `g_0 < … < g_k`, the
/// `j`-th element strictly between `c_{i-1}` and `c_i` to `f_i^(j)`, and
/// the upper half to the `1 − ·` images.
pub fn lemma51_embedding(m: &MonadicGAlgebra, samples: usize) -> Result<Lemma51Embedding> {
    let a = m.base();
    if !a.is_chain() || a.size() % 2 == 0 {
        return Err(Error::Precondition("base must be a chain of odd size".into()));
    }
    let d = *a
        .fixed_points()
        .first()
        .ok_or_else(|| Error::Precondition("base has no fixed point".into()))?;
    let range = m.range();
    if range.binary_search(&d).is_err() {
        return Err(Error::Precondition("fixed point is not in the quantifier range".into()));
    }
    if range.iter().any(|&c| range.binary_search(&a.sim(c)).is_err()) {
        return Err(Error::Precondition("range is not closed under ~".into()));
    }
    let order = a.chain_order();
    let below: Vec<Elem> = order.iter().copied().take_while(|&x| x != d).collect();
    let k = below.iter().filter(|x| range.binary_search(x).is_ok()).count();
    let fam = RationalSequenceFamily::new(k);
    let mut phi = vec![Sequence::Const { t: 0 }; a.size()];
    let (mut t, mut j) = (0usize, 0usize);
    for &x in &below {
        if range.binary_search(&x).is_ok() {
            phi[x] = Sequence::Const { t };
            t += 1;
            j = 0;
        } else {
            j += 1;
            phi[x] = Sequence::Lower { i: t, j };
        }
    }
    if t != k || phi[a.bottom()] != (Sequence::Const { t: 0 }) {
        return Err(Error::Precondition("range does not start at 0".into()));
    }
    phi[d] = Sequence::Const { t: k };
    for &x in &below {
        phi[a.sim(x)] = fam.sim(phi[x]);
    }
    let images: Vec<Vec<Sequence>> = phi.iter().map(|&s| vec![s]).collect();
    let report = check_images("lemma51", m, fam, &images, samples, true);
    Ok(Lemma51Embedding {
        algebra: m.clone(),
        family: fam,
        phi,
        report,
    })
}

/// `ψ(a)(x, i) = φ(a_i)(x)` on `M^n` with the bar quantifiers.
pub fn lemma52_psi(e: &Lemma51Embedding, n: usize, samples: usize) -> Result<EmbeddingReport> {
    let power = bar_quantifiers(&e.algebra, n)?;
    let sizes = vec![e.algebra.size(); n];
    let images: Vec<Vec<Sequence>> = (0..power.size())
        .map(|x| product_coords(&sizes, x).into_iter().map(|c| e.phi[c]).collect())
        .collect();
    Ok(check_images("lemma52", &power, e.family, &images, samples, false))
}
