use super::lemma51::{check_images, lemma51_embedding, EmbeddingReport};
use super::{bar_quantifiers, Sequence};
use crate::algebra::{decompose_chains, make_chain, product_coords, product_index, Elem, Subalgebra};
use crate::monadic::{attach_quantifiers, classify_cmg, MonadicGAlgebra};
use crate::{Error, Result};

/// A finite s.i. CMG∼ algebra with a fixed point placed inside `B^r`.
#[derive(Debug, Clone)]
pub struct Representation {
    /// The chain `B` with the common range as quantifier range.
    pub chain: MonadicGAlgebra,
    /// `B^r` with the bar quantifiers.
    pub power: MonadicGAlgebra,
    /// For factor `i`, the position in `B` of each element of the `i`-th chain.
    pub factor_maps: Vec<Vec<Elem>>,
    /// Image in `B^r` of each element of the input.
    pub embedding: Vec<Elem>,
}

/// Interleaves the open segments of all factor chains around the shared
/// range to build one chain `B`, then embeds the input into `B^r`.
pub fn theorem54_representation(m: &MonadicGAlgebra) -> Result<Representation> {
    let cmg = classify_cmg(m)?;
    let d = cmg
        .fixed_point
        .ok_or_else(|| Error::Precondition("algebra has no fixed point".into()))?;
    if !cmg.direct || !m.range().contains(&d) {
        return Err(Error::Precondition("algebra is not CMG with the fixed point in its range".into()));
    }
    let a = m.base();
    let dec = decompose_chains(a)?;
    let sizes = dec.sizes.clone();
    let to = dec.to_product();

    // Range in chain order; every projection must be injective on it.
    let mut range = m.range();
    range.sort_by(|&x, &y| match (x == y, a.leq(x, y)) {
        (true, _) => std::cmp::Ordering::Equal,
        (false, true) => std::cmp::Ordering::Less,
        (false, false) => std::cmp::Ordering::Greater,
    });
    range.dedup();
    let proj: Vec<Vec<usize>> = range.iter().map(|&c| product_coords(&sizes, to[c])).collect();
    for i in 0..sizes.len() {
        if proj.windows(2).any(|w| w[0][i] >= w[1][i]) {
            return Err(Error::Precondition(format!("projection {i} is not injective on the range")));
        }
    }
    let k = range.iter().position(|&c| c == d).expect("fixed point in range");

    let mut maps: Vec<Vec<Option<Elem>>> = sizes.iter().map(|&n| vec![None; n]).collect();
    let mut pos = 0;
    for j in 0..=k {
        if j > 0 {
            for i in 0..sizes.len() {
                for x in (proj[j - 1][i] + 1)..proj[j][i] {
                    maps[i][x] = Some(pos);
                    pos += 1;
                }
            }
        }
        for (i, map) in maps.iter_mut().enumerate() {
            map[proj[j][i]] = Some(pos);
        }
        pos += 1;
    }
    let total = 2 * pos - 1;
    for (i, &n) in sizes.iter().enumerate() {
        for x in 0..n / 2 {
            let p = maps[i][x].expect("lower half assigned");
            maps[i][n - 1 - x] = Some(total - 1 - p);
        }
    }
    let factor_maps: Vec<Vec<Elem>> = maps
        .into_iter()
        .map(|m| m.into_iter().map(|p| p.expect("every element placed")).collect())
        .collect();

    let b = make_chain(total)?;
    let c_positions: Vec<Elem> = (0..range.len())
        .map(|t| {
            if t <= k {
                factor_maps[0][proj[t][0]]
            } else {
                total - 1 - factor_maps[0][proj[2 * k - t][0]]
            }
        })
        .collect();
    let chain = attach_quantifiers(&b, &Subalgebra::new(&b, c_positions)?)?;
    let r = sizes.len();
    let power = bar_quantifiers(&chain, r)?;
    let embedding: Vec<Elem> = a
        .elements()
        .map(|x| {
            let coords: Vec<usize> = product_coords(&sizes, to[x])
                .iter()
                .enumerate()
                .map(|(i, &c)| factor_maps[i][c])
                .collect();
            product_index(&vec![total; r], &coords)
        })
        .collect();
    if let Some(w) = a.embedding_defect(power.base(), &embedding) {
        return Err(Error::Precondition(format!("representation is not a G~ embedding at {w:?}")));
    }
    if let Some(x) = a.elements().find(|&x| {
        embedding[m.exists(x)] != power.exists(embedding[x]) || embedding[m.forall(x)] != power.forall(embedding[x])
    }) {
        return Err(Error::Precondition(format!("quantifiers differ from the bar quantifiers at {x}")));
    }
    Ok(Representation {
        chain,
        power,
        factor_maps,
        embedding,
    })
}

/// Composes the representation with the sequence embedding of `B`, giving a
/// map from the input into sequences indexed by `ℕ × {1, …, r}`, and checks
/// it directly on the input.
pub fn functional_representation(m: &MonadicGAlgebra, samples: usize) -> Result<(Representation, EmbeddingReport)> {
    let rep = theorem54_representation(m)?;
    let phi = lemma51_embedding(&rep.chain, samples)?;
    let r = rep.factor_maps.len();
    let sizes = vec![rep.chain.size(); r];
    let images: Vec<Vec<Sequence>> = rep
        .embedding
        .iter()
        .map(|&y| product_coords(&sizes, y).into_iter().map(|c| phi.phi[c]).collect())
        .collect();
    let report = check_images("functional", m, phi.family, &images, samples, false);
    Ok((rep, report))
}
