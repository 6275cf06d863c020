use super::{Elem, FiniteGAlgebra};

/// Flat operation tables of a finite structure, for isomorphism search.
#[derive(Debug, Clone)]
pub struct TableSignature<'a> {
    pub size: usize,
    /// Row-major `size × size` tables.
    pub binary: Vec<&'a [Elem]>,
    pub unary: Vec<&'a [Elem]>,
    pub constants: Vec<Elem>,
}

impl FiniteGAlgebra {
    pub fn signature(&self) -> TableSignature<'_> {
        TableSignature {
            size: self.size(),
            binary: vec![self.meet_flat(), self.join_flat(), self.imp_flat()],
            unary: vec![self.sim_table()],
            constants: vec![self.bottom(), self.top()],
        }
    }
}

/// Lexicographically least operation-preserving bijection `A → B`, if any.
pub fn find_isomorphism(a: &FiniteGAlgebra, b: &FiniteGAlgebra) -> Option<Vec<Elem>> {
    find_table_isomorphism(&a.signature(), &b.signature())
}

/// Isomorphism search over arbitrary signatures with matching arities.
///
/// Elements of `a` are assigned in index order and candidates tried in
/// ascending order, so the first complete assignment is the lexicographically
/// least isomorphism.
pub fn find_table_isomorphism(a: &TableSignature, b: &TableSignature) -> Option<Vec<Elem>> {
    if a.size != b.size
        || a.binary.len() != b.binary.len()
        || a.unary.len() != b.unary.len()
        || a.constants.len() != b.constants.len()
    {
        return None;
    }
    let inv_a = invariants(a);
    let inv_b = invariants(b);
    let mut sorted_a = inv_a.clone();
    let mut sorted_b = inv_b.clone();
    sorted_a.sort();
    sorted_b.sort();
    if sorted_a != sorted_b {
        return None;
    }
    let n = a.size;
    let mut search = Search {
        a,
        b,
        fwd: vec![None; n],
        inv: vec![None; n],
    };
    for (&ca, &cb) in a.constants.iter().zip(&b.constants) {
        match (search.fwd[ca], search.inv[cb]) {
            (None, None) => {
                if inv_a[ca] != inv_b[cb] {
                    return None;
                }
                search.fwd[ca] = Some(cb);
                search.inv[cb] = Some(ca);
            }
            (Some(x), _) if x == cb => {}
            _ => return None,
        }
    }
    let candidates: Vec<Vec<Elem>> = (0..n)
        .map(|x| (0..n).filter(|&y| inv_b[y] == inv_a[x]).collect())
        .collect();
    for x in 0..n {
        if search.fwd[x].is_some() && !search.consistent(x) {
            return None;
        }
    }
    if search.extend(0, &candidates) {
        Some(search.fwd.into_iter().map(|v| v.unwrap()).collect())
    } else {
        None
    }
}

fn invariants(s: &TableSignature) -> Vec<Vec<usize>> {
    let n = s.size;
    (0..n)
        .map(|x| {
            let mut inv = Vec::new();
            for t in &s.binary {
                inv.push((0..n).filter(|&y| t[x * n + y] == x).count());
                inv.push((0..n).filter(|&y| t[x * n + y] == y).count());
                inv.push(usize::from(t[x * n + x] == x));
            }
            for u in &s.unary {
                inv.push(usize::from(u[x] == x));
                inv.push((0..n).filter(|&y| u[y] == x).count());
            }
            for &c in &s.constants {
                inv.push(usize::from(c == x));
            }
            inv
        })
        .collect()
}

struct Search<'s, 'a> {
    a: &'s TableSignature<'a>,
    b: &'s TableSignature<'a>,
    fwd: Vec<Option<Elem>>,
    inv: Vec<Option<Elem>>,
}

impl Search<'_, '_> {
    fn extend(&mut self, x: usize, candidates: &[Vec<Elem>]) -> bool {
        let n = self.a.size;
        if x == n {
            return true;
        }
        if self.fwd[x].is_some() {
            return self.extend(x + 1, candidates);
        }
        for &y in &candidates[x] {
            if self.inv[y].is_some() {
                continue;
            }
            self.fwd[x] = Some(y);
            self.inv[y] = Some(x);
            if self.consistent(x) && self.extend(x + 1, candidates) {
                return true;
            }
            self.fwd[x] = None;
            self.inv[y] = None;
        }
        false
    }

    /// Checks every operation instance involving `x` among assigned elements.
    fn consistent(&self, x: Elem) -> bool {
        let n = self.a.size;
        let fx = self.fwd[x].unwrap();
        let agree = |ra: Elem, rb: Elem| -> bool {
            match (self.fwd[ra], self.inv[rb]) {
                (Some(v), _) => v == rb,
                (None, Some(_)) => false,
                (None, None) => true,
            }
        };
        for (ta, tb) in self.a.unary.iter().zip(&self.b.unary) {
            if !agree(ta[x], tb[fx]) {
                return false;
            }
            // preimages of x under the unary op
            for z in 0..n {
                if ta[z] == x {
                    if let Some(fz) = self.fwd[z] {
                        if tb[fz] != fx {
                            return false;
                        }
                    }
                }
            }
        }
        for z in 0..n {
            let Some(fz) = self.fwd[z] else { continue };
            for (ta, tb) in self.a.binary.iter().zip(&self.b.binary) {
                if !agree(ta[x * n + z], tb[fx * n + fz]) || !agree(ta[z * n + x], tb[fz * n + fx]) {
                    return false;
                }
            }
        }
        // x as a result of operations on assigned pairs
        for z in 0..n {
            let Some(fz) = self.fwd[z] else { continue };
            for w in 0..n {
                let Some(fw) = self.fwd[w] else { continue };
                for (ta, tb) in self.a.binary.iter().zip(&self.b.binary) {
                    let (ra, rb) = (ta[z * n + w], tb[fz * n + fw]);
                    if (ra == x) != (rb == fx) {
                        return false;
                    }
                }
            }
        }
        true
    }
}
