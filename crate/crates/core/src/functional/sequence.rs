use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow};
use serde::Serialize;

/// Gödel implication on `[0, 1] ∩ ℚ`.
pub fn godel_imp(x: &BigRational, y: &BigRational) -> BigRational {
    if x <= y {
        BigRational::one()
    } else {
        y.clone()
    }
}

/// `∼x = 1 − x`.
pub fn godel_sim(x: &BigRational) -> BigRational {
    BigRational::one() - x
}

/// A member of the sequence family, described symbolically.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Sequence {
    /// The constant `t / 2k`.
    Const { t: usize },
    /// `f_i^(j)`, strictly between `g_{i-1}` and `g_i`.
    Lower { i: usize, j: usize },
    /// `1 − f_i^(j)`.
    Upper { i: usize, j: usize },
}

/// Sequences `ℕ → [0, 1] ∩ ℚ` used to embed an odd chain whose range has
/// `k` elements strictly below the fixed point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RationalSequenceFamily {
    pub k: usize,
}

fn ratio(p: usize, q: usize) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

impl RationalSequenceFamily {
    pub fn new(k: usize) -> Self {
        assert!(k >= 1, "family needs k >= 1");
        RationalSequenceFamily { k }
    }

    /// `g_i = i / 2k`.
    pub fn g(&self, i: usize) -> BigRational {
        ratio(i, 2 * self.k)
    }

    /// `f_i^(j)(n)`. Even `n` decreases towards `g_{i-1}`, odd `n` increases
    /// towards `g_i`. Defined for `n ≥ 1`.
    pub fn f(&self, i: usize, j: usize, n: usize) -> BigRational {
        let base = if n % 2 == 0 {
            ratio(n, n + 1)
        } else {
            ratio(1, n + 1)
        };
        let step = ratio(1, 2 * self.k);
        self.g(i) - step * Pow::pow(base, j)
    }

    pub fn value(&self, s: Sequence, n: usize) -> BigRational {
        match s {
            Sequence::Const { t } => self.g(t),
            Sequence::Lower { i, j } => self.f(i, j, n),
            Sequence::Upper { i, j } => godel_sim(&self.f(i, j, n)),
        }
    }

    /// Exact infimum over `n ≥ 1`, read off the monotone branches.
    pub fn inf(&self, s: Sequence) -> BigRational {
        match s {
            Sequence::Const { t } => self.g(t),
            Sequence::Lower { i, .. } => self.g(i - 1),
            Sequence::Upper { i, .. } => godel_sim(&self.g(i)),
        }
    }

    pub fn sup(&self, s: Sequence) -> BigRational {
        match s {
            Sequence::Const { t } => self.g(t),
            Sequence::Lower { i, .. } => self.g(i),
            Sequence::Upper { i, .. } => godel_sim(&self.g(i - 1)),
        }
    }

    /// `∼` applied symbolically.
    pub fn sim(&self, s: Sequence) -> Sequence {
        match s {
            Sequence::Const { t } => Sequence::Const { t: 2 * self.k - t },
            Sequence::Lower { i, j } => Sequence::Upper { i, j },
            Sequence::Upper { i, j } => Sequence::Lower { i, j },
        }
    }
}

impl fmt::Display for Sequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sequence::Const { t } => write!(f, "g_{t}"),
            Sequence::Lower { i, j } => write!(f, "f_{i}^({j})"),
            Sequence::Upper { i, j } => write!(f, "~f_{i}^({j})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    #[test]
    fn closed_form_at_small_n() {
        let fam = RationalSequenceFamily::new(1);
        assert_eq!(fam.f(1, 1, 2), ratio(1, 6));
        assert_eq!(fam.f(1, 1, 1), ratio(1, 4));
        for n in 1..20 {
            let want = if n % 2 == 0 { ratio(1, 2 * (n + 1)) } else { ratio(n, 2 * (n + 1)) };
            assert_eq!(fam.f(1, 1, n), want);
        }
        assert_eq!(fam.value(Sequence::Upper { i: 1, j: 1 }, 2), ratio(5, 6));
    }

    #[test]
    fn bounds_are_limits() {
        let fam = RationalSequenceFamily::new(3);
        for i in 1..=3 {
            for j in 1..=3 {
                let s = Sequence::Lower { i, j };
                for n in 1..40 {
                    let v = fam.value(s, n);
                    assert!(fam.inf(s) < v && v < fam.sup(s));
                }
                assert_eq!(fam.sim(fam.sim(s)), s);
            }
        }
    }

    #[test]
    fn godel_ops() {
        let (a, b) = (ratio(1, 3), ratio(1, 2));
        assert!(godel_imp(&a, &b).is_one());
        assert_eq!(godel_imp(&b, &a), a);
        assert_eq!(godel_sim(&a), ratio(2, 3));
        assert!(godel_sim(&BigRational::one()).is_zero());
    }
}
