//! Monadic G∼-algebras: quantifier attachment, validation, filters and
//! congruences, classification and the finite embedding constructions.

mod classify;
mod congruence;
mod constructions;
mod enumerate;
mod filters;
mod mrc;
mod validate;

use std::sync::OnceLock;

use serde::Serialize;

use crate::algebra::{Elem, FiniteGAlgebra, Subalgebra};
use crate::{Error, Result};

pub use classify::{
    classify_cmg, discriminator_eval, Discriminator, is_subdirectly_irreducible, ClassificationReport,
    CmgClassification, Parity,
};
pub use congruence::{
    brute_force_congruences, congruence_from_filter, congruence_generated, congruences_by_generation,
    CongruenceRelation,
};
pub use constructions::{embed_with_fixed_point, fep_shrink, FepShrink, FixedPointExtension};
pub use enumerate::{
    chain_partitions, enumerate_mg_algebras, enumerate_si_cmg_fixed_point, mg_families,
    si_cmg_fixed_point_families, AlgebraFamily, EnumeratedAlgebra,
};
pub use filters::{
    enumerate_monadic_regular_filters, monadic_regular_filter_generated, FilterKind,
    FilterLattice, FilterSet,
};
pub use mrc::{
    attach_quantifiers, enumerate_m_rel_complete, enumerate_subalgebras,
    is_m_relatively_complete, mrc_defect, s2_general_defect,
};
pub use validate::validate_monadic;

/// Tri-state cache of condition (C).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CFlag {
    Unchecked,
    Yes,
    No,
}

/// A G∼-algebra with quantifier tables.
#[derive(Debug, Clone)]
pub struct MonadicGAlgebra {
    base: FiniteGAlgebra,
    exists: Vec<Elem>,
    forall: Vec<Elem>,
    validated: bool,
    c_flag: OnceLock<bool>,
}

impl PartialEq for MonadicGAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.base == other.base && self.exists == other.exists && self.forall == other.forall
    }
}

impl Eq for MonadicGAlgebra {}

impl MonadicGAlgebra {
    /// Wraps raw quantifier tables after a bounds check. The result is not
    /// marked validated; see [`MonadicGAlgebra::checked`].
    pub fn from_tables(base: FiniteGAlgebra, exists: Vec<Elem>, forall: Vec<Elem>) -> Result<Self> {
        let n = base.size();
        for (table, t) in [("exists", &exists), ("forall", &forall)] {
            if t.len() != n {
                return Err(Error::Structural {
                    table,
                    coords: vec![],
                    reason: format!("expected {n} entries, found {}", t.len()),
                });
            }
            if let Some((i, &v)) = t.iter().enumerate().find(|(_, &v)| v >= n) {
                return Err(Error::Structural {
                    table,
                    coords: vec![i],
                    reason: format!("entry {v} out of range 0..{n}"),
                });
            }
        }
        Ok(MonadicGAlgebra {
            base,
            exists,
            forall,
            validated: false,
            c_flag: OnceLock::new(),
        })
    }

    /// Like [`from_tables`](Self::from_tables) but runs the full G∼ and
    /// monadic law sweep and marks the result validated.
    pub fn checked(base: FiniteGAlgebra, exists: Vec<Elem>, forall: Vec<Elem>) -> Result<Self> {
        let mut m = Self::from_tables(base, exists, forall)?;
        let mut report = crate::algebra::validate_gsim(&m.base);
        report.extend(validate_monadic(&m));
        if let Some(f) = report.first_failure() {
            return Err(Error::Precondition(format!(
                "law `{}` fails ({}) at {:?}",
                f.law,
                f.detail.unwrap_or(""),
                f.witness.as_deref().unwrap_or(&[])
            )));
        }
        m.validated = true;
        Ok(m)
    }

    pub(crate) fn trusted(base: FiniteGAlgebra, exists: Vec<Elem>, forall: Vec<Elem>) -> Self {
        MonadicGAlgebra {
            base,
            exists,
            forall,
            validated: true,
            c_flag: OnceLock::new(),
        }
    }

    pub fn base(&self) -> &FiniteGAlgebra {
        &self.base
    }

    pub fn size(&self) -> usize {
        self.base.size()
    }

    #[inline]
    pub fn exists(&self, a: Elem) -> Elem {
        self.exists[a]
    }

    #[inline]
    pub fn forall(&self, a: Elem) -> Elem {
        self.forall[a]
    }

    pub fn exists_table(&self) -> &[Elem] {
        &self.exists
    }

    pub fn forall_table(&self) -> &[Elem] {
        &self.forall
    }

    pub fn is_validated(&self) -> bool {
        self.validated
    }

    /// `∃A`, sorted.
    pub fn range(&self) -> Vec<Elem> {
        let mut r = self.exists.clone();
        r.sort_unstable();
        r.dedup();
        r
    }

    /// `∀A`, sorted.
    pub fn forall_range(&self) -> Vec<Elem> {
        let mut r = self.forall.clone();
        r.sort_unstable();
        r.dedup();
        r
    }

    /// `∃A` as a subalgebra witness; fails if the range is not closed.
    pub fn range_subalgebra(&self) -> Result<Subalgebra> {
        Subalgebra::new(&self.base, self.range())
    }

    pub fn range_is_chain(&self) -> bool {
        self.base.is_chain_on(self.range())
    }

    /// First `x` violating `∃(x ∧ ∼x) ≤ ∀(x ∨ ∼x)`.
    pub fn c_witness(&self) -> Option<Elem> {
        let a = &self.base;
        a.elements().find(|&x| {
            let lhs = self.exists(a.meet(x, a.sim(x)));
            let rhs = self.forall(a.join(x, a.sim(x)));
            !a.leq(lhs, rhs)
        })
    }

    /// Condition (C); the verdict is cached.
    pub fn satisfies_c(&self) -> bool {
        *self.c_flag.get_or_init(|| self.c_witness().is_none())
    }

    pub fn c_flag(&self) -> CFlag {
        match self.c_flag.get() {
            None => CFlag::Unchecked,
            Some(true) => CFlag::Yes,
            Some(false) => CFlag::No,
        }
    }

    pub fn with_names(self, names: Option<Vec<String>>) -> Self {
        MonadicGAlgebra {
            base: self.base.with_names(names),
            ..self
        }
    }
}

/// Free-function form of [`MonadicGAlgebra::satisfies_c`].
pub fn satisfies_c(m: &MonadicGAlgebra) -> bool {
    m.satisfies_c()
}
