//! JSON interchange format shared by every CLI command.

use serde::{Deserialize, Serialize};

use super::{BinaryOp, Elem, FiniteGAlgebra};
use crate::monadic::MonadicGAlgebra;
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    pub size: usize,
    pub meet: Vec<Vec<Elem>>,
    pub join: Vec<Vec<Elem>>,
    pub imp: Vec<Vec<Elem>>,
    pub sim: Vec<Elem>,
    pub bottom: Elem,
    pub top: Elem,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exists: Option<Vec<Elem>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub forall: Option<Vec<Elem>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub names: Option<Vec<String>>,
}

/// A parsed algebra file: with or without quantifier tables.
#[derive(Debug, Clone)]
pub enum LoadedAlgebra {
    Plain(FiniteGAlgebra),
    Monadic(MonadicGAlgebra),
}

impl LoadedAlgebra {
    pub fn base(&self) -> &FiniteGAlgebra {
        match self {
            LoadedAlgebra::Plain(a) => a,
            LoadedAlgebra::Monadic(m) => m.base(),
        }
    }
}

impl AlgebraFile {
    pub fn from_algebra(a: &FiniteGAlgebra) -> Self {
        AlgebraFile {
            size: a.size(),
            meet: a.table_rows(BinaryOp::Meet),
            join: a.table_rows(BinaryOp::Join),
            imp: a.table_rows(BinaryOp::Imp),
            sim: a.elements().map(|x| a.sim(x)).collect(),
            bottom: a.bottom(),
            top: a.top(),
            exists: None,
            forall: None,
            names: a.names().map(|n| n.to_vec()),
        }
    }

    pub fn from_monadic(m: &MonadicGAlgebra) -> Self {
        AlgebraFile {
            exists: Some(m.exists_table().to_vec()),
            forall: Some(m.forall_table().to_vec()),
            ..Self::from_algebra(m.base())
        }
    }

    /// Structural checks only; law checking is left to the validators.
    pub fn into_algebra(self) -> Result<LoadedAlgebra> {
        if self.size != self.sim.len() {
            return Err(Error::Structural {
                table: "size",
                coords: vec![],
                reason: format!("size {} but sim has {} entries", self.size, self.sim.len()),
            });
        }
        let base = FiniteGAlgebra::from_tables(
            self.meet,
            self.join,
            self.imp,
            self.sim,
            self.bottom,
            self.top,
            self.names,
        )?;
        match (self.exists, self.forall) {
            (None, None) => Ok(LoadedAlgebra::Plain(base)),
            (Some(ex), Some(fa)) => Ok(LoadedAlgebra::Monadic(MonadicGAlgebra::from_tables(
                base, ex, fa,
            )?)),
            _ => Err(Error::Structural {
                table: "exists/forall",
                coords: vec![],
                reason: "quantifier tables must be given together".into(),
            }),
        }
    }

    pub fn parse(text: &str) -> Result<LoadedAlgebra> {
        let file: AlgebraFile = serde_json::from_str(text)?;
        file.into_algebra()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::make_chain;

    #[test]
    fn chain_round_trip() {
        let c4 = make_chain(4).unwrap();
        let text = AlgebraFile::from_algebra(&c4).to_json();
        match AlgebraFile::parse(&text).unwrap() {
            LoadedAlgebra::Plain(a) => assert_eq!(a, c4),
            LoadedAlgebra::Monadic(_) => panic!("no quantifiers were written"),
        }
    }

    #[test]
    fn out_of_range_entry_reports_coordinates() {
        let mut file = AlgebraFile::from_algebra(&make_chain(3).unwrap());
        file.imp[2][1] = 7;
        match file.into_algebra() {
            Err(Error::Structural { table, coords, .. }) => {
                assert_eq!(table, "imp");
                assert_eq!(coords, vec![2, 1]);
            }
            other => panic!("expected structural error, got {other:?}"),
        }
    }

    #[test]
    fn lone_quantifier_table_rejected() {
        let mut file = AlgebraFile::from_algebra(&make_chain(3).unwrap());
        file.exists = Some(vec![0, 1, 2]);
        assert!(matches!(file.into_algebra(), Err(Error::Structural { .. })));
    }
}
