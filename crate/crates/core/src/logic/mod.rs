//! The modal language: parsing and printing, evaluation in monadic algebras
//! and Kripke structures, the axiom soundness sweep and bounded
//! countermodel search.

mod axioms;
mod eval;
mod formula;
mod parse;
mod search;

pub use axioms::{axioms, check_axiom, check_axioms, parse_axioms, Axiom, AxiomVerdict, RuleVerdict, SoundnessReport};
pub use eval::{eval_algebra, eval_kripke, CompiledFormula, KripkeStructure};
pub use formula::Formula;
pub use parse::{parse, ParseError};
pub use search::{
    consequence_search, kripke_countermodel, ConsequenceQuery, Model, Semantics, Verdict, VerdictKind,
};
