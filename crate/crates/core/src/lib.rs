//! Finite-algebra workbench for Gödel algebras with an involutive (De Morgan)
//! negation and their monadic expansions.
//!
//! The crate is organised bottom-up:
//!
//! * [`algebra`]: table-encoded finite G∼-algebras, chain and product
//!   builders, law validation, subalgebra closure, direct decomposition into
//!   chains and isomorphism search.
//! * [`monadic`]: quantifier attachment from m-relatively complete
//!   subalgebras, monadic law validation, filters and congruences,
//!   subdirect-irreducibility and the (C) classification, and the finite
//!   embedding constructions.
//! * [`functional`]: functional monadic algebras, the exact-rational sequence
//!   embedding of odd chains, power algebras with diagonal quantifiers and the
//!   ordinal-sum representation of finite s.i. algebras with a fixed point.
//! * [`logic`]: the modal formula language, algebraic and Kripke evaluation,
//!   the axiom soundness sweep and bounded countermodel search.

pub mod algebra;
pub mod config;
mod error;
pub mod functional;
pub mod logic;
pub mod monadic;

pub use algebra::{Elem, FiniteGAlgebra, Subalgebra};
pub use config::Config;
pub use error::{Error, Result};
pub use monadic::MonadicGAlgebra;
