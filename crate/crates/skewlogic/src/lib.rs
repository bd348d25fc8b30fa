//! Deduction engine and finite model checker for semi-substructural logics.
//!
//! Four calculi for skew monoidal (bi-)closed structure are implemented as
//! executable proof systems:
//!
//! - [`lskg`]: the sequent calculus with stoup (LSkG), with terminating
//!   backward proof search and admissible cuts `scut`/`ccut`;
//! - [`lskt`]: the tree-antecedent calculus (LSkT), with admissible cut and
//!   inverse rules, and bounded search;
//! - [`skmbica`] / [`skmbict`]: the axiomatic and tree calculi for skew
//!   monoidal bi-closed structure, with derived morphisms, admissible cut
//!   and the translations between them;
//! - [`equiv`]: the derivation-level translations between LSkG and LSkT,
//!   yielding a decision procedure for LSkT sequents.
//!
//! The [`semantics`] module provides preordered ternary frames, downset
//! valuations, frame-condition checking, the condition/structural-law
//! correspondence verifier, frame enumeration and countermodel search.

pub mod check;
pub mod enumerate;
pub mod equiv;
pub mod formula;
pub mod lskg;
pub mod lskt;
pub mod parse;
pub mod render;
pub mod semantics;
pub mod skmbica;
pub mod skmbict;
pub mod tree;

pub use check::{CheckReport, CheckViolation};
pub use formula::{Formula, Stoup, StoupSequent};
pub use parse::{
    parse_arrow_sequent, parse_formula, parse_stoup_sequent, parse_tree, parse_tree_sequent,
    ParseError,
};
pub use tree::{encode, find_context, subst, Step, Tree, TreeContext, TreePath, TreeSequent};
