//! Correspondence engine for basic modal logic.
//!
//! Classifies modal formulas into Sahlqvist-style syntactic classes, computes
//! first-order local frame correspondents by minimal-valuation reduction, and
//! checks results against brute-force finite-frame semantics.

pub mod classify;
pub mod correspond;
pub mod error;
pub mod formula;
pub mod fosimp;
pub mod generate;
pub mod normalize;
pub mod orderprops;
pub mod parse;
pub mod print;
pub mod semantics;
pub mod translate;

pub use error::{Error, ParseError, Result};
pub use formula::{FoFormula, IndVar, ModalFormula, PredSym, PropLetter, SoFormula};
pub use parse::{parse_fo, parse_modal, parse_so};
