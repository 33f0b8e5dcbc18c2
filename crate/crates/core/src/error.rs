use std::fmt;

use thiserror::Error;

use crate::classify::ClassificationReport;
use crate::formula::{IndVar, PropLetter};

/// A syntax error with a 1-based position and the set of tokens that would
/// have been accepted there.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub expected: Vec<String>,
    pub found: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}:{}: expected {}, found {}",
            self.line,
            self.column,
            self.expected.join(" or "),
            self.found
        )
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at {0}")]
    Parse(#[from] ParseError),

    #[error("antecedent does not decompose into box-formulas and negative formulas")]
    NotRegularAntecedent,

    #[error("formula is not in the required class: {0}")]
    NotInClass(String),

    #[error("formula is not uniform")]
    NotUniform,

    #[error("dependency digraph has a cycle")]
    CyclicDigraph,

    #[error("definite-implication split would exceed {cap} conjuncts")]
    ConjunctCap { cap: usize },

    #[error("no correspondence strategy applies (class {}); this is not a claim that the formula is non-elementary", .0.class)]
    Unsupported(Box<ClassificationReport>),

    #[error("disjuncts share proposition letters: {0:?}")]
    SharedLetters(Vec<PropLetter>),

    #[error("resource cap exceeded: {what} needs {requested}, limit is {limit}")]
    ResourceCap {
        what: &'static str,
        requested: usize,
        limit: usize,
    },

    #[error("variable `{0}` has no value in the assignment")]
    UnboundVariable(IndVar),

    #[error("map is not completely meet-preserving")]
    NotMeetPreserving,

    #[error("map is not residuated in coordinate {0}")]
    NotResiduated(usize),

    #[error("invalid frame literal: {0}")]
    FrameLiteral(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
