//! Internal first-order logic: formulas in a prefix syntax, Kripke–Joyal
//! forcing, and the compositional semantics by closed subobjects.
//!
//! Sorts are sheaves for the site's topology and predicates are closed
//! subobjects of them, so both engines live in the same topos and can be
//! compared element by element.

mod corpus;
mod forcing;
mod formula;
mod semantics;
mod structure;

use thiserror::Error;

pub use corpus::{
    check_semantics, corpus, excluded_middle, intuitionistic_tautologies, random_formulas, SemanticsFailure,
    SemanticsReport, Signature,
};
pub use forcing::{forces, forcing_table, witnesses};
pub use formula::Formula;
pub use semantics::{interpret, Interpretation};
pub use structure::{Binding, ContextProduct, Environment, Predicate, Structure};

use crate::classifier::ClassifierError;
use crate::sheaf::SheafError;

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum LogicError {
    #[error("parse error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },
    #[error("ill-sorted: {0}")]
    IllSorted(String),
    #[error("unknown subobject `{0}`")]
    UnknownSubobject(String),
    #[error("unknown sort `{0}`")]
    UnknownSort(String),
    #[error("sort `{0}` is not a sheaf for the topology")]
    NotASheaf(String),
    #[error("predicate `{0}` is not a closed subobject")]
    NotClosed(String),
    #[error("sort lives over a different base category")]
    BaseMismatch,
    #[error("{what} has size {size}, above the bound {bound}")]
    IntractableSize { what: String, size: usize, bound: usize },
    #[error(transparent)]
    Sheaf(#[from] SheafError),
    #[error(transparent)]
    Classifier(#[from] ClassifierError),
}

#[cfg(test)]
mod tests;
