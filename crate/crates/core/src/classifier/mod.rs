//! Subobjects, the subobject classifier `Ω` and the Heyting algebra of
//! closed subobjects.
//!
//! Everything is relative to a Grothendieck topology `J`. Under the trivial
//! topology the closed subobjects are all subobjects and `Ω` is the presheaf
//! of all sieves; under an open-cover topology `Ω(U)` is the set of
//! `J`-closed sieves, which correspond to the opens contained in `U`.

mod heyting;
mod omega;
mod subobject;

use thiserror::Error;

pub use heyting::{heyting, AxiomFailure, HeytingAlgebra};
pub use omega::{
    certify_opens, characteristic, characteristic_alternatives, classify_round_trip, omega, omega_of_site,
    pullback_of_true, square_is_pullback, OmegaObject, OpensCertificate, OpensCheck, RoundTripReport,
};
pub use subobject::{
    bottom, closed_subobjects, closure, implies, is_closed, join, negate, subobjects, truth_sieve, Subobject,
};

use crate::fincat::NaturalError;
use crate::limits::LimitError;
use crate::Intractable;

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum ClassifierError {
    #[error("`{element}` lies in the subobject at `{object}` but its restriction along `{along}` does not")]
    NotRestrictionStable { object: String, element: String, along: String },
    #[error("subobject does not match the shape of its ambient presheaf")]
    Shape,
    #[error("no element `{element}` over `{object}`")]
    UnknownElement { object: String, element: String },
    #[error("subobject is not closed: `{element}` over `{object}` is covered but missing")]
    NotClosed { object: String, element: String },
    #[error("presheaf and topology live over different base categories")]
    BaseMismatch,
    #[error("{what} has size {size}, above the bound {bound}")]
    IntractableSize { what: String, size: usize, bound: usize },
    #[error("construction failed: {0}")]
    Construction(String),
    #[error(transparent)]
    Intractable(#[from] Intractable),
    #[error(transparent)]
    Natural(#[from] NaturalError),
    #[error(transparent)]
    Limit(#[from] LimitError),
}

#[cfg(test)]
mod tests;
