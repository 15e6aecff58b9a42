//! Matching families, the sheaf condition, gluing, sheafification,
//! pointwise limits of presheaves and exponentials.

mod condition;
pub mod examples;
mod matching;
mod plus;
mod pointwise;

use thiserror::Error;

pub use condition::{glue, is_sheaf, SheafReport, SieveCheck};
pub use matching::{generators, induced_family, matching_families, MatchingFamily};
pub use plus::{certify_sheafification, plus, sheafify, Completion};
pub use pointwise::{
    adjunction_counts, exponential, presheaf_equalizer, presheaf_limit, presheaf_pullback, product, PresheafDiagram,
    PresheafLimit,
};

use crate::fincat::NaturalError;
use crate::limits::LimitError;
use crate::Intractable;

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum SheafError {
    #[error("presheaf, sieve or topology live over different base categories")]
    BaseMismatch,
    #[error("{0} is not a covering sieve")]
    NotCovering(String),
    #[error("the sheaf condition fails at `{object}` for the sieve {sieve}")]
    NotASheafHere { object: String, sieve: String },
    #[error("no such matching family: {0}")]
    NoSuchFamily(String),
    #[error("assignment is not compatible along `{0}`")]
    Incompatible(String),
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
