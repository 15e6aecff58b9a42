//! Limits and colimits of set-valued diagrams, the special shapes
//! (pullback, equalizer, coequalizer) and pointwise Kan extensions.

mod diagram;
pub mod examples;
mod kan;
mod limit;
mod random;
mod special;

use thiserror::Error;

pub use diagram::Diagram;
pub use kan::{kan_extension, kan_to_point, verify_kan, KanDirection, KanExtension, PointKan};
pub use limit::{certify_colimit, certify_limit, colimit, limit, Certificate, Colimit, Limit};
pub use random::DiagramSampler;
pub use special::{coequalizer, equalizer, product_indices, pullback, Coequalizer, Equalizer, Pullback, SetMap};

use crate::fincat::NaturalError;
use crate::Intractable;

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum LimitError {
    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),
    #[error("the two maps do not share a codomain")]
    CodomainMismatch,
    #[error("the maps or functors do not have matching shapes")]
    ShapeMismatch,
    #[error("{what} has size {size}, above the bound {bound}")]
    IntractableSize { what: String, size: usize, bound: usize },
    #[error(transparent)]
    Intractable(#[from] Intractable),
    #[error(transparent)]
    Natural(#[from] NaturalError),
}
