//! Finite categories, functors, presheaves, natural transformations and the
//! Yoneda correspondence.

mod category;
mod functor;
mod natural;
mod presheaf;
mod yoneda;

use thiserror::Error;

pub use category::{FinCategory, Mor, Obj, RawCategory};
pub use functor::FinFunctor;
pub use natural::{count_naturals, enumerate_naturals, find_isomorphism, Natural, NaturalityFailure};
pub(crate) use natural::naturality_search;
pub use presheaf::{enumerate_actions, size_vectors, Presheaf, SetFunctor};
pub use yoneda::{yoneda_from_element, yoneda_presheaf, yoneda_presheaf_named, yoneda_to_element};

use crate::Intractable;

/// Validates a raw category description with the default Hom-set bound.
pub fn validate_category(raw: &RawCategory) -> Result<FinCategory, CategoryError> {
    FinCategory::validate(raw, crate::DEFAULT_MAX_HOM)
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum CategoryError {
    #[error("duplicate name `{0}`")]
    DuplicateName(String),
    #[error("reference to unknown object or morphism `{0}`")]
    DanglingReference(String),
    #[error("identity violation at `{object}`: {detail}")]
    IdentityViolation { object: String, detail: String },
    #[error("no composite recorded for `{g} ∘ {f}`")]
    MissingComposite { g: String, f: String },
    #[error("composite entry for non-composable pair `{g} ∘ {f}`")]
    NonComposable { g: String, f: String },
    #[error("composite `{g} ∘ {f} = {h}` has the wrong source or target")]
    CompositeMismatch { g: String, f: String, h: String },
    #[error("two different composites recorded for `{g} ∘ {f}`")]
    ConflictingComposite { g: String, f: String },
    #[error("associativity fails for `{h} ∘ {g} ∘ {f}`")]
    AssociativityViolation { h: String, g: String, f: String },
    #[error("Hom({from}, {to}) has {size} morphisms, above the bound {bound}")]
    HomTooLarge {
        from: String,
        to: String,
        size: usize,
        bound: usize,
    },
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum FunctorError {
    #[error("object or morphism maps have the wrong length or range")]
    Shape,
    #[error("unknown name `{0}`")]
    Unknown(String),
    #[error("`{0}` is not mapped")]
    Unmapped(String),
    #[error("image of `{0}` has the wrong source or target")]
    Ends(String),
    #[error("identity of `{0}` is not preserved")]
    Identity(String),
    #[error("composite `{g} ∘ {f}` is not preserved")]
    Composition { g: String, f: String },
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum PresheafError {
    #[error("value or restriction tables do not match the base category")]
    Shape,
    #[error("unknown object `{0}`")]
    UnknownObject(String),
    #[error("unknown morphism `{0}`")]
    UnknownMorphism(String),
    #[error("no value set given for `{0}`")]
    MissingValues(String),
    #[error("no restriction given for `{0}`")]
    MissingRestriction(String),
    #[error("`{label}` is not an element at `{object}`")]
    UnknownElement { object: String, label: String },
    #[error("element `{label}` listed twice at `{object}`")]
    DuplicateElement { object: String, label: String },
    #[error("restriction along `{0}` is not a function between the value sets")]
    NotAFunction(String),
    #[error("restriction along the identity of `{0}` is not the identity")]
    Identity(String),
    #[error("restriction along `{g} ∘ {f}` is not the composite of restrictions")]
    Functoriality { g: String, f: String },
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum NaturalError {
    #[error("functors live over different base categories")]
    BaseMismatch,
    #[error("component family has the wrong shape")]
    Shape,
    #[error("unknown object `{0}`")]
    UnknownObject(String),
    #[error("naturality fails along `{}` at `{}`", .0.morphism, .0.element)]
    NotNatural(NaturalityFailure),
    #[error(transparent)]
    Intractable(#[from] Intractable),
}

#[cfg(test)]
pub(crate) mod tests;
