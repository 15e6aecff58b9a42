//! Sheaves of groups, torsors, cocycles on covers and descent.
//!
//! Covers are finite families of objects below a target in a thin site, so
//! overlaps are meets. A cocycle assigns `g_ij ∈ G(U_i ∩ U_j)` to every
//! ordered pair of members, and local sections are related by
//! `s_j = s_i · g_ij`. Changing sections by `h_i` changes the cocycle to
//! `h_i⁻¹ g_ij h_j`.

mod action;
mod cocycle;
pub mod examples;
mod glue;
mod group;

use thiserror::Error;

pub use action::{canonical_map_check, is_torsor, CanonicalReport, Collision, Nonemptiness, TorsorCandidate, TorsorReport, Transitivity};
pub use cocycle::{
    all_cocycles, check_cocycle, cocycles_equivalent, extract_cocycle, local_section_choices, random_cocycles, Cocycle, CocycleReport,
    Cover, LocalSections,
};
pub use glue::{glue_torsor, Glued};
pub use group::{FiniteGroup, GroupSheaf};

use crate::sheaf::SheafError;
use crate::site::SiteError;
use crate::Intractable;

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum TorsorError {
    #[error("not a group: {0}")]
    NotAGroup(String),
    #[error("restriction along `{0}` is not a homomorphism")]
    NotAHomomorphism(String),
    #[error("invalid action: {0}")]
    InvalidAction(String),
    #[error("not a cover: {0}")]
    NotACover(String),
    #[error("cocycles live on different covers or groups")]
    CoverMismatch,
    #[error("invalid cocycle: {0}")]
    InvalidCocycle(String),
    #[error("{count} group elements carry `{from}` to `{to}` over `{object}`")]
    NotUniquelyTransitive {
        object: String,
        from: String,
        to: String,
        count: usize,
    },
    #[error("`{0}` is not a sheaf for the topology")]
    NotASheaf(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error(transparent)]
    Intractable(#[from] Intractable),
    #[error(transparent)]
    Sheaf(#[from] SheafError),
    #[error(transparent)]
    Site(#[from] SiteError),
}
