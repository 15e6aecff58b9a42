//! Sieves, Grothendieck topologies and the open-cover site of a finite space.

mod sieve;
mod space;
mod topology;

use thiserror::Error;

pub use sieve::{all_sieves, generate_sieve, pullback_sieve, Sieve};
pub use space::{open_cover_topology, FiniteSpace, OpenCoverSite};
pub use topology::{validate_topology, GrothendieckTopology, TopologyReport, TopologyViolation};

use crate::fincat::{FinCategory, Mor, Obj};
use crate::limits::{pullback, SetMap};
use crate::Intractable;

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum SiteError {
    #[error("`{0}` does not land in the sieve's object")]
    CodomainMismatch(String),
    #[error("`{arrow}` does not land in the apex `{apex}` of the sieve")]
    ApexMismatch { arrow: String, apex: String },
    #[error("{0} is not closed under precomposition")]
    NotASieve(String),
    #[error("covering sieves do not match the base category")]
    Shape,
    #[error("invalid space: {0}")]
    InvalidSpace(String),
    #[error(transparent)]
    Intractable(#[from] Intractable),
}

/// Computes the pullback of `f: A → U` and `g: B → U` in a finite category
/// through the Yoneda embedding: pointwise pullbacks of Hom-sets, then a
/// search for an object `P` with `Hom(-, P)` of the same size everywhere.
/// Matching sizes identifies the representing object only in thin
/// categories, which is where this is used.
pub fn representing_pullback(cat: &FinCategory, f: Mor, g: Mor) -> Option<Obj> {
    let u = cat.target(f);
    if cat.target(g) != u {
        return None;
    }
    let hom_names = |x: Obj, y: Obj| -> Vec<String> { cat.hom(x, y).iter().map(|&m| cat.mor_name(m).to_string()).collect() };
    let sizes: Vec<usize> = cat
        .objects()
        .map(|v| {
            let post = |h: Mor| {
                let maps: Vec<usize> = cat
                    .hom(v, cat.source(h))
                    .iter()
                    .map(|&k| cat.hom(v, u).iter().position(|&m| m == cat.comp(h, k)).expect("composite in Hom(v, u)"))
                    .collect();
                SetMap::new(hom_names(v, cat.source(h)), hom_names(v, u), maps).expect("postcomposition is a map")
            };
            pullback(&post(f), &post(g)).expect("shared codomain").pairs.len()
        })
        .collect();
    cat.objects().find(|&p| cat.objects().all(|v| cat.hom(v, p).len() == sizes[v.0]))
}

#[cfg(test)]
mod tests;
