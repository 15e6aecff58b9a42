//! Finite sheaf and topos theory, checked by brute force.
//!
//! Every construction in this crate is finite and explicit: categories carry
//! their full composition table, presheaves carry their full restriction
//! maps, and every universal property is certified by exhaustive search over
//! a bounded test family. The modules build on each other in this order:
//!
//! - [`fincat`]: categories, functors, presheaves, natural transformations, Yoneda.
//! - [`limits`]: set-valued (co)limits, pullbacks, equalizers, Kan extensions.
//! - [`site`]: sieves, Grothendieck topologies, finite topological spaces.
//! - [`sheaf`]: matching families, the sheaf condition, sheafification, exponentials.
//! - [`classifier`]: the subobject classifier and the Heyting algebra of subobjects.
//! - [`logic`]: formulas, Kripke–Joyal forcing and subobject semantics.
//! - [`torsor`]: group sheaves, torsors, cocycles and descent.
//!
//! The enumeration engine in [`search`] runs on rayon when the `parallel`
//! feature is enabled (the default) and falls back to a sequential
//! depth-first search otherwise. Results come out in the same canonical
//! order either way.

pub mod classifier;
pub mod fincat;
pub mod label;
pub mod limits;
pub mod logic;
pub mod search;
pub mod sheaf;
pub mod site;
pub mod torsor;

pub use search::{Exec, Intractable};

/// Default ceiling on the size of any Hom-set.
pub const DEFAULT_MAX_HOM: usize = 64;
/// Default ceiling on the number of results any single enumeration may produce.
pub const DEFAULT_ENUMERATION: usize = 1 << 20;

/// Enumeration limits shared by every exhaustive operation.
///
/// Exceeding any of these is reported as an explicit error, never by
/// silently truncating a search.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Bounds {
    /// Largest permitted Hom-set in a validated category.
    pub max_hom: usize,
    /// Largest number of solutions a single search may produce.
    pub enumeration: usize,
    /// Largest apex used when certifying universal properties.
    pub test_apex: usize,
    /// Largest comma category built for a pointwise Kan extension.
    pub comma: usize,
    /// Deepest formula accepted by the logic engines.
    pub formula_depth: usize,
    /// Largest sort (number of elements at one object) accepted by the logic engines.
    pub sort_size: usize,
    /// Largest subobject lattice for which full operation tables are built.
    pub lattice: usize,
    pub exec: Exec,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds {
            max_hom: DEFAULT_MAX_HOM,
            enumeration: DEFAULT_ENUMERATION,
            test_apex: 3,
            comma: 256,
            formula_depth: 12,
            sort_size: 4096,
            lattice: 256,
            exec: Exec::default(),
        }
    }
}

impl Bounds {
    pub fn with_enumeration(mut self, enumeration: usize) -> Self {
        self.enumeration = enumeration;
        self
    }

    pub fn with_exec(mut self, exec: Exec) -> Self {
        self.exec = exec;
        self
    }

    pub fn with_test_apex(mut self, apex: usize) -> Self {
        self.test_apex = apex;
        self
    }
}
