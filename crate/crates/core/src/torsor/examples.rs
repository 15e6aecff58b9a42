//! Group sheaves and cocycles used in tests and the command-line gallery.

use crate::site::{open_cover_topology, FiniteSpace, OpenCoverSite};
use crate::Bounds;

use super::{Cocycle, Cover, FiniteGroup, GroupSheaf, TorsorError};

/// The pseudocircle with locally constant `ℤ/2`.
pub fn pseudocircle_z2() -> (OpenCoverSite, GroupSheaf) {
    let site = open_cover_topology(&FiniteSpace::pseudocircle(), &Bounds::default()).expect("the pseudocircle is a site");
    let g = GroupSheaf::locally_constant(&site, &FiniteGroup::cyclic(2));
    (site, g)
}

/// The cover `{Ux, Uy}` of the whole pseudocircle.
pub fn pseudocircle_cover(site: &OpenCoverSite) -> Result<Cover, TorsorError> {
    let obj = |l: &str| site.object_by_label(l).ok_or_else(|| TorsorError::NotACover(format!("no open `{l}`")));
    Cover::new(&site.topology, obj("whole")?, vec![obj("Ux")?, obj("Uy")?])
}

/// The sign cocycle: `g_xy` is the unit over `a` and the generator over `b`.
pub fn sign_cocycle(site: &OpenCoverSite, group: &GroupSheaf) -> Result<Cocycle, TorsorError> {
    Cocycle::from_labels(group, pseudocircle_cover(site)?, &[(0, 1, "01")])
}
