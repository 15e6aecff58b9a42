use std::collections::HashMap;
use std::sync::Arc;

use crate::fincat::{Mor, Obj, Presheaf};
use crate::search::Search;
use crate::sheaf::is_sheaf;
use crate::site::{GrothendieckTopology, Sieve};
use crate::Bounds;

use super::{check_cocycle, Cocycle, Cover, GroupSheaf, LocalSections, TorsorCandidate, TorsorError};

/// A torsor glued from a cocycle, living on the slice below the cover's target.
#[derive(Clone, Debug)]
pub struct Glued {
    pub torsor: TorsorCandidate,
    pub group: GroupSheaf,
    pub topology: GrothendieckTopology,
    /// The cover, reindexed into the slice.
    pub cover: Cover,
    /// `s_i = (g_ki)_k`, for which extraction returns the input cocycle.
    pub sections: LocalSections,
    /// Original object of each slice object.
    pub objects: Vec<Obj>,
    original: Cover,
}

impl Glued {
    /// The same entries on the original cover. Group elements over a slice
    /// object are those over the object it came from, in the same order.
    pub fn lift(&self, c: &Cocycle) -> Cocycle {
        Cocycle {
            cover: self.original.clone(),
            values: c.values.clone(),
        }
    }

    pub fn object(&self, original: Obj) -> Option<Obj> {
        self.objects.iter().position(|&o| o == original).map(Obj)
    }
}

/// Glues the trivial torsors `G|U_i` along `c`. A section over `V` is a
/// tuple `(h_i ∈ G(V ∩ U_i))` with `h_i = g_ij h_j` on `V ∩ U_i ∩ U_j`;
/// the group acts on the right in every coordinate.
pub fn glue_torsor(group: &GroupSheaf, c: &Cocycle, j: &GrothendieckTopology, bounds: &Bounds) -> Result<Glued, TorsorError> {
    if group.base() != j.base() {
        return Err(TorsorError::Shape("group and topology live over different sites".into()));
    }
    if let Some(why) = check_cocycle(group, c).describe() {
        return Err(TorsorError::InvalidCocycle(why));
    }
    if !is_sheaf(&group.presheaf, j, bounds)?.is_sheaf() {
        return Err(TorsorError::NotASheaf("the group".into()));
    }
    let cat = group.base();
    let cover = &c.cover;
    let n = cover.len();
    let keep = cat.down_set(cover.target());
    let (slice, kept) = cat.full_subcategory(&keep);
    let slice = Arc::new(slice);
    let pos: HashMap<Obj, usize> = keep.iter().enumerate().map(|(i, &o)| (o, i)).collect();
    let mor: HashMap<Mor, Mor> = kept.iter().enumerate().map(|(i, &f)| (f, Mor(i))).collect();

    let covers = keep
        .iter()
        .enumerate()
        .map(|(i, &u)| {
            j.covers(u)
                .iter()
                .map(|s| Sieve::from_arrows_unchecked(Obj(i), s.arrows().iter().map(|f| mor[f])))
                .collect()
        })
        .collect();
    let topology = GrothendieckTopology::from_sieves(slice.clone(), covers)?;
    let group_here = GroupSheaf::new(
        Presheaf::new(
            slice.clone(),
            keep.iter().map(|&u| group.presheaf.elements(u).to_vec()).collect(),
            kept.iter().map(|&f| group.presheaf.restriction(f).to_vec()).collect(),
        )
        .map_err(|e| TorsorError::Shape(e.to_string()))?,
        keep.iter().map(|&u| group.groups[u.0].clone()).collect(),
    )?;

    let down = |from: Obj, to: Obj, x: usize| {
        let f = cat.arrow_between(to, from).expect("restriction to a smaller object");
        group.presheaf.restrict(f, x)
    };
    let meet = |a: Obj, b: Obj| cat.meet(a, b).expect("thin site with meets");

    // sections over each slice object, as tuples of group elements
    let mut tuples: Vec<Vec<Vec<usize>>> = Vec::with_capacity(keep.len());
    for &v in &keep {
        let parts: Vec<Obj> = cover.members().iter().map(|&m| meet(v, m)).collect();
        let mut search = Search::new(parts.iter().map(|o| group.groups[o.0].len()).collect());
        for a in 0..n {
            for b in a + 1..n {
                let w = meet(parts[a], cover.members()[b]);
                let (pa, pb, ov) = (parts[a], parts[b], cover.overlap(a, b));
                let gab = down(ov, w, c.values[a][b]);
                search.constrain(&[a, b], move |h| {
                    down(pa, w, h[a]) == group.groups[w.0].mul(gab, down(pb, w, h[b]))
                });
            }
        }
        tuples.push(search.solutions(bounds.enumeration, bounds.exec)?);
    }
    let index: Vec<HashMap<&[usize], usize>> = tuples
        .iter()
        .map(|ts| ts.iter().enumerate().map(|(i, t)| (t.as_slice(), i)).collect())
        .collect();
    let parts_of = |v: Obj| -> Vec<Obj> { cover.members().iter().map(|&m| meet(v, m)).collect() };

    let values = keep
        .iter()
        .zip(&tuples)
        .map(|(&v, ts)| {
            let parts = parts_of(v);
            ts.iter()
                .map(|t| crate::label::tuple(t.iter().zip(&parts).map(|(&h, &o)| group.presheaf.label(o, h))))
                .collect()
        })
        .collect();
    let restrict = kept
        .iter()
        .map(|&f| {
            let (small, big) = (cat.source(f), cat.target(f));
            let (ps, pb) = (parts_of(small), parts_of(big));
            tuples[pos[&big]]
                .iter()
                .map(|t| {
                    let r: Vec<usize> = (0..n).map(|k| down(pb[k], ps[k], t[k])).collect();
                    index[pos[&small]][r.as_slice()]
                })
                .collect()
        })
        .collect();
    let space = Presheaf::new(slice.clone(), values, restrict).map_err(|e| TorsorError::Shape(e.to_string()))?;
    let action = keep
        .iter()
        .enumerate()
        .map(|(i, &v)| {
            let parts = parts_of(v);
            tuples[i]
                .iter()
                .map(|t| {
                    (0..group.groups[v.0].len())
                        .map(|g| {
                            let moved: Vec<usize> = (0..n)
                                .map(|k| group.groups[parts[k].0].mul(t[k], down(v, parts[k], g)))
                                .collect();
                            index[i][moved.as_slice()]
                        })
                        .collect()
                })
                .collect()
        })
        .collect();
    let torsor = TorsorCandidate::new(space, group_here.clone(), action)?;

    let members: Vec<Obj> = cover.members().iter().map(|m| Obj(pos[m])).collect();
    let slice_cover = Cover::new(&topology, Obj(pos[&cover.target()]), members)?;
    let sections = (0..n)
        .map(|i| {
            let ui = cover.members()[i];
            let parts = parts_of(ui);
            let t: Vec<usize> = (0..n).map(|k| down(cover.overlap(k, i), parts[k], c.values[k][i])).collect();
            index[pos[&ui]][t.as_slice()]
        })
        .collect();
    let sections = LocalSections::new(&torsor, slice_cover.clone(), sections)?;
    Ok(Glued {
        torsor,
        group: group_here,
        topology,
        cover: slice_cover,
        sections,
        objects: keep,
        original: cover.clone(),
    })
}
