use std::sync::Arc;

use crate::fincat::{Obj, Presheaf, SetFunctor};
use crate::search::Search;
use crate::site::{GrothendieckTopology, Sieve};
use crate::{Bounds, Intractable};

use super::ClassifierError;

/// A restriction-stable family of subsets `A(U) ⊆ F(U)`, stored as one
/// membership vector per object. The ambient presheaf is passed alongside.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subobject {
    parts: Vec<Vec<bool>>,
}

impl Subobject {
    /// Validates shape and restriction stability.
    pub fn new(ambient: &Presheaf, parts: Vec<Vec<bool>>) -> Result<Self, ClassifierError> {
        let cat = ambient.base();
        if parts.len() != cat.object_count() || cat.objects().any(|u| parts[u.0].len() != ambient.size(u)) {
            return Err(ClassifierError::Shape);
        }
        for g in cat.morphisms() {
            let (v, u) = (cat.source(g), cat.target(g));
            for x in 0..ambient.size(u) {
                if parts[u.0][x] && !parts[v.0][ambient.restrict(g, x)] {
                    return Err(ClassifierError::NotRestrictionStable {
                        object: cat.name(u).to_string(),
                        element: ambient.label(u, x).to_string(),
                        along: cat.mor_name(g).to_string(),
                    });
                }
            }
        }
        Ok(Subobject { parts })
    }

    /// Builds a subobject from element labels per object name. Objects not
    /// mentioned get the empty part.
    pub fn from_labels(ambient: &Presheaf, members: &[(&str, &[&str])]) -> Result<Self, ClassifierError> {
        let cat = ambient.base();
        let mut parts: Vec<Vec<bool>> = cat.objects().map(|u| vec![false; ambient.size(u)]).collect();
        for &(name, elems) in members {
            let u = cat.object_by_name(name).ok_or_else(|| ClassifierError::UnknownElement {
                object: name.to_string(),
                element: String::new(),
            })?;
            for &e in elems {
                let x = ambient.position(u, e).ok_or_else(|| ClassifierError::UnknownElement {
                    object: name.to_string(),
                    element: e.to_string(),
                })?;
                parts[u.0][x] = true;
            }
        }
        Subobject::new(ambient, parts)
    }

    pub(crate) fn from_parts_unchecked(parts: Vec<Vec<bool>>) -> Self {
        Subobject { parts }
    }

    pub fn top(ambient: &Presheaf) -> Self {
        Subobject {
            parts: ambient.base().objects().map(|u| vec![true; ambient.size(u)]).collect(),
        }
    }

    pub fn empty(ambient: &Presheaf) -> Self {
        Subobject {
            parts: ambient.base().objects().map(|u| vec![false; ambient.size(u)]).collect(),
        }
    }

    pub fn parts(&self) -> &[Vec<bool>] {
        &self.parts
    }

    pub fn contains(&self, u: Obj, x: usize) -> bool {
        self.parts[u.0][x]
    }

    pub fn members(&self, u: Obj) -> Vec<usize> {
        (0..self.parts[u.0].len()).filter(|&x| self.parts[u.0][x]).collect()
    }

    /// Total number of elements across all objects.
    pub fn size(&self) -> usize {
        self.parts.iter().map(|p| p.iter().filter(|&&b| b).count()).sum()
    }

    pub fn is_subset(&self, other: &Subobject) -> bool {
        self.zip_all(other, |a, b| !a || b)
    }

    pub fn meet(&self, other: &Subobject) -> Subobject {
        self.zip(other, |a, b| a && b)
    }

    /// Pointwise union, which is again restriction-stable.
    pub fn union(&self, other: &Subobject) -> Subobject {
        self.zip(other, |a, b| a || b)
    }

    fn zip(&self, other: &Subobject, op: impl Fn(bool, bool) -> bool) -> Subobject {
        Subobject {
            parts: self
                .parts
                .iter()
                .zip(&other.parts)
                .map(|(p, q)| p.iter().zip(q).map(|(&a, &b)| op(a, b)).collect())
                .collect(),
        }
    }

    fn zip_all(&self, other: &Subobject, op: impl Fn(bool, bool) -> bool) -> bool {
        self.parts
            .iter()
            .zip(&other.parts)
            .all(|(p, q)| p.iter().zip(q).all(|(&a, &b)| op(a, b)))
    }

    /// `U:{x,y} V:{}` style listing over every object.
    pub fn label(&self, ambient: &Presheaf) -> String {
        let cat = ambient.base();
        cat.objects()
            .map(|u| {
                let elems: Vec<&str> = self.members(u).into_iter().map(|x| ambient.label(u, x)).collect();
                format!("{}:{{{}}}", cat.name(u), elems.join(","))
            })
            .collect::<Vec<_>>()
            .join(" ")
    }

    pub(crate) fn fits(&self, ambient: &Presheaf) -> bool {
        self.parts.len() == ambient.base().object_count()
            && ambient.base().objects().all(|u| self.parts[u.0].len() == ambient.size(u))
    }
}

fn same_base(ambient: &Presheaf, j: &GrothendieckTopology) -> Result<(), ClassifierError> {
    if Arc::ptr_eq(ambient.base(), j.base()) || **ambient.base() == **j.base() {
        Ok(())
    } else {
        Err(ClassifierError::BaseMismatch)
    }
}

/// `{f: V → U | F(f)(x) ∈ A(V)}`, the sieve on which `x` belongs to `A`.
pub fn truth_sieve(ambient: &Presheaf, a: &Subobject, u: Obj, x: usize) -> Sieve {
    let cat = ambient.base();
    Sieve::from_arrows_unchecked(
        u,
        cat.arrows_into(u)
            .iter()
            .copied()
            .filter(|&f| a.contains(cat.source(f), ambient.restrict(f, x))),
    )
}

/// The elements `x` whose truth sieve covers.
pub fn closure(ambient: &Presheaf, j: &GrothendieckTopology, a: &Subobject) -> Subobject {
    let cat = ambient.base();
    Subobject {
        parts: cat
            .objects()
            .map(|u| (0..ambient.size(u)).map(|x| j.is_covering(&truth_sieve(ambient, a, u, x))).collect())
            .collect(),
    }
}

pub fn is_closed(ambient: &Presheaf, j: &GrothendieckTopology, a: &Subobject) -> bool {
    closure(ambient, j, a) == *a
}

/// The least closed subobject.
pub fn bottom(ambient: &Presheaf, j: &GrothendieckTopology) -> Subobject {
    closure(ambient, j, &Subobject::empty(ambient))
}

/// Closure of the pointwise union. Under the trivial topology the union is
/// already closed.
pub fn join(ambient: &Presheaf, j: &GrothendieckTopology, a: &Subobject, b: &Subobject) -> Subobject {
    let u = a.union(b);
    let closed = closure(ambient, j, &u);
    debug_assert!(!j.is_trivial() || closed == u);
    closed
}

/// `(A ⇒ B)(U) = {x | for every f: V → U, F(f)(x) ∈ A(V) implies F(f)(x) ∈ B(V)}`.
pub fn implies(ambient: &Presheaf, a: &Subobject, b: &Subobject) -> Subobject {
    let cat = ambient.base();
    Subobject {
        parts: cat
            .objects()
            .map(|u| {
                (0..ambient.size(u))
                    .map(|x| {
                        cat.arrows_into(u).iter().all(|&f| {
                            let (v, y) = (cat.source(f), ambient.restrict(f, x));
                            !a.contains(v, y) || b.contains(v, y)
                        })
                    })
                    .collect()
            })
            .collect(),
    }
}

/// `A ⇒ ⊥`.
pub fn negate(ambient: &Presheaf, j: &GrothendieckTopology, a: &Subobject) -> Subobject {
    implies(ambient, a, &bottom(ambient, j))
}

fn search_subobjects(
    ambient: &Presheaf,
    j: Option<&GrothendieckTopology>,
    bounds: &Bounds,
) -> Result<Vec<Subobject>, Intractable> {
    let cat = ambient.base();
    let offsets = ambient.offsets();
    let mut search = Search::new(vec![2; ambient.total_size()]);
    for g in cat.morphisms() {
        let (v, u) = (cat.source(g), cat.target(g));
        if cat.is_identity(g) {
            continue;
        }
        for x in 0..ambient.size(u) {
            let (a, b) = (offsets[u.0] + x, offsets[v.0] + ambient.restrict(g, x));
            search.constrain(&[a, b], move |s| s[a] == 0 || s[b] == 1);
        }
    }
    if let Some(j) = j {
        for u in cat.objects() {
            for s in j.covers(u) {
                if s.is_maximal(cat) {
                    continue;
                }
                for x in 0..ambient.size(u) {
                    let target = offsets[u.0] + x;
                    let mut vars: Vec<usize> = s
                        .arrows()
                        .iter()
                        .map(|&f| offsets[cat.source(f).0] + ambient.restrict(f, x))
                        .collect();
                    vars.sort_unstable();
                    vars.dedup();
                    let mut mentioned = vars.clone();
                    mentioned.push(target);
                    search.constrain(&mentioned, move |a| a[target] == 1 || vars.iter().any(|&v| a[v] == 0));
                }
            }
        }
    }
    let sizes: Vec<usize> = cat.objects().map(|u| ambient.size(u)).collect();
    Ok(search
        .solutions(bounds.enumeration, bounds.exec)?
        .into_iter()
        .map(|flat| Subobject {
            parts: offsets
                .iter()
                .zip(&sizes)
                .map(|(&off, &n)| flat[off..off + n].iter().map(|&b| b == 1).collect())
                .collect(),
        })
        .collect())
}

/// Every subobject of `ambient`, in canonical order (the empty subobject first).
pub fn subobjects(ambient: &Presheaf, bounds: &Bounds) -> Result<Vec<Subobject>, Intractable> {
    search_subobjects(ambient, None, bounds)
}

/// Every `J`-closed subobject of `ambient`, in canonical order.
pub fn closed_subobjects(
    ambient: &Presheaf,
    j: &GrothendieckTopology,
    bounds: &Bounds,
) -> Result<Vec<Subobject>, ClassifierError> {
    same_base(ambient, j)?;
    Ok(search_subobjects(ambient, Some(j), bounds)?)
}
