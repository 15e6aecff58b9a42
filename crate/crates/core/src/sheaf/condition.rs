use std::collections::HashMap;

use crate::fincat::{Obj, Presheaf, SetFunctor};
use crate::search::map_ordered;
use crate::site::{GrothendieckTopology, Sieve};
use crate::Bounds;

use super::{induced_family, matching_families, MatchingFamily, SheafError};

/// The comparison `F(U) → Match(S, F)` at one covering sieve.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SieveCheck {
    pub object: Obj,
    pub sieve: Sieve,
    pub sections: usize,
    pub families: usize,
    /// Pairs of distinct sections inducing the same family (separation fails).
    pub collisions: Vec<(usize, usize)>,
    /// Matching families not induced by any section (gluing fails).
    pub unglued: Vec<MatchingFamily>,
}

impl SieveCheck {
    pub fn separated(&self) -> bool {
        self.collisions.is_empty()
    }

    pub fn glues(&self) -> bool {
        self.unglued.is_empty()
    }

    pub fn holds(&self) -> bool {
        self.separated() && self.glues()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SheafReport {
    pub checks: Vec<SieveCheck>,
}

impl SheafReport {
    pub fn is_sheaf(&self) -> bool {
        self.checks.iter().all(SieveCheck::holds)
    }

    pub fn is_separated(&self) -> bool {
        self.checks.iter().all(SieveCheck::separated)
    }

    pub fn failures(&self) -> impl Iterator<Item = &SieveCheck> {
        self.checks.iter().filter(|c| !c.holds())
    }
}

pub(crate) fn check_at(f: &Presheaf, u: Obj, s: &Sieve, bounds: &Bounds) -> Result<SieveCheck, SheafError> {
    let families = matching_families(f, s, bounds)?;
    let mut seen: HashMap<Vec<usize>, usize> = HashMap::new();
    let mut collisions = Vec::new();
    for x in 0..f.size(u) {
        let fam = induced_family(f, s, x);
        match seen.get(fam.values()) {
            Some(&y) => collisions.push((y, x)),
            None => {
                seen.insert(fam.values().to_vec(), x);
            }
        }
    }
    let unglued = families
        .iter()
        .filter(|m| !seen.contains_key(m.values()))
        .cloned()
        .collect();
    Ok(SieveCheck {
        object: u,
        sieve: s.clone(),
        sections: f.size(u),
        families: families.len(),
        collisions,
        unglued,
    })
}

/// Checks, for every object and every covering sieve on it, that sections
/// correspond bijectively to matching families.
pub fn is_sheaf(f: &Presheaf, j: &GrothendieckTopology, bounds: &Bounds) -> Result<SheafReport, SheafError> {
    if !(std::sync::Arc::ptr_eq(f.base(), j.base()) || **f.base() == **j.base()) {
        return Err(SheafError::BaseMismatch);
    }
    let pairs: Vec<(Obj, Sieve)> = j
        .base()
        .objects()
        .flat_map(|u| j.covers(u).iter().map(move |s| (u, s.clone())))
        .collect();
    let checks = map_ordered(&pairs, bounds.exec, |(u, s)| check_at(f, *u, s, bounds));
    Ok(SheafReport {
        checks: checks.into_iter().collect::<Result<_, _>>()?,
    })
}

/// The unique section over the sieve's object inducing `m`.
pub fn glue(f: &Presheaf, j: &GrothendieckTopology, m: &MatchingFamily, bounds: &Bounds) -> Result<usize, SheafError> {
    let s = m.sieve();
    let cat = f.base();
    if !j.is_covering(s) {
        return Err(SheafError::NotCovering(s.label(cat)));
    }
    let valid = MatchingFamily::new(f, s.clone(), &m.assignment())?;
    let u = s.apex();
    let check = check_at(f, u, s, bounds)?;
    if !check.holds() {
        return Err(SheafError::NotASheafHere {
            object: cat.name(u).to_string(),
            sieve: s.label(cat),
        });
    }
    (0..f.size(u))
        .find(|&x| induced_family(f, s, x) == valid)
        .ok_or_else(|| SheafError::NoSuchFamily(m.label(f)))
}
