use std::collections::BTreeSet;

use crate::fincat::{FinCategory, Mor, Obj};
use crate::label::set;
use crate::search::Search;
use crate::{Bounds, Intractable};

use super::SiteError;

/// A set of arrows into `apex`, closed under precomposition.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Sieve {
    apex: Obj,
    arrows: BTreeSet<Mor>,
}

impl Sieve {
    /// Wraps an arrow set without checking closure.
    pub fn from_arrows_unchecked(apex: Obj, arrows: impl IntoIterator<Item = Mor>) -> Self {
        Sieve {
            apex,
            arrows: arrows.into_iter().collect(),
        }
    }

    /// Wraps an arrow set, checking codomains and closure under precomposition.
    pub fn new(cat: &FinCategory, apex: Obj, arrows: impl IntoIterator<Item = Mor>) -> Result<Self, SiteError> {
        let s = Sieve::from_arrows_unchecked(apex, arrows);
        if let Some(&f) = s.arrows.iter().find(|&&f| cat.target(f) != apex) {
            return Err(SiteError::CodomainMismatch(cat.mor_name(f).to_string()));
        }
        if !s.is_closed(cat) {
            return Err(SiteError::NotASieve(s.label(cat)));
        }
        Ok(s)
    }

    pub fn maximal(cat: &FinCategory, apex: Obj) -> Self {
        Sieve::from_arrows_unchecked(apex, cat.arrows_into(apex).iter().copied())
    }

    pub fn empty(apex: Obj) -> Self {
        Sieve {
            apex,
            arrows: BTreeSet::new(),
        }
    }

    pub fn apex(&self) -> Obj {
        self.apex
    }

    pub fn arrows(&self) -> &BTreeSet<Mor> {
        &self.arrows
    }

    pub fn contains(&self, f: Mor) -> bool {
        self.arrows.contains(&f)
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn is_maximal(&self, cat: &FinCategory) -> bool {
        self.arrows.len() == cat.arrows_into(self.apex).len()
    }

    pub fn is_subset(&self, other: &Sieve) -> bool {
        self.arrows.is_subset(&other.arrows)
    }

    pub fn intersection(&self, other: &Sieve) -> Sieve {
        Sieve::from_arrows_unchecked(self.apex, self.arrows.intersection(&other.arrows).copied())
    }

    pub fn union(&self, other: &Sieve) -> Sieve {
        Sieve::from_arrows_unchecked(self.apex, self.arrows.union(&other.arrows).copied())
    }

    /// `f ∈ S` and `g` composable with `f` imply `f ∘ g ∈ S`.
    pub fn is_closed(&self, cat: &FinCategory) -> bool {
        self.arrows.iter().all(|&f| {
            cat.arrows_into(cat.source(f))
                .iter()
                .all(|&g| self.arrows.contains(&cat.comp(f, g)))
        })
    }

    /// Domains of the arrows, without repetition, in object order.
    pub fn domains(&self, cat: &FinCategory) -> Vec<Obj> {
        let set: BTreeSet<Obj> = self.arrows.iter().map(|&f| cat.source(f)).collect();
        set.into_iter().collect()
    }

    /// Canonical label: the arrow names in set notation.
    pub fn label(&self, cat: &FinCategory) -> String {
        let mut names: Vec<String> = self.arrows.iter().map(|&f| cat.mor_name(f).to_string()).collect();
        crate::label::sort_labels(&mut names);
        set(names.iter().map(String::as_str))
    }

    /// Canonical order: by size, then by arrow indices.
    pub fn canonical_cmp(&self, other: &Sieve) -> std::cmp::Ordering {
        (self.apex, self.arrows.len(), &self.arrows).cmp(&(other.apex, other.arrows.len(), &other.arrows))
    }
}

/// The smallest sieve on `u` containing `family`.
pub fn generate_sieve(cat: &FinCategory, u: Obj, family: &[Mor]) -> Result<Sieve, SiteError> {
    if let Some(&f) = family.iter().find(|&&f| cat.target(f) != u) {
        return Err(SiteError::CodomainMismatch(cat.mor_name(f).to_string()));
    }
    let mut arrows = BTreeSet::new();
    for &f in family {
        for &g in cat.arrows_into(cat.source(f)) {
            arrows.insert(cat.comp(f, g));
        }
    }
    Ok(Sieve { apex: u, arrows })
}

/// `f*S = { g | f ∘ g ∈ S }` for `f: V → U` and `S` on `U`.
pub fn pullback_sieve(cat: &FinCategory, f: Mor, s: &Sieve) -> Result<Sieve, SiteError> {
    if cat.target(f) != s.apex {
        return Err(SiteError::ApexMismatch {
            arrow: cat.mor_name(f).to_string(),
            apex: cat.name(s.apex).to_string(),
        });
    }
    let v = cat.source(f);
    Ok(Sieve {
        apex: v,
        arrows: cat
            .arrows_into(v)
            .iter()
            .copied()
            .filter(|&g| s.contains(cat.comp(f, g)))
            .collect(),
    })
}

/// Every sieve on `u`, in canonical order.
pub fn all_sieves(cat: &FinCategory, u: Obj, bounds: &Bounds) -> Result<Vec<Sieve>, Intractable> {
    let into = cat.arrows_into(u);
    let pos = |f: Mor| into.iter().position(|&h| h == f).expect("arrow into u");
    let mut search = Search::new(vec![2; into.len()]);
    for (i, &f) in into.iter().enumerate() {
        for &g in cat.arrows_into(cat.source(f)) {
            let j = pos(cat.comp(f, g));
            if j != i {
                search.constrain(&[i, j], move |a| a[i] == 0 || a[j] == 1);
            }
        }
    }
    let mut sieves: Vec<Sieve> = search
        .solutions(bounds.enumeration, bounds.exec)?
        .into_iter()
        .map(|a| Sieve::from_arrows_unchecked(u, into.iter().zip(a).filter(|(_, b)| *b == 1).map(|(&f, _)| f)))
        .collect();
    sieves.sort_by(Sieve::canonical_cmp);
    Ok(sieves)
}
