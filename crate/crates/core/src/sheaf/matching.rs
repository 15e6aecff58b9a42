use crate::fincat::{FinCategory, Mor, Presheaf, SetFunctor};
use crate::search::Search;
use crate::site::Sieve;
use crate::Bounds;

use super::SheafError;

/// A compatible choice of element `x_f ∈ F(V)` for every arrow `f: V → U`
/// of a sieve. Values are stored in the sieve's arrow order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MatchingFamily {
    sieve: Sieve,
    values: Vec<usize>,
}

impl MatchingFamily {
    /// Validates completeness and compatibility:
    /// `x_{f∘g} = F(g)(x_f)` for every `f` in the sieve and every `g` into its domain.
    pub fn new(f: &Presheaf, sieve: Sieve, assignment: &[(Mor, usize)]) -> Result<Self, SheafError> {
        check_sieve(f.base(), &sieve)?;
        let mut values = vec![None; sieve.len()];
        for &(m, x) in assignment {
            let i = sieve
                .arrows()
                .iter()
                .position(|&a| a == m)
                .ok_or_else(|| SheafError::NoSuchFamily(format!("`{}` is not in the sieve", f.base().mor_name(m))))?;
            if x >= f.size(f.base().source(m)) {
                return Err(SheafError::NoSuchFamily(format!("no element {x} over `{}`", f.base().mor_name(m))));
            }
            values[i] = Some(x);
        }
        let values: Vec<usize> = values
            .into_iter()
            .collect::<Option<_>>()
            .ok_or_else(|| SheafError::NoSuchFamily("assignment does not cover the sieve".into()))?;
        let fam = MatchingFamily { sieve, values };
        if let Some(m) = fam.incompatibility(f) {
            return Err(SheafError::Incompatible(f.base().mor_name(m).to_string()));
        }
        Ok(fam)
    }

    pub(crate) fn from_values(sieve: Sieve, values: Vec<usize>) -> Self {
        MatchingFamily { sieve, values }
    }

    fn incompatibility(&self, f: &Presheaf) -> Option<Mor> {
        let cat = f.base();
        let arrows: Vec<Mor> = self.sieve.arrows().iter().copied().collect();
        for (i, &a) in arrows.iter().enumerate() {
            for &g in cat.arrows_into(cat.source(a)) {
                let j = arrows.binary_search(&cat.comp(a, g)).expect("sieves are closed");
                if self.values[j] != f.restrict(g, self.values[i]) {
                    return Some(a);
                }
            }
        }
        None
    }

    pub fn sieve(&self) -> &Sieve {
        &self.sieve
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    /// Element assigned to arrow `m`.
    pub fn at(&self, m: Mor) -> Option<usize> {
        self.sieve.arrows().iter().position(|&a| a == m).map(|i| self.values[i])
    }

    /// `(arrow, element)` pairs in sieve order.
    pub fn assignment(&self) -> Vec<(Mor, usize)> {
        self.sieve.arrows().iter().copied().zip(self.values.iter().copied()).collect()
    }

    /// The family restricted to a smaller sieve `r ⊆ S`.
    pub fn restrict_to(&self, r: &Sieve) -> MatchingFamily {
        let values = r.arrows().iter().map(|&m| self.at(m).expect("r is contained in the sieve")).collect();
        MatchingFamily {
            sieve: r.clone(),
            values,
        }
    }

    /// Human-readable form listing the values on the generating arrows only
    /// (arrows that do not factor through another arrow of the sieve).
    pub fn label(&self, f: &Presheaf) -> String {
        let cat = f.base();
        let gens = generators(cat, &self.sieve);
        let parts: Vec<String> = gens
            .iter()
            .map(|&m| format!("{}:{}", cat.name(cat.source(m)), f.label(cat.source(m), self.at(m).unwrap())))
            .collect();
        format!("<{}>", parts.join(","))
    }
}

/// Arrows of `s` not of the form `h ∘ g` with `h ∈ s` and `g` a
/// non-identity arrow.
pub fn generators(cat: &FinCategory, s: &Sieve) -> Vec<Mor> {
    s.arrows()
        .iter()
        .copied()
        .filter(|&m| {
            !s.arrows().iter().any(|&h| {
                h != m
                    && cat
                        .hom(cat.source(m), cat.source(h))
                        .iter()
                        .any(|&g| !cat.is_identity(g) && cat.comp(h, g) == m)
            })
        })
        .collect()
}

pub(crate) fn check_sieve(cat: &FinCategory, s: &Sieve) -> Result<(), SheafError> {
    let ok = s.apex().0 < cat.object_count()
        && s.arrows().iter().all(|&m| m.0 < cat.morphism_count() && cat.target(m) == s.apex())
        && s.is_closed(cat);
    if ok {
        Ok(())
    } else {
        Err(SheafError::BaseMismatch)
    }
}

/// Every matching family for `f` on `s`, in lexicographic order of values.
pub fn matching_families(f: &Presheaf, s: &Sieve, bounds: &Bounds) -> Result<Vec<MatchingFamily>, SheafError> {
    let cat = f.base();
    check_sieve(cat, s)?;
    let arrows: Vec<Mor> = s.arrows().iter().copied().collect();
    let domains = arrows.iter().map(|&m| f.size(cat.source(m))).collect();
    let mut search = Search::new(domains);
    for (i, &a) in arrows.iter().enumerate() {
        for &g in cat.arrows_into(cat.source(a)) {
            if cat.is_identity(g) {
                continue;
            }
            let j = arrows.binary_search(&cat.comp(a, g)).expect("sieves are closed");
            search.constrain(&[i, j], move |v| v[j] == f.restrict(g, v[i]));
        }
    }
    Ok(search
        .solutions(bounds.enumeration, bounds.exec)?
        .into_iter()
        .map(|values| MatchingFamily::from_values(s.clone(), values))
        .collect())
}

/// The family `f ↦ F(f)(x)` induced by a section `x ∈ F(U)`.
pub fn induced_family(f: &Presheaf, s: &Sieve, x: usize) -> MatchingFamily {
    MatchingFamily::from_values(s.clone(), s.arrows().iter().map(|&m| f.restrict(m, x)).collect())
}
