use std::collections::BTreeSet;
use std::sync::Arc;

use crate::fincat::{FinCategory, Mor, Obj};
use crate::Bounds;

use super::{all_sieves, generate_sieve, pullback_sieve, Sieve, SiteError};

/// A Grothendieck topology stored extensionally: every covering sieve on
/// every object is listed, in canonical order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrothendieckTopology {
    base: Arc<FinCategory>,
    covers: Vec<Vec<Sieve>>,
}

impl GrothendieckTopology {
    /// Only maximal sieves cover.
    pub fn trivial(base: Arc<FinCategory>) -> Self {
        let covers = base.objects().map(|u| vec![Sieve::maximal(&base, u)]).collect();
        GrothendieckTopology { base, covers }
    }

    /// Takes the covering sieves as given. Each must be a sieve on its
    /// object; the axioms are not checked (see [`validate_topology`]).
    pub fn from_sieves(base: Arc<FinCategory>, covers: Vec<Vec<Sieve>>) -> Result<Self, SiteError> {
        if covers.len() != base.object_count() {
            return Err(SiteError::Shape);
        }
        let mut sorted = Vec::with_capacity(covers.len());
        for (u, sieves) in covers.into_iter().enumerate() {
            let mut set = BTreeSet::new();
            for s in sieves {
                let s = Sieve::new(&base, Obj(u), s.arrows().iter().copied())?;
                if s.apex() != Obj(u) {
                    return Err(SiteError::Shape);
                }
                set.insert(s);
            }
            let mut v: Vec<Sieve> = set.into_iter().collect();
            v.sort_by(Sieve::canonical_cmp);
            sorted.push(v);
        }
        Ok(GrothendieckTopology { base, covers: sorted })
    }

    /// The smallest topology in which every given family generates a
    /// covering sieve: generated sieves plus maximal sieves, saturated under
    /// pullback stability and transitivity.
    pub fn generated(
        base: Arc<FinCategory>,
        families: &[(Obj, Vec<Mor>)],
        bounds: &Bounds,
    ) -> Result<Self, SiteError> {
        let all: Vec<Vec<Sieve>> = base
            .objects()
            .map(|u| all_sieves(&base, u, bounds))
            .collect::<Result<_, _>>()?;
        let mut covers: Vec<BTreeSet<Sieve>> = base.objects().map(|u| BTreeSet::from([Sieve::maximal(&base, u)])).collect();
        for (u, family) in families {
            covers[u.0].insert(generate_sieve(&base, *u, family)?);
        }
        loop {
            let mut changed = false;
            for u in base.objects() {
                let current: Vec<Sieve> = covers[u.0].iter().cloned().collect();
                for s in &current {
                    for &f in base.arrows_into(u) {
                        let p = pullback_sieve(&base, f, s)?;
                        changed |= covers[base.source(f).0].insert(p);
                    }
                }
            }
            for u in base.objects() {
                for s in &all[u.0] {
                    if covers[u.0].contains(s) {
                        continue;
                    }
                    let forced = covers[u.0].iter().any(|r| {
                        r.arrows().iter().all(|&f| {
                            let p = pullback_sieve(&base, f, s).expect("f lands in u");
                            covers[base.source(f).0].contains(&p)
                        })
                    });
                    if forced {
                        covers[u.0].insert(s.clone());
                        changed = true;
                    }
                }
            }
            if !changed {
                break;
            }
        }
        let covers = covers
            .into_iter()
            .map(|set| {
                let mut v: Vec<Sieve> = set.into_iter().collect();
                v.sort_by(Sieve::canonical_cmp);
                v
            })
            .collect();
        Ok(GrothendieckTopology { base, covers })
    }

    pub fn base(&self) -> &Arc<FinCategory> {
        &self.base
    }

    pub fn covers(&self, u: Obj) -> &[Sieve] {
        &self.covers[u.0]
    }

    pub fn is_covering(&self, s: &Sieve) -> bool {
        self.covers[s.apex().0].contains(s)
    }

    /// Whether every covering sieve on every object is maximal.
    pub fn is_trivial(&self) -> bool {
        self.base
            .objects()
            .all(|u| self.covers[u.0].iter().all(|s| s.is_maximal(&self.base)))
    }

    /// A copy with one covering sieve removed.
    pub fn without(&self, s: &Sieve) -> Self {
        let mut t = self.clone();
        t.covers[s.apex().0].retain(|c| c != s);
        t
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TopologyViolation {
    /// Axiom (i): the maximal sieve on `object` is not covering.
    MissingMaximal { object: String },
    /// Axiom (ii): `sieve` covers `object` but its pullback along `along` does not cover.
    NotStable { object: String, sieve: String, along: String, pulled: String },
    /// Axiom (iii): `sieve` is not covering although every pullback of it
    /// along the covering sieve `witness` is covering.
    NotTransitive { object: String, sieve: String, witness: String },
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TopologyReport {
    pub objects: usize,
    pub covering_sieves: usize,
    pub sieves_examined: usize,
    pub violations: Vec<TopologyViolation>,
}

impl TopologyReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks the three axioms by full enumeration of sieves.
pub fn validate_topology(j: &GrothendieckTopology, bounds: &Bounds) -> Result<TopologyReport, SiteError> {
    let cat = j.base();
    let mut report = TopologyReport {
        objects: cat.object_count(),
        ..Default::default()
    };
    for u in cat.objects() {
        report.covering_sieves += j.covers(u).len();
        if !j.is_covering(&Sieve::maximal(cat, u)) {
            report.violations.push(TopologyViolation::MissingMaximal {
                object: cat.name(u).to_string(),
            });
        }
    }
    for u in cat.objects() {
        for s in j.covers(u) {
            for &f in cat.arrows_into(u) {
                let p = pullback_sieve(cat, f, s)?;
                if !j.is_covering(&p) {
                    report.violations.push(TopologyViolation::NotStable {
                        object: cat.name(u).to_string(),
                        sieve: s.label(cat),
                        along: cat.mor_name(f).to_string(),
                        pulled: p.label(cat),
                    });
                }
            }
        }
    }
    for u in cat.objects() {
        for s in all_sieves(cat, u, bounds)? {
            report.sieves_examined += 1;
            if j.is_covering(&s) {
                continue;
            }
            let witness = j.covers(u).iter().find(|r| {
                r.arrows().iter().all(|&f| {
                    let p = pullback_sieve(cat, f, &s).expect("f lands in u");
                    j.is_covering(&p)
                })
            });
            if let Some(r) = witness {
                report.violations.push(TopologyViolation::NotTransitive {
                    object: cat.name(u).to_string(),
                    sieve: s.label(cat),
                    witness: r.label(cat),
                });
            }
        }
    }
    Ok(report)
}
