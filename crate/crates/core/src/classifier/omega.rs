use std::collections::{BTreeSet, HashMap};

use crate::fincat::{enumerate_naturals, naturality_search, Natural, Obj, Presheaf, SetFunctor};
use crate::limits::{pullback, SetMap};
use crate::site::{all_sieves, pullback_sieve, GrothendieckTopology, OpenCoverSite, Sieve};
use crate::Bounds;

use super::subobject::{closed_subobjects, truth_sieve, Subobject};
use super::ClassifierError;

/// `Ω` with `Ω(U)` the `J`-closed sieves on `U`, and `true: 1 → Ω`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OmegaObject {
    pub presheaf: Presheaf,
    /// `sieves[U][i]` is the sieve behind element `i` of `Ω(U)`.
    pub sieves: Vec<Vec<Sieve>>,
    /// Component at `U` sends the point to the maximal sieve.
    pub truth: Natural,
}

impl OmegaObject {
    pub fn index_of(&self, s: &Sieve) -> Option<usize> {
        self.sieves[s.apex().0].iter().position(|t| t == s)
    }

    /// Index of the maximal sieve in `Ω(U)`.
    pub fn top_at(&self, u: Obj) -> usize {
        self.truth.at(u, 0)
    }

    pub fn sieve(&self, u: Obj, i: usize) -> &Sieve {
        &self.sieves[u.0][i]
    }
}

fn is_closed_sieve(j: &GrothendieckTopology, s: &Sieve) -> bool {
    let cat = j.base();
    cat.arrows_into(s.apex()).iter().all(|&f| {
        s.contains(f) || !j.is_covering(&pullback_sieve(cat, f, s).expect("f lands in the apex"))
    })
}

/// Builds `Ω` for the topology `j`. Elements are labelled by their arrows.
pub fn omega(j: &GrothendieckTopology, bounds: &Bounds) -> Result<OmegaObject, ClassifierError> {
    let cat = j.base().clone();
    let mut sieves = Vec::with_capacity(cat.object_count());
    for u in cat.objects() {
        let closed: Vec<Sieve> = all_sieves(&cat, u, bounds)?
            .into_iter()
            .filter(|s| is_closed_sieve(j, s))
            .collect();
        sieves.push(closed);
    }
    let index: Vec<HashMap<&Sieve, usize>> = sieves
        .iter()
        .map(|ss| ss.iter().enumerate().map(|(i, s)| (s, i)).collect())
        .collect();
    let mut restrict = Vec::with_capacity(cat.morphism_count());
    for g in cat.morphisms() {
        let v = cat.source(g);
        let mut map = Vec::new();
        for s in &sieves[cat.target(g).0] {
            let pulled = pullback_sieve(&cat, g, s).expect("g lands in the apex");
            let i = index[v.0]
                .get(&pulled)
                .ok_or_else(|| ClassifierError::Construction(format!("{} pulls back to a non-closed sieve", s.label(&cat))))?;
            map.push(*i);
        }
        restrict.push(map);
    }
    let values = sieves
        .iter()
        .map(|ss| ss.iter().map(|s| s.label(&cat)).collect())
        .collect();
    let presheaf = Presheaf::new(cat.clone(), values, restrict).map_err(|e| ClassifierError::Construction(e.to_string()))?;
    let truth = Natural {
        components: cat
            .objects()
            .map(|u| vec![index[u.0][&Sieve::maximal(&cat, u)]])
            .collect(),
    };
    Ok(OmegaObject {
        presheaf,
        sieves,
        truth,
    })
}

/// The comparison of `Ω(U)` with the opens inside `U` at one object.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OpensCheck {
    pub object: String,
    /// `(sieve, open)` pairs under `S ↦ ⋃ dom(S)`.
    pub pairs: Vec<(String, String)>,
    pub bijective: bool,
    /// `S ⊆ T` exactly when the corresponding opens are nested.
    pub monotone: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OpensCertificate {
    pub checks: Vec<OpensCheck>,
}

impl OpensCertificate {
    pub fn holds(&self) -> bool {
        self.checks.iter().all(|c| c.bijective && c.monotone)
    }
}

/// Checks that `S ↦ ⋃ dom(S)` is an order isomorphism from `Ω(U)` onto the
/// opens contained in `U`, for every open `U`.
pub fn certify_opens(site: &OpenCoverSite, omega: &OmegaObject) -> OpensCertificate {
    let space = &site.space;
    let cat = &site.category;
    let union_of = |s: &Sieve| -> BTreeSet<usize> {
        s.domains(cat).iter().flat_map(|v| space.opens()[v.0].iter().copied()).collect()
    };
    let checks = cat
        .objects()
        .map(|u| {
            let opens = &omega.sieves[u.0];
            let images: Vec<usize> = opens
                .iter()
                .map(|s| {
                    let w = union_of(s);
                    space.opens().iter().position(|o| *o == w).expect("a union of opens is open")
                })
                .collect();
            let inside: BTreeSet<usize> = (0..space.open_count())
                .filter(|&w| space.opens()[w].is_subset(&space.opens()[u.0]))
                .collect();
            let hit: BTreeSet<usize> = images.iter().copied().collect();
            let bijective = hit.len() == images.len() && hit == inside;
            let monotone = (0..opens.len()).all(|a| {
                (0..opens.len()).all(|b| {
                    opens[a].is_subset(&opens[b]) == space.opens()[images[a]].is_subset(&space.opens()[images[b]])
                })
            });
            OpensCheck {
                object: cat.name(u).to_string(),
                pairs: opens
                    .iter()
                    .zip(&images)
                    .map(|(s, &w)| (s.label(cat), space.label(w)))
                    .collect(),
                bijective,
                monotone,
            }
        })
        .collect();
    OpensCertificate { checks }
}

/// `Ω` for an open-cover site, with elements relabelled by the open they
/// correspond to, together with the certificate for that correspondence.
pub fn omega_of_site(site: &OpenCoverSite, bounds: &Bounds) -> Result<(OmegaObject, OpensCertificate), ClassifierError> {
    let mut om = omega(&site.topology, bounds)?;
    let cert = certify_opens(site, &om);
    if cert.holds() {
        let cat = &site.category;
        let labels: Vec<Vec<String>> = cert.checks.iter().map(|c| c.pairs.iter().map(|(_, w)| w.clone()).collect()).collect();
        let restrict = cat.morphisms().map(|g| om.presheaf.restriction(g).to_vec()).collect();
        om.presheaf =
            Presheaf::new(cat.clone(), labels, restrict).map_err(|e| ClassifierError::Construction(e.to_string()))?;
    }
    Ok((om, cert))
}

/// `χ_m(U)(x) = {f: V → U | F(f)(x) ∈ m(V)}`. Fails when `m` is not closed,
/// since then some of these sieves are not elements of `Ω`.
pub fn characteristic(ambient: &Presheaf, omega: &OmegaObject, m: &Subobject) -> Result<Natural, ClassifierError> {
    if !m.fits(ambient) || !ambient.same_base(&omega.presheaf) {
        return Err(ClassifierError::Shape);
    }
    let cat = ambient.base();
    let components = cat
        .objects()
        .map(|u| {
            (0..ambient.size(u))
                .map(|x| {
                    omega.index_of(&truth_sieve(ambient, m, u, x)).ok_or_else(|| ClassifierError::NotClosed {
                        object: cat.name(u).to_string(),
                        element: ambient.label(u, x).to_string(),
                    })
                })
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<_, _>>()?;
    Ok(Natural { components })
}

/// The subobject `φ⁻¹(true)`.
pub fn pullback_of_true(ambient: &Presheaf, omega: &OmegaObject, phi: &Natural) -> Subobject {
    let cat = ambient.base();
    Subobject::from_parts_unchecked(
        cat.objects()
            .map(|u| (0..ambient.size(u)).map(|x| phi.at(u, x) == omega.top_at(u)).collect())
            .collect(),
    )
}

/// Checks at every object that the pullback of `χ(U)` and `true(U)`
/// computed by [`limits::pullback`](crate::limits::pullback) projects
/// bijectively onto `m(U)`. Presheaf pullbacks are pointwise, so this is
/// the pullback square in presheaves.
pub fn square_is_pullback(
    ambient: &Presheaf,
    omega: &OmegaObject,
    m: &Subobject,
    chi: &Natural,
) -> Result<bool, ClassifierError> {
    let cat = ambient.base();
    for u in cat.objects() {
        let codomain = omega.presheaf.elements(u).to_vec();
        let f = SetMap::new(ambient.elements(u).to_vec(), codomain.clone(), chi.component(u).to_vec())?;
        let t = SetMap::new(vec!["*".into()], codomain, vec![omega.top_at(u)])?;
        let p = pullback(&f, &t)?;
        let first = p.first();
        let image: BTreeSet<usize> = first.iter().copied().collect();
        if image.len() != first.len() || image.into_iter().collect::<Vec<_>>() != m.members(u) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Number of natural maps `X ⇒ Ω` whose pullback of `true` is `m`.
pub fn characteristic_alternatives(
    ambient: &Presheaf,
    omega: &OmegaObject,
    m: &Subobject,
    bounds: &Bounds,
) -> Result<usize, ClassifierError> {
    if !m.fits(ambient) || !ambient.same_base(&omega.presheaf) {
        return Err(ClassifierError::Shape);
    }
    let (mut search, offsets) = naturality_search(ambient, &omega.presheaf);
    for u in ambient.base().objects() {
        let top = omega.top_at(u);
        for x in 0..ambient.size(u) {
            let v = offsets[u.0] + x;
            let inside = m.contains(u, x);
            search.constrain(&[v], move |a| (a[v] == top) == inside);
        }
    }
    Ok(search.count(bounds.enumeration, bounds.exec)?)
}

/// Outcome of comparing closed subobjects of `X` with maps `X ⇒ Ω`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RoundTripReport {
    pub subobjects: usize,
    pub arrows: usize,
    pub failures: Vec<String>,
}

impl RoundTripReport {
    pub fn holds(&self) -> bool {
        self.failures.is_empty() && self.subobjects == self.arrows
    }
}

/// Enumerates closed subobjects and maps into `Ω`, and checks that
/// characteristic maps and pullbacks of `true` are mutually inverse, that
/// every square is a pullback and that each characteristic map is the only
/// map classifying its subobject.
pub fn classify_round_trip(
    ambient: &Presheaf,
    j: &GrothendieckTopology,
    omega: &OmegaObject,
    bounds: &Bounds,
) -> Result<RoundTripReport, ClassifierError> {
    let subs = closed_subobjects(ambient, j, bounds)?;
    let arrows = enumerate_naturals(ambient, &omega.presheaf, bounds)?;
    let mut failures = Vec::new();
    for m in &subs {
        let chi = characteristic(ambient, omega, m)?;
        if pullback_of_true(ambient, omega, &chi) != *m {
            failures.push(format!("pulling back true along χ does not return {}", m.label(ambient)));
        }
        if !square_is_pullback(ambient, omega, m, &chi)? {
            failures.push(format!("square for {} is not a pullback", m.label(ambient)));
        }
        let n = characteristic_alternatives(ambient, omega, m, bounds)?;
        if n != 1 {
            failures.push(format!("{} maps classify {}", n, m.label(ambient)));
        }
    }
    for phi in &arrows {
        let m = pullback_of_true(ambient, omega, phi);
        match characteristic(ambient, omega, &m) {
            Ok(chi) if chi == *phi => {}
            Ok(_) => failures.push(format!("χ of {} differs from the map it came from", m.label(ambient))),
            Err(e) => failures.push(e.to_string()),
        }
    }
    Ok(RoundTripReport {
        subobjects: subs.len(),
        arrows: arrows.len(),
        failures,
    })
}
