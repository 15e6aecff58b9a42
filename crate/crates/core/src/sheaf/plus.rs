use std::collections::{HashMap, HashSet};

use crate::fincat::{enumerate_naturals, naturality_search, Natural, Obj, Presheaf, SetFunctor};
use crate::limits::Certificate;
use crate::site::{pullback_sieve, GrothendieckTopology, Sieve};
use crate::{Bounds, Exec};

use super::{induced_family, is_sheaf, matching_families, MatchingFamily, SheafError};

/// A presheaf together with a natural map into it from the original.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Completion {
    pub presheaf: Presheaf,
    pub unit: Natural,
}

struct Stage {
    entries: Vec<MatchingFamily>,
    index: HashMap<MatchingFamily, usize>,
    class_of: Vec<usize>,
    reps: Vec<usize>,
    labels: Vec<String>,
}

fn agree_on_cover(j: &GrothendieckTopology, a: &MatchingFamily, b: &MatchingFamily) -> bool {
    let u = a.sieve().apex();
    let common = a.sieve().intersection(b.sieve());
    let agreement = Sieve::from_arrows_unchecked(
        u,
        common.arrows().iter().copied().filter(|&m| a.at(m) == b.at(m)),
    );
    j.covers(u).iter().any(|r| r.is_subset(&agreement))
}

fn build_stage(f: &Presheaf, j: &GrothendieckTopology, u: Obj, bounds: &Bounds) -> Result<Stage, SheafError> {
    let cat = f.base();
    let mut entries = Vec::new();
    for s in j.covers(u) {
        entries.extend(matching_families(f, s, bounds)?);
        if entries.len() > bounds.enumeration {
            return Err(SheafError::IntractableSize {
                what: format!("matching families over `{}`", cat.name(u)),
                size: entries.len(),
                bound: bounds.enumeration,
            });
        }
    }
    let n = entries.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut i: usize) -> usize {
        while p[i] != i {
            p[i] = p[p[i]];
            i = p[i];
        }
        i
    }
    for a in 0..n {
        for b in a + 1..n {
            if find(&mut parent, a) != find(&mut parent, b) && agree_on_cover(j, &entries[a], &entries[b]) {
                let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                parent[ra.max(rb)] = ra.min(rb);
            }
        }
    }
    let index: HashMap<MatchingFamily, usize> = entries.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();

    // classes holding a section come first, in section order
    let max = Sieve::maximal(cat, u);
    if !j.is_covering(&max) {
        return Err(SheafError::NotCovering(max.label(cat)));
    }
    let mut root_class: HashMap<usize, usize> = HashMap::new();
    let mut reps = Vec::new();
    let mut labels = Vec::new();
    let mut used = HashSet::new();
    let fresh = |label: String, used: &mut HashSet<String>| {
        let mut l = label;
        while used.contains(&l) {
            l.push('\'');
        }
        used.insert(l.clone());
        l
    };
    for x in 0..f.size(u) {
        let e = index[&induced_family(f, &max, x)];
        let r = find(&mut parent, e);
        if let std::collections::hash_map::Entry::Vacant(slot) = root_class.entry(r) {
            slot.insert(reps.len());
            reps.push(e);
            labels.push(fresh(f.label(u, x).to_string(), &mut used));
        }
    }
    for e in 0..n {
        let r = find(&mut parent, e);
        if let std::collections::hash_map::Entry::Vacant(slot) = root_class.entry(r) {
            slot.insert(reps.len());
            reps.push(e);
            labels.push(fresh(entries[e].label(f), &mut used));
        }
    }
    let class_of = (0..n).map(|e| root_class[&find(&mut parent, e)]).collect();
    Ok(Stage {
        entries,
        index,
        class_of,
        reps,
        labels,
    })
}

/// One application of the plus construction: `F⁺(U)` is the set of matching
/// families over covering sieves of `U`, two families being identified when
/// they agree on some covering sieve.
pub fn plus(f: &Presheaf, j: &GrothendieckTopology, bounds: &Bounds) -> Result<Completion, SheafError> {
    if !(std::sync::Arc::ptr_eq(f.base(), j.base()) || **f.base() == **j.base()) {
        return Err(SheafError::BaseMismatch);
    }
    let cat = f.base().clone();
    let stages: Vec<Stage> = cat
        .objects()
        .map(|u| build_stage(f, j, u, bounds))
        .collect::<Result<_, _>>()?;
    let mut restrict = Vec::with_capacity(cat.morphism_count());
    for g in cat.morphisms() {
        let (v, u) = (cat.source(g), cat.target(g));
        let (here, there) = (&stages[u.0], &stages[v.0]);
        let mut map = Vec::with_capacity(here.reps.len());
        for &e in &here.reps {
            let m = &here.entries[e];
            let pulled = pullback_sieve(&cat, g, m.sieve()).expect("g lands in the apex");
            let values = pulled
                .arrows()
                .iter()
                .map(|&h| m.at(cat.comp(g, h)).expect("g ∘ h lies in the sieve"))
                .collect();
            let moved = MatchingFamily::from_values(pulled.clone(), values);
            let target = there
                .index
                .get(&moved)
                .ok_or_else(|| SheafError::NotCovering(pulled.label(&cat)))?;
            map.push(there.class_of[*target]);
        }
        restrict.push(map);
    }
    let values = stages.iter().map(|s| s.labels.clone()).collect();
    let presheaf = Presheaf::new(cat.clone(), values, restrict).map_err(|e| SheafError::Construction(e.to_string()))?;
    let unit = Natural {
        components: cat
            .objects()
            .map(|u| {
                let max = Sieve::maximal(&cat, u);
                let st = &stages[u.0];
                (0..f.size(u))
                    .map(|x| st.class_of[st.index[&induced_family(f, &max, x)]])
                    .collect()
            })
            .collect(),
    };
    Ok(Completion { presheaf, unit })
}

/// `F⁺⁺` with the composite unit `F → F⁺ → F⁺⁺`.
pub fn sheafify(f: &Presheaf, j: &GrothendieckTopology, bounds: &Bounds) -> Result<Completion, SheafError> {
    let once = plus(f, j, bounds)?;
    let twice = plus(&once.presheaf, j, bounds)?;
    Ok(Completion {
        unit: twice.unit.after(&once.unit),
        presheaf: twice.presheaf,
    })
}

/// Checks that every map from `F` into a sheaf with value sets of size at
/// most `max_size` factors through the unit in exactly one way.
pub fn certify_sheafification(
    f: &Presheaf,
    j: &GrothendieckTopology,
    sh: &Completion,
    max_size: usize,
    bounds: &Bounds,
) -> Result<Certificate, SheafError> {
    let mut cert = Certificate::default();
    for g in Presheaf::enumerate(f.base(), max_size, bounds)? {
        if !is_sheaf(&g, j, bounds)?.is_sheaf() {
            continue;
        }
        for alpha in enumerate_naturals(f, &g, bounds)? {
            let (mut search, offsets) = naturality_search(&sh.presheaf, &g);
            for u in f.base().objects() {
                for x in 0..f.size(u) {
                    let v = offsets[u.0] + sh.unit.at(u, x);
                    let want = alpha.at(u, x);
                    search.constrain(&[v], move |a| a[v] == want);
                }
            }
            let count = search.count(2, Exec::Sequential).unwrap_or(2);
            if count != 1 {
                cert.failures.push((cert.cones_checked, count));
            }
            cert.cones_checked += 1;
        }
    }
    Ok(cert)
}
