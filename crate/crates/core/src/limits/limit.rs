use crate::fincat::{Obj, SetFunctor};
use crate::label::tuple;
use crate::search::Search;
use crate::{Bounds, Exec};

use super::{Diagram, LimitError};

/// A limit cone. Apex element `e` is the compatible family `families[e]`,
/// holding one element per shape object; the legs are the projections.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Limit {
    pub apex: Vec<String>,
    pub families: Vec<Vec<usize>>,
}

impl Limit {
    /// The leg at `o`, as a map from apex elements.
    pub fn leg(&self, o: Obj) -> Vec<usize> {
        self.families.iter().map(|fam| fam[o.0]).collect()
    }
}

/// A colimit cocone. `legs[o][x]` is the apex element receiving `x ∈ D(o)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Colimit {
    pub apex: Vec<String>,
    pub legs: Vec<Vec<usize>>,
}

/// Outcome of checking a universal property against every test (co)cone
/// with apex size up to the bound.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Certificate {
    pub cones_checked: usize,
    /// Test (co)cones whose number of mediating maps was not exactly one,
    /// with that number.
    pub failures: Vec<(usize, usize)>,
}

impl Certificate {
    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }
}

pub(crate) fn family_label(d: &dyn SetFunctor, fam: &[usize]) -> String {
    tuple(d.base().objects().map(|o| d.element(o, fam[o.0])))
}

/// The limit of `d` as the set of compatible families, in lexicographic order.
pub fn limit(d: &Diagram, bounds: &Bounds) -> Result<Limit, LimitError> {
    let shape = d.shape();
    let domains: Vec<usize> = shape.objects().map(|o| d.size(o)).collect();
    let mut search = Search::new(domains);
    for m in shape.morphisms() {
        if shape.is_identity(m) {
            continue;
        }
        let (s, t) = (shape.source(m).0, shape.target(m).0);
        search.constrain(&[s, t], move |a| d.act(m, a[s]) == a[t]);
    }
    let families = search.solutions(bounds.enumeration, bounds.exec)?;
    let apex = families.iter().map(|f| family_label(d, f)).collect();
    Ok(Limit { apex, families })
}

/// Numbers the classes of `parent` (a union-find forest over `0..n`) in order
/// of their least member.
pub(crate) fn number_classes(parent: &mut [usize]) -> (Vec<usize>, Vec<usize>) {
    let n = parent.len();
    let mut class_of = vec![usize::MAX; n];
    let mut reps = Vec::new();
    let mut root_class = vec![usize::MAX; n];
    for i in 0..n {
        let r = find(parent, i);
        if root_class[r] == usize::MAX {
            root_class[r] = reps.len();
            reps.push(i);
        }
        class_of[i] = root_class[r];
    }
    (class_of, reps)
}

pub(crate) fn find(parent: &mut [usize], mut i: usize) -> usize {
    while parent[i] != i {
        parent[i] = parent[parent[i]];
        i = parent[i];
    }
    i
}

pub(crate) fn union(parent: &mut [usize], a: usize, b: usize) {
    let (ra, rb) = (find(parent, a), find(parent, b));
    if ra != rb {
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        parent[hi] = lo;
    }
}

/// Labels colimit classes by their representative's element label, qualified
/// by object name when bare labels would collide.
pub(crate) fn class_labels(d: &dyn SetFunctor, offsets: &[usize], reps: &[usize]) -> Vec<String> {
    let locate = |flat: usize| {
        let o = offsets.iter().rposition(|&off| off <= flat).expect("offset table starts at zero");
        (Obj(o), flat - offsets[o])
    };
    let bare: Vec<String> = reps
        .iter()
        .map(|&r| {
            let (o, x) = locate(r);
            d.element(o, x).to_string()
        })
        .collect();
    let mut sorted = bare.clone();
    sorted.sort();
    sorted.dedup();
    if sorted.len() == bare.len() {
        return bare;
    }
    reps.iter()
        .map(|&r| {
            let (o, x) = locate(r);
            format!("{}:{}", d.base().name(o), d.element(o, x))
        })
        .collect()
}

pub(crate) fn offsets_of(d: &dyn SetFunctor) -> Vec<usize> {
    let mut offsets = Vec::new();
    let mut total = 0;
    for o in d.base().objects() {
        offsets.push(total);
        total += d.size(o);
    }
    offsets
}

/// The colimit of `d`: the disjoint union of the value sets modulo the
/// equivalence generated by `x ~ D(m)(x)`. Classes are ordered by their
/// least member in the canonical order of the disjoint union.
pub fn colimit(d: &Diagram) -> Colimit {
    let shape = d.shape();
    let offsets = offsets_of(d);
    let total: usize = shape.objects().map(|o| d.size(o)).sum();
    let mut parent: Vec<usize> = (0..total).collect();
    for m in shape.morphisms() {
        let (s, t) = (shape.source(m), shape.target(m));
        for x in 0..d.size(s) {
            union(&mut parent, offsets[s.0] + x, offsets[t.0] + d.act(m, x));
        }
    }
    let (class_of, reps) = number_classes(&mut parent);
    let apex = class_labels(d, &offsets, &reps);
    let legs = shape
        .objects()
        .map(|o| (0..d.size(o)).map(|x| class_of[offsets[o.0] + x]).collect())
        .collect();
    Colimit { apex, legs }
}

/// Every cone over `d` with apex `{0, …, n-1}`; cone `c` has leg value
/// `c[o * n + e]` at object `o` and apex element `e`.
fn test_cones(d: &Diagram, n: usize, bounds: &Bounds) -> Result<Vec<Vec<usize>>, LimitError> {
    let shape = d.shape();
    let mut domains = Vec::new();
    for o in shape.objects() {
        domains.extend(std::iter::repeat_n(d.size(o), n));
    }
    let mut search = Search::new(domains);
    for m in shape.morphisms() {
        if shape.is_identity(m) {
            continue;
        }
        let (s, t) = (shape.source(m).0, shape.target(m).0);
        for e in 0..n {
            let (vs, vt) = (s * n + e, t * n + e);
            search.constrain(&[vs, vt], move |a| d.act(m, a[vs]) == a[vt]);
        }
    }
    Ok(search.solutions(bounds.enumeration, bounds.exec)?)
}

/// Checks that every cone with apex size at most `bounds.test_apex` factors
/// through `lim` in exactly one way.
pub fn certify_limit(d: &Diagram, lim: &Limit, bounds: &Bounds) -> Result<Certificate, LimitError> {
    let shape = d.shape();
    let objects = shape.object_count();
    let mut cert = Certificate::default();
    for n in 0..=bounds.test_apex {
        for cone in test_cones(d, n, bounds)? {
            // u: apex → lim with families[u(e)][o] = cone leg at (o, e)
            let mut search = Search::new(vec![lim.families.len(); n]);
            for e in 0..n {
                let cone = &cone;
                search.constrain(&[e], move |a| {
                    (0..objects).all(|o| lim.families[a[e]][o] == cone[o * n + e])
                });
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

/// Every cocone under `d` with apex `{0, …, n-1}`, flattened over the
/// disjoint union of the value sets.
fn test_cocones(d: &Diagram, n: usize, bounds: &Bounds) -> Result<Vec<Vec<usize>>, LimitError> {
    let shape = d.shape();
    let offsets = offsets_of(d);
    let total: usize = shape.objects().map(|o| d.size(o)).sum();
    let mut search = Search::new(vec![n; total]);
    for m in shape.morphisms() {
        if shape.is_identity(m) {
            continue;
        }
        let (s, t) = (shape.source(m), shape.target(m));
        for x in 0..d.size(s) {
            let (vx, vy) = (offsets[s.0] + x, offsets[t.0] + d.act(m, x));
            search.constrain(&[vx, vy], move |a| a[vx] == a[vy]);
        }
    }
    Ok(search.solutions(bounds.enumeration, bounds.exec)?)
}

/// Checks that every cocone with apex size at most `bounds.test_apex` is
/// reached from `colim` by exactly one map.
pub fn certify_colimit(d: &Diagram, colim: &Colimit, bounds: &Bounds) -> Result<Certificate, LimitError> {
    let shape = d.shape();
    let offsets = offsets_of(d);
    let mut cert = Certificate::default();
    for n in 0..=bounds.test_apex {
        for cocone in test_cocones(d, n, bounds)? {
            let mut search = Search::new(vec![n; colim.apex.len()]);
            for o in shape.objects() {
                for x in 0..d.size(o) {
                    let c = colim.legs[o.0][x];
                    let want = cocone[offsets[o.0] + x];
                    search.constrain(&[c], move |a| a[c] == want);
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
