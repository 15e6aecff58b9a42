use std::collections::HashMap;
use std::sync::Arc;

use crate::label::{first_duplicate, sort_labels};
use crate::search::Search;
use crate::{Bounds, Intractable};

use super::{FinCategory, Mor, Obj, PresheafError};

/// A set-valued functor viewed through its action: each morphism acts as a
/// function between the value sets at its two ends. Presheaves act
/// contravariantly, diagrams covariantly; both implement this trait so the
/// enumeration machinery is shared.
pub trait SetFunctor: Sync {
    fn base(&self) -> &Arc<FinCategory>;
    fn size(&self, o: Obj) -> usize;
    /// `(domain, codomain)` of the function induced by `m`.
    fn action_ends(&self, m: Mor) -> (Obj, Obj);
    fn act(&self, m: Mor, x: usize) -> usize;
    fn element(&self, o: Obj, x: usize) -> &str;

    fn same_base(&self, other: &dyn SetFunctor) -> bool {
        Arc::ptr_eq(self.base(), other.base()) || **self.base() == **other.base()
    }
}

/// A presheaf of finite sets: a value set per object and a restriction
/// function `F(U) → F(V)` per morphism `V → U`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presheaf {
    base: Arc<FinCategory>,
    values: Vec<Vec<String>>,
    restrict: Vec<Vec<usize>>,
}

impl SetFunctor for Presheaf {
    fn base(&self) -> &Arc<FinCategory> {
        &self.base
    }

    fn size(&self, o: Obj) -> usize {
        self.values[o.0].len()
    }

    fn action_ends(&self, m: Mor) -> (Obj, Obj) {
        (self.base.target(m), self.base.source(m))
    }

    fn act(&self, m: Mor, x: usize) -> usize {
        self.restrict[m.0][x]
    }

    fn element(&self, o: Obj, x: usize) -> &str {
        &self.values[o.0][x]
    }
}

impl Presheaf {
    /// Validates shapes, identities and contravariance.
    pub fn new(
        base: Arc<FinCategory>,
        values: Vec<Vec<String>>,
        restrict: Vec<Vec<usize>>,
    ) -> Result<Self, PresheafError> {
        if values.len() != base.object_count() || restrict.len() != base.morphism_count() {
            return Err(PresheafError::Shape);
        }
        for (o, vals) in values.iter().enumerate() {
            if let Some(d) = first_duplicate(vals) {
                return Err(PresheafError::DuplicateElement {
                    object: base.name(Obj(o)).to_string(),
                    label: d.to_string(),
                });
            }
        }
        for f in base.morphisms() {
            let (from, to) = (base.target(f), base.source(f));
            let map = &restrict[f.0];
            if map.len() != values[from.0].len() || map.iter().any(|&y| y >= values[to.0].len()) {
                return Err(PresheafError::NotAFunction(base.mor_name(f).to_string()));
            }
        }
        let p = Presheaf { base, values, restrict };
        p.check_functorial()?;
        Ok(p)
    }

    pub(crate) fn new_unchecked(
        base: Arc<FinCategory>,
        values: Vec<Vec<String>>,
        restrict: Vec<Vec<usize>>,
    ) -> Self {
        let p = Presheaf { base, values, restrict };
        debug_assert!(p.check_functorial().is_ok());
        p
    }

    fn check_functorial(&self) -> Result<(), PresheafError> {
        let c = &self.base;
        for o in c.objects() {
            let id = &self.restrict[c.identity(o).0];
            if id.iter().enumerate().any(|(x, &y)| x != y) {
                return Err(PresheafError::Identity(c.name(o).to_string()));
            }
        }
        for (g, f) in c.composable_pairs() {
            let h = c.comp(g, f);
            for x in 0..self.size(c.target(g)) {
                if self.restrict[h.0][x] != self.restrict[f.0][self.restrict[g.0][x]] {
                    return Err(PresheafError::Functoriality {
                        g: c.mor_name(g).to_string(),
                        f: c.mor_name(f).to_string(),
                    });
                }
            }
        }
        Ok(())
    }

    /// Builds a presheaf from labels. Value sets are put in canonical order;
    /// identity restrictions may be omitted.
    pub fn from_labels(
        base: Arc<FinCategory>,
        values: &[(String, Vec<String>)],
        restrictions: &[(String, Vec<(String, String)>)],
    ) -> Result<Self, PresheafError> {
        let mut sets: Vec<Option<Vec<String>>> = vec![None; base.object_count()];
        for (o, vals) in values {
            let o = base
                .object_by_name(o)
                .ok_or_else(|| PresheafError::UnknownObject(o.clone()))?;
            let mut vals = vals.clone();
            sort_labels(&mut vals);
            sets[o.0] = Some(vals);
        }
        let sets: Vec<Vec<String>> = sets
            .into_iter()
            .enumerate()
            .map(|(i, v)| v.ok_or_else(|| PresheafError::MissingValues(base.name(Obj(i)).to_string())))
            .collect::<Result<_, _>>()?;
        let lookup = |o: Obj, label: &str| {
            sets[o.0]
                .iter()
                .position(|s| s == label)
                .ok_or_else(|| PresheafError::UnknownElement {
                    object: base.name(o).to_string(),
                    label: label.to_string(),
                })
        };
        let mut maps: Vec<Option<Vec<usize>>> = vec![None; base.morphism_count()];
        for (f, pairs) in restrictions {
            let f = base
                .morphism_by_name(f)
                .ok_or_else(|| PresheafError::UnknownMorphism(f.clone()))?;
            let (from, to) = (base.target(f), base.source(f));
            let mut map = vec![None; sets[from.0].len()];
            for (x, y) in pairs {
                map[lookup(from, x)?] = Some(lookup(to, y)?);
            }
            let map = map
                .into_iter()
                .collect::<Option<Vec<usize>>>()
                .ok_or_else(|| PresheafError::NotAFunction(base.mor_name(f).to_string()))?;
            maps[f.0] = Some(map);
        }
        for o in base.objects() {
            let id = base.identity(o);
            if maps[id.0].is_none() {
                maps[id.0] = Some((0..sets[o.0].len()).collect());
            }
        }
        let maps: Vec<Vec<usize>> = maps
            .into_iter()
            .enumerate()
            .map(|(i, m)| m.ok_or_else(|| PresheafError::MissingRestriction(base.mor_name(Mor(i)).to_string())))
            .collect::<Result<_, _>>()?;
        Presheaf::new(base, sets, maps)
    }

    /// The presheaf with one element `*` everywhere.
    pub fn terminal(base: Arc<FinCategory>) -> Self {
        let values = vec![vec!["*".to_string()]; base.object_count()];
        let restrict = vec![vec![0]; base.morphism_count()];
        Presheaf { base, values, restrict }
    }

    /// The presheaf with every value set empty.
    pub fn empty(base: Arc<FinCategory>) -> Self {
        let values = vec![Vec::new(); base.object_count()];
        let restrict = vec![Vec::new(); base.morphism_count()];
        Presheaf { base, values, restrict }
    }

    /// The constant presheaf with the given value set and identity restrictions.
    /// Objects listed in `singleton_at` get the one-element set `*` instead.
    pub fn constant(base: Arc<FinCategory>, labels: &[String], singleton_at: &[Obj]) -> Self {
        let mut labels = labels.to_vec();
        sort_labels(&mut labels);
        let values: Vec<Vec<String>> = base
            .objects()
            .map(|o| {
                if singleton_at.contains(&o) {
                    vec!["*".to_string()]
                } else {
                    labels.clone()
                }
            })
            .collect();
        let restrict = base
            .morphisms()
            .map(|f| {
                let from = &values[base.target(f).0];
                let to_singleton = singleton_at.contains(&base.source(f));
                (0..from.len()).map(|x| if to_singleton { 0 } else { x }).collect()
            })
            .collect();
        Presheaf::new(base, values, restrict).expect("constant presheaf is functorial when singletons are down-closed")
    }

    pub fn values(&self) -> &[Vec<String>] {
        &self.values
    }

    pub fn elements(&self, o: Obj) -> &[String] {
        &self.values[o.0]
    }

    pub fn label(&self, o: Obj, x: usize) -> &str {
        &self.values[o.0][x]
    }

    pub fn position(&self, o: Obj, label: &str) -> Option<usize> {
        self.values[o.0].iter().position(|s| s == label)
    }

    /// Restriction of `x ∈ F(target f)` along `f`.
    pub fn restrict(&self, f: Mor, x: usize) -> usize {
        self.restrict[f.0][x]
    }

    pub fn restriction(&self, f: Mor) -> &[usize] {
        &self.restrict[f.0]
    }

    pub fn total_size(&self) -> usize {
        self.values.iter().map(Vec::len).sum()
    }

    /// Offsets of each object's block in a flat `(object, element)` indexing.
    pub fn offsets(&self) -> Vec<usize> {
        let mut acc = 0;
        self.values
            .iter()
            .map(|v| {
                let o = acc;
                acc += v.len();
                o
            })
            .collect()
    }

    /// Every presheaf on `base` whose value sets have the given sizes, with
    /// elements labelled `0, 1, …`.
    pub fn enumerate_with_sizes(
        base: &Arc<FinCategory>,
        sizes: &[usize],
        bounds: &Bounds,
    ) -> Result<Vec<Presheaf>, Intractable> {
        let actions = enumerate_actions(base, sizes, true, bounds)?;
        let values: Vec<Vec<String>> = sizes
            .iter()
            .map(|&n| (0..n).map(|i| i.to_string()).collect())
            .collect();
        Ok(actions
            .into_iter()
            .map(|restrict| Presheaf::new_unchecked(base.clone(), values.clone(), restrict))
            .collect())
    }

    /// Every presheaf on `base` with all value sets of size at most `max_size`.
    pub fn enumerate(
        base: &Arc<FinCategory>,
        max_size: usize,
        bounds: &Bounds,
    ) -> Result<Vec<Presheaf>, Intractable> {
        let mut out = Vec::new();
        for sizes in size_vectors(base.object_count(), max_size) {
            out.extend(Presheaf::enumerate_with_sizes(base, &sizes, bounds)?);
            if out.len() > bounds.enumeration {
                return Err(Intractable { bound: bounds.enumeration });
            }
        }
        Ok(out)
    }

    /// Lookup table from element label to index, per object.
    pub fn index(&self) -> Vec<HashMap<&str, usize>> {
        self.values
            .iter()
            .map(|v| v.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect())
            .collect()
    }
}

/// All size vectors in `0..=max` of length `n`, lexicographically.
pub fn size_vectors(n: usize, max: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..=max).map(move |k| {
                    let mut w = v.clone();
                    w.push(k);
                    w
                })
            })
            .collect();
    }
    out
}

/// Every functorial family of action maps on `cat` with the given value-set
/// sizes. With `contravariant`, a morphism `V → U` acts `F(U) → F(V)`.
/// Returns one vector of maps (indexed by morphism) per functor.
pub fn enumerate_actions(
    cat: &FinCategory,
    sizes: &[usize],
    contravariant: bool,
    bounds: &Bounds,
) -> Result<Vec<Vec<Vec<usize>>>, Intractable> {
    let ends = |m: Mor| {
        if contravariant {
            (cat.target(m), cat.source(m))
        } else {
            (cat.source(m), cat.target(m))
        }
    };
    // variable index of (m, x) for non-identity m
    let mut var_base = vec![usize::MAX; cat.morphism_count()];
    let mut domains = Vec::new();
    for m in cat.morphisms() {
        if cat.is_identity(m) {
            continue;
        }
        let (from, to) = ends(m);
        var_base[m.0] = domains.len();
        domains.extend(std::iter::repeat_n(sizes[to.0], sizes[from.0]));
    }

    #[derive(Clone, Copy)]
    enum Val {
        Const(usize),
        Var(usize),
    }
    let value = |m: Mor, x: usize| {
        if cat.is_identity(m) {
            Val::Const(x)
        } else {
            Val::Var(var_base[m.0] + x)
        }
    };

    let mut search = Search::new(domains.clone());
    for (g, f) in cat.composable_pairs() {
        if cat.is_identity(g) || cat.is_identity(f) {
            continue;
        }
        let h = cat.comp(g, f);
        // `first` acts before `second`
        let (first, second) = if contravariant { (g, f) } else { (f, g) };
        let (from, mid) = ends(first);
        for x in 0..sizes[from.0] {
            for y in 0..sizes[mid.0] {
                let Val::Var(vf) = value(first, x) else { unreachable!() };
                let Val::Var(vs) = value(second, y) else { unreachable!() };
                let vh = value(h, x);
                let mut vars = vec![vf, vs];
                if let Val::Var(v) = vh {
                    vars.push(v);
                }
                search.constrain(&vars, move |a| {
                    if a[vf] != y {
                        return true;
                    }
                    let hx = match vh {
                        Val::Const(c) => c,
                        Val::Var(v) => a[v],
                    };
                    hx == a[vs]
                });
            }
        }
    }
    let solutions = search.solutions(bounds.enumeration, bounds.exec)?;
    Ok(solutions
        .into_iter()
        .map(|a| {
            cat.morphisms()
                .map(|m| {
                    let (from, _) = ends(m);
                    (0..sizes[from.0])
                        .map(|x| match value(m, x) {
                            Val::Const(c) => c,
                            Val::Var(v) => a[v],
                        })
                        .collect()
                })
                .collect()
        })
        .collect())
}
