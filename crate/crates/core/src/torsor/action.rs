use crate::fincat::{FinCategory, Obj, Presheaf, SetFunctor};
use crate::site::GrothendieckTopology;

use super::{GroupSheaf, TorsorError};

/// A presheaf with a right action of a group sheaf, compatible with restriction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorsorCandidate {
    pub space: Presheaf,
    pub group: GroupSheaf,
    // action[u][p][g] = p·g
    action: Vec<Vec<Vec<usize>>>,
}

impl TorsorCandidate {
    /// Checks the unit law, `(p·g)·h = p·(gh)` and that restriction is equivariant.
    pub fn new(space: Presheaf, group: GroupSheaf, action: Vec<Vec<Vec<usize>>>) -> Result<Self, TorsorError> {
        let cat = group.base().clone();
        if space.base() != &cat {
            return Err(TorsorError::Shape("space and group live over different sites".into()));
        }
        for u in cat.objects() {
            let (n, g) = (space.size(u), &group.groups[u.0]);
            let rows = action.get(u.0).ok_or_else(|| TorsorError::Shape("one action table per object".into()))?;
            if rows.len() != n || rows.iter().any(|r| r.len() != g.len() || r.iter().any(|&q| q >= n)) {
                return Err(TorsorError::Shape(format!("action table at `{}`", cat.name(u))));
            }
            for p in 0..n {
                if rows[p][g.unit()] != p {
                    return Err(TorsorError::InvalidAction(format!(
                        "the unit moves `{}` over `{}`",
                        space.label(u, p),
                        cat.name(u)
                    )));
                }
                for a in 0..g.len() {
                    for b in 0..g.len() {
                        if rows[rows[p][a]][b] != rows[p][g.mul(a, b)] {
                            return Err(TorsorError::InvalidAction(format!(
                                "(`{}`·{})·{} differs from `{}`·({}{}) over `{}`",
                                space.label(u, p),
                                g.label(a),
                                g.label(b),
                                space.label(u, p),
                                g.label(a),
                                g.label(b),
                                cat.name(u)
                            )));
                        }
                    }
                }
            }
        }
        for m in cat.morphisms() {
            let (v, u) = (cat.source(m), cat.target(m));
            for p in 0..space.size(u) {
                for a in 0..group.groups[u.0].len() {
                    let lhs = space.restrict(m, action[u.0][p][a]);
                    let rhs = action[v.0][space.restrict(m, p)][group.presheaf.restrict(m, a)];
                    if lhs != rhs {
                        return Err(TorsorError::InvalidAction(format!(
                            "restriction along `{}` is not equivariant at `{}`",
                            cat.mor_name(m),
                            space.label(u, p)
                        )));
                    }
                }
            }
        }
        Ok(TorsorCandidate { space, group, action })
    }

    pub fn from_fn(space: Presheaf, group: GroupSheaf, act: impl Fn(Obj, usize, usize) -> usize) -> Result<Self, TorsorError> {
        let cat = group.base().clone();
        let action = cat
            .objects()
            .map(|u| (0..space.size(u)).map(|p| (0..group.groups[u.0].len()).map(|g| act(u, p, g)).collect()).collect())
            .collect();
        TorsorCandidate::new(space, group, action)
    }

    /// `G` acting on itself by right multiplication.
    pub fn trivial(group: &GroupSheaf) -> Self {
        let g = group.clone();
        TorsorCandidate::from_fn(group.presheaf.clone(), group.clone(), |u, p, a| g.groups[u.0].mul(p, a))
            .expect("right multiplication is an action")
    }

    pub fn base(&self) -> &FinCategory {
        self.space.base()
    }

    pub fn act(&self, u: Obj, p: usize, g: usize) -> usize {
        self.action[u.0][p][g]
    }

    pub fn action(&self) -> &[Vec<Vec<usize>>] {
        &self.action
    }
}

/// Where local nonemptiness is required.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Nonemptiness {
    /// At every object.
    #[default]
    Universal,
    /// Only at terminal objects of the site.
    AtTerminal,
}

/// A pair `p, q` over `object` together with every `g` such that `q = p·g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transitivity {
    pub object: String,
    pub from: String,
    pub to: String,
    pub carriers: Vec<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TorsorReport {
    /// Objects with no covering sieve on which every domain has a section.
    pub locally_empty: Vec<String>,
    /// Pairs carried to each other by no group element or by several.
    pub not_unique: Vec<Transitivity>,
}

impl TorsorReport {
    pub fn holds(&self) -> bool {
        self.locally_empty.is_empty() && self.not_unique.is_empty()
    }

    /// Pairs with several carriers; `q = p` with a nontrivial carrier is a fixed point.
    pub fn not_free(&self) -> impl Iterator<Item = &Transitivity> {
        self.not_unique.iter().filter(|t| t.carriers.len() > 1)
    }

    pub fn not_transitive(&self) -> impl Iterator<Item = &Transitivity> {
        self.not_unique.iter().filter(|t| t.carriers.is_empty())
    }
}

fn locally_nonempty(space: &Presheaf, j: &GrothendieckTopology, u: Obj) -> bool {
    let cat = j.base();
    j.covers(u).iter().any(|s| s.arrows().iter().all(|&f| space.size(cat.source(f)) > 0))
}

fn nonemptiness_objects(cat: &FinCategory, reading: Nonemptiness) -> Vec<Obj> {
    match reading {
        Nonemptiness::Universal => cat.objects().collect(),
        Nonemptiness::AtTerminal => cat
            .objects()
            .filter(|&t| cat.objects().all(|v| cat.hom(v, t).len() == 1))
            .collect(),
    }
}

/// Local nonemptiness and unique transitivity, with every failure named.
pub fn is_torsor(t: &TorsorCandidate, j: &GrothendieckTopology, reading: Nonemptiness) -> TorsorReport {
    let cat = t.base();
    let mut report = TorsorReport::default();
    for u in nonemptiness_objects(cat, reading) {
        if !locally_nonempty(&t.space, j, u) {
            report.locally_empty.push(cat.name(u).to_string());
        }
    }
    for u in cat.objects() {
        let g = &t.group.groups[u.0];
        for p in 0..t.space.size(u) {
            for q in 0..t.space.size(u) {
                let carriers: Vec<usize> = (0..g.len()).filter(|&a| t.act(u, p, a) == q).collect();
                if carriers.len() != 1 {
                    report.not_unique.push(Transitivity {
                        object: cat.name(u).to_string(),
                        from: t.space.label(u, p).to_string(),
                        to: t.space.label(u, q).to_string(),
                        carriers: carriers.iter().map(|&a| g.label(a).to_string()).collect(),
                    });
                }
            }
        }
    }
    report
}

/// Two pairs `(p, g)`, `(p, h)` with the same image `(p, p·g)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Collision {
    pub object: String,
    pub element: String,
    pub first: String,
    pub second: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CanonicalReport {
    pub collisions: Vec<Collision>,
    /// Pairs `(p, q)` outside the image of `(p, g) ↦ (p, p·g)`, as `(object, p, q)`.
    pub missed: Vec<(String, String, String)>,
    /// Objects over which `P → 1` is not locally surjective.
    pub not_epi: Vec<String>,
}

impl CanonicalReport {
    pub fn holds(&self) -> bool {
        self.collisions.is_empty() && self.missed.is_empty() && self.not_epi.is_empty()
    }
}

/// Checks that `P × G → P × P, (p, g) ↦ (p, p·g)` is a bijection at every
/// object and that `P → 1` is locally surjective.
pub fn canonical_map_check(t: &TorsorCandidate, j: &GrothendieckTopology) -> CanonicalReport {
    let cat = t.base();
    let mut report = CanonicalReport::default();
    for u in cat.objects() {
        let g = &t.group.groups[u.0];
        let label = |p: usize| t.space.label(u, p).to_string();
        for p in 0..t.space.size(u) {
            let mut hit: Vec<Option<usize>> = vec![None; t.space.size(u)];
            for a in 0..g.len() {
                let q = t.act(u, p, a);
                match hit[q] {
                    Some(b) => report.collisions.push(Collision {
                        object: cat.name(u).to_string(),
                        element: label(p),
                        first: g.label(b).to_string(),
                        second: g.label(a).to_string(),
                    }),
                    None => hit[q] = Some(a),
                }
            }
            for (q, h) in hit.iter().enumerate() {
                if h.is_none() {
                    report.missed.push((cat.name(u).to_string(), label(p), label(q)));
                }
            }
        }
        if !locally_nonempty(&t.space, j, u) {
            report.not_epi.push(cat.name(u).to_string());
        }
    }
    report
}
