use std::collections::HashMap;
use std::fmt;

use crate::label::{first_duplicate, natural_cmp};

use super::CategoryError;

/// An object of a [`FinCategory`], by position.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Obj(pub usize);

/// A morphism of a [`FinCategory`], by position.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mor(pub usize);

impl fmt::Display for Obj {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Arrow {
    name: String,
    source: Obj,
    target: Obj,
}

/// A category with finitely many objects and morphisms and an explicit
/// composition table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinCategory {
    objects: Vec<String>,
    arrows: Vec<Arrow>,
    identities: Vec<Mor>,
    // table[g * m + f] = g∘f
    table: Vec<Option<Mor>>,
    hom: Vec<Vec<Mor>>,
    into: Vec<Vec<Mor>>,
    out_of: Vec<Vec<Mor>>,
}

/// Unvalidated description of a category, as read from a document.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RawCategory {
    pub objects: Vec<String>,
    /// `(name, source, target)`
    pub morphisms: Vec<(String, String, String)>,
    /// `(object, identity morphism)`
    pub identities: Vec<(String, String)>,
    /// `(g, f, g∘f)`. Composites with an identity may be omitted.
    pub compose: Vec<(String, String, String)>,
}

impl FinCategory {
    /// Assembles a category from already-consistent parts. The caller
    /// guarantees the axioms.
    pub(crate) fn from_parts(
        objects: Vec<String>,
        arrows: Vec<(String, Obj, Obj)>,
        identities: Vec<Mor>,
        table: Vec<Option<Mor>>,
    ) -> Self {
        let n = objects.len();
        let arrows: Vec<Arrow> = arrows
            .into_iter()
            .map(|(name, source, target)| Arrow { name, source, target })
            .collect();
        let mut hom = vec![Vec::new(); n * n];
        let mut into = vec![Vec::new(); n];
        let mut out_of = vec![Vec::new(); n];
        for (i, a) in arrows.iter().enumerate() {
            hom[a.source.0 * n + a.target.0].push(Mor(i));
            into[a.target.0].push(Mor(i));
            out_of[a.source.0].push(Mor(i));
        }
        FinCategory {
            objects,
            arrows,
            identities,
            table,
            hom,
            into,
            out_of,
        }
    }

    /// Validates a raw description: every reference resolves, every
    /// composable pair has a typed composite, identities behave and
    /// composition is associative. Objects and morphisms are put in
    /// canonical label order.
    pub fn validate(raw: &RawCategory, max_hom: usize) -> Result<Self, CategoryError> {
        let mut objects = raw.objects.clone();
        objects.sort_by(|a, b| natural_cmp(a, b));
        if let Some(d) = first_duplicate(&objects) {
            return Err(CategoryError::DuplicateName(d.to_string()));
        }
        let obj_index: HashMap<&str, usize> =
            objects.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();
        let find_obj = |name: &str| {
            obj_index
                .get(name)
                .map(|&i| Obj(i))
                .ok_or_else(|| CategoryError::DanglingReference(name.to_string()))
        };

        let mut morphisms = raw.morphisms.clone();
        morphisms.sort_by(|a, b| natural_cmp(&a.0, &b.0));
        let names: Vec<String> = morphisms.iter().map(|m| m.0.clone()).collect();
        if let Some(d) = first_duplicate(&names) {
            return Err(CategoryError::DuplicateName(d.to_string()));
        }
        let mut arrows = Vec::with_capacity(morphisms.len());
        for (name, s, t) in &morphisms {
            arrows.push((name.clone(), find_obj(s)?, find_obj(t)?));
        }
        let mor_index: HashMap<&str, usize> =
            names.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();
        let find_mor = |name: &str| {
            mor_index
                .get(name)
                .map(|&i| Mor(i))
                .ok_or_else(|| CategoryError::DanglingReference(name.to_string()))
        };

        let mut identities: Vec<Option<Mor>> = vec![None; objects.len()];
        for (o, m) in &raw.identities {
            let o = find_obj(o)?;
            let m = find_mor(m)?;
            let (_, s, t) = &arrows[m.0];
            if *s != o || *t != o {
                return Err(CategoryError::IdentityViolation {
                    object: objects[o.0].clone(),
                    detail: format!("`{}` is not an endomorphism of it", names[m.0]),
                });
            }
            if identities[o.0].is_some_and(|prev| prev != m) {
                return Err(CategoryError::IdentityViolation {
                    object: objects[o.0].clone(),
                    detail: "two identity entries".into(),
                });
            }
            identities[o.0] = Some(m);
        }
        let identities: Vec<Mor> = identities
            .into_iter()
            .enumerate()
            .map(|(i, m)| {
                m.ok_or_else(|| CategoryError::IdentityViolation {
                    object: objects[i].clone(),
                    detail: "no identity entry".into(),
                })
            })
            .collect::<Result<_, _>>()?;

        let m = arrows.len();
        let mut table: Vec<Option<Mor>> = vec![None; m * m];
        for (g, f, h) in &raw.compose {
            let (g, f, h) = (find_mor(g)?, find_mor(f)?, find_mor(h)?);
            let (gs, gt) = (arrows[g.0].1, arrows[g.0].2);
            let (fs, ft) = (arrows[f.0].1, arrows[f.0].2);
            if ft != gs {
                return Err(CategoryError::NonComposable {
                    g: names[g.0].clone(),
                    f: names[f.0].clone(),
                });
            }
            if arrows[h.0].1 != fs || arrows[h.0].2 != gt {
                return Err(CategoryError::CompositeMismatch {
                    g: names[g.0].clone(),
                    f: names[f.0].clone(),
                    h: names[h.0].clone(),
                });
            }
            let slot = &mut table[g.0 * m + f.0];
            if slot.is_some_and(|prev| prev != h) {
                return Err(CategoryError::ConflictingComposite {
                    g: names[g.0].clone(),
                    f: names[f.0].clone(),
                });
            }
            *slot = Some(h);
        }
        // identity composites are implied; explicit ones must agree
        for (fi, (_, s, t)) in arrows.iter().enumerate() {
            for (id, other_side) in [(identities[t.0], true), (identities[s.0], false)] {
                let idx = if other_side { id.0 * m + fi } else { fi * m + id.0 };
                match table[idx] {
                    None => table[idx] = Some(Mor(fi)),
                    Some(h) if h.0 == fi => {}
                    Some(h) => {
                        let obj = if other_side { t } else { s };
                        return Err(CategoryError::IdentityViolation {
                            object: objects[obj.0].clone(),
                            detail: format!("identity law fails on `{}` (gives `{}`)", names[fi], names[h.0]),
                        });
                    }
                }
            }
        }

        let cat = FinCategory::from_parts(objects, arrows, identities, table);
        for f in cat.morphisms() {
            for &g in cat.arrows_out_of(cat.target(f)) {
                if cat.compose(g, f).is_none() {
                    return Err(CategoryError::MissingComposite {
                        g: cat.mor_name(g).to_string(),
                        f: cat.mor_name(f).to_string(),
                    });
                }
            }
        }
        if let Some((h, g, f)) = cat.associativity_failure() {
            return Err(CategoryError::AssociativityViolation {
                h: cat.mor_name(h).to_string(),
                g: cat.mor_name(g).to_string(),
                f: cat.mor_name(f).to_string(),
            });
        }
        cat.check_hom_bound(max_hom)?;
        Ok(cat)
    }

    /// The first composable triple `(h, g, f)` with `(h∘g)∘f ≠ h∘(g∘f)`.
    pub fn associativity_failure(&self) -> Option<(Mor, Mor, Mor)> {
        for f in self.morphisms() {
            for &g in self.arrows_out_of(self.target(f)) {
                for &h in self.arrows_out_of(self.target(g)) {
                    let left = self.compose(self.compose(h, g)?, f);
                    let right = self.compose(h, self.compose(g, f)?);
                    if left != right {
                        return Some((h, g, f));
                    }
                }
            }
        }
        None
    }

    pub fn check_hom_bound(&self, max_hom: usize) -> Result<(), CategoryError> {
        for a in self.objects() {
            for b in self.objects() {
                let size = self.hom(a, b).len();
                if size > max_hom {
                    return Err(CategoryError::HomTooLarge {
                        from: self.name(a).to_string(),
                        to: self.name(b).to_string(),
                        size,
                        bound: max_hom,
                    });
                }
            }
        }
        Ok(())
    }

    /// The thin category of a preorder on `labels`. Objects keep the given
    /// order; the morphism `i → j` exists iff `leq(i, j)` and is named `i->j`.
    pub fn preorder(
        labels: Vec<String>,
        leq: impl Fn(usize, usize) -> bool,
    ) -> Result<Self, CategoryError> {
        let n = labels.len();
        if let Some(d) = first_duplicate(&labels) {
            return Err(CategoryError::DuplicateName(d.to_string()));
        }
        let rel: Vec<bool> = (0..n * n).map(|k| leq(k / n, k % n)).collect();
        for i in 0..n {
            if !rel[i * n + i] {
                return Err(CategoryError::IdentityViolation {
                    object: labels[i].clone(),
                    detail: "order relation is not reflexive".into(),
                });
            }
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if rel[i * n + j] && rel[j * n + k] && !rel[i * n + k] {
                        return Err(CategoryError::MissingComposite {
                            g: format!("{}->{}", labels[j], labels[k]),
                            f: format!("{}->{}", labels[i], labels[j]),
                        });
                    }
                }
            }
        }
        let mut index = vec![None; n * n];
        let mut arrows = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if rel[i * n + j] {
                    index[i * n + j] = Some(Mor(arrows.len()));
                    arrows.push((format!("{}->{}", labels[i], labels[j]), Obj(i), Obj(j)));
                }
            }
        }
        let m = arrows.len();
        let mut table = vec![None; m * m];
        for (fi, &(_, s, t)) in arrows.iter().enumerate() {
            for (gi, &(_, gs, gt)) in arrows.iter().enumerate() {
                if gs == t {
                    table[gi * m + fi] = index[s.0 * n + gt.0];
                }
            }
        }
        let identities = (0..n).map(|i| index[i * n + i].expect("reflexive")).collect();
        Ok(FinCategory::from_parts(labels, arrows, identities, table))
    }

    /// The discrete category on the given objects (identities only).
    pub fn discrete(labels: Vec<String>) -> Self {
        FinCategory::preorder(labels, |i, j| i == j).expect("discrete order is valid")
    }

    /// One object, one morphism.
    pub fn terminal() -> Self {
        FinCategory::discrete(vec!["*".to_string()])
    }

    /// The walking arrow `0 → 1`, with the non-identity arrow named `a`.
    pub fn arrow() -> Self {
        let raw = RawCategory {
            objects: vec!["0".into(), "1".into()],
            morphisms: vec![
                ("a".into(), "0".into(), "1".into()),
                ("id_0".into(), "0".into(), "0".into()),
                ("id_1".into(), "1".into(), "1".into()),
            ],
            identities: vec![("0".into(), "id_0".into()), ("1".into(), "id_1".into())],
            compose: vec![],
        };
        FinCategory::validate(&raw, usize::MAX).expect("walking arrow is valid")
    }

    /// Two parallel arrows `f, g: 0 ⇒ 1`.
    pub fn parallel_pair() -> Self {
        let raw = RawCategory {
            objects: vec!["0".into(), "1".into()],
            morphisms: vec![
                ("f".into(), "0".into(), "1".into()),
                ("g".into(), "0".into(), "1".into()),
                ("id_0".into(), "0".into(), "0".into()),
                ("id_1".into(), "1".into(), "1".into()),
            ],
            identities: vec![("0".into(), "id_0".into()), ("1".into(), "id_1".into())],
            compose: vec![],
        };
        FinCategory::validate(&raw, usize::MAX).expect("parallel pair is valid")
    }

    /// The cospan `A --f--> C <--g-- B`.
    pub fn cospan() -> Self {
        let raw = RawCategory {
            objects: vec!["A".into(), "B".into(), "C".into()],
            morphisms: vec![
                ("f".into(), "A".into(), "C".into()),
                ("g".into(), "B".into(), "C".into()),
                ("id_A".into(), "A".into(), "A".into()),
                ("id_B".into(), "B".into(), "B".into()),
                ("id_C".into(), "C".into(), "C".into()),
            ],
            identities: vec![
                ("A".into(), "id_A".into()),
                ("B".into(), "id_B".into()),
                ("C".into(), "id_C".into()),
            ],
            compose: vec![],
        };
        FinCategory::validate(&raw, usize::MAX).expect("cospan is valid")
    }

    /// The span `A <--f-- C --g--> B`.
    pub fn span() -> Self {
        FinCategory::cospan().opposite()
    }

    /// The opposite category: same names, reversed arrows.
    pub fn opposite(&self) -> Self {
        let m = self.arrows.len();
        let arrows = self
            .arrows
            .iter()
            .map(|a| (a.name.clone(), a.target, a.source))
            .collect();
        let mut table = vec![None; m * m];
        for g in 0..m {
            for f in 0..m {
                // g ∘op f = f ∘ g
                table[g * m + f] = self.table[f * m + g];
            }
        }
        FinCategory::from_parts(self.objects.clone(), arrows, self.identities.clone(), table)
    }

    /// The full subcategory on `keep` (in the given order), with a map from
    /// new morphism indices to old ones.
    pub fn full_subcategory(&self, keep: &[Obj]) -> (Self, Vec<Mor>) {
        let pos: HashMap<Obj, usize> = keep.iter().enumerate().map(|(i, &o)| (o, i)).collect();
        let kept: Vec<Mor> = self
            .morphisms()
            .filter(|&f| pos.contains_key(&self.source(f)) && pos.contains_key(&self.target(f)))
            .collect();
        let new_index: HashMap<Mor, usize> = kept.iter().enumerate().map(|(i, &f)| (f, i)).collect();
        let arrows = kept
            .iter()
            .map(|&f| {
                (
                    self.mor_name(f).to_string(),
                    Obj(pos[&self.source(f)]),
                    Obj(pos[&self.target(f)]),
                )
            })
            .collect();
        let m = kept.len();
        let mut table = vec![None; m * m];
        for (gi, &g) in kept.iter().enumerate() {
            for (fi, &f) in kept.iter().enumerate() {
                table[gi * m + fi] = self.compose(g, f).map(|h| Mor(new_index[&h]));
            }
        }
        let identities = keep.iter().map(|&o| Mor(new_index[&self.identity(o)])).collect();
        let objects = keep.iter().map(|&o| self.name(o).to_string()).collect();
        (FinCategory::from_parts(objects, arrows, identities, table), kept)
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn morphism_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn objects(&self) -> impl Iterator<Item = Obj> + Clone + '_ {
        (0..self.objects.len()).map(Obj)
    }

    pub fn morphisms(&self) -> impl Iterator<Item = Mor> + Clone + '_ {
        (0..self.arrows.len()).map(Mor)
    }

    pub fn name(&self, o: Obj) -> &str {
        &self.objects[o.0]
    }

    pub fn mor_name(&self, f: Mor) -> &str {
        &self.arrows[f.0].name
    }

    pub fn object_names(&self) -> &[String] {
        &self.objects
    }

    pub fn object_by_name(&self, name: &str) -> Option<Obj> {
        self.objects.iter().position(|o| o == name).map(Obj)
    }

    pub fn morphism_by_name(&self, name: &str) -> Option<Mor> {
        self.arrows.iter().position(|a| a.name == name).map(Mor)
    }

    pub fn source(&self, f: Mor) -> Obj {
        self.arrows[f.0].source
    }

    pub fn target(&self, f: Mor) -> Obj {
        self.arrows[f.0].target
    }

    pub fn identity(&self, o: Obj) -> Mor {
        self.identities[o.0]
    }

    pub fn is_identity(&self, f: Mor) -> bool {
        self.identities[self.source(f).0] == f
    }

    /// `g ∘ f`, when `target(f) = source(g)`.
    pub fn compose(&self, g: Mor, f: Mor) -> Option<Mor> {
        self.table[g.0 * self.arrows.len() + f.0]
    }

    /// `g ∘ f` for a pair known to be composable.
    pub fn comp(&self, g: Mor, f: Mor) -> Mor {
        self.compose(g, f).unwrap_or_else(|| {
            panic!("`{}` and `{}` are not composable", self.mor_name(g), self.mor_name(f))
        })
    }

    pub fn hom(&self, a: Obj, b: Obj) -> &[Mor] {
        &self.hom[a.0 * self.objects.len() + b.0]
    }

    /// All morphisms with codomain `u`.
    pub fn arrows_into(&self, u: Obj) -> &[Mor] {
        &self.into[u.0]
    }

    /// All morphisms with domain `u`.
    pub fn arrows_out_of(&self, u: Obj) -> &[Mor] {
        &self.out_of[u.0]
    }

    /// True when every Hom-set has at most one element.
    pub fn is_thin(&self) -> bool {
        self.hom.iter().all(|h| h.len() <= 1)
    }

    /// True for the category of a partial order.
    pub fn is_poset(&self) -> bool {
        self.is_thin()
            && self.objects().all(|a| {
                self.objects()
                    .all(|b| a == b || self.hom(a, b).is_empty() || self.hom(b, a).is_empty())
            })
    }

    /// `a ≤ b` in a thin category.
    pub fn leq(&self, a: Obj, b: Obj) -> bool {
        !self.hom(a, b).is_empty()
    }

    /// The unique arrow `a → b` in a thin category.
    pub fn arrow_between(&self, a: Obj, b: Obj) -> Option<Mor> {
        self.hom(a, b).first().copied()
    }

    /// Greatest lower bound in a thin category.
    pub fn meet(&self, a: Obj, b: Obj) -> Option<Obj> {
        let lower: Vec<Obj> = self
            .objects()
            .filter(|&c| self.leq(c, a) && self.leq(c, b))
            .collect();
        lower
            .iter()
            .copied()
            .find(|&m| lower.iter().all(|&c| self.leq(c, m)))
    }

    /// Objects below `u` in a thin category, in object order.
    pub fn down_set(&self, u: Obj) -> Vec<Obj> {
        self.objects().filter(|&v| self.leq(v, u)).collect()
    }

    /// Composable triples `(h, g, f)` with `h∘g∘f` defined.
    pub fn composable_pairs(&self) -> impl Iterator<Item = (Mor, Mor)> + '_ {
        self.morphisms()
            .flat_map(move |f| self.arrows_out_of(self.target(f)).iter().map(move |&g| (g, f)))
    }

    /// Raw description of this category, suitable for re-validation.
    pub fn to_raw(&self) -> RawCategory {
        RawCategory {
            objects: self.objects.clone(),
            morphisms: self
                .arrows
                .iter()
                .map(|a| (a.name.clone(), self.objects[a.source.0].clone(), self.objects[a.target.0].clone()))
                .collect(),
            identities: self
                .objects()
                .map(|o| (self.name(o).to_string(), self.mor_name(self.identity(o)).to_string()))
                .collect(),
            compose: self
                .composable_pairs()
                .filter(|&(g, f)| !self.is_identity(g) && !self.is_identity(f))
                .map(|(g, f)| {
                    (
                        self.mor_name(g).to_string(),
                        self.mor_name(f).to_string(),
                        self.mor_name(self.comp(g, f)).to_string(),
                    )
                })
                .collect(),
        }
    }
}
