use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};
use std::rc::Rc;
use std::sync::Arc;

use sha2::{Digest, Sha256};
use workbench_core::classifier::{omega, Subobject};
use workbench_core::fincat::{yoneda_presheaf, FinCategory, FinFunctor, Obj, Presheaf, RawCategory};
use workbench_core::limits::examples::{inclusion_chain, two_adic_tower};
use workbench_core::limits::Diagram;
use workbench_core::logic::{Formula, Signature, Structure};
use workbench_core::sheaf::examples::{constant_on_nonempty, locally_constant};
use workbench_core::site::{generate_sieve, open_cover_topology, FiniteSpace, GrothendieckTopology, OpenCoverSite, Sieve};
use workbench_core::torsor::{glue_torsor, Cocycle, Cover, FiniteGroup, Glued, GroupSheaf, TorsorCandidate};
use workbench_core::Bounds;

use crate::load::{DocumentSet, LoadError};
use crate::schema::*;

/// A category with a topology, and the space it came from if any.
#[derive(Debug)]
pub struct Site {
    pub name: String,
    pub category: Arc<FinCategory>,
    pub topology: GrothendieckTopology,
    pub space: Option<OpenCoverSite>,
}

impl Site {
    /// Looks up an object by name, or for spaces also by set notation.
    pub fn object(&self, name: &str) -> Option<Obj> {
        self.category
            .object_by_name(name)
            .or_else(|| self.space.as_ref().and_then(|s| s.object_by_label(name)))
    }
}

#[derive(Debug)]
pub struct PresheafOn {
    pub presheaf: Presheaf,
    pub site: Rc<Site>,
}

#[derive(Debug)]
pub struct GroupOn {
    pub group: GroupSheaf,
    pub site: Rc<Site>,
}

#[derive(Debug)]
pub struct ActionOn {
    pub torsor: TorsorCandidate,
    /// The topology the torsor is checked against; for glued torsors this
    /// is the slice below the cover's target.
    pub topology: GrothendieckTopology,
    pub group: Rc<GroupOn>,
    pub glued: Option<(Glued, Rc<CocycleOn>)>,
}

#[derive(Debug)]
pub struct CocycleOn {
    pub cocycle: Cocycle,
    pub group: Rc<GroupOn>,
    pub group_name: String,
}

pub struct FormulaOn {
    pub structure: Structure,
    pub formula: Formula,
    pub signature: Signature,
    pub site: Rc<Site>,
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct Input {
    pub name: String,
    pub kind: String,
    pub sha256: String,
}

/// Resolves documents on demand, caching results and recording every
/// document touched so reports can list their inputs.
pub struct Resolver<'a> {
    docs: &'a DocumentSet,
    bounds: Bounds,
    touched: RefCell<BTreeMap<String, Input>>,
    categories: RefCell<HashMap<String, Arc<FinCategory>>>,
    sites: RefCell<HashMap<String, Rc<Site>>>,
    presheaves: RefCell<HashMap<String, Rc<PresheafOn>>>,
    groups: RefCell<HashMap<String, Rc<GroupOn>>>,
    actions: RefCell<HashMap<String, Rc<ActionOn>>>,
    cocycles: RefCell<HashMap<String, Rc<CocycleOn>>>,
    formulas: RefCell<HashMap<String, Rc<FormulaOn>>>,
    diagrams: RefCell<HashMap<String, Rc<Diagram>>>,
    functors: RefCell<HashMap<String, Rc<FinFunctor>>>,
}

fn cached<T>(cache: &RefCell<HashMap<String, Rc<T>>>, name: &str, build: impl FnOnce() -> Result<T, LoadError>) -> Result<Rc<T>, LoadError> {
    if let Some(v) = cache.borrow().get(name) {
        return Ok(v.clone());
    }
    let v = Rc::new(build()?);
    cache.borrow_mut().insert(name.to_string(), v.clone());
    Ok(v)
}

pub fn digest(doc: &Document) -> String {
    let hash = Sha256::digest(doc.to_canonical().as_bytes());
    hash.iter().map(|b| format!("{b:02x}")).collect()
}

impl<'a> Resolver<'a> {
    pub fn new(docs: &'a DocumentSet, bounds: Bounds) -> Self {
        Resolver {
            docs,
            bounds,
            touched: RefCell::default(),
            categories: RefCell::default(),
            sites: RefCell::default(),
            presheaves: RefCell::default(),
            groups: RefCell::default(),
            actions: RefCell::default(),
            cocycles: RefCell::default(),
            formulas: RefCell::default(),
            diagrams: RefCell::default(),
            functors: RefCell::default(),
        }
    }

    pub fn bounds(&self) -> &Bounds {
        &self.bounds
    }

    /// Every document touched so far, by name.
    pub fn inputs(&self) -> Vec<Input> {
        self.touched.borrow().values().cloned().collect()
    }

    /// Fetches a document, recording it as an input. `from` names the
    /// referring document for error messages.
    pub fn document(&self, from: &str, name: &str) -> Result<&'a Document, LoadError> {
        let entry = self.docs.get(name).ok_or_else(|| LoadError::unresolved(from, name))?;
        self.touched.borrow_mut().entry(name.to_string()).or_insert_with(|| Input {
            name: name.to_string(),
            kind: entry.document.kind().to_string(),
            sha256: digest(&entry.document),
        });
        Ok(&entry.document)
    }

    fn wrong(&self, from: &str, name: &str, doc: &Document, expected: &str) -> LoadError {
        LoadError::WrongKind {
            document: from.to_string(),
            reference: name.to_string(),
            found: doc.kind().to_string(),
            expected: expected.to_string(),
        }
    }

    /// Resolves a document of any kind; used to validate whole sets.
    pub fn resolve_any(&self, name: &str) -> Result<(), LoadError> {
        match self.document(name, name)? {
            Document::Category(_) => self.category(name, name).map(|_| ()),
            Document::Space(_) | Document::Topology(_) => self.site(name, name).map(|_| ()),
            Document::Presheaf(_) => self.presheaf(name, name).map(|_| ()),
            Document::GroupSheaf(_) => self.group(name, name).map(|_| ()),
            Document::Action(_) => self.action(name, name).map(|_| ()),
            Document::Cocycle(_) => self.cocycle(name, name).map(|_| ()),
            Document::Formula(_) => self.formula(name, name).map(|_| ()),
            Document::Diagram(_) => self.diagram(name, name).map(|_| ()),
            Document::Functor(_) => self.functor(name, name).map(|_| ()),
        }
    }

    /// The unvalidated category of a category document, with every name
    /// reference checked.
    pub fn raw_category(&self, d: &CategoryDoc) -> Result<RawCategory, LoadError> {
        let objects = &d.objects;
        let known = |o: &str| objects.iter().any(|x| x == o);
        for m in &d.morphisms {
            for end in [&m.source, &m.target] {
                if !known(end) {
                    return Err(LoadError::unresolved(&d.name, end));
                }
            }
        }
        let mut morphisms: Vec<(String, String, String)> = d
            .morphisms
            .iter()
            .map(|m| (m.name.clone(), m.source.clone(), m.target.clone()))
            .collect();
        let identities: Vec<(String, String)> = objects.iter().map(|o| (o.clone(), format!("id_{o}"))).collect();
        morphisms.extend(identities.iter().map(|(o, i)| (i.clone(), o.clone(), o.clone())));
        for (g, f, h) in &d.compose {
            for m in [g, f, h] {
                if !morphisms.iter().any(|x| &x.0 == m) {
                    return Err(LoadError::unresolved(&d.name, m));
                }
            }
        }
        Ok(RawCategory {
            objects: objects.clone(),
            morphisms,
            identities,
            compose: d.compose.clone(),
        })
    }

    /// A category: from a category document, or the underlying category of
    /// a space or topology.
    pub fn category(&self, from: &str, name: &str) -> Result<Arc<FinCategory>, LoadError> {
        if let Some(c) = self.categories.borrow().get(name) {
            return Ok(c.clone());
        }
        let cat = match self.document(from, name)? {
            Document::Category(d) => {
                let raw = self.raw_category(d)?;
                Arc::new(FinCategory::validate(&raw, self.bounds.max_hom).map_err(|e| LoadError::semantic(name, e))?)
            }
            Document::Space(_) | Document::Topology(_) => self.site(from, name)?.category.clone(),
            other => return Err(self.wrong(from, name, other, "a category, space or topology")),
        };
        self.categories.borrow_mut().insert(name.to_string(), cat.clone());
        Ok(cat)
    }

    pub fn space(&self, d: &SpaceDoc) -> Result<FiniteSpace, LoadError> {
        let mut space = match (&d.opens, &d.subbasis) {
            (Some(opens), None) => FiniteSpace::new(d.points.clone(), opens.clone()),
            (None, Some(sub)) => FiniteSpace::generated(d.points.clone(), sub.clone()),
            _ => return Err(LoadError::semantic(&d.name, "give exactly one of `opens` and `subbasis`")),
        }
        .map_err(|e| LoadError::semantic(&d.name, e))?;
        for (label, members) in &d.names {
            let members: Vec<&str> = members.iter().map(|s| s.as_str()).collect();
            space.name_open(&members, label).map_err(|e| LoadError::semantic(&d.name, e))?;
        }
        Ok(space)
    }

    /// The topology of a topology document, without checking the axioms.
    pub fn topology(&self, d: &TopologyDoc) -> Result<GrothendieckTopology, LoadError> {
        let cat = self.category(&d.name, &d.category)?;
        let mut families = Vec::new();
        for (obj, fams) in &d.covers {
            let u = cat.object_by_name(obj).ok_or_else(|| LoadError::unresolved(&d.name, obj))?;
            for fam in fams {
                let arrows = fam
                    .iter()
                    .map(|m| cat.morphism_by_name(m).ok_or_else(|| LoadError::unresolved(&d.name, m)))
                    .collect::<Result<Vec<_>, _>>()?;
                families.push((u, arrows));
            }
        }
        let sem = |e| LoadError::semantic(&d.name, e);
        if d.saturate {
            return GrothendieckTopology::generated(cat, &families, &self.bounds).map_err(sem);
        }
        let mut covers: Vec<Vec<Sieve>> = cat.objects().map(|u| vec![Sieve::maximal(&cat, u)]).collect();
        for (u, fam) in &families {
            let s = generate_sieve(&cat, *u, fam).map_err(sem)?;
            if !covers[u.0].contains(&s) {
                covers[u.0].push(s);
            }
        }
        GrothendieckTopology::from_sieves(cat, covers).map_err(sem)
    }

    /// A site: a space with its open-cover topology, a topology document
    /// (whose axioms must hold), or a bare category with the trivial topology.
    pub fn site(&self, from: &str, name: &str) -> Result<Rc<Site>, LoadError> {
        let doc = self.document(from, name)?;
        cached(&self.sites, name, || match doc {
            Document::Space(d) => {
                let space = self.space(d)?;
                let s = open_cover_topology(&space, &self.bounds).map_err(|e| LoadError::semantic(name, e))?;
                Ok(Site {
                    name: name.to_string(),
                    category: s.category.clone(),
                    topology: s.topology.clone(),
                    space: Some(s),
                })
            }
            Document::Topology(d) => {
                let j = self.topology(d)?;
                let report = workbench_core::site::validate_topology(&j, &self.bounds).map_err(|e| LoadError::semantic(name, e))?;
                if let Some(v) = report.violations.first() {
                    return Err(LoadError::semantic(name, format!("not a Grothendieck topology: {v:?}")));
                }
                Ok(Site {
                    name: name.to_string(),
                    category: j.base().clone(),
                    topology: j,
                    space: None,
                })
            }
            Document::Category(_) => {
                let cat = self.category(from, name)?;
                Ok(Site {
                    name: name.to_string(),
                    topology: GrothendieckTopology::trivial(cat.clone()),
                    category: cat,
                    space: None,
                })
            }
            other => Err(self.wrong(from, name, other, "a space, topology or category")),
        })
    }

    fn object(&self, doc: &str, site: &Site, name: &str) -> Result<Obj, LoadError> {
        site.object(name).ok_or_else(|| LoadError::unresolved(doc, name))
    }

    fn space_of<'s>(&self, doc: &str, site: &'s Site) -> Result<&'s OpenCoverSite, LoadError> {
        site.space
            .as_ref()
            .ok_or_else(|| LoadError::semantic(doc, format!("`{}` is not a space", site.name)))
    }

    pub fn presheaf(&self, from: &str, name: &str) -> Result<Rc<PresheafOn>, LoadError> {
        let doc = self.document(from, name)?;
        let Document::Presheaf(d) = doc else {
            return Err(self.wrong(from, name, doc, "a presheaf"));
        };
        cached(&self.presheaves, name, || {
            let site = self.site(name, &d.site)?;
            let cat = site.category.clone();
            let sem = |e: String| LoadError::semantic(name, e);
            fn strs(v: &[String]) -> Vec<&str> {
                v.iter().map(|s| s.as_str()).collect()
            }
            let presheaf = match (&d.values, &d.construction) {
                (Some(values), None) => {
                    let values = values
                        .iter()
                        .map(|(o, v)| Ok((cat.name(self.object(name, &site, o)?).to_string(), v.clone())))
                        .collect::<Result<Vec<_>, LoadError>>()?;
                    let restrictions: Vec<(String, Vec<(String, String)>)> = d
                        .restrictions
                        .iter()
                        .flatten()
                        .map(|(m, pairs)| (m.clone(), pairs.iter().map(|(x, y)| (x.clone(), y.clone())).collect()))
                        .collect();
                    Presheaf::from_labels(cat, &values, &restrictions).map_err(|e| sem(e.to_string()))?
                }
                (None, Some(c)) if d.restrictions.is_none() => match c {
                    PresheafConstruction::Terminal => Presheaf::terminal(cat),
                    PresheafConstruction::Empty => Presheaf::empty(cat),
                    PresheafConstruction::Constant { values } => Presheaf::constant(cat, values, &[]),
                    PresheafConstruction::ConstantOnNonempty { values } => {
                        constant_on_nonempty(&cat, &self.space_of(name, &site)?.space, &strs(values))
                    }
                    PresheafConstruction::LocallyConstant { values } => {
                        locally_constant(&cat, &self.space_of(name, &site)?.space, &strs(values))
                    }
                    PresheafConstruction::Representable { object } => yoneda_presheaf(&cat, self.object(name, &site, object)?),
                    PresheafConstruction::Omega => omega(&site.topology, &self.bounds).map_err(|e| sem(e.to_string()))?.presheaf,
                },
                _ => return Err(sem("give either `values` (with optional `restrictions`) or a `construction`".into())),
            };
            Ok(PresheafOn { presheaf, site })
        })
    }

    pub fn group(&self, from: &str, name: &str) -> Result<Rc<GroupOn>, LoadError> {
        let doc = self.document(from, name)?;
        let Document::GroupSheaf(d) = doc else {
            return Err(self.wrong(from, name, doc, "a group sheaf"));
        };
        cached(&self.groups, name, || {
            let site = self.site(name, &d.site)?;
            let sem = |e: String| LoadError::semantic(name, e);
            let g = match (&d.group.cyclic, &d.group.elements, &d.group.table) {
                (Some(n), None, None) if *n > 0 => FiniteGroup::cyclic(*n),
                (None, Some(elements), Some(table)) => {
                    let idx = |l: &String| {
                        elements
                            .iter()
                            .position(|e| e == l)
                            .ok_or_else(|| sem(format!("`{l}` is not a group element")))
                    };
                    let table = table
                        .iter()
                        .map(|row| row.iter().map(idx).collect::<Result<Vec<_>, _>>())
                        .collect::<Result<Vec<_>, _>>()?;
                    FiniteGroup::new(elements.clone(), table).map_err(|e| sem(e.to_string()))?
                }
                _ => return Err(sem("give `cyclic: n` with n > 0, or `elements` and `table`".into())),
            };
            let group = match d.sheaf {
                GroupSheafShape::LocallyConstant => GroupSheaf::locally_constant(self.space_of(name, &site)?, &g),
                GroupSheafShape::Constant => GroupSheaf::constant(site.category.clone(), &g),
            };
            Ok(GroupOn { group, site })
        })
    }

    pub fn cocycle(&self, from: &str, name: &str) -> Result<Rc<CocycleOn>, LoadError> {
        let doc = self.document(from, name)?;
        let Document::Cocycle(d) = doc else {
            return Err(self.wrong(from, name, doc, "a cocycle"));
        };
        cached(&self.cocycles, name, || {
            let group = self.group(name, &d.group)?;
            let site = &group.site;
            let target = self.object(name, site, &d.target)?;
            let members = d
                .members
                .iter()
                .map(|m| self.object(name, site, m))
                .collect::<Result<Vec<_>, _>>()?;
            let cover = Cover::new(&site.topology, target, members).map_err(|e| LoadError::semantic(name, e))?;
            let pos = |m: &String| {
                d.members
                    .iter()
                    .position(|x| x == m)
                    .ok_or_else(|| LoadError::semantic(name, format!("`{m}` is not a member of the cover")))
            };
            let entries = d
                .values
                .iter()
                .map(|(i, j, g)| Ok((pos(i)?, pos(j)?, g.as_str())))
                .collect::<Result<Vec<_>, LoadError>>()?;
            let cocycle = Cocycle::from_labels(&group.group, cover, &entries).map_err(|e| LoadError::semantic(name, e))?;
            Ok(CocycleOn {
                cocycle,
                group: group.clone(),
                group_name: d.group.clone(),
            })
        })
    }

    pub fn action(&self, from: &str, name: &str) -> Result<Rc<ActionOn>, LoadError> {
        let doc = self.document(from, name)?;
        let Document::Action(d) = doc else {
            return Err(self.wrong(from, name, doc, "an action"));
        };
        cached(&self.actions, name, || {
            let group = self.group(name, &d.group)?;
            let sem = |e: String| LoadError::semantic(name, e);
            match &d.construction {
                ActionConstruction::Trivial => Ok(ActionOn {
                    torsor: TorsorCandidate::trivial(&group.group),
                    topology: group.site.topology.clone(),
                    group,
                    glued: None,
                }),
                ActionConstruction::Glue { cocycle } => {
                    let c = self.cocycle(name, cocycle)?;
                    if c.group_name != d.group {
                        return Err(sem(format!("cocycle `{cocycle}` takes values in `{}`, not `{}`", c.group_name, d.group)));
                    }
                    let glued =
                        glue_torsor(&group.group, &c.cocycle, &group.site.topology, &self.bounds).map_err(|e| sem(e.to_string()))?;
                    Ok(ActionOn {
                        torsor: glued.torsor.clone(),
                        topology: glued.topology.clone(),
                        group,
                        glued: Some((glued, c)),
                    })
                }
                ActionConstruction::Explicit { space, table } => {
                    let p = self.presheaf(name, space)?;
                    if p.site.category != group.site.category {
                        return Err(sem(format!("`{space}` and `{}` live over different sites", d.group)));
                    }
                    let cat = &group.site.category;
                    let f = &p.presheaf;
                    let g = &group.group;
                    let mut action = Vec::new();
                    for u in cat.objects() {
                        let rows = table.get(cat.name(u)).ok_or_else(|| sem(format!("no action given over `{}`", cat.name(u))))?;
                        let mut here = Vec::new();
                        for x in 0..f.elements(u).len() {
                            let row = rows
                                .get(f.label(u, x))
                                .ok_or_else(|| sem(format!("no action given on `{}` over `{}`", f.label(u, x), cat.name(u))))?;
                            let mut images = Vec::new();
                            for a in 0..g.groups[u.0].len() {
                                let label = g.presheaf.label(u, a);
                                let y = row
                                    .get(label)
                                    .and_then(|y| f.position(u, y))
                                    .ok_or_else(|| sem(format!("no valid image of `{}`·`{label}` over `{}`", f.label(u, x), cat.name(u))))?;
                                images.push(y);
                            }
                            here.push(images);
                        }
                        action.push(here);
                    }
                    let torsor = TorsorCandidate::new(f.clone(), g.clone(), action).map_err(|e| sem(e.to_string()))?;
                    Ok(ActionOn {
                        torsor,
                        topology: group.site.topology.clone(),
                        group,
                        glued: None,
                    })
                }
            }
        })
    }

    /// A presheaf usable as a sort: a presheaf document, or the underlying
    /// sheaf of an action.
    pub fn sort(&self, from: &str, name: &str) -> Result<Presheaf, LoadError> {
        match self.document(from, name)? {
            Document::Action(_) => Ok(self.action(from, name)?.torsor.space.clone()),
            Document::Presheaf(_) => Ok(self.presheaf(from, name)?.presheaf.clone()),
            other => Err(self.wrong(from, name, other, "a presheaf or action")),
        }
    }

    pub fn formula(&self, from: &str, name: &str) -> Result<Rc<FormulaOn>, LoadError> {
        let doc = self.document(from, name)?;
        let Document::Formula(d) = doc else {
            return Err(self.wrong(from, name, doc, "a formula"));
        };
        cached(&self.formulas, name, || {
            let site = self.site(name, &d.site)?;
            let sem = |e: String| LoadError::semantic(name, e);
            let mut st = Structure::new(site.topology.clone(), self.bounds);
            for (sort, target) in &d.sorts {
                let p = self.sort(name, target)?;
                st.add_sort(sort, p).map_err(|e| sem(e.to_string()))?;
            }
            for (pred, spec) in &d.predicates {
                let ambient = st.sort(&spec.sort).map_err(|e| sem(e.to_string()))?;
                let members = spec
                    .members
                    .iter()
                    .map(|(o, xs)| Ok((site.category.name(self.object(name, &site, o)?), xs.iter().map(|s| s.as_str()).collect())))
                    .collect::<Result<Vec<(&str, Vec<&str>)>, LoadError>>()?;
                let members: Vec<(&str, &[&str])> = members.iter().map(|(o, xs)| (*o, xs.as_slice())).collect();
                let sub = Subobject::from_labels(ambient, &members).map_err(|e| sem(e.to_string()))?;
                st.add_predicate(pred, &spec.sort, sub).map_err(|e| sem(e.to_string()))?;
            }
            let formula = Formula::parse(&d.formula).map_err(|e| sem(e.to_string()))?;
            let signature = Signature {
                context: d.context.clone(),
                binders: d.binders.clone(),
                predicates: d.predicates.keys().cloned().collect(),
            };
            Ok(FormulaOn {
                structure: st,
                formula,
                signature,
                site,
            })
        })
    }

    pub fn diagram(&self, from: &str, name: &str) -> Result<Rc<Diagram>, LoadError> {
        let doc = self.document(from, name)?;
        let Document::Diagram(d) = doc else {
            return Err(self.wrong(from, name, doc, "a diagram"));
        };
        cached(&self.diagrams, name, || {
            let sem = |e: String| LoadError::semantic(name, e);
            match (&d.shape, &d.values, &d.construction) {
                (Some(shape), Some(values), None) => {
                    let shape = self.category(name, shape)?;
                    let values: Vec<(String, Vec<String>)> = values.iter().map(|(o, v)| (o.clone(), v.clone())).collect();
                    for (o, _) in &values {
                        if shape.object_by_name(o).is_none() {
                            return Err(LoadError::unresolved(name, o));
                        }
                    }
                    let actions: Vec<(String, Vec<(String, String)>)> = d
                        .actions
                        .iter()
                        .flatten()
                        .map(|(m, pairs)| (m.clone(), pairs.iter().map(|(x, y)| (x.clone(), y.clone())).collect()))
                        .collect();
                    for (m, _) in &actions {
                        if shape.morphism_by_name(m).is_none() {
                            return Err(LoadError::unresolved(name, m));
                        }
                    }
                    Diagram::from_labels(shape, &values, &actions).map_err(|e| sem(e.to_string()))
                }
                (None, None, Some(c)) if d.actions.is_none() => match *c {
                    DiagramConstruction::TwoAdicTower { length } if (1..=16).contains(&length) => Ok(two_adic_tower(length)),
                    DiagramConstruction::InclusionChain { length } if (1..=1024).contains(&length) => Ok(inclusion_chain(length)),
                    _ => Err(sem("construction length out of range".into())),
                },
                _ => Err(sem("give `shape` and `values` (with optional `actions`), or a `construction`".into())),
            }
        })
    }

    pub fn functor(&self, from: &str, name: &str) -> Result<Rc<FinFunctor>, LoadError> {
        let doc = self.document(from, name)?;
        let Document::Functor(d) = doc else {
            return Err(self.wrong(from, name, doc, "a functor"));
        };
        cached(&self.functors, name, || {
            let source = self.category(name, &d.source)?;
            let target = self.category(name, &d.target)?;
            let objects: Vec<(String, String)> = d.objects.iter().map(|(a, b)| (a.clone(), b.clone())).collect();
            let mut morphisms: Vec<(String, String)> = d.morphisms.iter().map(|(a, b)| (a.clone(), b.clone())).collect();
            for o in source.objects() {
                let id = source.mor_name(source.identity(o)).to_string();
                if !d.morphisms.contains_key(&id) {
                    let image = d.objects.get(source.name(o)).and_then(|t| target.object_by_name(t));
                    if let Some(t) = image {
                        morphisms.push((id, target.mor_name(target.identity(t)).to_string()));
                    }
                }
            }
            FinFunctor::from_names(source, target, &objects, &morphisms).map_err(|e| LoadError::semantic(name, e))
        })
    }
}
