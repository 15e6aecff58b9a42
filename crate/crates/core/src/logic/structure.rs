use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use crate::classifier::{is_closed, Subobject};
use crate::fincat::{Natural, Obj, Presheaf, SetFunctor};
use crate::sheaf::{is_sheaf, product};
use crate::site::GrothendieckTopology;
use crate::Bounds;

use super::{Formula, LogicError};

/// A named subobject of a named sort.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Predicate {
    pub sort: String,
    pub subobject: Subobject,
}

/// Sorts (sheaves) and predicates (closed subobjects) over a site.
#[derive(Debug)]
pub struct Structure {
    topology: GrothendieckTopology,
    sorts: BTreeMap<String, Presheaf>,
    predicates: BTreeMap<String, Predicate>,
    bounds: Bounds,
    products: Mutex<HashMap<Vec<String>, Arc<ContextProduct>>>,
}

/// The product of the sorts of a context, with each element's tuple of
/// components and the reverse lookup.
#[derive(Debug)]
pub struct ContextProduct {
    pub presheaf: Presheaf,
    pub legs: Vec<Natural>,
    pub(crate) tuples: Vec<Vec<Vec<usize>>>,
    pub(crate) index: Vec<HashMap<Vec<usize>, usize>>,
}

impl ContextProduct {
    /// Components of element `t` over `u`.
    pub fn tuple(&self, u: Obj, t: usize) -> &[usize] {
        &self.tuples[u.0][t]
    }

    pub fn element_of(&self, u: Obj, tuple: &[usize]) -> Option<usize> {
        self.index[u.0].get(tuple).copied()
    }
}

/// An object of the site together with values for typed variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Environment {
    pub at: Obj,
    pub bindings: Vec<Binding>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Binding {
    pub var: String,
    pub sort: String,
    pub value: usize,
}

impl Environment {
    pub fn empty(at: Obj) -> Self {
        Environment { at, bindings: Vec::new() }
    }

    pub fn bind(mut self, var: &str, sort: &str, value: usize) -> Self {
        self.bindings.push(Binding {
            var: var.to_string(),
            sort: sort.to_string(),
            value,
        });
        self
    }

    /// The typed variables, in binding order.
    pub fn context(&self) -> Vec<(String, String)> {
        self.bindings.iter().map(|b| (b.var.clone(), b.sort.clone())).collect()
    }

    pub fn values(&self) -> Vec<usize> {
        self.bindings.iter().map(|b| b.value).collect()
    }
}

impl Structure {
    pub fn new(topology: GrothendieckTopology, bounds: Bounds) -> Self {
        Structure {
            topology,
            sorts: BTreeMap::new(),
            predicates: BTreeMap::new(),
            bounds,
            products: Mutex::new(HashMap::new()),
        }
    }

    /// Adds a sort, which must be a sheaf for the topology.
    pub fn add_sort(&mut self, name: &str, sheaf: Presheaf) -> Result<(), LogicError> {
        if !sheaf.same_base(&Presheaf::terminal(self.topology.base().clone())) {
            return Err(LogicError::BaseMismatch);
        }
        if let Some(u) = sheaf.base().objects().find(|&u| sheaf.size(u) > self.bounds.sort_size) {
            return Err(LogicError::IntractableSize {
                what: format!("sort `{name}` at `{}`", sheaf.base().name(u)),
                size: sheaf.size(u),
                bound: self.bounds.sort_size,
            });
        }
        if !is_sheaf(&sheaf, &self.topology, &self.bounds)?.is_sheaf() {
            return Err(LogicError::NotASheaf(name.to_string()));
        }
        self.sorts.insert(name.to_string(), sheaf);
        self.products.lock().expect("cache lock").clear();
        Ok(())
    }

    /// Adds a predicate on an existing sort; it must be a closed subobject.
    pub fn add_predicate(&mut self, name: &str, sort: &str, subobject: Subobject) -> Result<(), LogicError> {
        let ambient = self.sorts.get(sort).ok_or_else(|| LogicError::UnknownSort(sort.to_string()))?;
        if Subobject::new(ambient, subobject.parts().to_vec()).is_err() {
            return Err(LogicError::IllSorted(format!("`{name}` is not a subobject of `{sort}`")));
        }
        if !is_closed(ambient, &self.topology, &subobject) {
            return Err(LogicError::NotClosed(name.to_string()));
        }
        self.predicates.insert(
            name.to_string(),
            Predicate {
                sort: sort.to_string(),
                subobject,
            },
        );
        Ok(())
    }

    pub fn topology(&self) -> &GrothendieckTopology {
        &self.topology
    }

    pub fn bounds(&self) -> &Bounds {
        &self.bounds
    }

    pub fn sort(&self, name: &str) -> Result<&Presheaf, LogicError> {
        self.sorts.get(name).ok_or_else(|| LogicError::UnknownSort(name.to_string()))
    }

    pub fn predicate(&self, name: &str) -> Result<&Predicate, LogicError> {
        self.predicates
            .get(name)
            .ok_or_else(|| LogicError::UnknownSubobject(name.to_string()))
    }

    pub fn sorts(&self) -> impl Iterator<Item = (&str, &Presheaf)> {
        self.sorts.iter().map(|(k, v)| (k.as_str(), v))
    }

    pub fn predicates(&self) -> impl Iterator<Item = (&str, &Predicate)> {
        self.predicates.iter().map(|(k, v)| (k.as_str(), v))
    }

    /// The product of the given sorts, cached by sort list.
    pub fn context_product(&self, sorts: &[String]) -> Result<Arc<ContextProduct>, LogicError> {
        if let Some(p) = self.products.lock().expect("cache lock").get(sorts) {
            return Ok(p.clone());
        }
        let base = self.topology.base();
        let factors = sorts.iter().map(|s| self.sort(s).cloned()).collect::<Result<Vec<_>, _>>()?;
        let expected: Option<usize> = base
            .objects()
            .map(|u| factors.iter().try_fold(1usize, |acc, f| acc.checked_mul(f.size(u))))
            .try_fold(0usize, |acc, n| n.map(|n| acc.max(n)));
        match expected {
            Some(n) if n <= self.bounds.sort_size => {}
            other => {
                return Err(LogicError::IntractableSize {
                    what: format!("context product of [{}]", sorts.join(", ")),
                    size: other.unwrap_or(usize::MAX),
                    bound: self.bounds.sort_size,
                })
            }
        }
        let lim = product(base, &factors, &self.bounds)?;
        let tuples: Vec<Vec<Vec<usize>>> = base
            .objects()
            .map(|u| {
                (0..lim.presheaf.size(u))
                    .map(|t| lim.legs.iter().map(|l| l.at(u, t)).collect())
                    .collect()
            })
            .collect();
        let index = tuples
            .iter()
            .map(|ts| ts.iter().enumerate().map(|(i, t)| (t.clone(), i)).collect())
            .collect();
        let p = Arc::new(ContextProduct {
            presheaf: lim.presheaf,
            legs: lim.legs,
            tuples,
            index,
        });
        self.products
            .lock()
            .expect("cache lock")
            .insert(sorts.to_vec(), p.clone());
        Ok(p)
    }
}

/// A formula with variables resolved to positions in the scope and names
/// resolved to sorts and predicates.
pub(crate) enum Node<'s> {
    True,
    False,
    In(usize, &'s Subobject),
    Eq(usize, usize),
    And(Box<Node<'s>>, Box<Node<'s>>),
    Or(Box<Node<'s>>, Box<Node<'s>>),
    Implies(Box<Node<'s>>, Box<Node<'s>>),
    Exists(&'s str, &'s Presheaf, Box<Node<'s>>),
    Forall(&'s str, &'s Presheaf, Box<Node<'s>>),
}

/// Checks that `f` is well sorted in `context` and resolves it.
pub(crate) fn compile<'s>(
    structure: &'s Structure,
    f: &Formula,
    context: &[(String, String)],
) -> Result<Node<'s>, LogicError> {
    if f.depth() > structure.bounds.formula_depth {
        return Err(LogicError::IntractableSize {
            what: "formula depth".into(),
            size: f.depth(),
            bound: structure.bounds.formula_depth,
        });
    }
    let mut scope: Vec<(String, String)> = Vec::with_capacity(context.len());
    for (v, s) in context {
        structure.sort(s)?;
        if scope.iter().any(|(w, _)| w == v) {
            return Err(LogicError::IllSorted(format!("`{v}` is bound twice")));
        }
        scope.push((v.clone(), s.clone()));
    }
    compile_in(structure, f, &mut scope)
}

fn lookup(scope: &[(String, String)], v: &str) -> Result<usize, LogicError> {
    scope
        .iter()
        .position(|(w, _)| w == v)
        .ok_or_else(|| LogicError::IllSorted(format!("`{v}` is not bound")))
}

fn compile_in<'s>(
    structure: &'s Structure,
    f: &Formula,
    scope: &mut Vec<(String, String)>,
) -> Result<Node<'s>, LogicError> {
    Ok(match f {
        Formula::True => Node::True,
        Formula::False => Node::False,
        Formula::In { var, pred } => {
            let p = structure.predicate(pred)?;
            let i = lookup(scope, var)?;
            if scope[i].1 != p.sort {
                return Err(LogicError::IllSorted(format!(
                    "`{var}` has sort `{}` but `{pred}` lives in `{}`",
                    scope[i].1, p.sort
                )));
            }
            Node::In(i, &p.subobject)
        }
        Formula::Eq(a, b) => {
            let (i, j) = (lookup(scope, a)?, lookup(scope, b)?);
            if scope[i].1 != scope[j].1 {
                return Err(LogicError::IllSorted(format!(
                    "`{a}: {}` and `{b}: {}` have different sorts",
                    scope[i].1, scope[j].1
                )));
            }
            Node::Eq(i, j)
        }
        Formula::And(a, b) => Node::And(Box::new(compile_in(structure, a, scope)?), Box::new(compile_in(structure, b, scope)?)),
        Formula::Or(a, b) => Node::Or(Box::new(compile_in(structure, a, scope)?), Box::new(compile_in(structure, b, scope)?)),
        Formula::Implies(a, b) => {
            Node::Implies(Box::new(compile_in(structure, a, scope)?), Box::new(compile_in(structure, b, scope)?))
        }
        Formula::Not(a) => Node::Implies(Box::new(compile_in(structure, a, scope)?), Box::new(Node::False)),
        Formula::Exists { var, sort, body } | Formula::Forall { var, sort, body } => {
            if scope.iter().any(|(w, _)| w == var) {
                return Err(LogicError::IllSorted(format!("`{var}` is bound twice")));
            }
            let (name, presheaf) = structure
                .sorts
                .get_key_value(sort.as_str())
                .ok_or_else(|| LogicError::UnknownSort(sort.clone()))?;
            scope.push((var.clone(), sort.clone()));
            let inner = compile_in(structure, body, scope);
            scope.pop();
            let inner = Box::new(inner?);
            if matches!(f, Formula::Exists { .. }) {
                Node::Exists(name, presheaf, inner)
            } else {
                Node::Forall(name, presheaf, inner)
            }
        }
    })
}
