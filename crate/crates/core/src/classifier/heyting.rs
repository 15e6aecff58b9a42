use std::collections::HashMap;

use crate::fincat::Presheaf;
use crate::site::GrothendieckTopology;
use crate::Bounds;

use super::subobject::{bottom, closed_subobjects, implies, join, Subobject};
use super::ClassifierError;

/// The closed subobjects of a presheaf with full operation tables.
#[derive(Clone, Debug)]
pub struct HeytingAlgebra {
    pub elements: Vec<Subobject>,
    pub top: usize,
    pub bottom: usize,
    index: HashMap<Subobject, usize>,
    pub(super) meet: Vec<usize>,
    pub(super) join: Vec<usize>,
    pub(super) implies: Vec<usize>,
    order: Vec<bool>,
}

/// A law that fails on the listed elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomFailure {
    pub law: &'static str,
    pub elements: Vec<usize>,
}

/// Builds the algebra of `J`-closed subobjects of `ambient`. Meet is
/// intersection, join is the closure of the union and implication is
/// computed pointwise.
pub fn heyting(ambient: &Presheaf, j: &GrothendieckTopology, bounds: &Bounds) -> Result<HeytingAlgebra, ClassifierError> {
    let elements = closed_subobjects(ambient, j, bounds)?;
    let n = elements.len();
    if n > bounds.lattice {
        return Err(ClassifierError::IntractableSize {
            what: "subobject lattice".into(),
            size: n,
            bound: bounds.lattice,
        });
    }
    let index: HashMap<Subobject, usize> = elements.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
    let lookup = |s: Subobject| {
        index
            .get(&s)
            .copied()
            .ok_or_else(|| ClassifierError::Construction(format!("{} is not a closed subobject", s.label(ambient))))
    };
    let mut meet = Vec::with_capacity(n * n);
    let mut joins = Vec::with_capacity(n * n);
    let mut imp = Vec::with_capacity(n * n);
    for a in &elements {
        for b in &elements {
            meet.push(lookup(a.meet(b))?);
            joins.push(lookup(join(ambient, j, a, b))?);
            imp.push(lookup(implies(ambient, a, b))?);
        }
    }
    let order = elements
        .iter()
        .flat_map(|a| elements.iter().map(move |b| a.is_subset(b)))
        .collect();
    let top = lookup(Subobject::top(ambient))?;
    let bot = lookup(bottom(ambient, j))?;
    Ok(HeytingAlgebra {
        elements,
        top,
        bottom: bot,
        index,
        meet,
        join: joins,
        implies: imp,
        order,
    })
}

impl HeytingAlgebra {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn index_of(&self, s: &Subobject) -> Option<usize> {
        self.index.get(s).copied()
    }

    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a * self.len() + b]
    }

    pub fn join(&self, a: usize, b: usize) -> usize {
        self.join[a * self.len() + b]
    }

    pub fn implies(&self, a: usize, b: usize) -> usize {
        self.implies[a * self.len() + b]
    }

    pub fn negate(&self, a: usize) -> usize {
        self.implies(a, self.bottom)
    }

    /// Inclusion of subobjects.
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.order[a * self.len() + b]
    }

    /// Checks lattice laws, bounds, distributivity, agreement of the
    /// inclusion order with meets, and `c ∧ a ≤ b ⇔ c ≤ (a ⇒ b)`. At most
    /// a few failures are kept per law.
    pub fn check_axioms(&self) -> Vec<AxiomFailure> {
        const KEEP: usize = 4;
        let n = self.len();
        let mut out: Vec<AxiomFailure> = Vec::new();
        let mut record = |law: &'static str, elements: Vec<usize>| {
            if out.iter().filter(|f| f.law == law).count() < KEEP {
                out.push(AxiomFailure { law, elements });
            }
        };
        for a in 0..n {
            if self.meet(a, a) != a {
                record("meet idempotent", vec![a]);
            }
            if self.join(a, a) != a {
                record("join idempotent", vec![a]);
            }
            if self.meet(a, self.top) != a || self.join(a, self.bottom) != a {
                record("bounds", vec![a]);
            }
            if !self.leq(self.bottom, a) || !self.leq(a, self.top) {
                record("bounds are extremal", vec![a]);
            }
            for b in 0..n {
                if self.meet(a, b) != self.meet(b, a) {
                    record("meet commutative", vec![a, b]);
                }
                if self.join(a, b) != self.join(b, a) {
                    record("join commutative", vec![a, b]);
                }
                if self.meet(a, self.join(a, b)) != a || self.join(a, self.meet(a, b)) != a {
                    record("absorption", vec![a, b]);
                }
                if (self.meet(a, b) == a) != self.leq(a, b) {
                    record("order agrees with meet", vec![a, b]);
                }
                for c in 0..n {
                    if self.meet(a, self.meet(b, c)) != self.meet(self.meet(a, b), c) {
                        record("meet associative", vec![a, b, c]);
                    }
                    if self.join(a, self.join(b, c)) != self.join(self.join(a, b), c) {
                        record("join associative", vec![a, b, c]);
                    }
                    if self.meet(a, self.join(b, c)) != self.join(self.meet(a, b), self.meet(a, c)) {
                        record("distributive", vec![a, b, c]);
                    }
                    if self.leq(self.meet(c, a), b) != self.leq(c, self.implies(a, b)) {
                        record("implication adjunction", vec![c, a, b]);
                    }
                }
            }
        }
        out
    }

    /// Some `A` with `A ∨ ¬A` different from the top element.
    pub fn excluded_middle_witness(&self) -> Option<usize> {
        (0..self.len()).find(|&a| self.join(a, self.negate(a)) != self.top)
    }

    /// Some `A` with `¬¬A` strictly above `A`.
    pub fn double_negation_witness(&self) -> Option<usize> {
        (0..self.len()).find(|&a| self.negate(self.negate(a)) != a)
    }
}
