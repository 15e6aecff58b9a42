use std::sync::Arc;

use crate::classifier::{bottom, closure, implies, join, Subobject};
use crate::fincat::{Obj, SetFunctor};

use super::structure::{compile, ContextProduct, Node, Structure};
use super::{Formula, LogicError};

/// A formula's meaning: a closed subobject of the product of its context.
#[derive(Clone, Debug)]
pub struct Interpretation {
    pub product: Arc<ContextProduct>,
    pub subobject: Subobject,
}

/// Compositional semantics. Connectives use the Heyting operations on
/// closed subobjects; `∃` is the closure of the image under projection and
/// `∀` is the right adjoint to pulling back along the projection.
pub fn interpret(structure: &Structure, f: &Formula, context: &[(String, String)]) -> Result<Interpretation, LogicError> {
    let node = compile(structure, f, context)?;
    let mut sorts: Vec<String> = context.iter().map(|(_, s)| s.clone()).collect();
    let (product, subobject) = sem(structure, &node, &mut sorts)?;
    Ok(Interpretation { product, subobject })
}

fn pointwise(p: &ContextProduct, pred: impl Fn(Obj, usize) -> bool) -> Subobject {
    let cat = p.presheaf.base();
    Subobject::from_parts_unchecked(
        cat.objects()
            .map(|u| (0..p.presheaf.size(u)).map(|t| pred(u, t)).collect())
            .collect(),
    )
}

fn sem(structure: &Structure, node: &Node, sorts: &mut Vec<String>) -> Result<(Arc<ContextProduct>, Subobject), LogicError> {
    let p = structure.context_product(sorts)?;
    let j = structure.topology();
    let ambient = &p.presheaf;
    let sub = match node {
        Node::True => Subobject::top(ambient),
        Node::False => bottom(ambient, j),
        Node::In(i, a) => pointwise(&p, |u, t| a.contains(u, p.tuple(u, t)[*i])),
        Node::Eq(i, k) => pointwise(&p, |u, t| p.tuple(u, t)[*i] == p.tuple(u, t)[*k]),
        Node::And(a, b) => sem(structure, a, sorts)?.1.meet(&sem(structure, b, sorts)?.1),
        Node::Or(a, b) => join(ambient, j, &sem(structure, a, sorts)?.1, &sem(structure, b, sorts)?.1),
        Node::Implies(a, b) => implies(ambient, &sem(structure, a, sorts)?.1, &sem(structure, b, sorts)?.1),
        Node::Exists(name, _, body) | Node::Forall(name, _, body) => {
            sorts.push(name.to_string());
            let inner = sem(structure, body, sorts);
            sorts.pop();
            let (wide, inner) = inner?;
            let n = sorts.len();
            let cat = ambient.base();
            // fibre summaries over each element of the narrower product
            let summary: Vec<Vec<(bool, bool)>> = cat
                .objects()
                .map(|v| {
                    let mut s = vec![(false, true); ambient.size(v)];
                    for t in 0..wide.presheaf.size(v) {
                        let below = p.element_of(v, &wide.tuple(v, t)[..n]).expect("projection lands in the product");
                        let inside = inner.contains(v, t);
                        s[below].0 |= inside;
                        s[below].1 &= inside;
                    }
                    s
                })
                .collect();
            if matches!(node, Node::Exists(..)) {
                closure(ambient, j, &pointwise(&p, |u, t| summary[u.0][t].0))
            } else {
                pointwise(&p, |u, t| {
                    cat.arrows_into(u)
                        .iter()
                        .all(|&f| summary[cat.source(f).0][ambient.restrict(f, t)].1)
                })
            }
        }
    };
    Ok((p, sub))
}
