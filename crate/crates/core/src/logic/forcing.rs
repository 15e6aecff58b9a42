use std::collections::BTreeSet;
use std::sync::Arc;

use crate::fincat::{FinCategory, Mor, Obj, Presheaf, SetFunctor};
use crate::site::GrothendieckTopology;

use super::structure::{compile, ContextProduct, Environment, Node, Structure};
use super::{Formula, LogicError};

struct Forcer<'a> {
    cat: &'a FinCategory,
    j: &'a GrothendieckTopology,
}

impl Forcer<'_> {
    fn covered(&self, u: Obj, good: &BTreeSet<Mor>) -> bool {
        self.j.covers(u).iter().any(|s| s.arrows().is_subset(good))
    }

    fn along(&self, f: Mor, vals: &[usize], sorts: &[&Presheaf]) -> Vec<usize> {
        vals.iter().zip(sorts).map(|(&x, s)| s.restrict(f, x)).collect()
    }

    fn force<'p>(&self, node: &Node<'p>, u: Obj, vals: &mut Vec<usize>, sorts: &mut Vec<&'p Presheaf>) -> bool {
        match node {
            Node::True => true,
            Node::False => self.covered(u, &BTreeSet::new()),
            Node::In(i, a) => a.contains(u, vals[*i]),
            Node::Eq(i, k) => vals[*i] == vals[*k],
            Node::And(a, b) => self.force(a, u, vals, sorts) && self.force(b, u, vals, sorts),
            Node::Or(a, b) => {
                let good = self.good_arrows(u, vals, sorts, |me, v, w, s| me.force(a, v, w, s) || me.force(b, v, w, s));
                self.covered(u, &good)
            }
            Node::Implies(a, b) => self.cat.arrows_into(u).iter().all(|&f| {
                let v = self.cat.source(f);
                let mut w = self.along(f, vals, sorts);
                !self.force(a, v, &mut w, sorts) || self.force(b, v, &mut w, sorts)
            }),
            Node::Exists(_, sort, body) => {
                let good = self.good_arrows(u, vals, sorts, |me, v, w, s| {
                    s.push(sort);
                    let found = (0..sort.size(v)).any(|x| {
                        w.push(x);
                        let ok = me.force(body, v, w, s);
                        w.pop();
                        ok
                    });
                    s.pop();
                    found
                });
                self.covered(u, &good)
            }
            Node::Forall(_, sort, body) => self.cat.arrows_into(u).iter().all(|&f| {
                let v = self.cat.source(f);
                let mut w = self.along(f, vals, sorts);
                sorts.push(sort);
                let all = (0..sort.size(v)).all(|x| {
                    w.push(x);
                    let ok = self.force(body, v, &mut w, sorts);
                    w.pop();
                    ok
                });
                sorts.pop();
                all
            }),
        }
    }

    /// Arrows `f: V → U` at which `test` holds for the restricted values.
    fn good_arrows<'p>(
        &self,
        u: Obj,
        vals: &[usize],
        sorts: &mut Vec<&'p Presheaf>,
        test: impl Fn(&Self, Obj, &mut Vec<usize>, &mut Vec<&'p Presheaf>) -> bool,
    ) -> BTreeSet<Mor> {
        self.cat
            .arrows_into(u)
            .iter()
            .copied()
            .filter(|&f| {
                let mut w = self.along(f, vals, sorts);
                test(self, self.cat.source(f), &mut w, sorts)
            })
            .collect()
    }
}

fn check_env<'s>(structure: &'s Structure, env: &Environment) -> Result<Vec<&'s Presheaf>, LogicError> {
    env.bindings
        .iter()
        .map(|b| {
            let s = structure.sort(&b.sort)?;
            if b.value >= s.size(env.at) {
                return Err(LogicError::IllSorted(format!(
                    "`{}` has no element {} of sort `{}` at `{}`",
                    b.var,
                    b.value,
                    b.sort,
                    s.base().name(env.at)
                )));
            }
            Ok(s)
        })
        .collect()
}

/// Kripke–Joyal forcing `U ⊩ φ[env]`.
pub fn forces(structure: &Structure, f: &Formula, env: &Environment) -> Result<bool, LogicError> {
    let sorts = check_env(structure, env)?;
    let node = compile(structure, f, &env.context())?;
    let forcer = Forcer {
        cat: structure.topology().base(),
        j: structure.topology(),
    };
    let mut vals = env.values();
    let mut sorts = sorts;
    Ok(forcer.force(&node, env.at, &mut vals, &mut sorts))
}

/// Forcing evaluated at every object and every element of the context
/// product, as membership vectors shaped like a subobject of that product.
pub fn forcing_table(
    structure: &Structure,
    f: &Formula,
    context: &[(String, String)],
) -> Result<(Arc<ContextProduct>, Vec<Vec<bool>>), LogicError> {
    let node = compile(structure, f, context)?;
    let sort_names: Vec<String> = context.iter().map(|(_, s)| s.clone()).collect();
    let prod = structure.context_product(&sort_names)?;
    let base_sorts: Vec<&Presheaf> = sort_names.iter().map(|s| structure.sort(s)).collect::<Result<_, _>>()?;
    let cat = structure.topology().base();
    let forcer = Forcer {
        cat,
        j: structure.topology(),
    };
    let table = cat
        .objects()
        .map(|u| {
            (0..prod.presheaf.size(u))
                .map(|t| {
                    let mut vals = prod.tuple(u, t).to_vec();
                    let mut sorts = base_sorts.clone();
                    forcer.force(&node, u, &mut vals, &mut sorts)
                })
                .collect()
        })
        .collect();
    Ok((prod, table))
}

/// Elements `x` of `sort` over `env.at` with `U ⊩ φ[env, var := x]`.
/// Unlike forcing `∃`, this asks for a witness over `U` itself.
pub fn witnesses(
    structure: &Structure,
    var: &str,
    sort: &str,
    body: &Formula,
    env: &Environment,
) -> Result<Vec<usize>, LogicError> {
    let s = structure.sort(sort)?;
    let mut out = Vec::new();
    for x in 0..s.size(env.at) {
        if forces(structure, body, &env.clone().bind(var, sort, x))? {
            out.push(x);
        }
    }
    Ok(out)
}
