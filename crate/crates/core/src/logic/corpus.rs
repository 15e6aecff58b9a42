use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::fincat::{Obj, SetFunctor};
use crate::search::map_ordered;

use super::forcing::forcing_table;
use super::semantics::interpret;
use super::structure::Structure;
use super::{Formula, LogicError};

/// What formulas in a corpus may mention: free variables, variables that
/// quantifiers may bind, and predicates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Signature {
    pub context: Vec<(String, String)>,
    pub binders: Vec<(String, String)>,
    pub predicates: Vec<String>,
}

impl Signature {
    fn atoms(&self, structure: &Structure, scope: &[(String, String)]) -> Result<Vec<Formula>, LogicError> {
        let mut out = vec![Formula::True, Formula::False];
        for (v, s) in scope {
            for p in &self.predicates {
                if structure.predicate(p)?.sort == *s {
                    out.push(Formula::member(v, p));
                }
            }
        }
        for (i, (v, s)) in scope.iter().enumerate() {
            for (w, t) in &scope[i + 1..] {
                if s == t {
                    out.push(Formula::eq(v, w));
                }
            }
        }
        Ok(out)
    }
}

/// Every formula of depth at most `depth` over the signature. Quantifiers
/// bind each binder at most once along a branch.
pub fn corpus(structure: &Structure, sig: &Signature, depth: usize) -> Result<Vec<Formula>, LogicError> {
    let mut scope = sig.context.clone();
    generate(structure, sig, &mut scope, depth)
}

fn generate(
    structure: &Structure,
    sig: &Signature,
    scope: &mut Vec<(String, String)>,
    depth: usize,
) -> Result<Vec<Formula>, LogicError> {
    if depth == 0 {
        return Ok(Vec::new());
    }
    let mut out = sig.atoms(structure, scope)?;
    if depth == 1 {
        return Ok(out);
    }
    let below = generate(structure, sig, scope, depth - 1)?;
    out.extend(below.iter().cloned().map(Formula::not));
    for a in &below {
        for b in &below {
            out.push(Formula::and(a.clone(), b.clone()));
            out.push(Formula::or(a.clone(), b.clone()));
            out.push(Formula::implies(a.clone(), b.clone()));
        }
    }
    for (v, s) in &sig.binders {
        if scope.iter().any(|(w, _)| w == v) {
            continue;
        }
        scope.push((v.clone(), s.clone()));
        let bodies = generate(structure, sig, scope, depth - 1);
        scope.pop();
        for body in bodies? {
            out.push(Formula::exists(v, s, body.clone()));
            out.push(Formula::forall(v, s, body));
        }
    }
    Ok(out)
}

/// `count` formulas of depth exactly `depth`, drawn with a seeded generator.
pub fn random_formulas(
    structure: &Structure,
    sig: &Signature,
    depth: usize,
    count: usize,
    seed: u64,
) -> Result<Vec<Formula>, LogicError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut scope = sig.context.clone();
    (0..count).map(|_| random_one(structure, sig, &mut scope, depth, &mut rng)).collect()
}

fn random_one(
    structure: &Structure,
    sig: &Signature,
    scope: &mut Vec<(String, String)>,
    depth: usize,
    rng: &mut ChaCha8Rng,
) -> Result<Formula, LogicError> {
    if depth <= 1 {
        let atoms = sig.atoms(structure, scope)?;
        return Ok(atoms.choose(rng).expect("there are always constants").clone());
    }
    let free: Vec<(String, String)> = sig
        .binders
        .iter()
        .filter(|(v, _)| !scope.iter().any(|(w, _)| w == v))
        .cloned()
        .collect();
    let choices = if free.is_empty() { 4 } else { 6 };
    Ok(match rng.gen_range(0..choices) {
        0 => Formula::not(random_one(structure, sig, scope, depth - 1, rng)?),
        k @ 1..=3 => {
            let deep = random_one(structure, sig, scope, depth - 1, rng)?;
            let shallow_depth = rng.gen_range(1..depth);
            let other = random_one(structure, sig, scope, shallow_depth, rng)?;
            let (a, b) = if rng.gen_bool(0.5) { (deep, other) } else { (other, deep) };
            match k {
                1 => Formula::and(a, b),
                2 => Formula::or(a, b),
                _ => Formula::implies(a, b),
            }
        }
        k => {
            let (v, s) = free.choose(rng).expect("a free binder").clone();
            scope.push((v.clone(), s.clone()));
            let body = random_one(structure, sig, scope, depth - 1, rng);
            scope.pop();
            if k == 4 {
                Formula::exists(&v, &s, body?)
            } else {
                Formula::forall(&v, &s, body?)
            }
        }
    })
}

/// A property of forcing that failed at one object and environment.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemanticsFailure {
    pub formula: String,
    pub property: &'static str,
    pub object: String,
    pub element: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemanticsReport {
    pub formulas: usize,
    pub evaluations: usize,
    pub failures: Vec<SemanticsFailure>,
}

impl SemanticsReport {
    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }
}

fn check_one(
    structure: &Structure,
    f: &Formula,
    context: &[(String, String)],
) -> Result<(usize, Vec<SemanticsFailure>), LogicError> {
    let (prod, table) = forcing_table(structure, f, context)?;
    let interp = interpret(structure, f, context)?;
    let p = &prod.presheaf;
    let cat = p.base();
    let j = structure.topology();
    let mut failures = Vec::new();
    let mut fail = |property: &'static str, u: Obj, t: usize| {
        failures.push(SemanticsFailure {
            formula: f.to_string(),
            property,
            object: cat.name(u).to_string(),
            element: p.label(u, t).to_string(),
        })
    };
    let mut evaluations = 0;
    for u in cat.objects() {
        for t in 0..p.size(u) {
            evaluations += 1;
            if table[u.0][t] != interp.subobject.contains(u, t) {
                fail("forcing agrees with interpretation", u, t);
            }
            let restricted = |m| table[cat.source(m).0][p.restrict(m, t)];
            if table[u.0][t] && !cat.arrows_into(u).iter().all(|&m| restricted(m)) {
                fail("monotonicity", u, t);
            }
            if !table[u.0][t] && j.covers(u).iter().any(|s| s.arrows().iter().all(|&m| restricted(m))) {
                fail("local character", u, t);
            }
        }
    }
    Ok((evaluations, failures))
}

/// Runs both engines on every formula in `context` and checks monotonicity,
/// local character and their agreement at every object and environment.
pub fn check_semantics(
    structure: &Structure,
    context: &[(String, String)],
    formulas: &[Formula],
) -> Result<SemanticsReport, LogicError> {
    let results = map_ordered(formulas, structure.bounds().exec, |f| check_one(structure, f, context));
    let mut report = SemanticsReport {
        formulas: formulas.len(),
        evaluations: 0,
        failures: Vec::new(),
    };
    for r in results {
        let (n, fails) = r?;
        report.evaluations += n;
        report.failures.extend(fails);
    }
    Ok(report)
}

/// Intuitionistically valid schemas instantiated at `p`, `q`, `r`.
pub fn intuitionistic_tautologies(p: &Formula, q: &Formula, r: &Formula) -> Vec<(&'static str, Formula)> {
    let (p, q, r) = (p.clone(), q.clone(), r.clone());
    let imp = Formula::implies;
    let and = Formula::and;
    let or = Formula::or;
    let not = Formula::not;
    vec![
        ("identity", imp(p.clone(), p.clone())),
        ("weakening", imp(p.clone(), imp(q.clone(), p.clone()))),
        ("projection", imp(and(p.clone(), q.clone()), p.clone())),
        ("injection", imp(p.clone(), or(p.clone(), q.clone()))),
        (
            "transitivity",
            imp(imp(p.clone(), q.clone()), imp(imp(q.clone(), r.clone()), imp(p.clone(), r.clone()))),
        ),
        ("ex falso", imp(Formula::False, p.clone())),
        ("double negation introduction", imp(p.clone(), not(not(p.clone())))),
        ("non-contradiction", not(and(p.clone(), not(p.clone())))),
        ("triple negation", imp(not(not(not(p.clone()))), not(p.clone()))),
        ("modus ponens", imp(and(p.clone(), imp(p.clone(), q.clone())), q.clone())),
        (
            "case analysis",
            imp(imp(or(p.clone(), q.clone()), r.clone()), and(imp(p.clone(), r.clone()), imp(q.clone(), r.clone()))),
        ),
        ("weak de Morgan", imp(or(not(p.clone()), not(q.clone())), not(and(p.clone(), q.clone())))),
        ("de Morgan for disjunction", imp(not(or(p.clone(), q.clone())), and(not(p.clone()), not(q.clone())))),
        ("currying", imp(imp(p.clone(), imp(q.clone(), r.clone())), imp(and(p.clone(), q.clone()), r.clone()))),
        (
            "distributivity",
            imp(and(p.clone(), or(q.clone(), r.clone())), or(and(p.clone(), q.clone()), and(p.clone(), r))),
        ),
        ("contraposition", imp(imp(p.clone(), q.clone()), imp(not(q), not(p)))),
    ]
}

/// `p ∨ ¬p`.
pub fn excluded_middle(p: &Formula) -> Formula {
    Formula::or(p.clone(), Formula::not(p.clone()))
}
