use proptest::prelude::*;

use super::*;
use crate::classifier::{implies, Subobject};
use crate::fincat::Presheaf;
use crate::sheaf::examples::{constant_on_nonempty, locally_constant};
use crate::site::{open_cover_topology, FiniteSpace, OpenCoverSite};
use crate::Bounds;

fn site(space: FiniteSpace) -> OpenCoverSite {
    open_cover_topology(&space, &Bounds::default()).unwrap()
}

fn ctx(pairs: &[(&str, &str)]) -> Vec<(String, String)> {
    pairs.iter().map(|(v, s)| (v.to_string(), s.to_string())).collect()
}

/// Sierpiński space with `F` constant on `{p, n}`, `A` the positivity
/// predicate, `B` the constant `p`, and truth values `P = {top}`, `Q = ∅`.
fn sierpinski() -> (OpenCoverSite, Structure) {
    let s = site(FiniteSpace::sierpinski());
    let f = constant_on_nonempty(&s.category, &s.space, &["p", "n"]);
    let one = Presheaf::terminal(s.category.clone());
    let mut st = Structure::new(s.topology.clone(), Bounds::default());
    st.add_sort("F", f.clone()).unwrap();
    st.add_sort("1", one.clone()).unwrap();
    st.add_predicate("A", "F", Subobject::from_labels(&f, &[("{top}", &["p"]), ("{}", &["*"])]).unwrap())
        .unwrap();
    st.add_predicate(
        "B",
        "F",
        Subobject::from_labels(&f, &[("S", &["p"]), ("{top}", &["p"]), ("{}", &["*"])]).unwrap(),
    )
    .unwrap();
    st.add_predicate("P", "1", Subobject::from_labels(&one, &[("{top}", &["*"]), ("{}", &["*"])]).unwrap())
        .unwrap();
    st.add_predicate("Q", "1", Subobject::from_labels(&one, &[("{}", &["*"])]).unwrap())
        .unwrap();
    (s, st)
}

/// The discrete space `{a, b}` with `F` the locally constant `{0,1}`-valued
/// functions, `A`: value 0 at `a`, `B`: value 1 at `b`, `P = {a}`, `Q = {b}`.
fn discrete2() -> (OpenCoverSite, Structure) {
    let s = site(FiniteSpace::discrete2());
    let f = locally_constant(&s.category, &s.space, &["0", "1"]);
    let one = Presheaf::terminal(s.category.clone());
    let mut st = Structure::new(s.topology.clone(), Bounds::default());
    st.add_sort("F", f.clone()).unwrap();
    st.add_sort("1", one.clone()).unwrap();
    let a = Subobject::from_labels(&f, &[("D", &["00", "01"]), ("{a}", &["0"]), ("{b}", &["0", "1"]), ("{}", &["*"])])
        .unwrap();
    let b = Subobject::from_labels(&f, &[("D", &["01", "11"]), ("{a}", &["0", "1"]), ("{b}", &["1"]), ("{}", &["*"])])
        .unwrap();
    st.add_predicate("A", "F", a).unwrap();
    st.add_predicate("B", "F", b).unwrap();
    st.add_predicate("P", "1", Subobject::from_labels(&one, &[("{a}", &["*"]), ("{}", &["*"])]).unwrap())
        .unwrap();
    st.add_predicate("Q", "1", Subobject::from_labels(&one, &[("{b}", &["*"]), ("{}", &["*"])]).unwrap())
        .unwrap();
    (s, st)
}

fn first_order() -> Signature {
    Signature {
        context: ctx(&[("x", "F")]),
        binders: ctx(&[("y", "F")]),
        predicates: vec!["A".into(), "B".into()],
    }
}

fn propositional() -> Signature {
    Signature {
        context: ctx(&[("u", "1")]),
        binders: vec![],
        predicates: vec!["P".into(), "Q".into()],
    }
}

#[test]
fn parse_and_print_round_trip() {
    let src = "(forall x F (implies (in x A) (in x B)))";
    let f = Formula::parse(src).unwrap();
    assert_eq!(f.to_string(), src);
    assert_eq!(f.depth(), 3);
    let g = Formula::parse("(and true false (not (eq x y)))").unwrap();
    assert_eq!(g.to_string(), "(and true (and false (not (eq x y))))");
}

#[test]
fn parse_errors_carry_offsets() {
    let cases = [
        ("(in x)", 5),
        ("(frob x)", 1),
        ("(and true)", 1),
        ("(not true", 9),
        ("true false", 5),
    ];
    for (src, at) in cases {
        match Formula::parse(src) {
            Err(LogicError::Parse { offset, .. }) => assert_eq!(offset, at, "{src}"),
            other => panic!("{src}: {other:?}"),
        }
    }
}

#[test]
fn truth_and_falsity() {
    let (s, st) = sierpinski();
    for u in s.category.objects() {
        let env = Environment::empty(u);
        assert!(forces(&st, &Formula::True, &env).unwrap());
        let empty = s.space.opens()[u.0].is_empty();
        assert_eq!(forces(&st, &Formula::False, &env).unwrap(), empty);
    }
}

#[test]
fn sorts_and_names_are_checked() {
    let (s, st) = sierpinski();
    let at = s.object_by_label("S").unwrap();
    let env = Environment::empty(at).bind("u", "1", 0);
    let err = forces(&st, &Formula::member("u", "A"), &env).unwrap_err();
    assert!(matches!(err, LogicError::IllSorted(_)));
    let err = forces(&st, &Formula::member("u", "Z"), &env).unwrap_err();
    assert!(matches!(err, LogicError::UnknownSubobject(_)));
    let err = forces(&st, &Formula::member("v", "P"), &env).unwrap_err();
    assert!(matches!(err, LogicError::IllSorted(_)));
    let shadow = Formula::exists("u", "1", Formula::True);
    assert!(matches!(forces(&st, &shadow, &env), Err(LogicError::IllSorted(_))));
    let err = interpret(&st, &Formula::eq("u", "x"), &ctx(&[("u", "1"), ("x", "F")])).unwrap_err();
    assert!(matches!(err, LogicError::IllSorted(_)));
}

#[test]
fn presheaves_that_are_not_sheaves_are_rejected_as_sorts() {
    let s = site(FiniteSpace::discrete2());
    let mut st = Structure::new(s.topology.clone(), Bounds::default());
    let f = constant_on_nonempty(&s.category, &s.space, &["0", "1"]);
    assert!(matches!(st.add_sort("F", f), Err(LogicError::NotASheaf(_))));
}

#[test]
fn interpretation_of_connectives_matches_the_classifier() {
    let (_, st) = sierpinski();
    let c = ctx(&[("x", "F")]);
    let top = interpret(&st, &Formula::True, &c).unwrap();
    assert_eq!(top.subobject, Subobject::top(&top.product.presheaf));
    let imp = interpret(&st, &Formula::implies(Formula::member("x", "A"), Formula::member("x", "B")), &c).unwrap();
    let f = st.sort("F").unwrap();
    let want = implies(f, &st.predicate("A").unwrap().subobject, &st.predicate("B").unwrap().subobject);
    assert_eq!(imp.subobject.parts(), want.parts());
}

#[test]
fn positivity_is_forced_exactly_on_the_open_point() {
    let (s, st) = sierpinski();
    let f = st.sort("F").unwrap();
    let phi = Formula::member("x", "A");
    for (open, want) in [("S", false), ("{top}", true)] {
        let u = s.object_by_label(open).unwrap();
        let x = f.position(u, "p").unwrap();
        assert_eq!(forces(&st, &phi, &Environment::empty(u).bind("x", "F", x)).unwrap(), want);
    }
}

#[test]
fn excluded_middle_is_not_forced_on_sierpinski() {
    let (s, st) = sierpinski();
    let p = Formula::member("u", "P");
    let at = s.object_by_label("S").unwrap();
    let env = Environment::empty(at).bind("u", "1", 0);
    assert!(!forces(&st, &excluded_middle(&p), &env).unwrap());
    assert!(forces(&st, &Formula::not(Formula::not(excluded_middle(&p))), &env).unwrap());
}

#[test]
fn intuitionistic_tautologies_are_forced_everywhere() {
    for (_, st) in [sierpinski(), discrete2()] {
        let atoms = [Formula::member("x", "A"), Formula::member("x", "B"), Formula::exists("y", "F", Formula::eq("x", "y"))];
        let c = ctx(&[("x", "F")]);
        for p in &atoms {
            for q in &atoms {
                for r in &atoms {
                    for (name, t) in intuitionistic_tautologies(p, q, r) {
                        let (_, table) = forcing_table(&st, &t, &c).unwrap();
                        assert!(table.iter().flatten().all(|&b| b), "{name}: {t}");
                    }
                }
            }
        }
    }
}

#[test]
fn engines_agree_on_the_depth_three_corpus() {
    for (_, st) in [sierpinski(), discrete2()] {
        for sig in [first_order(), propositional()] {
            let formulas = corpus(&st, &sig, 3).unwrap();
            assert!(formulas.len() > 20);
            let report = check_semantics(&st, &sig.context, &formulas).unwrap();
            assert!(report.holds(), "{:?}", &report.failures[..report.failures.len().min(3)]);
        }
    }
}

#[test]
fn corpus_sizes_follow_the_grammar() {
    let (_, st) = sierpinski();
    let sig = propositional();
    // constants plus two atoms at depth one
    assert_eq!(corpus(&st, &sig, 1).unwrap().len(), 4);
    // 4 atoms, 4 negations and 3 * 16 binary formulas
    assert_eq!(corpus(&st, &sig, 2).unwrap().len(), 56);
}

#[test]
fn quantifiers_over_an_empty_context() {
    let (s, st) = discrete2();
    let d = s.object_by_label("D").unwrap();
    let some_a = Formula::exists("y", "F", Formula::member("y", "A"));
    let all_a = Formula::forall("y", "F", Formula::member("y", "A"));
    assert!(forces(&st, &some_a, &Environment::empty(d)).unwrap());
    assert!(!forces(&st, &all_a, &Environment::empty(d)).unwrap());
    let w = witnesses(&st, "y", "F", &Formula::member("y", "A"), &Environment::empty(d)).unwrap();
    let f = st.sort("F").unwrap();
    let labels: Vec<&str> = w.iter().map(|&x| f.label(d, x)).collect();
    assert_eq!(labels, vec!["00", "01"]);
}

#[test]
fn formula_depth_bound_is_enforced() {
    let s = site(FiniteSpace::sierpinski());
    let bounds = Bounds {
        formula_depth: 2,
        ..Bounds::default()
    };
    let st = Structure::new(s.topology.clone(), bounds);
    let deep = Formula::not(Formula::not(Formula::True));
    assert!(matches!(
        forces(&st, &deep, &Environment::empty(s.object_by_label("S").unwrap())),
        Err(LogicError::IntractableSize { .. })
    ));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn printing_then_parsing_is_the_identity(seed in any::<u64>(), depth in 1usize..6) {
        let (_, st) = sierpinski();
        for f in random_formulas(&st, &first_order(), depth, 4, seed).unwrap() {
            prop_assert_eq!(f.depth(), depth);
            prop_assert_eq!(Formula::parse(&f.to_string()).unwrap(), f);
        }
    }

    #[test]
    fn random_deeper_formulas_satisfy_both_engines(seed in any::<u64>(), which in 0usize..2) {
        let (_, st) = if which == 0 { sierpinski() } else { discrete2() };
        let sig = first_order();
        let formulas = random_formulas(&st, &sig, 4, 8, seed).unwrap();
        let report = check_semantics(&st, &sig.context, &formulas).unwrap();
        prop_assert!(report.holds(), "{:?}", report.failures.first());
    }
}

