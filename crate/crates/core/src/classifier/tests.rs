use std::collections::BTreeSet;
use std::sync::Arc;

use proptest::prelude::*;

use super::*;
use crate::fincat::{FinCategory, Mor, Obj, Presheaf, SetFunctor};
use crate::sheaf::examples::{constant_on_nonempty, locally_constant};
use crate::sheaf::is_sheaf;
use crate::site::{open_cover_topology, FiniteSpace, GrothendieckTopology, OpenCoverSite, Sieve};
use crate::Bounds;

fn site(space: FiniteSpace) -> OpenCoverSite {
    open_cover_topology(&space, &Bounds::default()).unwrap()
}

fn obj(s: &OpenCoverSite, label: &str) -> Obj {
    s.object_by_label(label).unwrap()
}

/// Closed subobjects by brute force over every subset of the flattened
/// elements, with both conditions checked straight from their definitions.
fn closed_oracle(f: &Presheaf, j: &GrothendieckTopology) -> Vec<Vec<Vec<bool>>> {
    let cat = f.base();
    let offsets = f.offsets();
    let total = f.total_size();
    let mut out = Vec::new();
    for code in 0u64..(1 << total) {
        let has = |u: Obj, x: usize| code >> (offsets[u.0] + x) & 1 == 1;
        let stable = cat
            .morphisms()
            .all(|g| (0..f.size(cat.target(g))).all(|x| !has(cat.target(g), x) || has(cat.source(g), f.restrict(g, x))));
        let closed = cat.objects().all(|u| {
            (0..f.size(u)).all(|x| {
                has(u, x)
                    || !j.covers(u).iter().any(|s| s.arrows().iter().all(|&m| has(cat.source(m), f.restrict(m, x))))
            })
        });
        if stable && closed {
            out.push(cat.objects().map(|u| (0..f.size(u)).map(|x| has(u, x)).collect()).collect());
        }
    }
    out
}

/// `J`-closed sieves on `u` by brute force over subsets of the arrows into `u`.
fn closed_sieves_oracle(j: &GrothendieckTopology, u: Obj) -> usize {
    let cat = j.base();
    let into: Vec<Mor> = cat.arrows_into(u).to_vec();
    (0u64..(1 << into.len()))
        .filter(|&code| {
            let s: BTreeSet<Mor> = (0..into.len()).filter(|i| code >> i & 1 == 1).map(|i| into[i]).collect();
            let sieve = Sieve::from_arrows_unchecked(u, s.iter().copied());
            let closed_under_comp = s
                .iter()
                .all(|&f| cat.arrows_into(cat.source(f)).iter().all(|&g| s.contains(&cat.comp(f, g))));
            let j_closed = into.iter().all(|&f| {
                let pulled: Vec<Mor> =
                    cat.arrows_into(cat.source(f)).iter().copied().filter(|&g| s.contains(&cat.comp(f, g))).collect();
                s.contains(&f) || !j.is_covering(&Sieve::from_arrows_unchecked(cat.source(f), pulled))
            });
            closed_under_comp && j_closed && sieve.apex() == u
        })
        .count()
}

fn fixture_sites() -> Vec<OpenCoverSite> {
    vec![
        site(FiniteSpace::sierpinski()),
        site(FiniteSpace::discrete2()),
        site(FiniteSpace::chain3()),
        site(FiniteSpace::pseudocircle()),
    ]
}

#[test]
fn sierpinski_omega_matches_opens() {
    let s = site(FiniteSpace::sierpinski());
    let (om, cert) = omega_of_site(&s, &Bounds::default()).unwrap();
    assert!(cert.holds());
    let sizes: Vec<usize> = ["S", "{top}", "{}"].iter().map(|l| om.presheaf.size(obj(&s, l))).collect();
    assert_eq!(sizes, vec![3, 2, 1]);
    assert_eq!(om.presheaf.elements(obj(&s, "S")), &["{}", "{top}", "S"]);
}

#[test]
fn omega_sizes_agree_with_oracle_and_opens() {
    for s in fixture_sites() {
        let (om, cert) = omega_of_site(&s, &Bounds::default()).unwrap();
        assert!(cert.holds(), "{:?}", cert);
        for u in s.category.objects() {
            let inside = s.space.opens().iter().filter(|o| o.is_subset(&s.space.opens()[u.0])).count();
            assert_eq!(om.presheaf.size(u), inside);
            assert_eq!(om.presheaf.size(u), closed_sieves_oracle(&s.topology, u));
        }
    }
}

#[test]
fn omega_is_a_sheaf_and_truth_is_natural() {
    for s in fixture_sites() {
        let (om, _) = omega_of_site(&s, &Bounds::default()).unwrap();
        assert!(is_sheaf(&om.presheaf, &s.topology, &Bounds::default()).unwrap().is_sheaf());
        let one = Presheaf::terminal(s.category.clone());
        om.truth.check(&one, &om.presheaf).unwrap();
    }
}

#[test]
fn arrow_category_has_three_truth_values_at_the_codomain() {
    let cat = Arc::new(FinCategory::arrow());
    let j = GrothendieckTopology::trivial(cat.clone());
    let om = omega(&j, &Bounds::default()).unwrap();
    assert_eq!(om.presheaf.size(cat.object_by_name("1").unwrap()), 3);
    assert_eq!(om.presheaf.size(cat.object_by_name("0").unwrap()), 2);
    for u in cat.objects() {
        assert_eq!(om.presheaf.size(u), closed_sieves_oracle(&j, u));
    }
}

#[test]
fn characteristic_of_top_is_truth() {
    let s = site(FiniteSpace::sierpinski());
    let (om, _) = omega_of_site(&s, &Bounds::default()).unwrap();
    let f = constant_on_nonempty(&s.category, &s.space, &["p", "n"]);
    let chi = characteristic(&f, &om, &Subobject::top(&f)).unwrap();
    for u in s.category.objects() {
        assert!(chi.component(u).iter().all(|&i| i == om.top_at(u)));
    }
}

#[test]
fn characteristic_of_least_subobject_is_the_empty_open() {
    let s = site(FiniteSpace::sierpinski());
    let (om, _) = omega_of_site(&s, &Bounds::default()).unwrap();
    let f = constant_on_nonempty(&s.category, &s.space, &["p", "n"]);
    let bot = bottom(&f, &s.topology);
    let chi = characteristic(&f, &om, &bot).unwrap();
    for l in ["S", "{top}"] {
        let u = obj(&s, l);
        assert!(chi.component(u).iter().all(|&i| om.presheaf.label(u, i) == "{}"));
    }
    // the literal empty subobject misses the section over the empty open
    assert!(matches!(
        characteristic(&f, &om, &Subobject::empty(&f)),
        Err(ClassifierError::NotClosed { .. })
    ));
}

#[test]
fn positivity_predicate_is_classified_by_its_open() {
    let s = site(FiniteSpace::sierpinski());
    let (om, _) = omega_of_site(&s, &Bounds::default()).unwrap();
    let f = constant_on_nonempty(&s.category, &s.space, &["p", "n"]);
    let m = Subobject::from_labels(&f, &[("{top}", &["p"]), ("{}", &["*"])]).unwrap();
    let chi = characteristic(&f, &om, &m).unwrap();
    let at_s = obj(&s, "S");
    let label = |x: &str| om.presheaf.label(at_s, chi.at(at_s, f.position(at_s, x).unwrap())).to_string();
    assert_eq!(label("p"), "{top}");
    assert_eq!(label("n"), "{}");
    assert!(square_is_pullback(&f, &om, &m, &chi).unwrap());
    assert_eq!(characteristic_alternatives(&f, &om, &m, &Bounds::default()).unwrap(), 1);
}

#[test]
fn unstable_parts_are_rejected() {
    let s = site(FiniteSpace::sierpinski());
    let f = constant_on_nonempty(&s.category, &s.space, &["p", "n"]);
    let err = Subobject::from_labels(&f, &[("S", &["p"])]).unwrap_err();
    assert!(matches!(err, ClassifierError::NotRestrictionStable { .. }));
}

#[test]
fn terminal_on_sierpinski_round_trips_with_three_subobjects() {
    let s = site(FiniteSpace::sierpinski());
    let (om, _) = omega_of_site(&s, &Bounds::default()).unwrap();
    let one = Presheaf::terminal(s.category.clone());
    let report = classify_round_trip(&one, &s.topology, &om, &Bounds::default()).unwrap();
    assert!(report.holds(), "{:?}", report);
    assert_eq!(report.subobjects, 3);
}

#[test]
fn empty_presheaf_has_one_subobject_and_one_map() {
    let s = site(FiniteSpace::sierpinski());
    let (om, _) = omega_of_site(&s, &Bounds::default()).unwrap();
    let empty = Presheaf::empty(s.category.clone());
    let report = classify_round_trip(&empty, &s.topology, &om, &Bounds::default()).unwrap();
    assert_eq!((report.subobjects, report.arrows), (1, 1));
    assert!(report.holds());
}

#[test]
fn round_trip_holds_for_every_small_presheaf() {
    let bounds = Bounds::default();
    let s = site(FiniteSpace::sierpinski());
    let (om, _) = omega_of_site(&s, &bounds).unwrap();
    let cat = Arc::new(FinCategory::arrow());
    let trivial = GrothendieckTopology::trivial(cat.clone());
    let om_arrow = omega(&trivial, &bounds).unwrap();
    for f in Presheaf::enumerate(&s.category, 2, &bounds).unwrap() {
        let report = classify_round_trip(&f, &s.topology, &om, &bounds).unwrap();
        assert!(report.holds(), "{:?}", report);
    }
    for f in Presheaf::enumerate(&cat, 3, &bounds).unwrap() {
        let report = classify_round_trip(&f, &trivial, &om_arrow, &bounds).unwrap();
        assert!(report.holds(), "{:?}", report);
    }
}

#[test]
fn subobject_enumeration_matches_oracle() {
    let bounds = Bounds::default();
    for s in fixture_sites().into_iter().take(2) {
        let trivial = GrothendieckTopology::trivial(s.category.clone());
        for f in Presheaf::enumerate(&s.category, 2, &bounds).unwrap().into_iter().step_by(7) {
            for j in [&s.topology, &trivial] {
                let got: Vec<Vec<Vec<bool>>> =
                    closed_subobjects(&f, j, &bounds).unwrap().iter().map(|m| m.parts().to_vec()).collect();
                let mut want = closed_oracle(&f, j);
                want.sort();
                assert_eq!(got, want);
            }
        }
    }
}

#[test]
fn closure_is_idempotent_and_inflationary() {
    let bounds = Bounds::default();
    let s = site(FiniteSpace::pseudocircle());
    let f = locally_constant(&s.category, &s.space, &["0", "1"]);
    for m in subobjects(&f, &bounds).unwrap() {
        let c = closure(&f, &s.topology, &m);
        assert!(m.is_subset(&c));
        assert_eq!(closure(&f, &s.topology, &c), c);
        assert!(is_closed(&f, &s.topology, &c));
    }
}

#[test]
fn sierpinski_truth_values_are_intuitionistic() {
    let s = site(FiniteSpace::sierpinski());
    let one = Presheaf::terminal(s.category.clone());
    let h = heyting(&one, &s.topology, &Bounds::default()).unwrap();
    assert_eq!(h.len(), 3);
    assert!(h.check_axioms().is_empty());
    let a = h
        .index_of(&Subobject::from_labels(&one, &[("{top}", &["*"]), ("{}", &["*"])]).unwrap())
        .unwrap();
    assert_eq!(h.implies(a, h.bottom), h.bottom);
    assert_eq!(h.negate(h.negate(a)), h.top);
    assert_ne!(h.negate(h.negate(a)), a);
    assert_eq!(h.excluded_middle_witness(), Some(a));
    assert!(h.double_negation_witness().is_some());
    for x in 0..h.len() {
        assert_eq!(h.implies(x, x), h.top);
    }
}

#[test]
fn implication_is_the_largest_element_below_the_adjunction() {
    let bounds = Bounds::default();
    let s = site(FiniteSpace::discrete2());
    let fixtures = vec![
        Presheaf::terminal(s.category.clone()),
        constant_on_nonempty(&s.category, &s.space, &["p", "n"]),
        locally_constant(&s.category, &s.space, &["0", "1"]),
    ];
    for f in fixtures {
        for j in [&s.topology, &GrothendieckTopology::trivial(s.category.clone())] {
            let h = heyting(&f, j, &bounds).unwrap();
            for a in 0..h.len() {
                for b in 0..h.len() {
                    let candidates: Vec<usize> = (0..h.len()).filter(|&c| h.leq(h.meet(c, a), b)).collect();
                    let largest = candidates
                        .iter()
                        .copied()
                        .find(|&c| candidates.iter().all(|&d| h.leq(d, c)))
                        .unwrap();
                    assert_eq!(h.implies(a, b), largest);
                }
            }
        }
    }
}

#[test]
fn heyting_axioms_hold_on_small_presheaves() {
    let bounds = Bounds::default();
    let s = site(FiniteSpace::sierpinski());
    let trivial = GrothendieckTopology::trivial(s.category.clone());
    for f in Presheaf::enumerate(&s.category, 2, &bounds).unwrap() {
        for j in [&s.topology, &trivial] {
            let h = heyting(&f, j, &bounds).unwrap();
            assert!(h.check_axioms().is_empty());
        }
    }
}

#[test]
fn a_corrupted_implication_table_is_caught() {
    let s = site(FiniteSpace::sierpinski());
    let one = Presheaf::terminal(s.category.clone());
    let mut h = heyting(&one, &s.topology, &Bounds::default()).unwrap();
    let n = h.len();
    h.implies[h.top * n + h.bottom] = h.top;
    let laws: Vec<&str> = h.check_axioms().iter().map(|f| f.law).collect();
    assert!(laws.contains(&"implication adjunction"));
}

#[test]
fn lattice_bound_is_reported() {
    let s = site(FiniteSpace::discrete2());
    let f = locally_constant(&s.category, &s.space, &["0", "1"]);
    let bounds = Bounds {
        lattice: 2,
        ..Bounds::default()
    };
    assert!(matches!(
        heyting(&f, &s.topology, &bounds),
        Err(ClassifierError::IntractableSize { .. })
    ));
}

fn small_presheaf() -> impl Strategy<Value = (usize, u64)> {
    (0usize..2, any::<u64>())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn characteristic_squares_are_pullbacks((which, seed) in small_presheaf()) {
        let bounds = Bounds::default();
        let s = if which == 0 { site(FiniteSpace::sierpinski()) } else { site(FiniteSpace::discrete2()) };
        let all = Presheaf::enumerate(&s.category, 2, &bounds).unwrap();
        let f = &all[(seed as usize) % all.len()];
        let (om, _) = omega_of_site(&s, &bounds).unwrap();
        for m in closed_subobjects(f, &s.topology, &bounds).unwrap() {
            let chi = characteristic(f, &om, &m).unwrap();
            prop_assert!(chi.check(f, &om.presheaf).is_ok());
            prop_assert!(square_is_pullback(f, &om, &m, &chi).unwrap());
            prop_assert_eq!(pullback_of_true(f, &om, &chi), m);
        }
    }

    #[test]
    fn meets_joins_and_implications_stay_closed((which, seed) in small_presheaf()) {
        let bounds = Bounds::default();
        let s = if which == 0 { site(FiniteSpace::chain3()) } else { site(FiniteSpace::pseudocircle()) };
        let all = Presheaf::enumerate_with_sizes(&s.category, &vec![1; s.category.object_count()], &bounds).unwrap();
        let f = &all[(seed as usize) % all.len()];
        let subs = closed_subobjects(f, &s.topology, &bounds).unwrap();
        for a in &subs {
            for b in &subs {
                prop_assert!(is_closed(f, &s.topology, &a.meet(b)));
                prop_assert!(is_closed(f, &s.topology, &join(f, &s.topology, a, b)));
                prop_assert!(is_closed(f, &s.topology, &implies(f, a, b)));
            }
        }
    }
}
