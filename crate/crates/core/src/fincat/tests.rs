use std::sync::Arc;

use proptest::prelude::*;

use super::*;
use crate::Bounds;

fn s(x: &str) -> String {
    x.to_string()
}

fn raw(
    objects: &[&str],
    morphisms: &[(&str, &str, &str)],
    identities: &[(&str, &str)],
    compose: &[(&str, &str, &str)],
) -> RawCategory {
    RawCategory {
        objects: objects.iter().map(|o| s(o)).collect(),
        morphisms: morphisms.iter().map(|(a, b, c)| (s(a), s(b), s(c))).collect(),
        identities: identities.iter().map(|(a, b)| (s(a), s(b))).collect(),
        compose: compose.iter().map(|(a, b, c)| (s(a), s(b), s(c))).collect(),
    }
}

/// ∅ ⊂ {⊤} ⊂ S with one arrow per inclusion.
fn sierpinski_raw() -> RawCategory {
    raw(
        &["0", "T", "S"],
        &[
            ("i0", "0", "0"),
            ("iT", "T", "T"),
            ("iS", "S", "S"),
            ("0T", "0", "T"),
            ("0S", "0", "S"),
            ("TS", "T", "S"),
        ],
        &[("0", "i0"), ("T", "iT"), ("S", "iS")],
        &[("TS", "0T", "0S")],
    )
}

/// Four objects, two parallel arrows, a composite pair and a side arrow.
pub(crate) fn four_object_category() -> FinCategory {
    validate_category(&raw(
        &["0", "1", "2", "3"],
        &[
            ("i0", "0", "0"),
            ("i1", "1", "1"),
            ("i2", "2", "2"),
            ("i3", "3", "3"),
            ("f", "0", "1"),
            ("g", "0", "1"),
            ("h", "1", "2"),
            ("hf", "0", "2"),
            ("hg", "0", "2"),
            ("k", "3", "2"),
        ],
        &[("0", "i0"), ("1", "i1"), ("2", "i2"), ("3", "i3")],
        &[("h", "f", "hf"), ("h", "g", "hg")],
    ))
    .unwrap()
}

fn arrow_fixture() -> Presheaf {
    let c = Arc::new(FinCategory::arrow());
    Presheaf::from_labels(
        c,
        &[(s("0"), vec![s("x"), s("y")]), (s("1"), vec![s("z")])],
        &[(s("a"), vec![(s("z"), s("x"))])],
    )
    .unwrap()
}

/// Brute-force oracle: walk every family of component functions and keep
/// the ones whose squares commute, checked directly on the tables.
fn naturals_oracle(f: &Presheaf, g: &Presheaf) -> usize {
    let c = f.base().clone();
    let slots: Vec<(Obj, usize)> = c
        .objects()
        .flat_map(|o| (0..f.size(o)).map(move |x| (o, x)))
        .collect();
    if slots.iter().any(|&(o, _)| g.size(o) == 0) {
        return 0;
    }
    let mut choice = vec![0usize; slots.len()];
    let mut count = 0;
    loop {
        let comp = |o: Obj, x: usize| {
            let k = slots.iter().position(|&p| p == (o, x)).unwrap();
            choice[k]
        };
        let natural = c.morphisms().all(|m| {
            let (v, u) = (c.source(m), c.target(m));
            (0..f.size(u)).all(|x| comp(v, f.restrict(m, x)) == g.restrict(m, comp(u, x)))
        });
        if natural {
            count += 1;
        }
        // odometer
        let mut i = 0;
        loop {
            if i == slots.len() {
                return count;
            }
            choice[i] += 1;
            if choice[i] < g.size(slots[i].0) {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
}

#[test]
fn sierpinski_poset_validates() {
    let c = validate_category(&sierpinski_raw()).unwrap();
    assert_eq!(c.object_count(), 3);
    assert_eq!(c.morphism_count(), 6);
    assert!(c.is_poset());
    assert!(c.associativity_failure().is_none());
}

#[test]
fn associativity_violation_is_named() {
    // a∘a = b, b∘b = b, a∘b = a, b∘a = b: (a∘b)∘a = b but a∘(b∘a) = a
    let r = raw(
        &["*"],
        &[("id", "*", "*"), ("a", "*", "*"), ("b", "*", "*")],
        &[("*", "id")],
        &[("a", "a", "b"), ("b", "b", "b"), ("a", "b", "a"), ("b", "a", "b")],
    );
    match validate_category(&r) {
        Err(CategoryError::AssociativityViolation { .. }) => {}
        other => panic!("expected associativity violation, got {other:?}"),
    }
}

#[test]
fn missing_identity_and_dangling_reference() {
    let mut r = sierpinski_raw();
    r.identities.retain(|(o, _)| o != "T");
    assert!(matches!(
        validate_category(&r),
        Err(CategoryError::IdentityViolation { object, .. }) if object == "T"
    ));

    let mut r = sierpinski_raw();
    r.morphisms.push((s("bad"), s("0"), s("nowhere")));
    assert_eq!(validate_category(&r), Err(CategoryError::DanglingReference(s("nowhere"))));

    let mut r = sierpinski_raw();
    r.compose.clear();
    assert!(matches!(validate_category(&r), Err(CategoryError::MissingComposite { .. })));
}

#[test]
fn hom_bound_is_enforced() {
    let c = four_object_category();
    assert!(c.check_hom_bound(2).is_ok());
    assert!(matches!(c.check_hom_bound(1), Err(CategoryError::HomTooLarge { size: 2, .. })));
}

#[test]
fn round_trip_through_raw() {
    let c = four_object_category();
    let again = validate_category(&c.to_raw()).unwrap();
    assert_eq!(c, again);
    assert_eq!(c.opposite().opposite(), c);
}

#[test]
fn naturals_out_of_a_representable() {
    let f = arrow_fixture();
    let c = f.base().clone();
    let one = c.object_by_name("1").unwrap();
    let h1 = yoneda_presheaf(&c, one);
    let nats = enumerate_naturals(&h1, &f, &Bounds::default()).unwrap();
    assert_eq!(nats.len(), naturals_oracle(&h1, &f));
    assert_eq!(nats.len(), 1);
    assert_eq!(nats.len(), f.size(one));
}

#[test]
fn identity_is_natural() {
    let f = arrow_fixture();
    let nats = enumerate_naturals(&f, &f, &Bounds::default()).unwrap();
    assert!(nats.contains(&Natural::identity(&f)));
    assert_eq!(nats.len(), naturals_oracle(&f, &f));
}

#[test]
fn blocked_components_give_no_naturals() {
    let c = Arc::new(FinCategory::arrow());
    let one = Presheaf::terminal(c.clone());
    let g = Presheaf::from_labels(
        c,
        &[(s("0"), vec![s("q")]), (s("1"), vec![])],
        &[(s("a"), vec![])],
    )
    .unwrap();
    assert_eq!(naturals_oracle(&one, &g), 0);
    assert!(enumerate_naturals(&one, &g, &Bounds::default()).unwrap().is_empty());
}

#[test]
fn base_mismatch() {
    let a = Presheaf::terminal(Arc::new(FinCategory::arrow()));
    let b = Presheaf::terminal(Arc::new(FinCategory::terminal()));
    assert_eq!(
        enumerate_naturals(&a, &b, &Bounds::default()),
        Err(NaturalError::BaseMismatch)
    );
}

#[test]
fn representables_by_direct_read_off() {
    let sier = Arc::new(validate_category(&sierpinski_raw()).unwrap());
    let top = sier.object_by_name("S").unwrap();
    let h = yoneda_presheaf(&sier, top);
    assert!(sier.objects().all(|o| h.size(o) == 1));

    let c = Arc::new(FinCategory::arrow());
    let h1 = yoneda_presheaf_named(&c, "1").unwrap();
    assert_eq!(h1.elements(Obj(0)), ["a"]);
    assert_eq!(h1.elements(Obj(1)), ["id_1"]);
    assert!(matches!(
        yoneda_presheaf_named(&c, "2"),
        Err(NaturalError::UnknownObject(_))
    ));
}

#[test]
fn representables_are_functorial() {
    let c = Arc::new(four_object_category());
    for a in c.objects() {
        let h = yoneda_presheaf(&c, a);
        // re-validate through the checked constructor
        Presheaf::new(c.clone(), h.values().to_vec(), c.morphisms().map(|m| h.restriction(m).to_vec()).collect())
            .unwrap();
    }
}

#[test]
fn yoneda_identity_case() {
    let c = Arc::new(four_object_category());
    for a in c.objects() {
        let h = yoneda_presheaf(&c, a);
        let id_pos = h.position(a, c.mor_name(c.identity(a))).unwrap();
        assert_eq!(yoneda_from_element(&h, a, id_pos).unwrap(), Natural::identity(&h));
    }
}

#[test]
fn yoneda_round_trip_on_arrow_fixture() {
    let f = arrow_fixture();
    let c = f.base().clone();
    for a in c.objects() {
        for x in 0..f.size(a) {
            let eta = yoneda_from_element(&f, a, x).unwrap();
            assert_eq!(yoneda_to_element(&f, a, &eta).unwrap(), x);
        }
        let h = yoneda_presheaf(&c, a);
        for eta in enumerate_naturals(&h, &f, &Bounds::default()).unwrap() {
            let x = yoneda_to_element(&f, a, &eta).unwrap();
            assert_eq!(yoneda_from_element(&f, a, x).unwrap(), eta);
        }
    }
}

#[test]
fn non_natural_input_is_rejected() {
    let f = arrow_fixture();
    let c = f.base().clone();
    let one = c.object_by_name("1").unwrap();
    // sends `a` to y although z restricts to x
    let bad = Natural {
        components: vec![vec![1], vec![0]],
    };
    assert!(matches!(yoneda_to_element(&f, one, &bad), Err(NaturalError::NotNatural(_))));
}

#[test]
fn yoneda_embedding_is_fully_faithful() {
    let c = Arc::new(four_object_category());
    for a in c.objects() {
        for b in c.objects() {
            let ha = yoneda_presheaf(&c, a);
            let hb = yoneda_presheaf(&c, b);
            let n = count_naturals(&ha, &hb, &Bounds::default()).unwrap();
            assert_eq!(n, c.hom(a, b).len());
        }
    }
}

#[test]
fn presheaf_enumeration_counts() {
    // on the arrow, presheaves with sizes (p, q) number p^q
    let c = Arc::new(FinCategory::arrow());
    let all = Presheaf::enumerate(&c, 3, &Bounds::default()).unwrap();
    let expected: usize = (0..=3u32).flat_map(|p| (0..=3u32).map(move |q| (p as usize).pow(q))).sum();
    assert_eq!(all.len(), expected);
}

#[test]
fn isomorphism_search() {
    let f = arrow_fixture();
    let mut relabelled = f.values().to_vec();
    relabelled[0] = vec![s("u"), s("v")];
    let c = f.base().clone();
    let g = Presheaf::new(c.clone(), relabelled, c.morphisms().map(|m| f.restriction(m).to_vec()).collect())
        .unwrap();
    assert!(find_isomorphism(&f, &g).is_some());
    assert!(find_isomorphism(&f, &Presheaf::terminal(c)).is_none());
}

proptest! {
    #[test]
    fn yoneda_cardinality_on_four_objects(sizes in proptest::collection::vec(0usize..=2, 4), pick in any::<usize>()) {
        let c = Arc::new(four_object_category());
        let all = Presheaf::enumerate_with_sizes(&c, &sizes, &Bounds::default()).unwrap();
        prop_assume!(!all.is_empty());
        let f = &all[pick % all.len()];
        for a in c.objects() {
            let h = yoneda_presheaf(&c, a);
            let n = count_naturals(&h, f, &Bounds::default()).unwrap();
            prop_assert_eq!(n, f.size(a));
            prop_assert_eq!(n, naturals_oracle(&h, f));
        }
    }

    #[test]
    fn enumerated_presheaves_are_functorial(sizes in proptest::collection::vec(0usize..=2, 4)) {
        let c = Arc::new(four_object_category());
        for f in Presheaf::enumerate_with_sizes(&c, &sizes, &Bounds::default()).unwrap() {
            let maps = c.morphisms().map(|m| f.restriction(m).to_vec()).collect();
            prop_assert!(Presheaf::new(c.clone(), f.values().to_vec(), maps).is_ok());
        }
    }
}
