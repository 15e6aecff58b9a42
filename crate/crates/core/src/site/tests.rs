use std::collections::BTreeSet;
use std::sync::Arc;

use proptest::prelude::*;

use super::*;
use crate::fincat::{FinCategory, Mor, Obj};
use crate::Bounds;

fn site(space: &FiniteSpace) -> OpenCoverSite {
    open_cover_topology(space, &Bounds::default()).unwrap()
}

fn arrow(cat: &FinCategory, from: &str, to: &str) -> Mor {
    cat.arrow_between(cat.object_by_name(from).unwrap(), cat.object_by_name(to).unwrap())
        .unwrap()
}

/// Every subset of arrows into `u` that is closed under precomposition,
/// found by checking all 2^n subsets.
fn sieves_oracle(cat: &FinCategory, u: Obj) -> BTreeSet<BTreeSet<Mor>> {
    let into = cat.arrows_into(u);
    let mut out = BTreeSet::new();
    for mask in 0u32..(1 << into.len()) {
        let s: BTreeSet<Mor> = (0..into.len()).filter(|i| mask >> i & 1 == 1).map(|i| into[i]).collect();
        let closed = s.iter().all(|&f| {
            cat.morphisms()
                .filter(|&g| cat.target(g) == cat.source(f))
                .all(|g| s.contains(&cat.comp(f, g)))
        });
        if closed {
            out.insert(s);
        }
    }
    out
}

fn fixtures() -> Vec<FiniteSpace> {
    vec![
        FiniteSpace::sierpinski(),
        FiniteSpace::discrete2(),
        FiniteSpace::chain3(),
        FiniteSpace::pseudocircle(),
        FiniteSpace::discrete(&["a", "b", "c"]),
    ]
}

#[test]
fn fixture_opens() {
    let s = FiniteSpace::sierpinski();
    assert_eq!(s.labels(), vec!["{}", "{top}", "S"]);
    let d = FiniteSpace::discrete2();
    assert_eq!(d.labels(), vec!["{}", "{a}", "{b}", "D"]);
    let p = FiniteSpace::pseudocircle();
    assert_eq!(p.labels(), vec!["{}", "{a}", "{b}", "{a,b}", "Ux", "Uy", "whole"]);
    assert_eq!(p.open_by_label("{a,b,x}"), p.open_by_label("Ux"));
    assert_eq!(p.intersection(4, 5), 3);
    assert_eq!(p.minimal_open(2), 4);
}

#[test]
fn invalid_spaces_are_rejected() {
    let p = |xs: &[&str]| xs.iter().map(|s| s.to_string()).collect::<Vec<_>>();
    assert!(FiniteSpace::new(p(&["a", "b"]), vec![p(&[]), p(&["a"]), p(&["b"])]).is_err());
    assert!(FiniteSpace::new(p(&["a", "b"]), vec![p(&["a"]), p(&["a", "b"])]).is_err());
    assert!(FiniteSpace::new(p(&["a", "b", "c"]), vec![p(&[]), p(&["a", "b"]), p(&["b", "c"]), p(&["a", "b", "c"])]).is_err());
    assert!(FiniteSpace::new(p(&["a"]), vec![p(&[]), p(&["z"])]).is_err());
}

#[test]
fn generate_sieve_examples() {
    let s = site(&FiniteSpace::sierpinski());
    let cat = &s.category;
    let big = cat.object_by_name("S").unwrap();
    let max = generate_sieve(cat, big, &[cat.identity(big)]).unwrap();
    assert!(max.is_maximal(cat));
    let gen = generate_sieve(cat, big, &[arrow(cat, "{top}", "S")]).unwrap();
    let expected: BTreeSet<Mor> = [arrow(cat, "{}", "S"), arrow(cat, "{top}", "S")].into();
    assert_eq!(gen.arrows(), &expected);
    assert!(gen.is_closed(cat));
    assert!(generate_sieve(cat, big, &[]).unwrap().is_empty());
    assert!(matches!(
        generate_sieve(cat, big, &[arrow(cat, "{}", "{top}")]),
        Err(SiteError::CodomainMismatch(_))
    ));
}

#[test]
fn pullback_sieve_examples() {
    let s = site(&FiniteSpace::sierpinski());
    let cat = &s.category;
    let big = cat.object_by_name("S").unwrap();
    let empty = cat.object_by_name("{}").unwrap();
    let gen = generate_sieve(cat, big, &[arrow(cat, "{top}", "S")]).unwrap();
    assert_eq!(pullback_sieve(cat, cat.identity(big), &gen).unwrap(), gen);
    let pulled = pullback_sieve(cat, arrow(cat, "{}", "S"), &gen).unwrap();
    assert_eq!(pulled, Sieve::maximal(cat, empty));
    assert!(matches!(
        pullback_sieve(cat, arrow(cat, "{}", "{top}"), &gen),
        Err(SiteError::ApexMismatch { .. })
    ));
}

#[test]
fn sieve_enumeration_matches_oracle() {
    for space in fixtures() {
        let s = site(&space);
        for u in s.category.objects() {
            let got: BTreeSet<BTreeSet<Mor>> = all_sieves(&s.category, u, &Bounds::default())
                .unwrap()
                .into_iter()
                .map(|s| s.arrows().clone())
                .collect();
            assert_eq!(got, sieves_oracle(&s.category, u));
        }
    }
    // a category with parallel arrows
    let c = Arc::new(crate::fincat::tests::four_object_category());
    for u in c.objects() {
        let got: BTreeSet<BTreeSet<Mor>> = all_sieves(&c, u, &Bounds::default())
            .unwrap()
            .into_iter()
            .map(|s| s.arrows().clone())
            .collect();
        assert_eq!(got, sieves_oracle(&c, u));
    }
}

#[test]
fn sierpinski_covers() {
    let s = site(&FiniteSpace::sierpinski());
    let cat = &s.category;
    let big = cat.object_by_name("S").unwrap();
    assert_eq!(s.topology.covers(big), &[Sieve::maximal(cat, big)]);
    let empty = cat.object_by_name("{}").unwrap();
    assert!(s.topology.is_covering(&Sieve::empty(empty)));
}

#[test]
fn discrete_two_point_cover() {
    let s = site(&FiniteSpace::discrete2());
    let cat = &s.category;
    let d = cat.object_by_name("D").unwrap();
    let gen = generate_sieve(cat, d, &[arrow(cat, "{a}", "D"), arrow(cat, "{b}", "D")]).unwrap();
    assert!(s.topology.is_covering(&gen));
    let only_a = generate_sieve(cat, d, &[arrow(cat, "{a}", "D")]).unwrap();
    assert!(!s.topology.is_covering(&only_a));
}

#[test]
fn open_cover_topologies_are_valid() {
    for space in fixtures() {
        let s = site(&space);
        let report = validate_topology(&s.topology, &Bounds::default()).unwrap();
        assert!(report.is_valid(), "{:?}", report.violations);
        let trivial = GrothendieckTopology::trivial(s.category.clone());
        assert!(validate_topology(&trivial, &Bounds::default()).unwrap().is_valid());
    }
}

#[test]
fn removing_a_forced_cover_breaks_transitivity() {
    let s = site(&FiniteSpace::discrete(&["a", "b", "c"]));
    let cat = &s.category;
    let whole = cat.object_by_name("{a,b,c}").unwrap();
    let forced = generate_sieve(cat, whole, &[arrow(cat, "{a,b}", "{a,b,c}"), arrow(cat, "{c}", "{a,b,c}")]).unwrap();
    let mutated = s.topology.without(&forced);
    let report = validate_topology(&mutated, &Bounds::default()).unwrap();
    assert!(!report.is_valid());
    let label = forced.label(cat);
    assert!(report.violations.iter().any(|v| matches!(
        v,
        TopologyViolation::NotTransitive { sieve, .. } if *sieve == label
    )));
}

#[test]
fn removing_maximal_breaks_axiom_one() {
    let s = site(&FiniteSpace::sierpinski());
    let top = s.category.object_by_name("{top}").unwrap();
    let mutated = s.topology.without(&Sieve::maximal(&s.category, top));
    let report = validate_topology(&mutated, &Bounds::default()).unwrap();
    assert!(report
        .violations
        .iter()
        .any(|v| matches!(v, TopologyViolation::MissingMaximal { object } if object == "{top}")));
}

#[test]
fn saturation_reproduces_open_cover_topology() {
    for space in fixtures() {
        let s = site(&space);
        let cat = &s.category;
        // generators: for each open, the family of all strictly smaller opens
        // whose union is the open, plus the empty family on ∅
        let mut families = Vec::new();
        for u in cat.objects() {
            let below: Vec<Mor> = cat.arrows_into(u).iter().copied().filter(|&f| !cat.is_identity(f)).collect();
            let union: BTreeSet<usize> = below.iter().flat_map(|&f| space.opens()[cat.source(f).0].iter().copied()).collect();
            if union == space.opens()[u.0] {
                families.push((u, below));
            }
        }
        let j = GrothendieckTopology::generated(cat.clone(), &families, &Bounds::default()).unwrap();
        assert_eq!(j, s.topology);
    }
}

#[test]
fn overlaps_are_intersections() {
    for space in fixtures() {
        let s = site(&space);
        let cat = &s.category;
        for u in cat.objects() {
            for &f in cat.arrows_into(u) {
                for &g in cat.arrows_into(u) {
                    let p = representing_pullback(cat, f, g).unwrap();
                    assert_eq!(p.0, space.intersection(cat.source(f).0, cat.source(g).0));
                }
            }
        }
    }
}

proptest! {
    #[test]
    fn pullback_identities_and_maximal(space_ix in 0usize..5, seed in any::<u64>()) {
        let space = &fixtures()[space_ix];
        let s = site(space);
        let cat = &s.category;
        for u in cat.objects() {
            let sieves = all_sieves(cat, u, &Bounds::default()).unwrap();
            let sv = &sieves[(seed as usize) % sieves.len()];
            prop_assert_eq!(&pullback_sieve(cat, cat.identity(u), sv).unwrap(), sv);
            for &f in cat.arrows_into(u) {
                let max = Sieve::maximal(cat, u);
                prop_assert!(pullback_sieve(cat, f, &max).unwrap().is_maximal(cat));
                let p = pullback_sieve(cat, f, sv).unwrap();
                prop_assert!(p.is_closed(cat));
                if sv.contains(f) {
                    prop_assert!(p.is_maximal(cat));
                }
            }
        }
    }

    #[test]
    fn generated_sieves_are_closed(space_ix in 0usize..5, mask in any::<u16>()) {
        let space = &fixtures()[space_ix];
        let s = site(space);
        let cat = &s.category;
        let u = Obj(cat.object_count() - 1);
        let into = cat.arrows_into(u);
        let family: Vec<Mor> = (0..into.len()).filter(|i| mask >> i & 1 == 1).map(|i| into[i]).collect();
        let gen = generate_sieve(cat, u, &family).unwrap();
        prop_assert!(gen.is_closed(cat));
        for f in &family {
            prop_assert!(gen.contains(*f));
        }
    }
}
