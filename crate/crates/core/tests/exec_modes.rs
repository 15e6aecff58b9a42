//! Sequential and parallel enumeration must agree result for result.

use workbench_core::classifier::{closed_subobjects, subobjects};
use workbench_core::fincat::{enumerate_naturals, yoneda_presheaf, FinCategory, Obj, Presheaf};
use workbench_core::logic::{check_semantics, corpus, Signature, Structure};
use workbench_core::sheaf::examples::{constant_on_nonempty, locally_constant};
use workbench_core::sheaf::matching_families;
use workbench_core::site::{open_cover_topology, FiniteSpace};
use workbench_core::torsor::{all_cocycles, Cover, FiniteGroup, GroupSheaf};
use workbench_core::{Bounds, Exec};

use std::sync::Arc;

fn both() -> [Bounds; 2] {
    [Exec::Sequential, Exec::Parallel].map(|exec| Bounds {
        exec,
        ..Bounds::default()
    })
}

#[test]
fn naturals_come_out_in_the_same_order() {
    let cat = Arc::new(FinCategory::arrow());
    let y = yoneda_presheaf(&cat, Obj(0));
    let f = Presheaf::constant(cat.clone(), &["p".into(), "q".into(), "r".into()], &[]);
    let [seq, par] = both().map(|b| enumerate_naturals(&f, &y, &b).unwrap());
    assert_eq!(seq, par);
    let [seq, par] = both().map(|b| enumerate_naturals(&y, &f, &b).unwrap());
    assert_eq!(seq.len(), 3);
    assert_eq!(seq, par);
}

#[test]
fn subobjects_and_matching_families_agree() {
    let site = open_cover_topology(&FiniteSpace::chain3(), &Bounds::default()).unwrap();
    let f = constant_on_nonempty(&site.category, &site.space, &["0", "1", "2"]);
    let [seq, par] = both().map(|b| subobjects(&f, &b).unwrap());
    assert_eq!(seq, par);
    let [seq, par] = both().map(|b| closed_subobjects(&f, &site.topology, &b).unwrap());
    assert_eq!(seq, par);
    for u in site.category.objects() {
        for s in site.topology.covers(u) {
            let [seq, par] = both().map(|b| matching_families(&f, s, &b).unwrap());
            assert_eq!(seq, par);
        }
    }
}

#[test]
fn semantics_reports_agree() {
    let site = open_cover_topology(&FiniteSpace::discrete2(), &Bounds::default()).unwrap();
    let f = locally_constant(&site.category, &site.space, &["0", "1"]);
    let sig = Signature {
        context: vec![("x".into(), "F".into())],
        binders: vec![("y".into(), "F".into())],
        predicates: vec![],
    };
    let [seq, par] = both().map(|b| {
        let mut st = Structure::new(site.topology.clone(), b);
        st.add_sort("F", f.clone()).unwrap();
        let formulas = corpus(&st, &sig, 2).unwrap();
        check_semantics(&st, &sig.context, &formulas).unwrap()
    });
    assert!(seq.holds());
    assert_eq!(seq, par);
}

#[test]
fn cocycle_enumeration_agrees() {
    let site = open_cover_topology(&FiniteSpace::pseudocircle(), &Bounds::default()).unwrap();
    let g = GroupSheaf::locally_constant(&site, &FiniteGroup::cyclic(3));
    let obj = |l: &str| site.object_by_label(l).unwrap();
    let cover = Cover::new(&site.topology, obj("whole"), vec![obj("Ux"), obj("Uy"), obj("{a,b}")]).unwrap();
    let [seq, par] = both().map(|b| all_cocycles(&g, &cover, &b).unwrap());
    assert_eq!(seq.len(), 81);
    assert_eq!(seq, par);
}
