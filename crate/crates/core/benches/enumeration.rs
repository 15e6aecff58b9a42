use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use workbench_core::classifier::subobjects;
use workbench_core::fincat::count_naturals;
use workbench_core::logic::{check_semantics, corpus, Signature, Structure};
use workbench_core::sheaf::examples::locally_constant;
use workbench_core::site::{open_cover_topology, FiniteSpace};
use workbench_core::torsor::{all_cocycles, Cover, FiniteGroup, GroupSheaf};
use workbench_core::{Bounds, Exec};

const MODES: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn bounds(exec: Exec) -> Bounds {
    Bounds {
        exec,
        ..Bounds::default()
    }
}

fn naturals(c: &mut Criterion) {
    let site = open_cover_topology(&FiniteSpace::pseudocircle(), &Bounds::default()).unwrap();
    let f = locally_constant(&site.category, &site.space, &["0", "1", "2"]);
    let mut group = c.benchmark_group("naturals");
    for (name, exec) in MODES {
        group.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| {
            b.iter(|| count_naturals(&f, &f, &bounds(exec)).unwrap())
        });
    }
    group.finish();
}

fn subobject_lattice(c: &mut Criterion) {
    let site = open_cover_topology(&FiniteSpace::discrete(&["a", "b", "c"]), &Bounds::default()).unwrap();
    let f = locally_constant(&site.category, &site.space, &["0", "1"]);
    let mut group = c.benchmark_group("subobjects");
    group.sample_size(10);
    for (name, exec) in MODES {
        group.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| {
            b.iter(|| subobjects(&f, &bounds(exec)).unwrap().len())
        });
    }
    group.finish();
}

fn forcing_corpus(c: &mut Criterion) {
    let site = open_cover_topology(&FiniteSpace::discrete2(), &Bounds::default()).unwrap();
    let f = locally_constant(&site.category, &site.space, &["0", "1"]);
    let sig = Signature {
        context: vec![("x".into(), "F".into())],
        binders: vec![("y".into(), "F".into())],
        predicates: vec![],
    };
    let mut group = c.benchmark_group("semantics");
    group.sample_size(10);
    for (name, exec) in MODES {
        let mut st = Structure::new(site.topology.clone(), bounds(exec));
        st.add_sort("F", f.clone()).unwrap();
        let formulas = corpus(&st, &sig, 3).unwrap();
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| check_semantics(&st, &sig.context, &formulas).unwrap().evaluations)
        });
    }
    group.finish();
}

fn cocycles(c: &mut Criterion) {
    let site = open_cover_topology(&FiniteSpace::pseudocircle(), &Bounds::default()).unwrap();
    let g = GroupSheaf::locally_constant(&site, &FiniteGroup::cyclic(3));
    let obj = |l: &str| site.object_by_label(l).unwrap();
    let cover = Cover::new(&site.topology, obj("whole"), vec![obj("Ux"), obj("Uy"), obj("{a,b}"), obj("{a}")]).unwrap();
    let mut group = c.benchmark_group("cocycles");
    for (name, exec) in MODES {
        group.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| {
            b.iter(|| all_cocycles(&g, &cover, &bounds(exec)).unwrap().len())
        });
    }
    group.finish();
}

criterion_group!(benches, naturals, subobject_lattice, forcing_corpus, cocycles);
criterion_main!(benches);
