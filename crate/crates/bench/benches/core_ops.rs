use criterion::{criterion_group, criterion_main, Criterion};

use gfq_core::enumerate::enumerate_matroids;
use gfq_core::geometry::{construct_mk4, projective_geometry};
use gfq_core::gpc::{gpc, GpcSpec};
use gfq_core::iso::canonical_form;
use gfq_core::structure::{dividers_mask, minimal_dividers_mask};
use gfq_core::{make_field, Matroid};

fn mk4_join() -> Matroid {
    let f = make_field(2).unwrap();
    let a = construct_mk4(&f).unwrap();
    let b = construct_mk4(&f).unwrap();
    let labels = (0..6).map(|i| format!("b{i}")).collect();
    let b = Matroid::new(f, b.points().to_vec(), Some(labels)).unwrap();
    gpc(&GpcSpec {
        m1: a,
        m2: b,
        glue: vec![
            ("12".into(), "b0".into()),
            ("13".into(), "b1".into()),
            ("23".into(), "b3".into()),
        ],
    })
    .unwrap()
}

fn bench_rank_table(c: &mut Criterion) {
    let f = make_field(2).unwrap();
    let pg = projective_geometry(4, &f).unwrap();
    c.bench_function("rank_table_pg_4_2", |b| {
        b.iter(|| {
            let m = Matroid::new(pg.field().clone(), pg.points().to_vec(), None).unwrap();
            m.warm_rank_table();
            m.rank_mask(m.full_mask())
        })
    });
}

fn bench_canonical_form(c: &mut Criterion) {
    let m = mk4_join();
    c.bench_function("canonical_form_mk4_join", |b| {
        b.iter(|| canonical_form(&m).unwrap())
    });
}

fn bench_dividers(c: &mut Criterion) {
    let m = mk4_join();
    c.bench_function("dividers_mk4_join", |b| {
        b.iter(|| dividers_mask(&m).unwrap().len())
    });
    c.bench_function("minimal_dividers_mk4_join", |b| {
        b.iter(|| minimal_dividers_mask(&m).unwrap().len())
    });
}

fn bench_gpc(c: &mut Criterion) {
    c.bench_function("gpc_mk4_mk4_triangle", |b| b.iter(mk4_join));
}

fn bench_enumerate(c: &mut Criterion) {
    let f = make_field(2).unwrap();
    c.bench_function("enumerate_pg_2_2_orbits", |b| {
        b.iter(|| enumerate_matroids(3, &f, false).unwrap().orbits.len())
    });
}

criterion_group!(
    benches,
    bench_rank_table,
    bench_canonical_form,
    bench_dividers,
    bench_gpc,
    bench_enumerate
);
criterion_main!(benches);
