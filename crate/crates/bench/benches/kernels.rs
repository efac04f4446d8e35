use criterion::{black_box, criterion_group, criterion_main, Criterion};

use fusioncat_core::catalog::build_named;
use fusioncat_core::center::{boundary_count_group, center_of_pointed, enumerate_lagrangians, AbelianGroup, FiniteGroup};
use fusioncat_core::fusion_ring::{fp_dimensions, verify_ring};
use fusioncat_core::temperley_lieb::{jones_projection, jones_wenzl, loop_parameter};

fn rings(c: &mut Criterion) {
    let haagerup = build_named("haagerup").unwrap().ring;
    let ty = build_named("ty_z9_s2").unwrap().ring;
    c.bench_function("fp_dimensions haagerup", |b| b.iter(|| fp_dimensions(black_box(&haagerup)).unwrap()));
    c.bench_function("verify_ring ty_z9", |b| b.iter(|| verify_ring(black_box(&ty))));
}

fn centers(c: &mut Criterion) {
    let z12 = center_of_pointed(&AbelianGroup::cyclic(12).unwrap());
    let z2z4 = center_of_pointed(&AbelianGroup::new(&[2, 4]).unwrap());
    c.bench_function("lagrangians Z/12", |b| b.iter(|| enumerate_lagrangians(black_box(&z12)).unwrap()));
    c.bench_function("lagrangians Z/2 x Z/4", |b| b.iter(|| enumerate_lagrangians(black_box(&z2z4)).unwrap()));
    let s4 = FiniteGroup::named("s4").unwrap();
    c.bench_function("boundaries S4", |b| b.iter(|| boundary_count_group(black_box(&s4)).unwrap()));
}

fn temperley_lieb(c: &mut Criterion) {
    let delta = loop_parameter(4).unwrap();
    let jw5 = jones_wenzl(5, delta).unwrap();
    let e = jones_projection(2, 5, delta).unwrap();
    c.bench_function("TL_5 multiply JW_5 · e_2", |b| b.iter(|| black_box(&jw5).multiply(black_box(&e)).unwrap()));
    c.bench_function("jones_wenzl 6", |b| b.iter(|| jones_wenzl(6, black_box(delta)).unwrap()));
}

criterion_group!(benches, rings, centers, temperley_lieb);
criterion_main!(benches);
