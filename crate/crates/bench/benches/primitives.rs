use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use mvss_core::curve::sample_generating_pair;
use mvss_core::pairing::{distortion_unit, modified_weil, weil_pair};
use mvss_core::presets::CurveSpec;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;


fn primitives(c: &mut Criterion) {
    let setup = CurveSpec::paper47().build().unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let basis = sample_generating_pair(&setup.curve, setup.ring, &setup.exponent, &mut rng).unwrap();
    let curve = basis.curve().clone();
    let field = setup.field.clone();
    let u = distortion_unit(&field).unwrap();
    let x = field.random(&mut rng);
    let y = field.random(&mut rng);
    let g = basis.g().clone();
    let h = basis.h().clone();
    let k = setup.ring.elem(77);

    c.bench_function("field/mul", |b| b.iter(|| black_box(&x) * black_box(&y)));
    c.bench_function("field/inv", |b| b.iter(|| black_box(&x).inv().unwrap()));
    c.bench_function("curve/add", |b| b.iter(|| curve.add(black_box(&g), black_box(&h)).unwrap()));
    c.bench_function("curve/mul_scalar", |b| b.iter(|| curve.mul_scalar(black_box(k), &g)));
    c.bench_function("pairing/weil", |b| {
        b.iter(|| weil_pair(black_box(&g), black_box(&h), setup.ring, &curve).unwrap())
    });
    c.bench_function("pairing/modified_weil", |b| {
        b.iter(|| modified_weil(black_box(&g), black_box(&g), setup.ring, &curve, &u).unwrap())
    });
}

criterion_group!(benches, primitives);
criterion_main!(benches);
