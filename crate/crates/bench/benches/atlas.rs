use bch_atlas::*;
use criterion::{black_box, criterion_group, criterion_main, Criterion};

fn leader_sweeps(c: &mut Criterion) {
    let mut g = c.benchmark_group("leaders");
    for (q, m) in [(2u64, 14u32), (3, 11), (4, 9)] {
        let ctx = FamilyTag::Primitive.context(q, m).unwrap();
        g.bench_function(format!("k_largest q={q} m={m} n={}", ctx.n()), |b| {
            b.iter(|| k_largest_leaders(black_box(&ctx), 5, DEFAULT_ENUM_BUDGET).unwrap())
        });
    }
    g.finish();
}

fn defining_sets(c: &mut Criterion) {
    let ctx = FamilyTag::AntiPrimitive.context(2, 8).unwrap();
    c.bench_function("defining_set n=21845 delta=1024", |b| {
        b.iter(|| defining_set(black_box(&ctx), 1024, 1).unwrap())
    });
    let code = bch_code(FamilyTag::AntiPrimitive, 2, 6, 600, 1).unwrap();
    c.bench_function("dually_bch_direct n=1365", |b| {
        b.iter(|| is_dually_bch_direct(black_box(&code), DEFAULT_ENUM_BUDGET).unwrap())
    });
}

fn field_work(c: &mut Criterion) {
    let tower = build_tower(2, 1, 10).unwrap();
    c.bench_function("generator_polynomial [341,16]", |b| {
        let code = bch_code(FamilyTag::AntiPrimitive, 2, 5, 149, 1).unwrap();
        b.iter(|| generator_polynomial(black_box(&code), &tower).unwrap())
    });
}

fn distance_oracles(c: &mut Criterion) {
    let tower = build_tower(2, 1, 10).unwrap();
    let mut code = bch_code(FamilyTag::AntiPrimitive, 2, 5, 149, 1).unwrap();
    code.attach_generator(&tower).unwrap();
    let gen = code.generator.clone().unwrap();
    c.bench_function("exhaustive [341,16]", |b| {
        b.iter(|| exhaustive_min_distance(black_box(&gen), &tower, 341, 1 << 24, 1).unwrap())
    });

    let ctx = CosetContext::new(2, 341).unwrap();
    c.bench_function("low_weight rows {0,11,3} wmax=4", |b| {
        b.iter(|| low_weight_search(black_box(&[0, 11, 3]), &ctx, &tower, 4, 1 << 26).unwrap())
    });
}

criterion_group!(benches, leader_sweeps, defining_sets, field_work, distance_oracles);
criterion_main!(benches);
