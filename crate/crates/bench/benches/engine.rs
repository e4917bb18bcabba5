use criterion::{black_box, criterion_group, criterion_main, Criterion};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use flopcheck_core::bott::{bott_cohomology, GrassmannData, HomogBundle};
use flopcheck_core::bundle::BundleExpr;
use flopcheck_core::schur::{lr_tensor, GLWeight};
use flopcheck_core::total_space::{
    graded_hom, span_generators, spanning_gram, Side, SpaceKind, TotalSpaceModel,
};

fn bench_bott(c: &mut Criterion) {
    let g = GrassmannData::new(2, 6).unwrap();
    let b = HomogBundle::new(
        g,
        GLWeight::new(vec![3, 1, 0, -2]).unwrap(),
        GLWeight::new(vec![2, -1]).unwrap(),
    )
    .unwrap();
    c.bench_function("bott_cohomology g26", |bch| {
        bch.iter(|| bott_cohomology(g, black_box(&b)))
    });

    // a batch of random weights, fixed seed so runs are comparable
    let mut rng = StdRng::seed_from_u64(7);
    let mut mk = |len: usize| {
        let mut v: Vec<i64> = (0..len).map(|_| rng.gen_range(-4..=4)).collect();
        v.sort_unstable_by(|x, y| y.cmp(x));
        GLWeight::new(v).unwrap()
    };
    let batch: Vec<HomogBundle> = (0..64)
        .map(|_| HomogBundle::new(g, mk(4), mk(2)).unwrap())
        .collect();
    c.bench_function("bott_cohomology g26 batch64", |bch| {
        bch.iter(|| {
            for b in &batch {
                black_box(bott_cohomology(g, b));
            }
        })
    });
}

fn bench_lr(c: &mut Criterion) {
    let a = GLWeight::new(vec![4, 3, 1, 0]).unwrap();
    let b = GLWeight::new(vec![3, 2, 2, 0]).unwrap();
    c.bench_function("lr_tensor (4,3,1)x(3,2,2) in GL4", |bch| {
        bch.iter(|| lr_tensor(black_box(&a), black_box(&b)))
    });
}

fn bench_graded_hom(c: &mut Criterion) {
    let g = GrassmannData::new(2, 4).unwrap();
    let model = TotalSpaceModel::new(g, SpaceKind::ExtendedCotangent, Side::Minus);
    let a = BundleExpr::sym(1, BundleExpr::dual(BundleExpr::s())) * BundleExpr::o(1);
    let b = BundleExpr::o(0);
    c.bench_function("graded_hom cutoff 4", |bch| {
        bch.iter(|| graded_hom(black_box(&a), black_box(&b), &model, 4).unwrap())
    });
}

fn bench_gram(c: &mut Criterion) {
    let g = GrassmannData::new(2, 5).unwrap();
    let gens = span_generators(5);
    c.bench_function("spanning_gram n=5", |bch| {
        bch.iter(|| spanning_gram(g, black_box(&gens)).unwrap())
    });
}

criterion_group!(benches, bench_bott, bench_lr, bench_graded_hom, bench_gram);
criterion_main!(benches);
