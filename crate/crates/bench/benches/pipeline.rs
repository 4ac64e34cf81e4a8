use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use smale5_core::quasismooth::is_quasismooth;
use smale5_core::tables::audit_tables;
use smale5_core::topology::betti2;
use smale5_core::yy::weights_for;
use smale5_core::{classify, enumerate, LinkCandidate, SearchSpec, YyType};

const LINKS: [([u64; 4], u64); 3] = [([2, 4, 6, 11], 22), ([12, 7, 3, 3], 24), ([18, 20, 66, 99], 198)];

fn single_link(c: &mut Criterion) {
    let mut g = c.benchmark_group("link");
    for (w, d) in LINKS {
        let cand = LinkCandidate::new(w, d).unwrap();
        let id = format!("{w:?}/{d}");
        g.bench_with_input(BenchmarkId::new("classify", &id), &cand, |b, cand| {
            b.iter(|| classify(black_box(cand)).unwrap())
        });
        let sorted = *cand.sorted_weights();
        g.bench_with_input(BenchmarkId::new("quasismooth", &id), &sorted, |b, w| {
            b.iter(|| is_quasismooth(black_box(w), d))
        });
        g.bench_with_input(BenchmarkId::new("betti2", &id), &sorted, |b, w| {
            b.iter(|| betti2(black_box(w), d).unwrap())
        });
    }
    g.bench_function("weights_for/X(2,3,5,8)", |b| {
        b.iter(|| weights_for(YyType::X, black_box(&[2, 3, 5, 8])).unwrap())
    });
    g.finish();
}

fn searches(c: &mut Criterion) {
    let mut g = c.benchmark_group("search");
    g.sample_size(10);
    for bound in [6, 9] {
        let spec = SearchSpec::uniform(YyType::STANDARD.to_vec(), bound);
        g.bench_with_input(BenchmarkId::new("standard", bound), &spec, |b, spec| b.iter(|| enumerate(spec).unwrap()));
    }
    g.bench_function("audit_tables", |b| b.iter(|| audit_tables().unwrap()));
    g.finish();
}

criterion_group!(benches, single_link, searches);
criterion_main!(benches);
