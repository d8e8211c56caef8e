use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use mrgrid::topology::{classify_all, enumerate_regular_max, CertificateSearch};
use mrgrid::{make_field, Execution, GridTopology};

const MODES: [(&str, Execution); 2] = [
    ("sequential", Execution::Sequential),
    ("parallel", Execution::Parallel),
];

fn enumerate(c: &mut Criterion) {
    let mut g = c.benchmark_group("enumerate");
    g.sample_size(10);
    for topo in ["4x4:1,1,0", "4x5:1,2,0"] {
        let t: GridTopology = topo.parse().unwrap();
        for (name, exec) in MODES {
            g.bench_with_input(BenchmarkId::new(name, topo), &t, |b, t| {
                b.iter(|| enumerate_regular_max(t, exec).unwrap())
            });
        }
    }
    g.finish();
}

fn classify(c: &mut Criterion) {
    let mut g = c.benchmark_group("classify");
    g.sample_size(10);
    let field = make_field(2, 13, None).unwrap();
    let t: GridTopology = "4x4:1,1,0".parse().unwrap();
    let patterns = enumerate_regular_max(&t, Execution::Parallel).unwrap();
    let search = CertificateSearch::new(&t, &field, 20, 0).unwrap();
    for (name, exec) in MODES {
        g.bench_function(BenchmarkId::new(name, "4x4:1,1,0"), |b| {
            b.iter(|| classify_all(&search, &patterns, exec).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, enumerate, classify);
criterion_main!(benches);
