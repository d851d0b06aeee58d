use std::sync::Arc;

use criterion::{criterion_group, criterion_main, Criterion};
use qhc::flag::FlagAlgebra;
use qhc::modules::simple_module;
use qhc::par::Exec;
use qhc::principal::PrincipalSeries;
use qhc::rootdata::{CartanType, HermitianPair};

const MODES: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn modules(c: &mut Criterion) {
    let pair = HermitianPair::of_type(CartanType::A, 3, 2).unwrap();
    let weights = pair.datum.dominant_weights(3);
    let mut g = c.benchmark_group("build_modules_a3");
    g.sample_size(10);
    for (name, exec) in MODES {
        g.bench_function(name, |b| b.iter(|| exec.map(&weights, |w| simple_module(&pair.datum, w).unwrap().dim())));
    }
    g.finish();
}

fn relations(c: &mut Criterion) {
    let mut g = c.benchmark_group("dj_relations_a1");
    g.sample_size(10);
    for (name, exec) in MODES {
        g.bench_function(name, |b| {
            b.iter(|| {
                let alg = Arc::new(FlagAlgebra::new(HermitianPair::of_type(CartanType::A, 1, 1).unwrap(), 12).unwrap());
                let rep = PrincipalSeries::degenerate(alg, 0, 4).unwrap();
                assert!(rep.verify_dj_relations(2, exec).unwrap().all_passed());
            })
        });
    }
    g.finish();
}

criterion_group!(benches, modules, relations);
criterion_main!(benches);
