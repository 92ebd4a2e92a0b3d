use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use didp::benchmarks::ProblemClass;
use didp::model::{Oracle, OracleMode};
use didp::search::{solve, SolverKind, SolverParams};
use didp_bench::suite;
use std::hint::black_box;

fn solvers(c: &mut Criterion) {
    let params = SolverParams::default();
    for class in ProblemClass::ALL {
        let models = suite(class);
        let mut group = c.benchmark_group(class.name());
        for kind in SolverKind::ALL {
            group.bench_with_input(BenchmarkId::from_parameter(kind), &models, |b, models| {
                b.iter(|| {
                    for model in models {
                        black_box(solve(model, kind, &params).unwrap());
                    }
                })
            });
        }
        group.finish();
    }
}

fn oracle(c: &mut Criterion) {
    let models = suite(ProblemClass::Tsptw);
    c.bench_function("oracle/tsptw", |b| {
        b.iter(|| {
            for model in &models {
                let mut oracle = Oracle::new(model, OracleMode::All, model.transitions.len() + 1);
                black_box(oracle.value(&model.target).unwrap());
            }
        })
    });
}

fn yaml(c: &mut Criterion) {
    let model = &suite(ProblemClass::Cvrp)[0];
    let domain = didp::yaml::export_domain(model).unwrap();
    let problem = didp::yaml::export_problem(model).unwrap();
    c.bench_function("yaml/load_cvrp", |b| {
        b.iter(|| black_box(didp::yaml::load(&domain, &problem).unwrap()))
    });
}

criterion_group!(benches, solvers, oracle, yaml);
criterion_main!(benches);
