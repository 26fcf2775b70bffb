use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use chss::decompose::{sym_power, Engine, Settings};
use chss::rootsys::{Family, RootDatum};
use chss::tensorlab::{build_hwv_prop_gkv, vanish_on_secant, SecantVariety};
use chss::Exec;

const MODES: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn settings(exec: Exec) -> Settings {
    Settings { exec, ..Settings::default() }
}

fn character_product(c: &mut Criterion) {
    let g = RootDatum::gl(7).unwrap();
    let chi = Engine::new(&g, Settings::default()).irrep_character(&[2, 1, 1, 0, 0, 0, 0]).unwrap();
    let mut group = c.benchmark_group("character_product");
    for (name, exec) in MODES {
        group.bench_function(BenchmarkId::new("S211_x_S211_gl7", name), |b| b.iter(|| chi.mul(&chi, exec)));
    }
    group.finish();
}

fn symmetric_power(c: &mut Criterion) {
    let g = RootDatum::gl(7).unwrap();
    let mut group = c.benchmark_group("sym_power");
    group.sample_size(10);
    for (name, exec) in MODES {
        group.bench_function(BenchmarkId::new("S3_wedge3_gl7", name), |b| {
            b.iter(|| sym_power(&g, &[1, 1, 1, 0, 0, 0, 0], 3, settings(exec)).unwrap())
        });
    }
    let e6 = RootDatum::simple_group(Family::E, 6).unwrap();
    for (name, exec) in MODES {
        group.bench_function(BenchmarkId::new("S2_omega1_e6", name), |b| {
            b.iter(|| sym_power(&e6, &[1, 0, 0, 0, 0, 0], 2, settings(exec)).unwrap())
        });
    }
    group.finish();
}

fn secant_sampling(c: &mut Criterion) {
    let h = build_hwv_prop_gkv(3, 7).unwrap();
    let v = SecantVariety::Grass { k: 3, n: 7 };
    let mut group = c.benchmark_group("vanish_on_secant");
    group.sample_size(10);
    for (name, exec) in MODES {
        group.bench_function(BenchmarkId::new("g37_cubic_50", name), |b| {
            b.iter(|| vanish_on_secant(&h.first, v, 50, 1, exec).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, character_product, symmetric_power, secant_sampling);
criterion_main!(benches);
