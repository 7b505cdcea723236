use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use lprl_bench::{mc_case, sentence};
use lprl_core::random::{random_ltl, rng};
use lprl_core::sat::build_sentence_hba;
use lprl_core::{check_mc, check_sat, ltl_to_ba, parse_ltl, Alphabet, McOptions};

fn ltl2ba(c: &mut Criterion) {
    let a = Alphabet::new(&["p", "q"]).unwrap();
    let mut group = c.benchmark_group("ltl2ba");
    for text in ["G (p -> F q)", "G F p & F G !q", "(p U q) U (G p | X X q)"] {
        let phi = parse_ltl(text, &a).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(text), &phi, |b, phi| b.iter(|| ltl_to_ba(black_box(phi), &a)));
    }
    let mut r = rng(7);
    let random: Vec<_> = (0..50).map(|_| random_ltl(&mut r, &a, 8)).collect();
    group.bench_function("random size 8 x50", |b| {
        b.iter(|| random.iter().map(|phi| ltl_to_ba(phi, &a).num_states()).sum::<usize>())
    });
    group.finish();
}

fn sat(c: &mut Criterion) {
    let mut group = c.benchmark_group("sat");
    for file in ["od3", "ni3", "gni3", "con3", "mixed", "unsat_chain"] {
        let s = sentence(&format!("sat/{file}.lprl")).unwrap();
        group.bench_with_input(BenchmarkId::new("build", file), &s, |b, s| b.iter(|| build_sentence_hba(s).unwrap()));
        group.bench_with_input(BenchmarkId::new("check", file), &s, |b, s| b.iter(|| check_sat(s).unwrap().verdict));
    }
    group.finish();
}

fn mc(c: &mut Criterion) {
    let mut group = c.benchmark_group("mc");
    let cases = [
        ("od_holds", "od.lprl", ["low_deterministic.json", "low_deterministic.json"]),
        ("od_fails", "od.lprl", ["leaky.json", "leaky.json"]),
        ("ni_holds", "ni.lprl", ["low_deterministic.json", "low_deterministic.json"]),
        ("con_holds", "con_b_to_a.lprl", ["network.json#B", "network.json#A"]),
    ];
    let opts = McOptions::default();
    for (name, file, members) in cases {
        let (s, fam) = mc_case(file, &members).unwrap();
        group.bench_function(name, |b| b.iter(|| check_mc(&fam, &s, &opts).unwrap().verdict));
    }
    group.finish();
}

criterion_group!(benches, ltl2ba, sat, mc);
criterion_main!(benches);
