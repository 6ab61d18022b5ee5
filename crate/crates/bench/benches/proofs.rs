use criterion::{criterion_group, criterion_main, Criterion};
use jordan_core::{parse_script, replay};

const CENTRALIZER: &str = include_str!("../../../proofs/theorem_centralizer.steps");
const DERIVATION: &str = include_str!("../../../proofs/theorem_derivation.steps");

fn bench_replay(c: &mut Criterion) {
    for (name, src) in [("centralizer", CENTRALIZER), ("derivation", DERIVATION)] {
        let script = parse_script(src).unwrap();
        c.bench_function(&format!("replay/{name}"), |b| b.iter(|| replay(&script)));
        c.bench_function(&format!("parse/{name}"), |b| b.iter(|| parse_script(src).unwrap()));
    }
}

criterion_group!(benches, bench_replay);
criterion_main!(benches);
