//! Bounded-degree relation search among `π̃^w` and the weight-`w` basis
//! values, with the window needed to separate the characters.

use cyclomzv::field::Ctx;
use cyclomzv::search::certify_independence;
use cyclomzv::values::Evaluator;

fn main() -> cyclomzv::Result<()> {
    for (q, n, w, p) in [(3, 1, 2, 300), (3, 2, 1, 400), (3, 2, 2, 400), (3, 2, 3, 400), (3, 2, 3, 1500)] {
        let ev = Evaluator::new(Ctx::new(q, 1, n)?);
        let r = certify_independence(&ev, w, 8, p, true)?;
        let verdict = match r.consistent() {
            Some(true) => "as expected",
            Some(false) => "CONTRADICTS",
            None => "inconclusive",
        };
        println!(
            "q={q} N={n} w={w} P={p:>5}: {} values, relation rank {} (expected {}), coverage {} -> {verdict}",
            r.labels.len(),
            r.relation_rank,
            r.expected_relation_rank(),
            r.coverage_precision
        );
        if let Some(m) = r.minimal_relation.as_ref().filter(|_| r.consistent() == Some(true)) {
            for (l, c) in &m.coefficients {
                println!("    ({c})·{l}");
            }
        }
    }
    Ok(())
}
