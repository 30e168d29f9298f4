//! The eight acceptance criteria at their pinned parameters. One line per
//! criterion; run with `--nocapture` to see them.

use cyclomzv::selftest::{self, Outcome, Scale};

const SEED: u64 = 20240917;

fn report(o: &Outcome) {
    println!("{}", o.line());
    for n in &o.notes {
        println!("    note: {n}");
    }
    for f in o.failures.iter().take(10) {
        println!("    failure: {f}");
    }
}

#[test]
fn acceptance() {
    let outcomes = selftest::run_all(Scale::Full, SEED);
    for o in &outcomes {
        report(o);
    }
    let failed: Vec<u8> = outcomes.iter().filter(|o| !o.passed).map(|o| o.id).collect();
    assert_eq!(outcomes.len(), 8);
    assert!(failed.is_empty(), "criteria failed: {failed:?}");
}
