//! Binary relations and the reduction of an array to `CT` (entries at most
//! `q`), step by step.

use cyclomzv::array::PositiveArray;
use cyclomzv::checks::comb_matches;
use cyclomzv::field::Ctx;
use cyclomzv::reduce::{Operators, Reducer};
use cyclomzv::values::{Evaluator, Flavor};

fn main() -> cyclomzv::Result<()> {
    let ctx = Ctx::new(3, 1, 2)?;
    let ev = Evaluator::new(ctx.clone());
    let ops = Operators::new(ctx.clone(), Flavor::Cmpl);
    let r = ops.fundamental(1);
    let zero = (0..=8).all(|d| r.residual(&ev, d, 80).is_zero());
    println!("R_ε for ε = -1: d-part {:?}, (d+1)-part {:?}, residual zero for d ≤ 8: {zero}", r.d, r.d1);

    let red = Reducer::new(ctx, Flavor::Cmpl);
    let a = PositiveArray::parse("(5;1),(1;0)", 2)?;
    let dec = red.decompose(&a, None)?;
    println!("one decomposition step of {a} (k = {}, ε = {}):", dec.k, dec.eps);
    for (u, c, ty) in &dec.terms {
        println!("  {ty:?}: ({c})·[{u}]");
    }
    let comb = red.reduce_to_ct(&a)?;
    println!("Li({a}) in CT: {} terms, matches below x^150: {}", comb.len(), comb_matches(&ev, Flavor::Cmpl, &a, &comb, 150));
    for s in red.steps() {
        println!("  step {}: measure {:?} -> at most {:?}", s.array, s.measure_before, s.measure_after_max);
    }
    Ok(())
}
