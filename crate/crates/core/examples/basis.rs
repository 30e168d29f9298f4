//! The basis `CS`: dimensions, the transition matrix from `CT`, and `ζ_A(3)`
//! over `F_2` written in the basis.

use cyclomzv::array::{count_cs, dim_dn, PositiveArray};
use cyclomzv::basis::TransitionMatrix;
use cyclomzv::checks::ratcomb_matches;
use cyclomzv::field::Ctx;
use cyclomzv::reduce::Reducer;
use cyclomzv::values::{Evaluator, Flavor};

fn main() -> cyclomzv::Result<()> {
    let dims: Vec<u128> = (0..=6).map(|w| dim_dn(w, 3, 2)).collect();
    println!("d_2(w) for q = 3, w ≤ 6: {dims:?} (|CS| agrees: {})", (0..=6).all(|w| count_cs(w, 3, 2) == dims[w as usize]));

    let ctx = Ctx::new(2, 1, 1)?;
    let ev = Evaluator::new(ctx.clone());
    let cmpl = Reducer::new(ctx.clone(), Flavor::Cmpl);
    let mzv = Reducer::new(ctx, Flavor::Mzv);
    let tm = TransitionMatrix::build(&cmpl, 3)?;
    println!("weight 3 over F_2: |CT| = {}, |CS| = {}, signed identity mod D_1: {}", tm.ct.len(), tm.cs_set().len(), tm.check_mod_d1().is_ok());
    let z3 = PositiveArray::parse("(3;0)", 1)?;
    let y = tm.express(&*mzv.reduce_to_ct(&z3)?)?;
    println!("ζ_A(3) =");
    for (u, c) in &y {
        println!("  + ({c})·Li({u})");
    }
    println!("verified below x^150: {}", ratcomb_matches(&ev, Flavor::Mzv, &z3, &y, 150));
    Ok(())
}
