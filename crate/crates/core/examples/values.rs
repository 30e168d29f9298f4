//! Cyclotomic MZVs `ζ_A(ε; s)` and CMPLs `Li(ε; s)` at level 2 over `F_3`,
//! and the agreement `S_d = Si_d` when every entry is at most `q`.

use cyclomzv::array::PositiveArray;
use cyclomzv::field::Ctx;
use cyclomzv::values::{Evaluator, Flavor, Level};

fn main() -> cyclomzv::Result<()> {
    let ev = Evaluator::new(Ctx::new(3, 1, 2)?);
    let prec = 40;
    for text in ["(1;0)", "(1;1)", "(2;1),(1;1)", "(4;0)"] {
        let a = PositiveArray::parse(text, 2)?;
        let z = ev.zeta(&a, prec);
        let l = ev.li(&a, prec);
        let same = z.agrees_to(&l, prec)?;
        // ζ_A and Li coincide only when every entry is at most q
        println!("{a:>12}: ζ_A from x^{}, Li from x^{}, equal below x^{prec}: {same}", z.valuation().unwrap(), l.valuation().unwrap());
    }
    let a = PositiveArray::parse("(3;1),(2;0)", 2)?;
    for d in 1..=4 {
        let s = ev.eval(Flavor::Mzv, Level::At, &a, d, 200);
        let si = ev.eval(Flavor::Cmpl, Level::At, &a, d, 200);
        println!("S_{d}({a}) = Si_{d}({a}): {}", s.agrees_to(&si, 200)?);
    }
    Ok(())
}
