//! Product expansions of degree-`d` sums and of the values themselves,
//! checked numerically on a window.

use cyclomzv::array::PositiveArray;
use cyclomzv::checks::product_failures;
use cyclomzv::field::Ctx;
use cyclomzv::harmonic::Harmonic;
use cyclomzv::values::{Evaluator, Flavor};

fn show(name: &str, s: &cyclomzv::harmonic::ProdSum) {
    let terms: Vec<String> = s.iter().map(|(a, c)| format!("{c}·[{a}]")).collect();
    println!("  {name:<8} = {}", terms.join(" + "));
}

fn main() -> cyclomzv::Result<()> {
    let ctx = Ctx::new(3, 1, 2)?;
    let ev = Evaluator::new(ctx.clone());
    let a = PositiveArray::parse("(2;1)", 2)?;
    let b = PositiveArray::parse("(2;1)", 2)?;
    for flavor in [Flavor::Mzv, Flavor::Cmpl] {
        let h = Harmonic::new(3, 3, 2, flavor);
        println!("{flavor:?}: ({a}) × ({b})");
        show("d·d", &h.sd_sd(&a, &b));
        show("d·<d", &h.sd_slt(&a, &b));
        show("<d·<d", &h.slt_slt(&a, &b));
        show("total", &h.zeta_product(&a, &b));
        let fails = product_failures(&ev, flavor, &a, &b, 6, 80);
        println!("  numeric check for d ≤ 6: {}", if fails.is_empty() { "exact" } else { "FAILED" });
    }
    Ok(())
}
