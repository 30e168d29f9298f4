//! Numeric checks of the algebraic identities, shared by the command line
//! and the acceptance suite. Each returns the list of failures (empty when
//! the identity holds on the whole window).

use crate::array::PositiveArray;
use crate::basis::RatComb;
use crate::error::Result;
use crate::harmonic::{bounds_hold, Harmonic, ProdSum};
use crate::reduce::{eval_comb, Comb};
use crate::series::InfSeries;
use crate::values::{Evaluator, Flavor, Level};

/// `Σ c_i X(u_i)` at one level and `d`.
pub fn eval_prodsum(ev: &Evaluator, flavor: Flavor, level: Level, s: &ProdSum, d: i64, prec: i64) -> InfSeries {
    let f = ev.field();
    let mut acc = InfSeries::zero(f, 1, prec);
    for (arr, c) in s {
        acc = acc.add(&ev.eval(flavor, level, arr, d, prec).scale(f.from_int(*c as i64)));
    }
    acc
}

/// Valuation bound of `X_d` (`At`) or `X_{<d}` (`Below`).
pub fn level_val_bound(ev: &Evaluator, flavor: Flavor, level: Level, arr: &PositiveArray, d: i64) -> i64 {
    if arr.is_empty() {
        return 0;
    }
    match level {
        Level::At => ev.val_bound(flavor, arr, d.max(arr.depth() as i64 - 1)),
        Level::Below => ev.val_bound(flavor, arr, arr.depth() as i64 - 1),
    }
}

/// The three level products and the product of totals, each compared with
/// its expansion on `rel` coefficients past the valuation bound, for every
/// `d ≤ dmax`; plus the dominance / depth bounds and `F_p` coefficients.
pub fn product_failures(
    ev: &Evaluator,
    flavor: Flavor,
    a: &PositiveArray,
    b: &PositiveArray,
    dmax: i64,
    rel: i64,
) -> Vec<String> {
    let ctx = ev.ctx();
    let h = Harmonic::new(ctx.q(), ctx.p(), ctx.gamma() as u32, flavor);
    let mut out = Vec::new();
    let p = ctx.p() as u32;
    let cases = [
        ("sd_sd", Level::At, Level::At, Level::At, h.sd_sd(a, b)),
        ("sd_slt", Level::At, Level::Below, Level::At, h.sd_slt(a, b)),
        ("slt_slt", Level::Below, Level::Below, Level::Below, h.slt_slt(a, b)),
    ];
    for (name, la, lb, lout, sum) in &cases {
        if !bounds_hold(a, b, sum) {
            out.push(format!("{flavor:?} {name}({a}, {b}): dominance or depth bound fails"));
        }
        if sum.values().any(|&c| c == 0 || c >= p) {
            out.push(format!("{flavor:?} {name}({a}, {b}): coefficient outside F_p^*"));
        }
        for d in 0..=dmax {
            let prec = level_val_bound(ev, flavor, *la, a, d) + level_val_bound(ev, flavor, *lb, b, d) + rel;
            let lhs = ev.eval(flavor, *la, a, d, prec).mul(&ev.eval(flavor, *lb, b, d, prec));
            let rhs = eval_prodsum(ev, flavor, *lout, sum, d, prec);
            if !lhs.agrees_to(&rhs, prec).unwrap_or(false) {
                out.push(format!("{flavor:?} {name}({a}, {b}) differs at d = {d}"));
            }
        }
    }
    let z = h.zeta_product(a, b);
    if !bounds_hold(a, b, &z) {
        out.push(format!("{flavor:?} total product ({a}, {b}): dominance or depth bound fails"));
    }
    let lhs = ev.total(flavor, a, rel).mul(&ev.total(flavor, b, rel)).truncate(rel);
    let mut rhs = InfSeries::zero(ev.field(), 1, rel);
    for (arr, c) in &z {
        rhs = rhs.add(&ev.total(flavor, arr, rel).scale(ev.field().from_int(*c as i64)));
    }
    if !lhs.agrees_to(&rhs, rel).unwrap_or(false) {
        out.push(format!("{flavor:?} total product ({a}, {b}) differs"));
    }
    out
}

/// `S_d = Si_d` for every `d ≤ dmax` (requires all `s_i ≤ q`).
pub fn agree_failures(ev: &Evaluator, arr: &PositiveArray, dmax: i64, rel: i64) -> Vec<String> {
    let mut out = Vec::new();
    for d in 0..=dmax {
        let prec = level_val_bound(ev, Flavor::Cmpl, Level::At, arr, d) + rel;
        if !ev.s_d(arr, d, prec).agrees_to(&ev.si_d(arr, d, prec), prec).unwrap_or(false) {
            out.push(format!("S_d({arr}) != Si_d({arr}) at d = {d}"));
        }
    }
    out
}

/// Whether `X(arr) = Σ c_i X(u_i)` on the window below `prec`.
pub fn comb_matches(ev: &Evaluator, flavor: Flavor, arr: &PositiveArray, comb: &Comb, prec: i64) -> bool {
    eval_comb(ev, flavor, comb, prec).agrees_to(&ev.total(flavor, arr, prec), prec).unwrap_or(false)
}

/// `Σ c_i Li(u_i)` with rational coefficients.
pub fn eval_ratcomb(ev: &Evaluator, y: &RatComb, prec: i64) -> Result<InfSeries> {
    let mut acc = InfSeries::zero(ev.field(), 1, prec);
    for (b, c) in y {
        // Li has nonnegative valuation; c may have a pole of this order at ∞
        let pole = c.num().degree().unwrap_or(0) as i64 - c.den().degree().unwrap_or(0) as i64;
        let cs = InfSeries::from_ratfun(c, prec)?;
        acc = acc.add(&ev.li(b, prec + pole.max(0)).mul(&cs).truncate(prec));
    }
    Ok(acc)
}

/// Whether `X(arr) = Σ y_c Li(c)` on the window below `prec`.
pub fn ratcomb_matches(ev: &Evaluator, flavor: Flavor, arr: &PositiveArray, y: &RatComb, prec: i64) -> bool {
    eval_ratcomb(ev, y, prec).and_then(|v| v.agrees_to(&ev.total(flavor, arr, prec), prec)).unwrap_or(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Ctx;

    #[test]
    fn products_hold_q3_n2() {
        let ev = Evaluator::new(Ctx::new(3, 1, 2).unwrap());
        let a = PositiveArray::parse("(2;1),(1;0)", 2).unwrap();
        let b = PositiveArray::parse("(3;1)", 2).unwrap();
        for flavor in [Flavor::Mzv, Flavor::Cmpl] {
            assert!(product_failures(&ev, flavor, &a, &b, 6, 100).is_empty());
        }
    }

    #[test]
    fn agree_small_entries() {
        let ev = Evaluator::new(Ctx::new(3, 1, 4).unwrap());
        let arr = PositiveArray::parse("(3;1),(2;3),(1;2)", 4).unwrap();
        assert!(agree_failures(&ev, &arr, 8, 60).is_empty());
        // s_1 > q breaks the identity
        let big = PositiveArray::single(4, 0, 4);
        assert!(!agree_failures(&ev, &big, 8, 60).is_empty());
    }
}
