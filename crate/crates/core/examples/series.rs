//! Truncated Laurent series in `1/θ`: a geometric expansion, the Carlitz
//! period, and the functional equation of `Ω`.

use cyclomzv::field::FieldCtx;
use cyclomzv::motives::omega_residual;
use cyclomzv::poly::{RatFun, ThetaPoly};
use cyclomzv::series::{carlitz_period, InfSeries};

fn main() -> cyclomzv::Result<()> {
    let f2 = FieldCtx::new(2, 1, 1)?;
    let theta = ThetaPoly::theta(&f2);
    let den = theta.mul(&theta).add(&theta);
    let s = InfSeries::from_ratfun(&RatFun::new(ThetaPoly::one(&f2), den)?, 12)?;
    println!("1/(θ^2+θ) over F_2 = {s:?}");

    let f3 = FieldCtx::new(3, 1, 1)?;
    let pi = carlitz_period(&f3, 20)?;
    println!("π̃ over F_3 in u = (-θ)^(-1/2): valuation {:?}, {pi:?}", pi.valuation());
    let pi2 = pi.pow(2);
    println!("π̃^2 has u-valuation {:?}, i.e. x-valuation -3", pi2.valuation());

    let r = omega_residual(&f3, 6, 120)?;
    println!("Ω - (t - θ^3) Ω^(1): zero on t^<{} u^<{}: {}", r.t_window, r.u_window, r.ok());
    Ok(())
}
