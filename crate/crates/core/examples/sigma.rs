//! Construct-then-solve for the Frobenius difference equation
//! `ε δ^(R) = δ T^(R) + F` at level `R = 2`.

use cyclomzv::field::Ctx;
use cyclomzv::motives::{sigma_degree_bound_holds, sigma_residual, solve_sigma_equation};
use cyclomzv::poly::{TPoly, ThetaPoly};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() -> cyclomzv::Result<()> {
    let ctx = Ctx::new(3, 1, 4)?;
    let f = &ctx.field;
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for trial in 0..5 {
        let (m, eps) = (rng.gen_range(1..=2), rng.gen_range(0..4));
        let coeffs = (0..3)
            .map(|_| ThetaPoly::from_terms(f, (0..=3).map(|d| (d, f.gen_pow(rng.gen_range(0..80))))))
            .collect();
        let d0 = TPoly::from_coeffs(f, coeffs);
        let rhs = sigma_residual(&ctx, m, eps, &d0, &TPoly::zero(f));
        let d = solve_sigma_equation(&ctx, m, eps, &rhs)?;
        println!(
            "trial {trial}: m = {m}, ε = ζ^{eps}: solved exactly {}, recovered δ₀ {}, degree bound {}",
            sigma_residual(&ctx, m, eps, &d, &rhs).is_zero(),
            d == d0,
            sigma_degree_bound_holds(&ctx, m, &d, &rhs)
        );
    }
    Ok(())
}
