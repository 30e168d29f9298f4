//! Ambient fields and cyclotomic data: `F_9`, its Frobenius, and the level-4
//! data over `F_3` including the `μ` roots attached to each character.

use cyclomzv::field::{Ctx, FieldCtx};

fn main() -> cyclomzv::Result<()> {
    let f9 = FieldCtx::new(3, 1, 2)?;
    let g = f9.generator();
    println!("F_9: modulus {:?}, generator {} of order {}", f9.modulus(), g.0, f9.elem_order(g)?);
    println!("Frobenius: g^3 = {} = frob(g) = {}", f9.pow(g, 3)?.0, f9.frobenius(g, 1).0);

    let ctx = Ctx::new(3, 1, 4)?;
    println!("q = 3, N = 4: N' = {}, R = {}, ambient degree M = {}", ctx.cyclo.nprime, ctx.r(), ctx.field.degree());
    for j in 0..ctx.gamma() as u32 {
        let eps = ctx.root(j);
        let mu = ctx.mu(j)?;
        let back = ctx.field.pow(mu, (ctx.q().pow(ctx.r()) - 1) as i64)?;
        let eps_r = ctx.field.pow(eps, ctx.r() as i64)?;
        println!("  ε = ζ^{j} = {:>2}: μ = {:>2}, μ^(q^R-1) = ε^R: {}", eps.0, mu.0, back == eps_r);
    }
    Ok(())
}
