//! The dual t-motive matrix `Φ` of an array at level `R = 2`, its rigid
//! analytic trivialization, and the value at `t = θ`.

use cyclomzv::array::PositiveArray;
use cyclomzv::field::Ctx;
use cyclomzv::motives::{check_trivialization, specialization_identity, value_identity, MotiveMatrix};
use cyclomzv::values::Evaluator;

fn main() -> cyclomzv::Result<()> {
    let ctx = Ctx::new(3, 1, 4)?;
    let ev = Evaluator::new(ctx.clone());
    let a = PositiveArray::parse("(1;1),(2;3)", 4)?;
    let phi = MotiveMatrix::build(&ctx, &a)?;
    println!("Φ({a}): {0}×{0}, lower triangular: {1}", phi.size(), phi.is_lower_triangular());
    for (i, row) in phi.entries.iter().enumerate() {
        let shape: Vec<String> = row.iter().map(|e| e.t_degree().map_or("0".into(), |d| format!("deg_t {d}"))).collect();
        println!("  row {i}: {}", shape.join(", "));
    }
    let tr = check_trivialization(&ctx, &a, 8, 200)?;
    println!("Ψ = Φ^(R) Ψ^(R) on t^<{} u^<{}: {}", tr.t_window, tr.u_window, if tr.ok() { "exact" } else { "FAILED" });
    let v = value_identity(&ev, &a, 6, 200)?;
    println!("L^un(θ) vs Li/π̃^w: {} of {} stabilized coefficients agree (t_prec {})", v.agreeing, v.stabilized, v.t_prec);
    let s = specialization_identity(&ctx, &a, 6, 200)?;
    println!("L^un(θ^(q^R)) vs χ^R L^un(θ)^(q^R): {} of {} agree", s.agreeing, s.stabilized);
    Ok(())
}
