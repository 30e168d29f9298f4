//! Level-`R` dual t-motives attached to CMPLs at roots of unity.
//!
//! `T_{s,k}` involves `θ^(1/q^j)`; matrices are therefore stored in the
//! variable `η` with `η^(q^(R-1)) = θ`, and every exact comparison happens
//! after twisting `R` times, where only integral powers of `θ` remain. The
//! trivialization `Ψ^(-R) = ΦΨ` is checked in the equivalent form
//! `Ψ = Φ^(R) Ψ^(R)`.

use serde::Serialize;

use crate::array::PositiveArray;
use crate::error::{Error, Result};
use crate::field::{Ctx, Elem, Field};
use crate::poly::{TPoly, ThetaPoly};
use crate::series::{carlitz_period, omega_series, InfSeries, TSeries};
use crate::values::Evaluator;

/// Divides every `θ`-degree by `k` (coefficients untouched).
fn deflate(p: &TPoly, k: u64) -> Result<TPoly> {
    let f = p.field();
    let mut out = Vec::with_capacity(p.coeffs().len());
    for c in p.coeffs() {
        let mut terms = Vec::with_capacity(c.terms().len());
        for &(d, x) in c.terms() {
            if d % k != 0 {
                return Err(Error::Precondition(format!("degree {d} is not divisible by {k}")));
            }
            terms.push((d / k, x));
        }
        out.push(ThetaPoly::from_terms(f, terms));
    }
    Ok(TPoly::from_coeffs(f, out))
}

/// `Π_{j ∈ js} (t - v^(q^j))^s` in a variable `v`.
fn t_product(field: &Field, s: u32, exps: impl IntoIterator<Item = u32>) -> TPoly {
    let q = field.q();
    let mut acc = TPoly::constant(ThetaPoly::one(field));
    for j in exps {
        acc = acc.mul(&TPoly::t_minus_theta_pow(field, q.pow(j)).pow(s as u64));
    }
    acc
}

/// `T_{s,k} = Π_{j=0}^{k-1} (t - θ^(q^-j))^s`, stored in `η = θ^(1/q^(k-1))`.
#[derive(Clone, Debug)]
pub struct TwistProduct {
    pub s: u32,
    pub k: u32,
    pub eta: TPoly,
}

impl TwistProduct {
    pub fn new(field: &Field, s: u32, k: u32) -> Result<Self> {
        if s == 0 || k == 0 {
            return Err(Error::Precondition("T_{s,k} needs s, k >= 1".into()));
        }
        Ok(TwistProduct { s, k, eta: t_product(field, s, (0..k).map(|j| k - 1 - j)) })
    }

    /// `T_{s,k}^(i)` for `i >= k - 1`, an honest polynomial in `t` and `θ`.
    pub fn twisted(&self, i: u32) -> Result<TPoly> {
        if i + 1 < self.k {
            return Err(Error::Precondition(format!("twist {i} leaves fractional powers of θ in T_{{s,{}}}", self.k)));
        }
        let q = self.eta.field().q();
        deflate(&self.eta.twist(i), q.pow(self.k - 1))
    }

    /// `Π_{j=0}^{k-1} (t - θ^(q^(i-j)))^s`, the closed form of `T_{s,k}^(i)`.
    pub fn twisted_closed_form(field: &Field, s: u32, k: u32, i: u32) -> TPoly {
        t_product(field, s, (0..k).map(|j| i - j))
    }
}

/// `Φ_{𝔰,𝛆}` with entries in `F_{q^M}[t, η]`, `η^(q^(R-1)) = θ`.
#[derive(Clone, Debug)]
pub struct MotiveMatrix {
    pub array: PositiveArray,
    pub level: u32,
    pub mu: Vec<Elem>,
    pub entries: Vec<Vec<TPoly>>,
}

/// `Σ_{0<j_k<…<j_{i-1}≤R} Π_l ε_l^(-j_l) T_{s_l,j_l}` in `η` at level `R`.
fn chain_sum(ctx: &Ctx, s: &[u32], e: &[u32], lo: u32, r: u32) -> Result<TPoly> {
    let f = &ctx.field;
    if s.is_empty() {
        return Ok(TPoly::constant(ThetaPoly::one(f)));
    }
    let mut acc = TPoly::zero(f);
    for j in lo + 1..=r {
        let eps = ctx.root(e[0]);
        let c = f.pow(eps, -(j as i64))?;
        let t = t_product(f, s[0], (0..j).map(|l| r - 1 - l)).scale(c);
        let rest = chain_sum(ctx, &s[1..], &e[1..], j, r)?;
        acc = acc.add(&t.mul(&rest));
    }
    Ok(acc)
}

impl MotiveMatrix {
    pub fn build(ctx: &Ctx, arr: &PositiveArray) -> Result<Self> {
        let f = &ctx.field;
        let r = ctx.r();
        let n = arr.depth();
        let mu: Vec<Elem> = arr.e.iter().map(|&j| ctx.mu(j)).collect::<Result<_>>()?;
        let mut entries = vec![vec![TPoly::zero(f); n + 1]; n + 1];
        for i in 0..=n {
            let tail: u32 = arr.s[i..].iter().sum();
            let diag = if tail == 0 {
                TPoly::constant(ThetaPoly::one(f))
            } else {
                t_product(f, tail, (0..r).map(|l| r - 1 - l))
            };
            for k in 0..=i {
                let mut c = Elem::ONE;
                for &m in &mu[k..i] {
                    c = f.mul(c, m);
                }
                let sum = chain_sum(ctx, &arr.s[k..i], &arr.e[k..i], 0, r)?;
                entries[i][k] = diag.mul(&sum).scale(c);
            }
        }
        Ok(MotiveMatrix { array: arr.clone(), level: r, mu, entries })
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    /// The upper-left block `Φ'`.
    pub fn prime(&self) -> Vec<Vec<TPoly>> {
        let n = self.size() - 1;
        self.entries[..n].iter().map(|row| row[..n].to_vec()).collect()
    }

    pub fn is_lower_triangular(&self) -> bool {
        self.entries.iter().enumerate().all(|(i, row)| row.iter().skip(i + 1).all(|c| c.is_zero()))
    }

    /// `Φ^(R)` with entries in `F_{q^M}[t, θ]`.
    pub fn twisted(&self) -> Result<Vec<Vec<TPoly>>> {
        let q = self.entries[0][0].field().q();
        let scale = q.pow(self.level - 1);
        self.entries
            .iter()
            .map(|row| row.iter().map(|c| deflate(&c.twist(self.level), scale)).collect())
            .collect()
    }
}

/// A `θ`-polynomial as an exact series in the ring of `Ω`.
fn theta_poly_series(p: &ThetaPoly, ram: u64) -> InfSeries {
    let f = p.field();
    let theta = InfSeries::theta(f, ram);
    let mut acc = InfSeries::exact_zero(f, ram);
    for &(d, c) in p.terms() {
        acc = acc.add(&theta.pow(d).scale(c));
    }
    acc
}

fn tpoly_series(p: &TPoly, ram: u64, t_prec: usize) -> TSeries {
    TSeries::new(p.coeffs().iter().map(|c| theta_poly_series(c, ram)).collect(), t_prec)
}

/// Series data shared by `L^un` and `Ψ` at one truncation.
pub struct MotiveSeries {
    ctx: Ctx,
    ram: u64,
    t_prec: usize,
    prec: i64,
    omega: TSeries,
}

impl MotiveSeries {
    /// `t_prec` `t`-coefficients, each exact below `u^prec`.
    pub fn new(ctx: &Ctx, t_prec: usize, prec: i64) -> Result<Self> {
        let omega = omega_series(&ctx.field, t_prec, prec)?;
        Ok(MotiveSeries { ctx: ctx.clone(), ram: ctx.q() - 1, t_prec, prec, omega })
    }

    pub fn omega(&self) -> &TSeries {
        &self.omega
    }

    fn omega_pow(&self, s: u32) -> TSeries {
        let mut acc = TSeries::constant(InfSeries::one(&self.ctx.field, self.ram), self.t_prec);
        for _ in 0..s {
            acc = acc.mul(&self.omega).truncate(self.prec);
        }
        acc
    }

    /// `Σ_{i_1>…>i_r≥0} Π ε_k^(i_k) (Ω^(s_k))^(i_k)` on the window.
    pub fn lun(&self, arr: &PositiveArray) -> Result<TSeries> {
        let f = &self.ctx.field;
        let one = TSeries::constant(InfSeries::one(f, self.ram), self.t_prec);
        if arr.is_empty() {
            return Ok(one);
        }
        let q = self.ctx.q() as i64;
        // (Ω^s)^(i) has u-valuation s q^(i+1); beyond the window it vanishes.
        let top = |s: u32| {
            let mut i = 0usize;
            while (s as i64) * q.pow(i as u32 + 1) < self.prec {
                i += 1;
            }
            i
        };
        let imax = top(*arr.s.iter().min().unwrap());
        // below[i] = Σ over the tail with its first index < i
        let mut below: Vec<TSeries> = vec![one; imax + 1];
        for k in (0..arr.depth()).rev() {
            let eps = self.ctx.root(arr.e[k]);
            let base = self.omega_pow(arr.s[k]);
            let mut next = Vec::with_capacity(imax + 1);
            let mut acc = TSeries::new(vec![], self.t_prec);
            let mut tw = base;
            for i in 0..=imax {
                next.push(acc.clone());
                let c = f.pow(eps, i as i64)?;
                let term = tw.scale(&InfSeries::monomial(f, self.ram, 0, c)).mul(&below[i]).truncate(self.prec);
                acc = acc.add(&term);
                tw = tw.twist(1).truncate(self.prec);
            }
            next.push(acc);
            below = next;
        }
        Ok(below.pop().unwrap())
    }

    /// `Ψ_{𝔰,𝛆}`: `Ψ_{i,k} = μ_k…μ_{i-1} L^un(s_k..s_{i-1}) Ω^(s_i+…+s_r)`.
    pub fn psi(&self, arr: &PositiveArray) -> Result<Vec<Vec<TSeries>>> {
        let f = &self.ctx.field;
        let n = arr.depth();
        let mu: Vec<Elem> = arr.e.iter().map(|&j| self.ctx.mu(j)).collect::<Result<_>>()?;
        let zero = TSeries::new(vec![], self.t_prec);
        let mut out = vec![vec![zero; n + 1]; n + 1];
        for i in 0..=n {
            let om = self.omega_pow(arr.s[i..].iter().sum());
            for k in 0..=i {
                let mut c = Elem::ONE;
                for &m in &mu[k..i] {
                    c = f.mul(c, m);
                }
                let sub = PositiveArray::new(arr.s[k..i].to_vec(), arr.e[k..i].to_vec(), arr.gamma)?;
                let l = self.lun(&sub)?;
                out[i][k] = l.mul(&om).scale(&InfSeries::monomial(f, self.ram, 0, c)).truncate(self.prec);
            }
        }
        Ok(out)
    }

    /// Evaluates a `t`-series at `t = θ^(q^j)`.
    pub fn eval_at_theta_power(&self, s: &TSeries, j: u32) -> InfSeries {
        let y = InfSeries::theta(&self.ctx.field, self.ram).pow(self.ctx.q().pow(j));
        s.eval_at(&y)
    }
}

/// Outcome of an exact residual check on a finite window.
#[derive(Clone, Debug, Serialize)]
pub struct ResidualReport {
    /// `t`-degrees checked: `0..t_window`.
    pub t_window: usize,
    /// Smallest `u`-precision over the checked entries.
    pub u_window: i64,
    /// Entries whose residual has a nonzero coefficient on the window.
    pub failures: Vec<(usize, usize)>,
}

impl ResidualReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

/// `Ω - (t - θ^q) Ω^(1)`, the once-twisted form of `Ω^(-1) = (t - θ)Ω`.
pub fn omega_residual(field: &Field, t_prec: usize, prec: i64) -> Result<ResidualReport> {
    let ram = field.q() - 1;
    let om = omega_series(field, t_prec, prec)?;
    let lin = TPoly::t_minus_theta_pow(field, field.q());
    let rhs = tpoly_series(&lin, ram, t_prec).mul(&om.twist(1));
    let res = om.sub(&rhs);
    let u_window = res.prec();
    let failures = if res.coeffs.iter().all(|c| c.is_zero()) { vec![] } else { vec![(0, 0)] };
    Ok(ResidualReport { t_window: t_prec, u_window, failures })
}

/// Checks `Ψ = Φ^(R) Ψ^(R)` entry by entry on every fully determined
/// coefficient.
pub fn check_trivialization(ctx: &Ctx, arr: &PositiveArray, t_prec: usize, prec: i64) -> Result<ResidualReport> {
    let ms = MotiveSeries::new(ctx, t_prec, prec)?;
    let psi = ms.psi(arr)?;
    let phi = MotiveMatrix::build(ctx, arr)?;
    trivialization_residual(ctx, &phi, &psi, t_prec, prec)
}

/// Residual of `Ψ = Φ^(R) Ψ^(R)` for a given pair of matrices.
pub fn trivialization_residual(
    ctx: &Ctx,
    phi: &MotiveMatrix,
    psi: &[Vec<TSeries>],
    t_prec: usize,
    prec: i64,
) -> Result<ResidualReport> {
    let phi = phi.twisted()?;
    let r = ctx.r();
    let ram = ctx.q() - 1;
    let n = psi.len();
    if phi.len() != n {
        return Err(Error::Precondition("Φ and Ψ differ in size".into()));
    }
    let max_deg = phi.iter().flatten().filter_map(|p| p.theta_degree()).max().unwrap_or(0) as i64;
    // Φ^(R) lowers valuations by at most (q-1)·deg_θ; nothing beyond is needed.
    let cut = prec + (ram as i64) * max_deg;
    let psi_r: Vec<Vec<TSeries>> = psi.iter().map(|row| row.iter().map(|x| x.twist(r).truncate(cut)).collect()).collect();
    let phi_s: Vec<Vec<TSeries>> = phi.iter().map(|row| row.iter().map(|p| tpoly_series(p, ram, t_prec)).collect()).collect();
    let mut failures = Vec::new();
    let mut u_window = i64::MAX;
    for i in 0..n {
        for k in 0..n {
            let mut rhs = TSeries::new(vec![], t_prec);
            for l in 0..n {
                if phi[i][l].is_zero() {
                    continue;
                }
                rhs = rhs.add(&phi_s[i][l].mul(&psi_r[l][k]));
            }
            let res = psi[i][k].sub(&rhs);
            u_window = u_window.min(res.prec());
            if res.coeffs.iter().any(|c| !c.is_zero()) {
                failures.push((i, k));
            }
        }
    }
    Ok(ResidualReport { t_window: t_prec, u_window, failures })
}

/// Agreement of two stabilized evaluations and a reference value.
#[derive(Clone, Debug, Serialize)]
pub struct ValueReport {
    /// Final `t`-truncation; the value is compared against the one at half of it.
    pub t_prec: usize,
    /// Leading coefficients unchanged between the last two truncations.
    pub stabilized: i64,
    /// Coefficients (from the valuation on) matching the reference.
    pub agreeing: i64,
    pub valuation: Option<i64>,
}

/// Number of coefficients from `start` on where `a` and `b` agree.
fn agreement(a: &InfSeries, b: &InfSeries, start: i64) -> i64 {
    let end = a.prec().min(b.prec());
    let mut k = start;
    while k < end && a.coeff(k) == b.coeff(k) {
        k += 1;
    }
    k - start
}

/// Doubles the `t`-truncation until the leading coefficients of the value
/// at `t = θ^(q^j)` stop changing on the whole window (at most five rounds).
fn stabilized_value(ctx: &Ctx, arr: &PositiveArray, t_prec: usize, prec: i64, j: u32) -> Result<(InfSeries, i64, usize)> {
    let shift = (ctx.q() as i64 - 1) * ctx.q().pow(j) as i64;
    let eval = |tp: usize| -> Result<InfSeries> {
        let ms = MotiveSeries::new(ctx, tp, prec + shift * tp as i64)?;
        let l = ms.lun(arr)?;
        Ok(ms.eval_at_theta_power(&l, j).truncate(prec))
    };
    let mut tp = t_prec.max(1);
    let mut prev = eval(tp)?;
    let mut stable = 0;
    for _ in 0..5 {
        let next = eval(2 * tp)?;
        let start = next.valuation().unwrap_or(prec).min(prev.valuation().unwrap_or(prec));
        stable = agreement(&prev, &next, start);
        prev = next;
        tp *= 2;
        if start + stable >= prec {
            break;
        }
    }
    Ok((prev, stable, tp))
}

/// `L^un(𝔰;𝛆)(θ)` against `Li(𝛆;𝔰)/π̃^w`.
pub fn value_identity(ev: &Evaluator, arr: &PositiveArray, t_prec: usize, prec: i64) -> Result<ValueReport> {
    let ctx = ev.ctx();
    let f = &ctx.field;
    let ram = ctx.q() - 1;
    let (lhs, stabilized, t_prec) = stabilized_value(ctx, arr, t_prec, prec, 0)?;
    let w = arr.weight() as i64;
    let q = ctx.q() as i64;
    // π̃ has u-valuation -q, so π̃^(-w) starts at q w.
    let li_prec = (prec - q * w).div_euclid(ram as i64) + 2;
    let li = ev.li(arr, li_prec.max(1)).ramify_to(ram)?;
    let pi = carlitz_period(f, prec + q * w + q)?;
    let rhs = li.mul(&pi.pow(w as u64).inv(prec + 2 * q * w)?).truncate(prec);
    let start = lhs.valuation().unwrap_or(prec);
    let agreeing = agreement(&lhs, &rhs, start).min(stabilized);
    Ok(ValueReport { t_prec, stabilized, agreeing, valuation: lhs.valuation() })
}

/// `L^un(θ^(q^R))` against `χ(𝛆)^R (L^un(θ))^(q^R)`.
pub fn specialization_identity(ctx: &Ctx, arr: &PositiveArray, t_prec: usize, prec: i64) -> Result<ValueReport> {
    let f = &ctx.field;
    let r = ctx.r();
    let qr = ctx.q().pow(r) as i64;
    let (lhs, stabilized, t_prec) = stabilized_value(ctx, arr, t_prec, prec, r)?;
    let (base, _, _) = stabilized_value(ctx, arr, t_prec, prec.div_euclid(qr) + 1, 0)?;
    let chi = f.pow(ctx.root(arr.chi()), r as i64)?;
    let ram = ctx.q() - 1;
    let rhs = base.twist(r).mul(&InfSeries::monomial(f, ram, 0, chi)).truncate(prec);
    let start = lhs.valuation().unwrap_or(prec);
    let agreeing = agreement(&lhs, &rhs, start).min(stabilized);
    Ok(ValueReport { t_prec, stabilized, agreeing, valuation: lhs.valuation() })
}

/// Solves `ε δ = δ^(-R) T_{m,R} + F^(-R)` in its twisted form
/// `ε δ^(R) = δ T_{m,R}^(R) + F`, by descending induction on `t`-degree.
pub fn solve_sigma_equation(ctx: &Ctx, m: u32, eps: u32, f_poly: &TPoly) -> Result<TPoly> {
    let f = &ctx.field;
    if f_poly.is_zero() {
        return Ok(TPoly::zero(f));
    }
    let r = ctx.r();
    let e = ctx.root(eps);
    let c = TwistProduct::twisted_closed_form(f, m, r, r);
    let mr = (m * r) as usize;
    let top = f_poly.t_degree().unwrap();
    if top < mr {
        return Err(Error::NoSolution);
    }
    let n = top - mr;
    let mut a = vec![ThetaPoly::zero(f); n + 1];
    for j in (mr..=top).rev() {
        let mut v = f_poly.coeff(j).neg();
        if j <= n {
            v = v.add(&a[j].twist(r).scale(e));
        }
        for i in (j + 1 - mr)..=n.min(j) {
            v = v.sub(&a[i].mul(&c.coeff(j - i)));
        }
        a[j - mr] = v;
    }
    let delta = TPoly::from_coeffs(f, a);
    if !sigma_residual(ctx, m, eps, &delta, f_poly).is_zero() {
        return Err(Error::NoSolution);
    }
    Ok(delta)
}

/// `ε δ^(R) - δ T_{m,R}^(R) - F`.
pub fn sigma_residual(ctx: &Ctx, m: u32, eps: u32, delta: &TPoly, f_poly: &TPoly) -> TPoly {
    let f = &ctx.field;
    let r = ctx.r();
    let c = TwistProduct::twisted_closed_form(f, m, r, r);
    delta.twist(r).scale(ctx.root(eps)).sub(&delta.mul(&c)).sub(f_poly)
}

/// `deg_θ δ ≤ max(q m / (q - 1), deg_θ F / q^R)`.
pub fn sigma_degree_bound_holds(ctx: &Ctx, m: u32, delta: &TPoly, f_poly: &TPoly) -> bool {
    let Some(d) = delta.theta_degree() else {
        return true;
    };
    let q = ctx.q();
    let qr = q.pow(ctx.r());
    d * (q - 1) <= q * m as u64 || d * qr <= f_poly.theta_degree().unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twist_products_become_integral() {
        let ctx = Ctx::new(3, 1, 4).unwrap();
        let f = &ctx.field;
        for s in 1..=3 {
            for k in 1..=3 {
                let t = TwistProduct::new(f, s, k).unwrap();
                let tw = t.twisted(k).unwrap();
                assert_eq!(tw, TwistProduct::twisted_closed_form(f, s, k, k));
                assert!(tw.coeffs().iter().all(|c| c.coeffs_in_subfield(1)));
            }
        }
        let t = TwistProduct::new(f, 2, 1).unwrap();
        assert_eq!(t.eta, TPoly::t_minus_theta_pow(f, 1).pow(2));
    }

    #[test]
    fn sigma_solver_round_trips() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for &(p, n) in &[(3u64, 4u64), (3, 2), (2, 3), (5, 1)] {
            let ctx = Ctx::new(p, 1, n).unwrap();
            let f = &ctx.field;
            let q = ctx.q();
            for _ in 0..25 {
                let m: u32 = rng.gen_range(1..=3);
                let eps = rng.gen_range(0..ctx.gamma() as u32);
                let dmax = q * m as u64 / (q - 1);
                let tdeg = rng.gen_range(0..=3);
                let coeffs = (0..=tdeg)
                    .map(|_| {
                        let terms = (0..=dmax).map(|d| (d, f.gen_pow(rng.gen_range(0..f.order() as i64))));
                        ThetaPoly::from_terms(f, terms)
                    })
                    .collect();
                let d0 = TPoly::from_coeffs(f, coeffs);
                let zero = TPoly::zero(f);
                let rhs = sigma_residual(&ctx, m, eps, &d0, &zero);
                let d = solve_sigma_equation(&ctx, m, eps, &rhs).unwrap();
                assert_eq!(d, d0);
                assert!(sigma_residual(&ctx, m, eps, &d, &rhs).is_zero());
                assert!(sigma_degree_bound_holds(&ctx, m, &d, &rhs));
            }
        }
    }

    #[test]
    fn sigma_solver_rejects_non_image() {
        let ctx = Ctx::new(3, 1, 2).unwrap();
        let f = &ctx.field;
        let rhs = TPoly::constant(ThetaPoly::one(f));
        assert_eq!(solve_sigma_equation(&ctx, 1, 0, &rhs), Err(Error::NoSolution));
    }

    #[test]
    fn phi_shape() {
        let ctx = Ctx::new(3, 1, 4).unwrap();
        let arr = PositiveArray::new(vec![1, 2], vec![1, 3], 4).unwrap();
        let phi = MotiveMatrix::build(&ctx, &arr).unwrap();
        assert!(phi.is_lower_triangular());
        assert_eq!(phi.size(), 3);
        assert_eq!(phi.entries[2][2], TPoly::constant(ThetaPoly::one(&ctx.field)));
        assert_eq!(phi.prime().len(), 2);
    }

    #[test]
    fn omega_equation() {
        for p in [2u64, 3] {
            let f = crate::field::FieldCtx::new(p, 1, 1).unwrap();
            let rep = omega_residual(&f, 8, 150).unwrap();
            assert!(rep.ok());
            assert!(rep.u_window > 100);
        }
    }

    #[test]
    fn trivialization_depth_one() {
        let ctx = Ctx::new(3, 1, 2).unwrap();
        let arr = PositiveArray::single(1, 1, 2);
        let rep = check_trivialization(&ctx, &arr, 6, 120).unwrap();
        assert!(rep.ok(), "{rep:?}");
    }

    #[test]
    fn trivialization_detects_wrong_character() {
        let ctx = Ctx::new(3, 1, 4).unwrap();
        let good = PositiveArray::new(vec![1, 1], vec![1, 2], 4).unwrap();
        let bad = PositiveArray::new(vec![1, 1], vec![1, 3], 4).unwrap();
        let ms = MotiveSeries::new(&ctx, 6, 150).unwrap();
        let phi = MotiveMatrix::build(&ctx, &good).unwrap();
        assert!(trivialization_residual(&ctx, &phi, &ms.psi(&good).unwrap(), 6, 150).unwrap().ok());
        assert!(!trivialization_residual(&ctx, &phi, &ms.psi(&bad).unwrap(), 6, 150).unwrap().ok());
    }

    #[test]
    fn lun_depends_on_character() {
        let ctx = Ctx::new(3, 1, 2).unwrap();
        let ms = MotiveSeries::new(&ctx, 4, 100).unwrap();
        let a = ms.lun(&PositiveArray::single(1, 0, 2)).unwrap();
        let b = ms.lun(&PositiveArray::single(1, 1, 2)).unwrap();
        assert!(a.coeffs.iter().zip(&b.coeffs).any(|(x, y)| !x.sub(y).is_zero()));
    }

    #[test]
    fn value_identity_depth_one() {
        let ctx = Ctx::new(3, 1, 2).unwrap();
        let ev = Evaluator::new(ctx.clone());
        let arr = PositiveArray::single(1, 1, 2);
        let rep = value_identity(&ev, &arr, 6, 150).unwrap();
        assert!(rep.agreeing >= 40, "{rep:?}");
    }
}
