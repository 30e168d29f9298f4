//! Evaluation of `S_d`, `S_{<d}`, `ζ_A` and `Si_d`, `Si_{<d}`, `Li` as
//! truncated series in `x = 1/θ`.
//!
//! Depth-one power sums `S_d(k) = Σ_{a monic, deg a = d} a^(-k)` are computed
//! by brute force over monic polynomials; deeper sums use the recursion
//! `S_d(ε; s) = ε_1^d S_d(s_1) S_{<d}(ε_-; s_-)`. Truncation bounds:
//! `v_∞(S_d(k)) >= deg ℓ_d` for every `k >= 1` (`= k deg ℓ_d` when `k <= q`),
//! and `v_∞(Si_d(ε; s)) = s_1 deg ℓ_d`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock, RwLock};

use serde::{Deserialize, Serialize};

use crate::array::PositiveArray;
use crate::error::{Error, Result};
use crate::field::{Ctx, Elem, Field};
use crate::poly::{RatFun, ThetaPoly};
use crate::series::InfSeries;

/// Which family of sums a symbol belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Flavor {
    /// Power sums over monic polynomials: `S_d`, `S_{<d}`, `ζ_A`.
    Mzv,
    /// Carlitz sums over `ℓ_d`: `Si_d`, `Si_{<d}`, `Li`.
    Cmpl,
}

/// `S_d` / `Si_d` (degree exactly `d`) or `S_{<d}` / `Si_{<d}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Level {
    At,
    Below,
}

/// `deg ℓ_d = q + q^2 + ... + q^d`.
pub fn ell_degree(q: u64, d: u32) -> i64 {
    (1..=d).map(|i| q.pow(i) as i64).sum()
}

/// `ℓ_d = Π_{i=1}^d (θ - θ^(q^i))`.
pub fn bracket_ell(field: &Field, d: u32) -> ThetaPoly {
    let mut acc = ThetaPoly::one(field);
    let q = field.q();
    let minus_one = field.neg(Elem::ONE);
    for i in 1..=d {
        let factor = ThetaPoly::from_terms(field, [(1, Elem::ONE), (q.pow(i), minus_one)]);
        acc = acc.mul(&factor);
    }
    acc
}

/// All monic polynomials of degree `d` over `F_q` (as elements of the
/// ambient field), `q^d` of them.
pub fn monic_polys(field: &Field, d: u32) -> Vec<ThetaPoly> {
    let fq = field.subfield_elements(1).expect("F_q is a subfield");
    let q = fq.len();
    let total = q.pow(d);
    (0..total)
        .map(|mut code| {
            let mut coeffs = Vec::with_capacity(d as usize + 1);
            for _ in 0..d {
                coeffs.push(fq[code % q]);
                code /= q;
            }
            coeffs.push(Elem::ONE);
            ThetaPoly::from_dense(field, &coeffs)
        })
        .collect()
}

/// Lower bound for `v_∞(S_d(k))` (`d >= 0`, `k >= 1`).
pub fn power_sum_val_bound(q: u64, d: u32, k: u32) -> i64 {
    let l = ell_degree(q, d);
    if k as u64 <= q {
        k as i64 * l
    } else {
        l.max(k as i64 * d as i64)
    }
}

type PsKey = (u64, u32, u32);

/// Process-wide cache of prime-field power sums: `(p, d, k) → coefficients
/// mod p at exponents 0..len`. Shared by every context with `q = p`.
fn prime_power_sums() -> &'static Mutex<HashMap<PsKey, Arc<Vec<u8>>>> {
    static CACHE: OnceLock<Mutex<HashMap<PsKey, Arc<Vec<u8>>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// `S_d(k)` over `F_p` (`q = p`) to absolute precision `prec`, coefficients
/// mod `p` at exponents `0..prec`.
fn prime_power_sum(p: u64, d: u32, k: u32, prec: i64) -> Arc<Vec<u8>> {
    let key = (p, d, k);
    if let Some(v) = prime_power_sums().lock().unwrap().get(&key) {
        if v.len() as i64 >= prec {
            return v.clone();
        }
    }
    let len = prec.max(0) as usize;
    let out = if (k as u64).is_multiple_of(p) {
        // S_d(pk) = S_d(k)^p
        let inner_prec = (prec + p as i64 - 1) / p as i64;
        let inner = prime_power_sum(p, d, k / p as u32, inner_prec);
        let mut out = vec![0u8; len];
        for (i, &c) in inner.iter().enumerate() {
            let j = i * p as usize;
            if j < len {
                out[j] = c;
            }
        }
        out
    } else {
        brute_prime_power_sum(p as u32, d, k, len)
    };
    let arc = Arc::new(out);
    prime_power_sums().lock().unwrap().insert(key, arc.clone());
    arc
}

fn brute_prime_power_sum(p: u32, d: u32, k: u32, len: usize) -> Vec<u8> {
    let shift = (d * k) as usize;
    let mut acc = vec![0u32; len];
    if len <= shift {
        return vec![0u8; len];
    }
    let n = len - shift;
    let total = (p as u64).pow(d);
    let mut r = vec![0u32; d as usize + 1];
    let mut b = vec![0u32; n];
    let mut rk: Vec<u32> = Vec::new();
    for code in 0..total {
        // r(x) = x^d a(1/x) = 1 + c_{d-1} x + ... + c_0 x^d
        let mut c = code;
        r[0] = 1;
        for i in 0..d as usize {
            r[d as usize - i] = (c % p as u64) as u32;
            c /= p as u64;
        }
        rk.clear();
        rk.push(1);
        for _ in 0..k {
            let mut next = vec![0u32; rk.len() + d as usize];
            for (i, &x) in rk.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                for (j, &y) in r.iter().enumerate() {
                    next[i + j] = (next[i + j] + x * y) % p;
                }
            }
            rk = next;
        }
        let nz: Vec<(usize, u32)> = rk.iter().enumerate().skip(1).filter(|(_, &c)| c != 0).map(|(i, &c)| (i, c)).collect();
        b[0] = 1;
        for m in 1..n {
            let mut s = 0u32;
            for &(i, c) in &nz {
                if i > m {
                    break;
                }
                s += c * b[m - i];
            }
            b[m] = (p - s % p) % p;
        }
        for m in 0..n {
            acc[m + shift] += b[m];
        }
        if code % 64 == 63 {
            for x in acc.iter_mut() {
                *x %= p;
            }
        }
    }
    acc.into_iter().map(|x| (x % p) as u8).collect()
}

/// Memoizing evaluator bound to one context.
pub struct Evaluator {
    ctx: Ctx,
    ell_inv: RwLock<HashMap<u32, InfSeries>>,
    cache: RwLock<HashMap<(Flavor, Level, PositiveArray, i64), InfSeries>>,
    power: RwLock<HashMap<(u32, u32), InfSeries>>,
}

impl Evaluator {
    pub fn new(ctx: Ctx) -> Self {
        Evaluator {
            ctx,
            ell_inv: RwLock::new(HashMap::new()),
            cache: RwLock::new(HashMap::new()),
            power: RwLock::new(HashMap::new()),
        }
    }

    pub fn ctx(&self) -> &Ctx {
        &self.ctx
    }

    pub fn field(&self) -> &Field {
        &self.ctx.field
    }

    fn q(&self) -> u64 {
        self.ctx.q()
    }

    fn zero(&self, prec: i64) -> InfSeries {
        InfSeries::zero(self.field(), 1, prec)
    }

    fn char_pow(&self, e: u32, d: i64) -> Elem {
        let g = self.ctx.gamma() as i64;
        self.ctx.root(((e as i64 * d).rem_euclid(g)) as u32)
    }

    /// Depth-one power sum `S_d(k)` to absolute precision `prec`.
    pub fn power_sum(&self, d: u32, k: u32, prec: i64) -> InfSeries {
        if prec <= power_sum_val_bound(self.q(), d, k) {
            return self.zero(prec);
        }
        if let Some(s) = self.power.read().unwrap().get(&(d, k)) {
            if s.prec() >= prec {
                return s.truncate(prec);
            }
        }
        let f = self.field();
        let s = if f.e() == 1 {
            let v = prime_power_sum(f.p(), d, k, prec);
            InfSeries::from_parts(f, 1, 0, v[..prec as usize].iter().map(|&c| Elem(c as u32)).collect(), prec)
        } else if (k as u64).is_multiple_of(f.p()) {
            let p = f.p() as i64;
            self.power_sum(d, k / f.p() as u32, (prec + p - 1) / p).frobenius_p().truncate(prec)
        } else {
            self.brute_power_sum(d, k, prec)
        };
        self.power.write().unwrap().insert((d, k), s.clone());
        s
    }

    /// Reference implementation through generic series arithmetic.
    pub fn brute_power_sum(&self, d: u32, k: u32, prec: i64) -> InfSeries {
        let mut acc = self.zero(prec);
        for a in monic_polys(self.field(), d) {
            let s = InfSeries::from_theta_poly(&a.pow(k as u64));
            let rel = prec + (d * k) as i64;
            acc = acc.add(&s.inv(rel).unwrap().truncate(prec));
        }
        acc
    }

    /// `S_d(k)` as an exact rational function (small `d` only).
    pub fn power_sum_exact(&self, d: u32, k: u32) -> RatFun {
        let f = self.field();
        let mut acc = RatFun::zero(f);
        for a in monic_polys(f, d) {
            acc = acc.add(&RatFun::new(ThetaPoly::one(f), a.pow(k as u64)).unwrap());
        }
        acc
    }

    fn ell_inverse(&self, d: u32, prec: i64) -> InfSeries {
        let v = ell_degree(self.q(), d);
        if let Some(s) = self.ell_inv.read().unwrap().get(&d) {
            if s.prec() >= prec {
                return s.truncate(prec);
            }
        }
        let l = InfSeries::from_theta_poly(&bracket_ell(self.field(), d));
        let s = l.inv((prec - v).max(1)).unwrap();
        self.ell_inv.write().unwrap().insert(d, s.clone());
        s.truncate(prec)
    }

    /// `ℓ_d^(-s)` to absolute precision `prec`.
    pub fn ell_pow_inv(&self, d: u32, s: u32, prec: i64) -> InfSeries {
        let v = s as i64 * ell_degree(self.q(), d);
        if prec <= v {
            return self.zero(prec);
        }
        // relative precision of ℓ_d^(-1) needed: prec - v
        let base = self.ell_inverse(d, ell_degree(self.q(), d) + (prec - v));
        base.pow(s as u64).truncate(prec)
    }

    /// Lower bound for the valuation of `S_d` / `Si_d` of `arr`.
    pub fn val_bound(&self, flavor: Flavor, arr: &PositiveArray, d: i64) -> i64 {
        let s1 = arr.s[0];
        match flavor {
            Flavor::Mzv => power_sum_val_bound(self.q(), d as u32, s1),
            Flavor::Cmpl => s1 as i64 * ell_degree(self.q(), d as u32),
        }
    }

    /// `S_d`, `S_{<d}`, `Si_d` or `Si_{<d}` of `arr` at `d` to absolute
    /// precision `prec`.
    pub fn eval(&self, flavor: Flavor, level: Level, arr: &PositiveArray, d: i64, prec: i64) -> InfSeries {
        let f = self.field();
        match level {
            Level::At => {
                if arr.is_empty() || d < arr.depth() as i64 - 1 || d < 0 {
                    return self.zero(prec);
                }
            }
            Level::Below => {
                if arr.is_empty() {
                    return InfSeries::one(f, 1).truncate(prec);
                }
                if d < arr.depth() as i64 {
                    return self.zero(prec);
                }
            }
        }
        let key = (flavor, level, arr.clone(), d);
        if let Some(s) = self.cache.read().unwrap().get(&key) {
            if s.prec() >= prec {
                return s.truncate(prec);
            }
        }
        let out = match level {
            Level::At => {
                if prec <= self.val_bound(flavor, arr, d) {
                    return self.zero(prec);
                }
                let (s1, e1) = arr.head().unwrap();
                let head = match flavor {
                    Flavor::Mzv => self.power_sum(d as u32, s1, prec),
                    Flavor::Cmpl => self.ell_pow_inv(d as u32, s1, prec),
                };
                let head = head.scale(self.char_pow(e1, d));
                if head.is_zero() {
                    head
                } else {
                    let v = head.val_bound();
                    let rest = self.eval(flavor, Level::Below, &arr.tail(), d, prec - v);
                    head.mul(&rest).truncate(prec)
                }
            }
            Level::Below => {
                let mut acc = self.zero(prec);
                for j in (arr.depth() as i64 - 1)..d {
                    acc = acc.add(&self.eval(flavor, Level::At, arr, j, prec));
                }
                acc.truncate(prec)
            }
        };
        self.cache.write().unwrap().insert(key, out.clone());
        out
    }

    pub fn s_d(&self, arr: &PositiveArray, d: i64, prec: i64) -> InfSeries {
        self.eval(Flavor::Mzv, Level::At, arr, d, prec)
    }

    pub fn s_lt(&self, arr: &PositiveArray, d: i64, prec: i64) -> InfSeries {
        self.eval(Flavor::Mzv, Level::Below, arr, d, prec)
    }

    pub fn si_d(&self, arr: &PositiveArray, d: i64, prec: i64) -> InfSeries {
        self.eval(Flavor::Cmpl, Level::At, arr, d, prec)
    }

    pub fn si_lt(&self, arr: &PositiveArray, d: i64, prec: i64) -> InfSeries {
        self.eval(Flavor::Cmpl, Level::Below, arr, d, prec)
    }

    /// Largest `d` whose term can reach below `prec`.
    fn last_degree(&self, flavor: Flavor, arr: &PositiveArray, prec: i64) -> i64 {
        let mut d = arr.depth() as i64 - 1;
        while self.val_bound(flavor, arr, d + 1) < prec {
            d += 1;
        }
        d
    }

    /// `ζ_A(arr)` (Mzv) or `Li(arr)` (Cmpl) to absolute precision `prec`.
    pub fn total(&self, flavor: Flavor, arr: &PositiveArray, prec: i64) -> InfSeries {
        if arr.is_empty() {
            return InfSeries::one(self.field(), 1).truncate(prec);
        }
        let last = self.last_degree(flavor, arr, prec);
        let mut acc = self.zero(prec);
        for d in (arr.depth() as i64 - 1)..=last {
            acc = acc.add(&self.eval(flavor, Level::At, arr, d, prec));
        }
        acc
    }

    pub fn zeta(&self, arr: &PositiveArray, prec: i64) -> InfSeries {
        self.total(Flavor::Mzv, arr, prec)
    }

    pub fn li(&self, arr: &PositiveArray, prec: i64) -> InfSeries {
        self.total(Flavor::Cmpl, arr, prec)
    }

    /// Brute-force `S_d` by enumerating strictly decreasing degree chains
    /// (independent of the recursion; small `d` only).
    pub fn s_d_brute(&self, arr: &PositiveArray, d: i64, prec: i64) -> Result<InfSeries> {
        if arr.is_empty() || d < 0 {
            return Ok(self.zero(prec));
        }
        let n = arr.depth();
        let mut total = self.zero(prec);
        let mut degs = vec![0i64; n];
        fn chains(level: usize, upper: i64, degs: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
            if level == degs.len() {
                out.push(degs.clone());
                return;
            }
            for dd in (0..upper).rev() {
                degs[level] = dd;
                chains(level + 1, dd, degs, out);
            }
        }
        let mut all = Vec::new();
        degs[0] = d;
        chains(1, d, &mut degs, &mut all);
        for chain in all {
            let mut term = InfSeries::one(self.field(), 1);
            for (i, &di) in chain.iter().enumerate() {
                let mut sum = self.zero(prec + 64);
                for a in monic_polys(self.field(), di as u32) {
                    let s = InfSeries::from_theta_poly(&a.pow(arr.s[i] as u64));
                    sum = sum.add(&s.inv(prec + 64).map_err(|_| Error::DivisionByZero)?.truncate(prec + 64));
                }
                term = term.mul(&sum.scale(self.char_pow(arr.e[i], di)));
            }
            total = total.add(&term.truncate(prec));
        }
        Ok(total)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ev(p: u64, n: u64) -> Evaluator {
        Evaluator::new(Ctx::new(p, 1, n).unwrap())
    }

    #[test]
    fn monic_counts() {
        let f = crate::field::FieldCtx::new(2, 1, 1).unwrap();
        let m = monic_polys(&f, 1);
        assert_eq!(m.len(), 2);
        assert!(m.contains(&ThetaPoly::theta(&f)));
        let f3 = crate::field::FieldCtx::new(3, 1, 2).unwrap();
        assert_eq!(monic_polys(&f3, 0), vec![ThetaPoly::one(&f3)]);
        assert_eq!(monic_polys(&f3, 3).len(), 27);
    }

    #[test]
    fn ell_examples() {
        let f = crate::field::FieldCtx::new(3, 1, 1).unwrap();
        assert!(bracket_ell(&f, 0).is_one());
        let th = ThetaPoly::theta(&f);
        assert_eq!(bracket_ell(&f, 1), th.sub(&th.pow(3)));
        assert_eq!(bracket_ell(&f, 2).degree(), Some(12));
        assert_eq!(ell_degree(3, 2), 12);
    }

    #[test]
    fn small_sums() {
        let e = ev(2, 1);
        let a = PositiveArray::trivial(vec![1], 1);
        assert!(e.s_d(&a, 0, 20).agrees_to(&InfSeries::one(e.field(), 1), 20).unwrap());
        let b = PositiveArray::trivial(vec![1, 1, 1], 1);
        assert!(e.s_d(&b, 1, 20).is_zero());
        let s1 = e.s_d(&a, 1, 30);
        for k in 0..30 {
            assert_eq!(s1.coeff(k).unwrap(), if k >= 2 { Elem::ONE } else { Elem::ZERO }, "k={k}");
        }
    }

    #[test]
    fn fast_power_sums_match_generic() {
        for p in [2u64, 3] {
            let e = ev(p, 1);
            for d in 0..=3 {
                for k in 1..=5 {
                    let prec = power_sum_val_bound(p, d, k) + 25;
                    let fast = e.power_sum(d, k, prec);
                    let slow = e.brute_power_sum(d, k, prec);
                    assert!(fast.agrees_to(&slow, prec).unwrap(), "p={p} d={d} k={k}");
                }
            }
        }
    }

    #[test]
    fn power_sum_valuation_bound_holds() {
        for p in [2u64, 3] {
            let e = ev(p, 1);
            for d in 0..=4 {
                for k in 1..=9 {
                    let b = power_sum_val_bound(p, d, k);
                    let s = e.brute_power_sum(d, k, b + 5);
                    assert!(s.val_bound() >= b, "p={p} d={d} k={k}");
                    if k as u64 <= p {
                        assert_eq!(s.valuation(), Some(b));
                    }
                }
            }
        }
    }

    #[test]
    fn exact_and_series_agree() {
        let e = ev(3, 2);
        for k in 1..=4 {
            let exact = e.power_sum_exact(2, k);
            let ser = InfSeries::from_ratfun(&exact, 60).unwrap();
            assert!(ser.agrees_to(&e.power_sum(2, k, 60), 60).unwrap());
        }
    }

    #[test]
    fn recursion_matches_brute_chains() {
        let e = ev(3, 2);
        let arr = PositiveArray::new(vec![2, 1, 3], vec![1, 0, 1], 2).unwrap();
        for d in 0..=3 {
            let a = e.s_d(&arr, d, 40);
            let b = e.s_d_brute(&arr, d, 40).unwrap();
            assert!(a.agrees_to(&b, 40).unwrap(), "d={d}");
        }
    }
}
