//! Product expansions of `S_d`, `S_{<d}` (and their `Si` analogues) as
//! `F_p`-linear combinations of single sums, via the quasi-shuffle recursion.
//!
//! Heads multiply by Chen's formula in the MZV flavor and collapse to a
//! single term in the CMPL flavor; everything below the head is folded into
//! `S_{<d}` products.

use std::collections::{BTreeMap, HashMap};
use std::sync::RwLock;

use crate::array::PositiveArray;
use crate::values::Flavor;

/// `F_p`-combination of arrays; coefficients are kept in `1..p`.
pub type ProdSum = BTreeMap<PositiveArray, u32>;

fn binom_mod(n: u64, k: u64, p: u64) -> u64 {
    // Lucas
    let (mut n, mut k) = (n, k);
    let mut acc = 1u64;
    while k > 0 || n > 0 {
        let (a, b) = (n % p, k % p);
        if b > a {
            return 0;
        }
        let mut c = 1u64;
        for i in 0..b {
            c = c * ((a - i) % p) % p;
            c = c * inv_mod(i + 1, p) % p;
        }
        acc = acc * c % p;
        n /= p;
        k /= p;
    }
    acc
}

fn inv_mod(a: u64, p: u64) -> u64 {
    let mut r = 1u64;
    let mut b = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

/// Nonzero `Δ^i_{s,t}` mod `p`, for `0 < i < s + t` with `(q-1) | i`.
pub fn chen_delta(q: u64, p: u64, s: u32, t: u32) -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    let step = (q - 1) as u32;
    let mut i = step;
    while i < s + t {
        let sign = |k: u32| if (k - 1).is_multiple_of(2) { 1 } else { p - 1 };
        let a = sign(s) * binom_mod((i - 1) as u64, (s - 1) as u64, p) % p;
        let b = sign(t) * binom_mod((i - 1) as u64, (t - 1) as u64, p) % p;
        let v = (a + b) % p;
        if v != 0 {
            out.push((i, v as u32));
        }
        i += step;
    }
    out
}

fn add_into(acc: &mut ProdSum, arr: PositiveArray, c: u32, p: u32) {
    let c = c % p;
    if c == 0 {
        return;
    }
    let e = acc.entry(arr).or_insert(0);
    *e = (*e + c) % p;
}

fn clean(mut s: ProdSum) -> ProdSum {
    s.retain(|_, c| *c != 0);
    s
}

/// Memoizing product engine for one `(q, γ_N)` and one flavor.
pub struct Harmonic {
    q: u64,
    p: u64,
    gamma: u32,
    flavor: Flavor,
    memo: RwLock<HashMap<(PositiveArray, PositiveArray), ProdSum>>,
}

impl Harmonic {
    pub fn new(q: u64, p: u64, gamma: u32, flavor: Flavor) -> Self {
        Harmonic { q, p, gamma, flavor, memo: RwLock::new(HashMap::new()) }
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn gamma(&self) -> u32 {
        self.gamma
    }

    fn mul_char(&self, a: u32, b: u32) -> u32 {
        (a + b) % self.gamma
    }

    /// `S_d(ε;s) S_d(ε';t)` as depth-one and depth-two heads.
    fn head_product(&self, s: (u32, u32), t: (u32, u32)) -> Vec<(u32, u32, Option<u32>, u32)> {
        let eta = self.mul_char(s.1, t.1);
        let mut out = vec![(s.0 + t.0, eta, None, 1)];
        if self.flavor == Flavor::Mzv {
            for (i, c) in chen_delta(self.q, self.p, s.0, t.0) {
                out.push((s.0 + t.0 - i, eta, Some(i), c));
            }
        }
        out
    }

    /// `S_d(A) S_d(B)` as a combination of `S_d`.
    pub fn sd_sd(&self, a: &PositiveArray, b: &PositiveArray) -> ProdSum {
        let p = self.p as u32;
        let mut acc = ProdSum::new();
        if a.is_empty() || b.is_empty() {
            return acc;
        }
        let below = self.slt_slt(&a.tail(), &b.tail());
        for (u, eta, extra, c) in self.head_product(a.head().unwrap(), b.head().unwrap()) {
            let rest = match extra {
                None => below.clone(),
                Some(i) => self.slt_slt_sum(&PositiveArray::single(i, 0, self.gamma), &below),
            };
            for (arr, k) in rest {
                add_into(&mut acc, arr.prepend(u, eta), c * k, p);
            }
        }
        clean(acc)
    }

    /// `S_d(A) S_{<d}(B)` as a combination of `S_d`.
    pub fn sd_slt(&self, a: &PositiveArray, b: &PositiveArray) -> ProdSum {
        let p = self.p as u32;
        let mut acc = ProdSum::new();
        if a.is_empty() {
            return acc;
        }
        let (s, e) = a.head().unwrap();
        for (arr, k) in self.slt_slt(&a.tail(), b) {
            add_into(&mut acc, arr.prepend(s, e), k, p);
        }
        clean(acc)
    }

    /// `S_{<d}(A) S_{<d}(B)` as a combination of `S_{<d}`.
    pub fn slt_slt(&self, a: &PositiveArray, b: &PositiveArray) -> ProdSum {
        if a.is_empty() {
            return ProdSum::from([(b.clone(), 1)]);
        }
        if b.is_empty() {
            return ProdSum::from([(a.clone(), 1)]);
        }
        let key = if a <= b { (a.clone(), b.clone()) } else { (b.clone(), a.clone()) };
        if let Some(v) = self.memo.read().unwrap().get(&key) {
            return v.clone();
        }
        let p = self.p as u32;
        let mut acc = ProdSum::new();
        for part in [self.sd_slt(a, b), self.sd_slt(b, a), self.sd_sd(a, b)] {
            for (arr, k) in part {
                add_into(&mut acc, arr, k, p);
            }
        }
        let acc = clean(acc);
        self.memo.write().unwrap().insert(key, acc.clone());
        acc
    }

    fn slt_slt_sum(&self, a: &PositiveArray, sum: &ProdSum) -> ProdSum {
        let p = self.p as u32;
        let mut acc = ProdSum::new();
        for (b, c) in sum {
            for (arr, k) in self.slt_slt(a, b) {
                add_into(&mut acc, arr, c * k, p);
            }
        }
        clean(acc)
    }

    /// `ζ(A) ζ(B)` (or `Li(A) Li(B)`) as a combination of totals.
    pub fn zeta_product(&self, a: &PositiveArray, b: &PositiveArray) -> ProdSum {
        if a.is_empty() {
            return ProdSum::from([(b.clone(), 1)]);
        }
        if b.is_empty() {
            return ProdSum::from([(a.clone(), 1)]);
        }
        let p = self.p as u32;
        let mut acc = ProdSum::new();
        for part in [self.sd_sd(a, b), self.sd_slt(a, b), self.sd_slt(b, a)] {
            for (arr, k) in part {
                add_into(&mut acc, arr, k, p);
            }
        }
        clean(acc)
    }
}

/// Checks that every output array is `<= A + B` and has depth at most
/// `depth(A) + depth(B)`.
pub fn bounds_hold(a: &PositiveArray, b: &PositiveArray, sum: &ProdSum) -> bool {
    let top = a.plus(b);
    sum.keys().all(|u| u.leq(&top) && u.depth() <= a.depth() + b.depth())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Ctx;
    use crate::series::InfSeries;
    use crate::values::{Evaluator, Level};

    #[test]
    fn chen_examples() {
        assert!(chen_delta(3, 3, 1, 2).is_empty());
        assert_eq!(chen_delta(3, 3, 2, 2), vec![(2, 1)]);
        assert!(chen_delta(2, 2, 1, 1).is_empty());
    }

    #[test]
    fn lucas() {
        assert_eq!(binom_mod(4, 2, 3), 0);
        assert_eq!(binom_mod(5, 2, 3), 1);
        assert_eq!(binom_mod(10, 3, 2), 0);
        assert_eq!(binom_mod(7, 3, 5), 0);
        assert_eq!(binom_mod(6, 3, 7), 20 % 7);
    }

    #[test]
    fn depth_one_square_q3() {
        let h = Harmonic::new(3, 3, 2, Flavor::Mzv);
        let a = PositiveArray::single(2, 1, 2);
        let b = PositiveArray::single(2, 1, 2);
        let got = h.sd_sd(&a, &b);
        let want = ProdSum::from([
            (PositiveArray::single(4, 0, 2), 1),
            (PositiveArray::new(vec![2, 2], vec![0, 0], 2).unwrap(), 1),
        ]);
        assert_eq!(got, want);
        let hc = Harmonic::new(3, 3, 2, Flavor::Cmpl);
        assert_eq!(hc.sd_sd(&a, &b), ProdSum::from([(PositiveArray::single(4, 0, 2), 1)]));
    }

    fn eval_sum(ev: &Evaluator, flavor: Flavor, level: Level, s: &ProdSum, d: i64, prec: i64) -> InfSeries {
        let f = ev.field();
        let mut acc = InfSeries::zero(f, 1, prec);
        for (arr, c) in s {
            acc = acc.add(&ev.eval(flavor, level, arr, d, prec).scale(f.from_int(*c as i64)));
        }
        acc
    }

    #[test]
    fn products_match_numerically_q2() {
        let ev = Evaluator::new(Ctx::new(2, 1, 1).unwrap());
        let a = PositiveArray::trivial(vec![1], 1);
        let b = PositiveArray::trivial(vec![2, 1], 1);
        for flavor in [Flavor::Mzv, Flavor::Cmpl] {
            let h = Harmonic::new(2, 2, 1, flavor);
            for d in 0..=6 {
                let prec = 60;
                let lhs = ev.eval(flavor, Level::At, &a, d, prec).mul(&ev.eval(flavor, Level::At, &b, d, prec));
                let rhs = eval_sum(&ev, flavor, Level::At, &h.sd_sd(&a, &b), d, prec);
                assert!(lhs.agrees_to(&rhs, prec).unwrap(), "{flavor:?} sd_sd d={d}");
                let lhs = ev.eval(flavor, Level::Below, &a, d, prec).mul(&ev.eval(flavor, Level::Below, &b, d, prec));
                let rhs = eval_sum(&ev, flavor, Level::Below, &h.slt_slt(&a, &b), d, prec);
                assert!(lhs.agrees_to(&rhs, prec).unwrap(), "{flavor:?} slt_slt d={d}");
            }
        }
    }
}
