//! Binary relations, the operators `B*`, `C`, `BC`, the decomposition of a
//! single array, and the effective reduction of any `Li` (or `ζ_A`) to the
//! generating set `CT_{N,w}`.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::sync::{Arc, RwLock};

use serde::Serialize;

use crate::array::PositiveArray;
use crate::error::{Error, Result};
use crate::field::{Ctx, Elem};
use crate::harmonic::{Harmonic, ProdSum};
use crate::poly::ThetaPoly;
use crate::series::InfSeries;
use crate::values::{Evaluator, Flavor, Level};

/// `A_N`-linear combination of arrays.
pub type Comb = BTreeMap<PositiveArray, ThetaPoly>;

fn comb_add(acc: &mut Comb, arr: PositiveArray, c: &ThetaPoly) {
    if c.is_zero() {
        return;
    }
    match acc.get_mut(&arr) {
        Some(v) => {
            *v = v.add(c);
            if v.is_zero() {
                acc.remove(&arr);
            }
        }
        None => {
            acc.insert(arr, c.clone());
        }
    }
}

fn comb_add_scaled(acc: &mut Comb, other: &Comb, c: &ThetaPoly) {
    for (arr, v) in other {
        comb_add(acc, arr.clone(), &v.mul(c));
    }
}

/// `Σ a_i X_d(ε_i; s_i) + Σ b_i X_{d+1}(ε'_i; t_i) = 0` for every `d`, where
/// `X` is `Si` (CMPL flavor) or `S` (MZV flavor).
#[derive(Clone, Debug)]
pub struct BinaryRelation {
    pub flavor: Flavor,
    pub d: Comb,
    pub d1: Comb,
}

impl BinaryRelation {
    pub fn weight(&self) -> Option<u32> {
        self.d.keys().chain(self.d1.keys()).map(|a| a.weight()).next()
    }

    pub fn is_homogeneous(&self) -> bool {
        let w = self.weight();
        self.d.keys().chain(self.d1.keys()).all(|a| Some(a.weight()) == w)
    }

    /// Residual `Σ a_i X_d + Σ b_i X_{d+1}` at one `d`, to absolute `prec`.
    pub fn residual(&self, ev: &Evaluator, d: i64, prec: i64) -> InfSeries {
        let f = ev.field();
        let mut acc = InfSeries::zero(f, 1, prec);
        for (part, shift) in [(&self.d, 0), (&self.d1, 1)] {
            for (arr, c) in part {
                let extra = c.degree().unwrap_or(0) as i64;
                let v = ev.eval(self.flavor, Level::At, arr, d + shift, prec + extra);
                acc = acc.add(&v.mul(&InfSeries::from_theta_poly(c)).truncate(prec));
            }
        }
        acc
    }

    /// The relation summed over `d >= 0`: `Σ a_i X(s_i) + Σ b_i X(t_i) = 0`
    /// with `X = Li` or `ζ_A`. Needs every `d+1` term of depth `>= 2`.
    pub fn total(&self) -> Result<Comb> {
        let mut acc = self.d.clone();
        for (arr, c) in &self.d1 {
            if arr.depth() < 2 {
                return Err(Error::Precondition(format!("depth-one term {arr} in the d+1 part")));
            }
            comb_add(&mut acc, arr.clone(), c);
        }
        Ok(acc)
    }
}

/// Operators on binary relations for a fixed `(q, N)` and flavor.
pub struct Operators {
    ctx: Ctx,
    harm: Harmonic,
}

impl Operators {
    pub fn new(ctx: Ctx, flavor: Flavor) -> Self {
        let harm = Harmonic::new(ctx.q(), ctx.p(), ctx.gamma() as u32, flavor);
        Operators { ctx, harm }
    }

    pub fn ctx(&self) -> &Ctx {
        &self.ctx
    }

    pub fn harmonic(&self) -> &Harmonic {
        &self.harm
    }

    pub fn flavor(&self) -> Flavor {
        self.harm.flavor()
    }

    fn gamma(&self) -> u32 {
        self.ctx.gamma() as u32
    }

    fn q(&self) -> u32 {
        self.ctx.q() as u32
    }

    fn lift(&self, s: &ProdSum, c: &ThetaPoly, acc: &mut Comb) {
        let f = &self.ctx.field;
        for (arr, k) in s {
            comb_add(acc, arr.clone(), &c.scale(f.from_int(*k as i64)));
        }
    }

    /// `R_ε: X_d(ε; q) + ε^(-1) D_1 X_{d+1}(ε, 1; 1, q-1) = 0`.
    pub fn fundamental(&self, eps: u32) -> BinaryRelation {
        let f = &self.ctx.field;
        let g = self.gamma();
        let q = self.q();
        let inv = self.ctx.root((g - eps % g) % g);
        let mut d = Comb::new();
        d.insert(PositiveArray::single(q, eps, g), ThetaPoly::one(f));
        let mut d1 = Comb::new();
        let head = PositiveArray::new(vec![1, q - 1], vec![eps, 0], g).expect("valid");
        d1.insert(head, ThetaPoly::d1(f).scale(inv));
        BinaryRelation { flavor: self.flavor(), d, d1 }
    }

    /// `B*_{σ,v}(R) = X_d(σ; v) Σ_{j<d} R(j)`.
    pub fn bstar(&self, sigma: u32, v: u32, r: &BinaryRelation) -> BinaryRelation {
        let head = PositiveArray::single(v, sigma, self.gamma());
        let mut d = Comb::new();
        for (arr, a) in &r.d {
            self.lift(&self.harm.sd_slt(&head, arr), a, &mut d);
        }
        for (arr, b) in &r.d1 {
            self.lift(&self.harm.sd_slt(&head, arr), b, &mut d);
            self.lift(&self.harm.sd_sd(&head, arr), b, &mut d);
        }
        BinaryRelation { flavor: self.flavor(), d, d1: Comb::new() }
    }

    /// `B*_{Σ,V} = B*_{σ_1,v_1} ∘ ... ∘ B*_{σ_n,v_n}`.
    pub fn bstar_array(&self, sv: &PositiveArray, r: &BinaryRelation) -> BinaryRelation {
        let mut out = r.clone();
        for i in (0..sv.depth()).rev() {
            out = self.bstar(sv.e[i], sv.s[i], &out);
        }
        out
    }

    /// `C_{Σ,V}(R) = R(d) X_{<d+1}(Σ; V)`.
    pub fn c_op(&self, sv: &PositiveArray, r: &BinaryRelation) -> BinaryRelation {
        if sv.is_empty() {
            return r.clone();
        }
        let mut d = Comb::new();
        let mut d1 = Comb::new();
        for (arr, a) in &r.d {
            self.lift(&self.harm.sd_sd(arr, sv), a, &mut d);
            self.lift(&self.harm.sd_slt(arr, sv), a, &mut d);
        }
        for (arr, b) in &r.d1 {
            self.lift(&self.harm.sd_slt(arr, sv), b, &mut d1);
        }
        BinaryRelation { flavor: self.flavor(), d, d1 }
    }

    /// `BC_{ε,q}(R) = B*_{ε,q}(R) - Σ b_i C_{t_i}(R_ε)`.
    pub fn bc(&self, eps: u32, r: &BinaryRelation) -> BinaryRelation {
        let mut out = self.bstar(eps, self.q(), r);
        let fund = self.fundamental(eps);
        for (t, b) in &r.d1 {
            let c = self.c_op(t, &fund);
            let nb = b.neg();
            comb_add_scaled(&mut out.d, &c.d, &nb);
            comb_add_scaled(&mut out.d1, &c.d1, &nb);
        }
        out
    }
}

/// How a term of a decomposition relates to the decomposed array.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum TermType {
    /// `(..., ε, ε^(-1) ε_k, ...; ..., q, s_k - q, ...)`.
    One,
    /// Prefix sums from position `k` on strictly smaller.
    Two,
    /// `Init` strictly larger.
    Three,
}

/// `X(arr) = Σ c_i X(u_i)` produced by one decomposition step.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub array: PositiveArray,
    /// 1-based position of the first entry outside `Init`, or of the last
    /// entry when `Init` is everything and ends in `q`.
    pub k: usize,
    pub eps: u32,
    pub relation: BinaryRelation,
    pub terms: Vec<(PositiveArray, ThetaPoly, TermType)>,
}

/// Lexicographic comparison of `Init` tuples.
pub fn init_cmp(a: &[u32], b: &[u32]) -> std::cmp::Ordering {
    a.cmp(b)
}

/// One logged reduction step.
#[derive(Clone, Debug, Serialize)]
pub struct Step {
    pub array: String,
    pub k: usize,
    pub eps: u32,
    pub terms: usize,
    pub measure_before: Vec<i64>,
    pub measure_after_max: Vec<i64>,
}

/// Step measure, see [`Reducer::measure`]; compared lexicographically.
pub type Measure = Vec<i64>;

/// Memoizing reducer to `CT_{N,w}`.
pub struct Reducer {
    ops: Operators,
    memo: RwLock<HashMap<PositiveArray, Arc<Comb>>>,
    steps: RwLock<Vec<Step>>,
}

impl Reducer {
    pub fn new(ctx: Ctx, flavor: Flavor) -> Self {
        Reducer { ops: Operators::new(ctx, flavor), memo: RwLock::new(HashMap::new()), steps: RwLock::new(Vec::new()) }
    }

    pub fn ops(&self) -> &Operators {
        &self.ops
    }

    pub fn ctx(&self) -> &Ctx {
        self.ops.ctx()
    }

    pub fn flavor(&self) -> Flavor {
        self.ops.flavor()
    }

    fn q(&self) -> u32 {
        self.ctx().q() as u32
    }

    pub fn steps(&self) -> Vec<Step> {
        self.steps.read().unwrap().clone()
    }

    /// The binary relation whose sum over `d` decomposes `arr`.
    pub fn decomposition_relation(&self, arr: &PositiveArray, eps: u32) -> Result<(usize, BinaryRelation)> {
        let q = self.q();
        if arr.in_ct(q) {
            return Err(Error::Precondition(format!("{arr} is already in CT")));
        }
        let n = arr.depth();
        let init = arr.init_len(q);
        let k = if init < n { init + 1 } else { n };
        let j = (0..k).rev().find(|&i| i == 0 || arr.s[i - 1] < q).unwrap();
        let sigma_prime = arr.prefix(j);
        let g = arr.gamma;
        let ops = &self.ops;
        let mut rel = if init < n {
            let ek = arr.e[k - 1];
            let mut tail = arr.suffix(k);
            tail = tail.prepend(arr.s[k - 1] - q, (ek + g - eps % g) % g);
            ops.c_op(&tail, &ops.fundamental(eps))
        } else {
            ops.fundamental(arr.e[k - 1])
        };
        for i in (j + 1..k).rev() {
            rel = ops.bc(arr.e[i - 1], &rel);
        }
        rel = ops.bstar_array(&sigma_prime, &rel);
        Ok((k, rel))
    }

    /// Decomposition of `arr` (not in `CT`), with `ε` defaulting to `ε_k`.
    pub fn decompose(&self, arr: &PositiveArray, eps: Option<u32>) -> Result<Decomposition> {
        let q = self.q();
        let n = arr.depth();
        let init = arr.init_len(q);
        let k0 = if init < n { init + 1 } else { n };
        let eps = eps.unwrap_or(arr.e[k0 - 1]);
        let (k, relation) = self.decomposition_relation(arr, eps)?;
        let total = relation.total()?;
        let lead = total
            .get(arr)
            .and_then(|c| c.as_constant())
            .ok_or_else(|| Error::Falsified(format!("decomposition of {arr} lacks a unit coefficient on itself")))?;
        let f = &self.ctx().field;
        let scale = f.neg(f.inv(lead)?);
        let type1 = if init < n {
            let g = arr.gamma;
            let mut t = arr.prefix(k - 1).concat(&PositiveArray::single(q, eps, g));
            t = t.concat(&PositiveArray::single(arr.s[k - 1] - q, (arr.e[k - 1] + g - eps % g) % g, g));
            Some(t.concat(&arr.suffix(k)))
        } else {
            None
        };
        let init_s = arr.init(q).to_vec();
        let mut terms = Vec::new();
        for (u, c) in total {
            if &u == arr {
                continue;
            }
            let ty = if Some(&u) == type1.as_ref() {
                TermType::One
            } else if init_cmp(&init_s, u.init(q)) == std::cmp::Ordering::Less {
                TermType::Three
            } else {
                TermType::Two
            };
            terms.push((u, c.scale(scale), ty));
        }
        Ok(Decomposition { array: arr.clone(), k, eps, relation, terms })
    }

    /// Structural checks promised for a decomposition: coefficient shapes,
    /// depth and `T_k` bounds, the type-1 partial-sum drop and the type-2 /
    /// type-3 certificates.
    pub fn check_decomposition(&self, dec: &Decomposition) -> Result<()> {
        let f = &self.ctx().field;
        let d1 = ThetaPoly::d1(f);
        // Chen's correction terms carry bare F_p coefficients
        let cmpl = self.flavor() == Flavor::Cmpl;
        let arr = &dec.array;
        let k = dec.k;
        let n = arr.depth();
        let fail = |m: String| Err(Error::Falsified(format!("decomposition of {arr}: {m}")));
        let sums_from = |u: &PositiveArray, strict: bool| {
            let last = if arr.init_len(self.q()) == n { k } else { n };
            (k..=last).all(|l| {
                if strict {
                    u.prefix_sum(l) < arr.prefix_sum(l)
                } else {
                    u.prefix_sum(l) <= arr.prefix_sum(l)
                }
            })
        };
        for (u, c, ty) in &dec.terms {
            if u.depth() < n || !u.tk_leq(arr, k) {
                return fail(format!("term {u} breaks the depth / T_k bound"));
            }
            match ty {
                TermType::One => {
                    if c.as_constant() != Some(f.neg(Elem::ONE)) {
                        return fail(format!("type-1 coefficient {c} is not -1"));
                    }
                    if !sums_from(u, true) {
                        return fail(format!("type-1 term {u} keeps a partial sum"));
                    }
                }
                TermType::Two => {
                    if cmpl && !c.rem(&d1)?.is_zero() {
                        return fail(format!("coefficient of {u} not divisible by D_1"));
                    }
                    if !sums_from(u, true) {
                        return fail(format!("type-2 term {u} keeps a partial sum"));
                    }
                }
                TermType::Three => {
                    if cmpl && !c.rem(&d1)?.is_zero() {
                        return fail(format!("coefficient of {u} not divisible by D_1"));
                    }
                }
            }
        }
        Ok(())
    }

    /// Step measure of `u` relative to a decomposition at position `k`:
    /// the prefix sums `P_w, ..., P_k` of `u` (compared from the top), then
    /// `Init(u)` negated and padded with `0` so that a lexicographically
    /// larger `Init` gives a smaller key. Every term of a decomposition of
    /// `s` at `k` is strictly below `s` in this key.
    pub fn measure(&self, u: &PositiveArray, k: usize, w: u32) -> Measure {
        let mut key: Measure = (k..=w as usize).rev().map(|l| u.prefix_sum(l) as i64).collect();
        let init = u.init(self.q());
        for i in 0..w as usize {
            key.push(init.get(i).map(|&x| -(x as i64)).unwrap_or(0));
        }
        key
    }

    /// `X(arr)` as an `A_N`-combination of `X`'s over `CT_{N,w}`.
    pub fn reduce_to_ct(&self, arr: &PositiveArray) -> Result<Arc<Comb>> {
        let mut stack = HashSet::new();
        self.reduce_inner(arr, &mut stack)
    }

    fn reduce_inner(&self, arr: &PositiveArray, stack: &mut HashSet<PositiveArray>) -> Result<Arc<Comb>> {
        if let Some(v) = self.memo.read().unwrap().get(arr) {
            return Ok(v.clone());
        }
        let f = self.ctx().field.clone();
        if arr.in_ct(self.q()) {
            let out = Arc::new(Comb::from([(arr.clone(), ThetaPoly::one(&f))]));
            self.memo.write().unwrap().insert(arr.clone(), out.clone());
            return Ok(out);
        }
        if !stack.insert(arr.clone()) {
            return Err(Error::NonTermination(stack.len()));
        }
        let dec = self.decompose(arr, None)?;
        let w = arr.weight();
        let before = self.measure(arr, dec.k, w);
        let after = dec.terms.iter().map(|(u, _, _)| self.measure(u, dec.k, w)).max().unwrap_or_default();
        if !dec.terms.is_empty() && after >= before {
            return Err(Error::Falsified(format!("step measure does not decrease when decomposing {arr}")));
        }
        self.steps.write().unwrap().push(Step {
            array: arr.to_string(),
            k: dec.k,
            eps: dec.eps,
            terms: dec.terms.len(),
            measure_before: before,
            measure_after_max: after,
        });
        let mut acc = Comb::new();
        for (u, c, _) in &dec.terms {
            let sub = self.reduce_inner(u, stack)?;
            comb_add_scaled(&mut acc, &sub, c);
        }
        stack.remove(arr);
        let out = Arc::new(acc);
        self.memo.write().unwrap().insert(arr.clone(), out.clone());
        Ok(out)
    }
}

/// Evaluates `Σ c_i X(u_i)` to absolute precision `prec`.
pub fn eval_comb(ev: &Evaluator, flavor: Flavor, comb: &Comb, prec: i64) -> InfSeries {
    let f = ev.field();
    let mut acc = InfSeries::zero(f, 1, prec);
    for (arr, c) in comb {
        let extra = c.degree().unwrap_or(0) as i64;
        let v = ev.total(flavor, arr, prec + extra);
        acc = acc.add(&v.mul(&InfSeries::from_theta_poly(c)).truncate(prec));
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_relation(ev: &Evaluator, r: &BinaryRelation, prec: i64) {
        assert!(r.is_homogeneous());
        for d in 0..=8 {
            assert!(r.residual(ev, d, prec).is_zero(), "d={d}");
        }
    }

    #[test]
    fn fundamental_relations_vanish() {
        for (p, n) in [(2u64, 1u64), (3, 1), (3, 2), (3, 4), (2, 3)] {
            let ctx = Ctx::new(p, 1, n).unwrap();
            let ev = Evaluator::new(ctx.clone());
            for flavor in [Flavor::Cmpl, Flavor::Mzv] {
                let ops = Operators::new(ctx.clone(), flavor);
                for eps in 0..ctx.gamma() as u32 {
                    let r = ops.fundamental(eps);
                    for d in 0..=4 {
                        let prec = r.d.keys().next().unwrap().s[0] as i64 * crate::values::ell_degree(p, d as u32) + 40;
                        assert!(r.residual(&ev, d, prec).is_zero(), "p={p} N={n} eps={eps} d={d}");
                    }
                }
            }
        }
    }

    #[test]
    fn operators_preserve_validity() {
        let ctx = Ctx::new(2, 1, 1).unwrap();
        let ev = Evaluator::new(ctx.clone());
        let ops = Operators::new(ctx, Flavor::Cmpl);
        let r1 = ops.fundamental(0);
        let b = ops.bstar(0, 1, &r1);
        assert_eq!(b.weight(), Some(3));
        check_relation(&ev, &b, 80);
        let bc = ops.bc(0, &r1);
        assert_eq!(bc.weight(), Some(4));
        assert!(bc.d1.keys().all(|a| a.s[0] == 1));
        assert!(bc.d.keys().all(|a| a.s[0] == 2));
        check_relation(&ev, &bc, 100);
    }

    #[test]
    fn decompose_one_three_q2() {
        let ctx = Ctx::new(2, 1, 1).unwrap();
        let ev = Evaluator::new(ctx.clone());
        let red = Reducer::new(ctx, Flavor::Cmpl);
        let arr = PositiveArray::trivial(vec![3], 1);
        let dec = red.decompose(&arr, None).unwrap();
        red.check_decomposition(&dec).unwrap();
        let mut comb = Comb::new();
        for (u, c, _) in &dec.terms {
            comb.insert(u.clone(), c.clone());
        }
        let lhs = ev.li(&arr, 120);
        assert!(lhs.agrees_to(&eval_comb(&ev, Flavor::Cmpl, &comb, 100), 100).unwrap());
        let out = red.reduce_to_ct(&arr).unwrap();
        assert!(out.keys().all(|a| a.in_ct(2)));
        assert!(lhs.agrees_to(&eval_comb(&ev, Flavor::Cmpl, &out, 120), 120).unwrap());
    }
}
