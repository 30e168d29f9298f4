//! The transition matrix between `CT_{N,w}` and `CS_{N,w}`, and the
//! expression of any value of weight `w` in the `CS` basis.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::OnceLock;

use crate::array::{enumerate_ct, iota_blocks, iota_inv, PositiveArray};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::{RatFun, ThetaPoly};
use crate::reduce::{Comb, Reducer, TermType};
use crate::values::Flavor;

/// `K_N`-combination of arrays.
pub type RatComb = BTreeMap<PositiveArray, RatFun>;

/// The `CS` array matched with `c ∈ CT_{N,w}` by `ι`: exponents
/// `ι^(-1)(t)`, each character the product of the characters of its block.
pub fn cs_partner(c: &PositiveArray, q: u32) -> Result<PositiveArray> {
    let s = iota_inv(&c.s, q)?;
    let mut e = Vec::with_capacity(s.len());
    let mut pos = 0;
    for len in iota_blocks(&s, q) {
        e.push(c.e[pos..pos + len].iter().sum::<u32>() % c.gamma);
        pos += len;
    }
    PositiveArray::new(s, e, c.gamma)
}

/// Rows `Li(cs_partner(c)) = Σ_{c'} a_{c,c'} Li(c')` for every `c ∈ CT_{N,w}`.
pub struct TransitionMatrix {
    pub weight: u32,
    pub ct: Vec<PositiveArray>,
    pub partners: Vec<PositiveArray>,
    pub rows: Vec<Comb>,
    blocks: OnceLock<Vec<Block>>,
}

/// Inverse of the transposed non-unit block of one character.
struct Block {
    idx: Vec<usize>,
    inv: Vec<Vec<RatFun>>,
}

impl TransitionMatrix {
    /// Builds the matrix with a CMPL-flavor reducer.
    pub fn build(red: &Reducer, w: u32) -> Result<Self> {
        if red.flavor() != Flavor::Cmpl {
            return Err(Error::Precondition("the transition matrix is built from CMPL relations".into()));
        }
        let q = red.ctx().q() as u32;
        let gamma = red.ctx().gamma() as u32;
        let ct = enumerate_ct(w, q, gamma);
        let mut partners = Vec::with_capacity(ct.len());
        let mut rows = Vec::with_capacity(ct.len());
        for c in &ct {
            let partner = cs_partner(c, q)?;
            rows.push(row_for(red, c, &partner)?);
            partners.push(partner);
        }
        Ok(TransitionMatrix { weight: w, ct, partners, rows, blocks: OnceLock::new() })
    }

    /// Checks `a_{c,c} ≡ ±1` and `a_{c,c'} ≡ 0` modulo `D_1`.
    pub fn check_mod_d1(&self) -> Result<()> {
        let Some(first) = self.rows.iter().flat_map(|r| r.values()).next() else {
            return Ok(());
        };
        let f = first.field().clone();
        let d1 = ThetaPoly::d1(&f);
        let one = ThetaPoly::one(&f);
        for (c, row) in self.ct.iter().zip(&self.rows) {
            for (col, a) in row {
                let r = a.rem(&d1)?;
                let ok = if col == c { r == one || r == one.neg() } else { r.is_zero() };
                if !ok {
                    return Err(Error::Falsified(format!("entry ({c}, {col}) = {a} is not a signed identity mod D_1")));
                }
            }
            if !row.contains_key(c) {
                return Err(Error::Falsified(format!("row {c} misses its diagonal entry")));
            }
        }
        Ok(())
    }

    /// Distinct `CS` arrays used as generators.
    pub fn cs_set(&self) -> BTreeSet<PositiveArray> {
        self.partners.iter().cloned().collect()
    }

    fn blocks(&self, f: &Field, unit: &[bool]) -> Result<&[Block]> {
        if let Some(b) = self.blocks.get() {
            return Ok(b);
        }
        let index: BTreeMap<&PositiveArray, usize> = self.ct.iter().enumerate().map(|(i, c)| (c, i)).collect();
        // Non-unit rows, grouped by character (entries preserve χ).
        let mut groups: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
        for (i, &u) in unit.iter().enumerate() {
            if !u {
                groups.entry(self.ct[i].chi()).or_default().push(i);
            }
        }
        let mut out = Vec::new();
        for idx in groups.into_values() {
            // y_U Y = r_U, i.e. Y^T y^T = r_U^T
            let m = idx.len();
            let pos: BTreeMap<usize, usize> = idx.iter().enumerate().map(|(a, &b)| (b, a)).collect();
            let mut mat: Vec<Vec<RatFun>> = vec![vec![RatFun::zero(f); m]; m];
            for (a, &i) in idx.iter().enumerate() {
                for (col, v) in &self.rows[i] {
                    if let Some(&b) = pos.get(&index[col]) {
                        mat[b][a] = RatFun::from_poly(v.clone());
                    }
                }
            }
            out.push(Block { idx, inv: invert(mat, f)? });
        }
        Ok(self.blocks.get_or_init(|| out))
    }

    /// Solves `r = Σ_c y_c row_c` and returns `y` summed per `CS` partner.
    pub fn express(&self, r: &Comb) -> Result<RatComb> {
        let index: BTreeMap<&PositiveArray, usize> = self.ct.iter().enumerate().map(|(i, c)| (c, i)).collect();
        for arr in r.keys() {
            if !index.contains_key(arr) {
                return Err(Error::Precondition(format!("{arr} is not in CT of weight {}", self.weight)));
            }
        }
        let Some(f) = r.values().next().map(|c| c.field().clone()) else {
            return Ok(RatComb::new());
        };
        let n = self.ct.len();
        let unit: Vec<bool> = (0..n).map(|i| self.rows[i].len() == 1 && self.rows[i].contains_key(&self.ct[i])).collect();
        let mut y: Vec<RatFun> = vec![RatFun::zero(&f); n];
        let rhs = |i: usize| r.get(&self.ct[i]).map(|c| RatFun::from_poly(c.clone())).unwrap_or_else(|| RatFun::zero(&f));
        for block in self.blocks(&f, &unit)? {
            let b: Vec<RatFun> = block.idx.iter().map(|&i| rhs(i)).collect();
            for (row, &i) in block.inv.iter().zip(&block.idx) {
                let mut acc = RatFun::zero(&f);
                for (m, v) in row.iter().zip(&b) {
                    if !m.is_zero() && !v.is_zero() {
                        acc = acc.add(&m.mul(v));
                    }
                }
                y[i] = acc;
            }
        }
        // Unit rows: y_c = r_c - Σ_{non-unit c'} y_{c'} a_{c',c}
        for i in 0..n {
            if unit[i] {
                y[i] = rhs(i);
            }
        }
        for i in 0..n {
            if unit[i] || y[i].is_zero() {
                continue;
            }
            for (col, v) in &self.rows[i] {
                let j = index[col];
                if unit[j] {
                    y[j] = y[j].sub(&y[i].mul(&RatFun::from_poly(v.clone())));
                }
            }
        }
        let mut out = RatComb::new();
        for (i, yi) in y.into_iter().enumerate() {
            if yi.is_zero() {
                continue;
            }
            let e = out.entry(self.partners[i].clone()).or_insert_with(|| RatFun::zero(&f));
            *e = e.add(&yi);
        }
        out.retain(|_, v| !v.is_zero());
        Ok(out)
    }
}

/// Gauss-Jordan inverse with diagonal pivots (falling back to row swaps).
fn invert(mut a: Vec<Vec<RatFun>>, f: &Field) -> Result<Vec<Vec<RatFun>>> {
    let m = a.len();
    let mut b: Vec<Vec<RatFun>> = (0..m)
        .map(|i| (0..m).map(|j| if i == j { RatFun::one(f) } else { RatFun::zero(f) }).collect())
        .collect();
    for col in 0..m {
        let piv = (col..m).find(|&r| !a[r][col].is_zero()).ok_or_else(|| Error::Singular(format!("column {col}")))?;
        if piv != col {
            a.swap(piv, col);
            b.swap(piv, col);
        }
        let inv = a[col][col].inv()?;
        for k in col..m {
            a[col][k] = a[col][k].mul(&inv);
        }
        for k in 0..m {
            b[col][k] = b[col][k].mul(&inv);
        }
        for r in 0..m {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let factor = a[r][col].clone();
            for k in col..m {
                if !a[col][k].is_zero() {
                    a[r][k] = a[r][k].sub(&factor.mul(&a[col][k]));
                }
            }
            for k in 0..m {
                if !b[col][k].is_zero() {
                    b[r][k] = b[r][k].sub(&factor.mul(&b[col][k]));
                }
            }
        }
    }
    Ok(b)
}

/// Reduces `Li(partner)` choosing, along the type-1 chain, the characters
/// of `c` so that the chain ends exactly at `c`.
fn row_for(red: &Reducer, c: &PositiveArray, partner: &PositiveArray) -> Result<Comb> {
    let f = red.ctx().field.clone();
    let q = red.ctx().q() as u32;
    let mut acc = Comb::new();
    let mut sign = ThetaPoly::one(&f);
    let mut a = partner.clone();
    loop {
        if a.in_ct(q) {
            if &a != c {
                return Err(Error::Falsified(format!("type-1 chain from {partner} ends at {a}, not {c}")));
            }
            add(&mut acc, a, &sign);
            return Ok(acc);
        }
        let k = a.init_len(q) + 1;
        let dec = red.decompose(&a, Some(c.e[k - 1]))?;
        let mut next = None;
        for (u, coef, ty) in &dec.terms {
            if *ty == TermType::One {
                next = Some((u.clone(), coef.clone()));
                continue;
            }
            let sub = red.reduce_to_ct(u)?;
            let scale = coef.mul(&sign);
            for (arr, v) in sub.iter() {
                add(&mut acc, arr.clone(), &v.mul(&scale));
            }
        }
        let (u, coef) = next.ok_or_else(|| Error::Falsified(format!("no type-1 term decomposing {a}")))?;
        sign = sign.mul(&coef);
        a = u;
    }
}

fn add(acc: &mut Comb, arr: PositiveArray, c: &ThetaPoly) {
    if c.is_zero() {
        return;
    }
    let e = acc.entry(arr.clone()).or_insert_with(|| ThetaPoly::zero(c.field()));
    *e = e.add(c);
    if e.is_zero() {
        acc.remove(&arr);
    }
}

/// Converts an `A_N` combination to a `K_N` one.
pub fn to_ratcomb(c: &Comb) -> RatComb {
    c.iter().map(|(a, v)| (a.clone(), RatFun::from_poly(v.clone()))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::array::{count_cs, dim_dn};
    use crate::field::Ctx;
    use crate::series::InfSeries;
    use crate::values::Evaluator;

    fn eval_ratcomb(ev: &Evaluator, y: &RatComb, prec: i64) -> InfSeries {
        let mut acc = InfSeries::zero(ev.field(), 1, prec);
        for (b, c) in y {
            let cs = InfSeries::from_ratfun(c, prec + 60).unwrap();
            acc = acc.add(&ev.li(b, prec + 60).mul(&cs).truncate(prec));
        }
        acc
    }

    #[test]
    fn weight_two_matrix_is_identity_mod_d1() {
        let ctx = Ctx::new(3, 1, 1).unwrap();
        let red = Reducer::new(ctx, Flavor::Cmpl);
        let tm = TransitionMatrix::build(&red, 2).unwrap();
        assert_eq!(tm.ct, tm.partners);
        assert_eq!(tm.ct.len(), 2);
        tm.check_mod_d1().unwrap();
    }

    #[test]
    fn zeta_three_in_cs_basis() {
        let ctx = Ctx::new(2, 1, 1).unwrap();
        let ev = Evaluator::new(ctx.clone());
        let mzv = Reducer::new(ctx.clone(), Flavor::Mzv);
        let cmpl = Reducer::new(ctx.clone(), Flavor::Cmpl);
        let tm = TransitionMatrix::build(&cmpl, 3).unwrap();
        assert_eq!(tm.cs_set().len() as u128, dim_dn(3, 2, 1));
        assert_eq!(count_cs(3, 2, 1), dim_dn(3, 2, 1));
        let z3 = PositiveArray::single(3, 0, 1);
        // ζ = Li on CT, so the MZV-flavor reduction feeds the same matrix
        let y = tm.express(&mzv.reduce_to_ct(&z3).unwrap()).unwrap();
        assert!(y.keys().all(|a| a.in_cs(2)));
        assert!(eval_ratcomb(&ev, &y, 150).agrees_to(&ev.zeta(&z3, 150), 150).unwrap());
    }

    #[test]
    fn express_round_trips_with_characters() {
        let ctx = Ctx::new(3, 1, 2).unwrap();
        let ev = Evaluator::new(ctx.clone());
        let red = Reducer::new(ctx, Flavor::Cmpl);
        let tm = TransitionMatrix::build(&red, 4).unwrap();
        tm.check_mod_d1().unwrap();
        for a in ["(4;1)", "(3;1),(1;1)", "(1;1),(3;0)", "(2;1),(2;1)"] {
            let arr = PositiveArray::parse(a, 2).unwrap();
            let y = tm.express(&red.reduce_to_ct(&arr).unwrap()).unwrap();
            assert!(eval_ratcomb(&ev, &y, 150).agrees_to(&ev.li(&arr, 150), 150).unwrap(), "{a}");
        }
    }

    #[test]
    fn partners_are_cs() {
        for c in crate::array::enumerate_ct(5, 3, 2) {
            let p = cs_partner(&c, 3).unwrap();
            assert!(p.in_cs(3));
            assert_eq!(p.weight(), c.weight());
            assert_eq!(p.chi(), c.chi());
        }
    }
}
