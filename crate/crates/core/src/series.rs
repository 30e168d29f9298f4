//! Truncated Laurent series at the infinite place, with explicit precision.
//!
//! A series with `ram = 1` is in the variable `x = 1/θ`. A series with
//! `ram = q - 1` is in the uniformizer `u` with `u^(q-1) = -1/θ`; it carries
//! the fixed root `λ = u^(-1)` of `λ^(q-1) = -θ`. Exponents and precisions are
//! always counted in units of the series variable. For `q = 2` the two rings
//! coincide.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::poly::{RatFun, ThetaPoly};

/// Precision sentinel for exactly known (finite) series.
pub const EXACT: i64 = i64::MAX / 4;

fn sat_add(a: i64, b: i64) -> i64 {
    if a >= EXACT || b >= EXACT {
        EXACT
    } else {
        (a + b).min(EXACT)
    }
}

/// A truncated Laurent series `Σ c_k v^k` in `v ∈ {1/θ, u}`.
///
/// Coefficients stored in `coeffs` sit at exponents `start, start+1, ...`;
/// all other exponents below `prec` are zero, exponents `>= prec` are unknown.
#[derive(Clone)]
pub struct InfSeries {
    field: Field,
    ram: u64,
    start: i64,
    coeffs: Vec<Elem>,
    prec: i64,
}

impl std::fmt::Debug for InfSeries {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let var = if self.ram == 1 { "x" } else { "u" };
        let mut parts = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                parts.push(format!("{}·{var}^{}", c.0, self.start + i as i64));
            }
            if parts.len() >= 8 {
                parts.push("…".into());
                break;
            }
        }
        let prec = if self.prec >= EXACT { "exact".to_string() } else { format!("O({var}^{})", self.prec) };
        write!(f, "[{}] + {prec}", parts.join(" + "))
    }
}

/// JSON form of a series: coefficients are field-element encodings in the
/// coordinate basis of the ambient field.
#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct SeriesJson {
    pub ram: u64,
    pub lead_val: Option<i64>,
    pub prec: Option<i64>,
    pub coeffs: Vec<u32>,
}

impl InfSeries {
    /// The zero series known up to (excluding) exponent `prec`.
    pub fn zero(field: &Field, ram: u64, prec: i64) -> Self {
        InfSeries { field: field.clone(), ram, start: prec.min(EXACT), coeffs: Vec::new(), prec: prec.min(EXACT) }
    }

    pub fn exact_zero(field: &Field, ram: u64) -> Self {
        Self::zero(field, ram, EXACT)
    }

    /// `c v^k`, known exactly.
    pub fn monomial(field: &Field, ram: u64, k: i64, c: Elem) -> Self {
        Self::from_parts(field, ram, k, vec![c], EXACT)
    }

    pub fn one(field: &Field, ram: u64) -> Self {
        Self::monomial(field, ram, 0, Elem::ONE)
    }

    /// Coefficients at `start, start+1, ...` with absolute precision `prec`.
    pub fn from_parts(field: &Field, ram: u64, start: i64, coeffs: Vec<Elem>, prec: i64) -> Self {
        let mut s = InfSeries { field: field.clone(), ram, start, coeffs, prec: prec.min(EXACT) };
        s.normalize();
        s
    }

    fn normalize(&mut self) {
        if self.start >= self.prec {
            self.coeffs.clear();
        } else {
            let max_len = (self.prec - self.start).min(1 << 40) as usize;
            if self.coeffs.len() > max_len {
                self.coeffs.truncate(max_len);
            }
        }
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().position(|c| !c.is_zero());
        match lead {
            Some(i) => {
                if i > 0 {
                    self.coeffs.drain(..i);
                    self.start += i as i64;
                }
            }
            None => {
                self.coeffs.clear();
                self.start = self.prec;
            }
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }
    pub fn ram(&self) -> u64 {
        self.ram
    }
    pub fn prec(&self) -> i64 {
        self.prec
    }
    pub fn is_exact(&self) -> bool {
        self.prec >= EXACT
    }

    /// Valuation of the first nonzero known coefficient; `None` when every
    /// known coefficient vanishes.
    pub fn valuation(&self) -> Option<i64> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.start)
        }
    }

    /// A lower bound for the true valuation.
    pub fn val_bound(&self) -> i64 {
        self.valuation().unwrap_or(self.prec)
    }

    /// Whether all known coefficients vanish.
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient at exponent `k` (`None` if unknown).
    pub fn coeff(&self, k: i64) -> Option<Elem> {
        if k >= self.prec {
            return None;
        }
        if k < self.start {
            return Some(Elem::ZERO);
        }
        Some(self.coeffs.get((k - self.start) as usize).copied().unwrap_or(Elem::ZERO))
    }

    /// Known coefficients on `[lo, hi)` (zero below the stored range).
    pub fn window(&self, lo: i64, hi: i64) -> Result<Vec<Elem>> {
        if hi > self.prec {
            return Err(Error::Precision(format!("window end {hi} exceeds precision {}", self.prec)));
        }
        Ok((lo..hi).map(|k| self.coeff(k).unwrap()).collect())
    }

    /// Nonzero stored coefficients with exponents.
    pub fn nonzero_terms(&self) -> impl Iterator<Item = (i64, Elem)> + '_ {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(move |(i, &c)| (self.start + i as i64, c))
    }

    /// Truncates to absolute precision `p`.
    pub fn truncate(&self, p: i64) -> Self {
        let mut s = self.clone();
        s.prec = s.prec.min(p);
        s.normalize();
        s
    }

    /// Expresses a `ram = 1` series in the ramified variable `u`.
    pub fn ramify_to(&self, ram: u64) -> Result<Self> {
        if ram == self.ram {
            return Ok(self.clone());
        }
        if self.ram != 1 {
            return Err(Error::Precondition(format!("cannot convert ram {} to {ram}", self.ram)));
        }
        let e = ram as i64;
        let f = &self.field;
        let minus_one = f.neg(Elem::ONE);
        if self.coeffs.is_empty() {
            return Ok(Self::zero(f, ram, if self.prec >= EXACT { EXACT } else { self.prec * e }));
        }
        let mut coeffs = vec![Elem::ZERO; (self.coeffs.len() - 1) * e as usize + 1];
        for (i, &c) in self.coeffs.iter().enumerate() {
            let k = self.start + i as i64;
            let sign = if k.rem_euclid(2) == 1 { minus_one } else { Elem::ONE };
            coeffs[i * e as usize] = f.mul(c, sign);
        }
        let prec = if self.prec >= EXACT { EXACT } else { self.prec * e };
        Ok(Self::from_parts(f, ram, self.start * e, coeffs, prec))
    }

    fn align(&self, other: &Self) -> Result<(Self, Self)> {
        if self.ram == other.ram {
            return Ok((self.clone(), other.clone()));
        }
        let r = self.ram.max(other.ram);
        Ok((self.ramify_to(r)?, other.ramify_to(r)?))
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.ram != other.ram {
            let (a, b) = self.align(other).expect("incompatible ramification");
            return a.add(&b);
        }
        let prec = self.prec.min(other.prec);
        let lo = self.start.min(other.start).min(prec);
        // empty operands sit at start = prec and contribute no range
        let end = |s: &Self| if s.coeffs.is_empty() { i64::MIN } else { s.start + s.coeffs.len() as i64 };
        let hi = end(self).max(end(other)).min(prec);
        if hi <= lo {
            return Self::zero(&self.field, self.ram, prec);
        }
        let f = &self.field;
        let mut coeffs = vec![Elem::ZERO; (hi - lo) as usize];
        for (i, &c) in self.coeffs.iter().enumerate() {
            let k = self.start + i as i64;
            if k < hi {
                coeffs[(k - lo) as usize] = c;
            }
        }
        for (i, &c) in other.coeffs.iter().enumerate() {
            let k = other.start + i as i64;
            if k < hi {
                let slot = &mut coeffs[(k - lo) as usize];
                *slot = f.add(*slot, c);
            }
        }
        Self::from_parts(f, self.ram, lo, coeffs, prec)
    }

    pub fn neg(&self) -> Self {
        let f = &self.field;
        InfSeries {
            field: f.clone(),
            ram: self.ram,
            start: self.start,
            coeffs: self.coeffs.iter().map(|&c| f.neg(c)).collect(),
            prec: self.prec,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: Elem) -> Self {
        if c.is_zero() {
            return Self::zero(&self.field, self.ram, EXACT);
        }
        let f = &self.field;
        InfSeries {
            field: f.clone(),
            ram: self.ram,
            start: self.start,
            coeffs: self.coeffs.iter().map(|&x| f.mul(x, c)).collect(),
            prec: self.prec,
        }
    }

    /// Multiplication by `v^k`.
    pub fn shift(&self, k: i64) -> Self {
        let mut s = self.clone();
        if s.prec < EXACT {
            s.prec += k;
        }
        s.start += k;
        s
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.ram != other.ram {
            let (a, b) = self.align(other).expect("incompatible ramification");
            return a.mul(&b);
        }
        let va = self.val_bound();
        let vb = other.val_bound();
        let prec = sat_add(self.prec, vb).min(sat_add(other.prec, va));
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return Self::zero(&self.field, self.ram, prec);
        }
        let lo = va + vb;
        let full = (self.coeffs.len() + other.coeffs.len() - 1) as i64;
        let len = full.min(prec - lo).max(0) as usize;
        let f = &self.field;
        let mut out = vec![Elem::ZERO; len];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() || i >= len {
                continue;
            }
            let lim = (len - i).min(other.coeffs.len());
            for (j, &b) in other.coeffs[..lim].iter().enumerate() {
                if !b.is_zero() {
                    let slot = &mut out[i + j];
                    *slot = f.add(*slot, f.mul(a, b));
                }
            }
        }
        Self::from_parts(f, self.ram, lo, out, prec)
    }

    /// Multiplicative inverse. Exact inputs are expanded to relative
    /// precision `rel_prec` (ignored for inexact inputs, whose precision
    /// determines the result).
    pub fn inv(&self, rel_prec: i64) -> Result<Self> {
        let v = self.valuation().ok_or(Error::DivisionByZero)?;
        let rel = if self.prec >= EXACT { rel_prec } else { self.prec - v };
        let f = &self.field;
        let c0_inv = f.inv(self.coeffs[0])?;
        let nz: Vec<(usize, Elem)> =
            self.coeffs.iter().enumerate().skip(1).filter(|(_, c)| !c.is_zero()).map(|(i, &c)| (i, c)).collect();
        let n = rel.max(0) as usize;
        let mut b = vec![Elem::ZERO; n];
        if n > 0 {
            b[0] = c0_inv;
        }
        for k in 1..n {
            let mut acc = Elem::ZERO;
            for &(i, c) in &nz {
                if i > k {
                    break;
                }
                acc = f.add(acc, f.mul(c, b[k - i]));
            }
            b[k] = f.neg(f.mul(acc, c0_inv));
        }
        Ok(Self::from_parts(f, self.ram, -v, b, -v + rel))
    }

    pub fn div(&self, other: &Self, rel_prec: i64) -> Result<Self> {
        Ok(self.mul(&other.inv(rel_prec)?))
    }

    /// `c ↦ c^p`, `v^k ↦ v^(kp)`: the `p`-th power in characteristic `p`.
    pub fn frobenius_p(&self) -> Self {
        let f = &self.field;
        let p = f.p();
        let mut coeffs = vec![Elem::ZERO; if self.coeffs.is_empty() { 0 } else { (self.coeffs.len() - 1) * p as usize + 1 }];
        for (i, &c) in self.coeffs.iter().enumerate() {
            coeffs[i * p as usize] = f.pow(c, p as i64).unwrap();
        }
        let prec = if self.prec >= EXACT { EXACT } else { self.prec * p as i64 };
        Self::from_parts(f, self.ram, self.start * p as i64, coeffs, prec)
    }

    /// `self^k` for `k >= 0`, using Frobenius for factors of `p`.
    pub fn pow(&self, k: u64) -> Self {
        let p = self.field.p();
        if k == 0 {
            return Self::one(&self.field, self.ram);
        }
        if k.is_multiple_of(p) {
            return self.pow(k / p).frobenius_p();
        }
        let mut result = Self::one(&self.field, self.ram);
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// The `i`-fold twist (`i >= 0`): the `q^i`-th power Frobenius.
    pub fn twist(&self, i: u32) -> Self {
        let mut s = self.clone();
        for _ in 0..i * self.field.e() {
            s = s.frobenius_p();
        }
        s
    }

    /// The `(-i)`-fold twist, defined when every stored exponent and the
    /// precision are divisible by `q^i`.
    pub fn untwist(&self, i: u32) -> Result<Self> {
        let f = &self.field;
        let step = f.q().pow(i) as i64;
        let mut terms = Vec::new();
        for (k, c) in self.nonzero_terms() {
            if k % step != 0 {
                return Err(Error::Precondition(format!("exponent {k} not divisible by {step}")));
            }
            terms.push((k / step, f.frobenius(c, -(i as i64))));
        }
        let prec = if self.prec >= EXACT { EXACT } else { self.prec.div_euclid(step) };
        Ok(Self::from_terms(f, self.ram, terms, prec))
    }

    pub fn from_terms(field: &Field, ram: u64, terms: impl IntoIterator<Item = (i64, Elem)>, prec: i64) -> Self {
        let terms: Vec<(i64, Elem)> = terms.into_iter().filter(|(k, c)| !c.is_zero() && *k < prec).collect();
        if terms.is_empty() {
            return Self::zero(field, ram, prec);
        }
        let lo = terms.iter().map(|t| t.0).min().unwrap();
        let hi = terms.iter().map(|t| t.0).max().unwrap();
        let mut coeffs = vec![Elem::ZERO; (hi - lo + 1) as usize];
        for (k, c) in terms {
            let slot = &mut coeffs[(k - lo) as usize];
            *slot = field.add(*slot, c);
        }
        Self::from_parts(field, ram, lo, coeffs, prec)
    }

    /// Exact expansion of a `θ`-polynomial in `x = 1/θ` (`ram = 1`).
    pub fn from_theta_poly(p: &ThetaPoly) -> Self {
        Self::from_terms(p.field(), 1, p.terms().iter().map(|&(d, c)| (-(d as i64), c)), EXACT)
    }

    /// `θ` itself, in the ring with ramification `ram`.
    pub fn theta(field: &Field, ram: u64) -> Self {
        if ram == 1 {
            Self::monomial(field, 1, -1, Elem::ONE)
        } else {
            Self::monomial(field, ram, -(ram as i64), field.neg(Elem::ONE))
        }
    }

    /// Laurent expansion of a rational function to absolute precision `prec`
    /// in `x = 1/θ`.
    pub fn from_ratfun(f: &RatFun, prec: i64) -> Result<Self> {
        if f.den().is_zero() {
            return Err(Error::DivisionByZero);
        }
        let num = Self::from_theta_poly(f.num());
        if num.is_zero() {
            return Ok(Self::zero(f.field(), 1, prec));
        }
        let den = Self::from_theta_poly(f.den());
        let v = num.val_bound() - den.val_bound();
        let inv = den.inv(prec - v + 1)?;
        Ok(num.mul(&inv).truncate(prec))
    }

    /// Whether the two series agree on every exponent below `p`.
    pub fn agrees_to(&self, other: &Self, p: i64) -> Result<bool> {
        let (a, b) = self.align(other)?;
        if a.prec < p || b.prec < p {
            return Err(Error::Precision(format!("need precision {p}, have {} and {}", a.prec, b.prec)));
        }
        Ok(a.sub(&b).truncate(p).is_zero())
    }

    /// Substitutes the coefficient Frobenius `c ↦ c^(q^i)` without touching
    /// exponents.
    pub fn frob_coeffs(&self, i: i64) -> Self {
        let f = &self.field;
        InfSeries {
            field: f.clone(),
            ram: self.ram,
            start: self.start,
            coeffs: self.coeffs.iter().map(|&c| f.frobenius(c, i)).collect(),
            prec: self.prec,
        }
    }

    pub fn to_json(&self) -> SeriesJson {
        SeriesJson {
            ram: self.ram,
            lead_val: self.valuation(),
            prec: if self.prec >= EXACT { None } else { Some(self.prec) },
            coeffs: self.coeffs.iter().map(|c| c.0).collect(),
        }
    }
}

/// A polynomial in `t` truncated at `t^t_prec` with series coefficients.
#[derive(Clone, Debug)]
pub struct TSeries {
    pub coeffs: Vec<InfSeries>,
    pub t_prec: usize,
}

impl TSeries {
    pub fn new(mut coeffs: Vec<InfSeries>, t_prec: usize) -> Self {
        coeffs.truncate(t_prec);
        TSeries { coeffs, t_prec }
    }

    pub fn constant(c: InfSeries, t_prec: usize) -> Self {
        Self::new(vec![c], t_prec)
    }

    /// Missing coefficients are zero to the precision of the whole series.
    fn get(&self, j: usize, like: &InfSeries) -> InfSeries {
        self.coeffs.get(j).cloned().unwrap_or_else(|| InfSeries::zero(like.field(), like.ram(), self.prec()))
    }

    fn any(&self) -> Option<&InfSeries> {
        self.coeffs.first()
    }

    pub fn add(&self, o: &Self) -> Self {
        let t_prec = self.t_prec.min(o.t_prec);
        let like = match self.any().or(o.any()) {
            Some(s) => s.clone(),
            None => return TSeries::new(vec![], t_prec),
        };
        let n = self.coeffs.len().max(o.coeffs.len()).min(t_prec);
        TSeries::new((0..n).map(|j| self.get(j, &like).add(&o.get(j, &like))).collect(), t_prec)
    }

    pub fn neg(&self) -> Self {
        TSeries::new(self.coeffs.iter().map(|c| c.neg()).collect(), self.t_prec)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        let t_prec = self.t_prec.min(o.t_prec);
        let like = match self.any().or(o.any()) {
            Some(s) => s.clone(),
            None => return TSeries::new(vec![], t_prec),
        };
        let n = (self.coeffs.len() + o.coeffs.len()).saturating_sub(1).min(t_prec);
        let mut out: Vec<InfSeries> = (0..n).map(|_| InfSeries::exact_zero(like.field(), like.ram())).collect();
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                if i + j < n {
                    out[i + j] = out[i + j].add(&a.mul(b));
                }
            }
        }
        TSeries::new(out, t_prec)
    }

    pub fn scale(&self, c: &InfSeries) -> Self {
        TSeries::new(self.coeffs.iter().map(|x| x.mul(c)).collect(), self.t_prec)
    }

    pub fn twist(&self, i: u32) -> Self {
        TSeries::new(self.coeffs.iter().map(|x| x.twist(i)).collect(), self.t_prec)
    }

    pub fn truncate(&self, p: i64) -> Self {
        TSeries::new(self.coeffs.iter().map(|x| x.truncate(p)).collect(), self.t_prec)
    }

    /// Minimal coefficient precision.
    pub fn prec(&self) -> i64 {
        self.coeffs.iter().map(|c| c.prec()).min().unwrap_or(EXACT)
    }

    /// Substitutes `t = y` for a series `y`, summing the truncated terms.
    pub fn eval_at(&self, y: &InfSeries) -> InfSeries {
        let mut acc = InfSeries::exact_zero(y.field(), y.ram());
        let mut pw = InfSeries::one(y.field(), y.ram());
        for c in &self.coeffs {
            acc = acc.add(&c.mul(&pw));
            pw = pw.mul(y);
        }
        acc
    }
}

/// The Anderson–Thakur function `Ω` as a `t`-series in the ring `u`
/// (`ram = q - 1`), exact on all `u`-exponents below `prec`.
pub fn omega_series(field: &Field, t_prec: usize, prec: i64) -> Result<TSeries> {
    if prec < 1 || t_prec < 1 {
        return Err(Error::Precision("omega needs t_prec >= 1 and prec >= 1".into()));
    }
    let q = field.q() as i64;
    let ram = (q - 1) as u64;
    // Ω = u^q Π_{i≥1} (1 + t u^((q-1) q^i)); factors with exponent >= prec
    // only touch coefficients beyond the precision.
    let mut cur = TSeries::constant(InfSeries::monomial(field, ram, q, Elem::ONE).truncate(prec), t_prec);
    let mut qi = q;
    while (q - 1) * qi < prec {
        let factor = TSeries::new(
            vec![InfSeries::one(field, ram), InfSeries::monomial(field, ram, (q - 1) * qi, Elem::ONE)],
            t_prec,
        );
        cur = cur.mul(&factor);
        qi *= q;
    }
    Ok(cur.truncate(prec))
}

/// The Carlitz period `π̃ = u^(-q) Π_{i≥1} (1 - u^((q-1)(q^i - 1)))^(-1)`,
/// known on all `u`-exponents below `prec`.
pub fn carlitz_period(field: &Field, prec: i64) -> Result<InfSeries> {
    if prec < 1 - field.q() as i64 {
        return Err(Error::Precision("carlitz period needs a positive window".into()));
    }
    let q = field.q() as i64;
    let ram = (q - 1) as u64;
    let rel = prec + q;
    let minus_one = field.neg(Elem::ONE);
    let mut acc = InfSeries::one(field, ram).truncate(rel);
    let mut qi = q;
    while (q - 1) * (qi - 1) < rel {
        let factor = InfSeries::from_terms(field, ram, [(0, Elem::ONE), ((q - 1) * (qi - 1), minus_one)], EXACT);
        acc = acc.mul(&factor.inv(rel)?);
        qi *= q;
    }
    Ok(acc.shift(-q).truncate(prec))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldCtx;

    #[test]
    fn geometric_expansion_char2() {
        let f = FieldCtx::new(2, 1, 1).unwrap();
        let th = ThetaPoly::theta(&f);
        let r = RatFun::new(ThetaPoly::one(&f), th.pow(2).add(&th)).unwrap();
        let s = InfSeries::from_ratfun(&r, 30).unwrap();
        assert_eq!(s.valuation(), Some(2));
        for k in 0..30 {
            assert_eq!(s.coeff(k).unwrap(), if k >= 2 { Elem::ONE } else { Elem::ZERO });
        }
    }

    #[test]
    fn theta_and_zero() {
        let f = FieldCtx::new(3, 1, 1).unwrap();
        let s = InfSeries::from_theta_poly(&ThetaPoly::theta(&f));
        assert_eq!(s.valuation(), Some(-1));
        assert!(s.is_exact());
        let z = InfSeries::from_ratfun(&RatFun::zero(&f), 10).unwrap();
        assert!(z.is_zero());
        assert_eq!(z.prec(), 10);
    }

    #[test]
    fn precision_rules() {
        let f = FieldCtx::new(3, 1, 1).unwrap();
        let a = InfSeries::from_parts(&f, 1, 2, vec![Elem(1), Elem(2)], 10);
        let b = InfSeries::from_parts(&f, 1, -1, vec![Elem(2)], 5);
        let c = a.mul(&b);
        assert_eq!(c.prec(), 5 + 2);
        assert_eq!(a.add(&b).prec(), 5);
    }

    #[test]
    fn inverse_roundtrip() {
        let f = FieldCtx::new(3, 1, 2).unwrap();
        let a = InfSeries::from_parts(&f, 1, -3, vec![Elem(4), Elem(1), Elem(0), Elem(7)], 40);
        let prod = a.mul(&a.inv(0).unwrap());
        assert!(prod.agrees_to(&InfSeries::one(&f, 1), prod.prec()).unwrap());
        assert!(prod.prec() >= 30);
    }

    #[test]
    fn omega_functional_equation() {
        for q in [2u64, 3, 5] {
            let f = FieldCtx::new(q, 1, 1).unwrap();
            let prec = 120;
            let om = omega_series(&f, 12, prec).unwrap();
            let ram = q - 1;
            let qi = q as i64;
            // Ω = (t - θ^q) Ω^(1) with -θ^q = u^(-q(q-1))
            let t_minus = TSeries::new(
                vec![InfSeries::monomial(&f, ram, -qi * (qi - 1), Elem::ONE), InfSeries::one(&f, ram)],
                12,
            );
            let rhs = t_minus.mul(&om.twist(1));
            for j in 0..12 {
                let l = om.coeffs.get(j).cloned().unwrap_or(InfSeries::exact_zero(&f, ram));
                let r = rhs.coeffs.get(j).cloned().unwrap_or(InfSeries::exact_zero(&f, ram));
                assert!(l.agrees_to(&r, prec).unwrap(), "q={q} j={j}");
            }
        }
    }

    #[test]
    fn pi_tilde_matches_omega_at_theta() {
        for q in [2u64, 3] {
            let f = FieldCtx::new(q, 1, 1).unwrap();
            let prec = 80;
            let ram = q - 1;
            let pi = carlitz_period(&f, prec).unwrap();
            assert_eq!(pi.valuation(), Some(-(q as i64)));
            // Ω_j has valuation growing like q^j, so eight t-terms cover the window
            let om = omega_series(&f, 8, prec + 40).unwrap();
            let om_theta = om.eval_at(&InfSeries::theta(&f, ram));
            let prod = om_theta.mul(&pi);
            assert!(prod.agrees_to(&InfSeries::one(&f, ram), prec - 2 * q as i64).unwrap());
            // π̃^(q-1) has valuation -q in units of 1/θ
            let pw = pi.pow(q - 1);
            assert_eq!(pw.valuation(), Some(-(q as i64) * (q as i64 - 1)));
        }
    }

    #[test]
    fn twist_untwist() {
        let f = FieldCtx::new(3, 1, 2).unwrap();
        let a = InfSeries::from_parts(&f, 2, -2, vec![Elem(4), Elem(1), Elem(0), Elem(7)], 20);
        let t = a.twist(1);
        assert!(t.untwist(1).unwrap().agrees_to(&a, 20).unwrap());
        assert!(a.mul(&a).twist(1).agrees_to(&t.mul(&t), 40).unwrap());
    }
}
