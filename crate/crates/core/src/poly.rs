//! Sparse polynomials in `θ`, rational functions in `θ`, and polynomials in
//! `t` with `θ`-polynomial coefficients.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Elem, Field};

/// A polynomial in `θ` over the ambient field, stored as sorted
/// `(degree, coefficient)` pairs with no zero coefficients.
#[derive(Clone)]
pub struct ThetaPoly {
    field: Field,
    terms: Vec<(u64, Elem)>,
}

impl PartialEq for ThetaPoly {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}
impl Eq for ThetaPoly {}

impl fmt::Debug for ThetaPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for ThetaPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|&(d, c)| match (d, c.0) {
                (0, v) => format!("{v}"),
                (1, 1) => "θ".to_string(),
                (d, 1) => format!("θ^{d}"),
                (1, v) => format!("{v}·θ"),
                (d, v) => format!("{v}·θ^{d}"),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl ThetaPoly {
    pub fn zero(field: &Field) -> Self {
        ThetaPoly { field: field.clone(), terms: Vec::new() }
    }

    pub fn constant(field: &Field, c: Elem) -> Self {
        let mut p = Self::zero(field);
        if !c.is_zero() {
            p.terms.push((0, c));
        }
        p
    }

    pub fn one(field: &Field) -> Self {
        Self::constant(field, Elem::ONE)
    }

    /// `c θ^d`.
    pub fn monomial(field: &Field, d: u64, c: Elem) -> Self {
        let mut p = Self::zero(field);
        if !c.is_zero() {
            p.terms.push((d, c));
        }
        p
    }

    pub fn theta(field: &Field) -> Self {
        Self::monomial(field, 1, Elem::ONE)
    }

    /// Builds from arbitrary `(degree, coeff)` pairs, merging duplicates.
    pub fn from_terms(field: &Field, terms: impl IntoIterator<Item = (u64, Elem)>) -> Self {
        let mut map: BTreeMap<u64, Elem> = BTreeMap::new();
        for (d, c) in terms {
            let e = map.entry(d).or_insert(Elem::ZERO);
            *e = field.add(*e, c);
        }
        ThetaPoly { field: field.clone(), terms: map.into_iter().filter(|(_, c)| !c.is_zero()).collect() }
    }

    /// Dense coefficients, low degree first.
    pub fn from_dense(field: &Field, coeffs: &[Elem]) -> Self {
        Self::from_terms(field, coeffs.iter().enumerate().map(|(i, &c)| (i as u64, c)))
    }

    /// `θ^q - θ`.
    pub fn d1(field: &Field) -> Self {
        let minus_one = field.neg(Elem::ONE);
        Self::from_terms(field, [(field.q(), Elem::ONE), (1, minus_one)])
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn terms(&self) -> &[(u64, Elem)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0] == (0, Elem::ONE)
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u64> {
        self.terms.last().map(|t| t.0)
    }

    pub fn leading(&self) -> Elem {
        self.terms.last().map(|t| t.1).unwrap_or(Elem::ZERO)
    }

    pub fn coeff(&self, d: u64) -> Elem {
        match self.terms.binary_search_by_key(&d, |t| t.0) {
            Ok(i) => self.terms[i].1,
            Err(_) => Elem::ZERO,
        }
    }

    /// The constant term when the polynomial is constant.
    pub fn as_constant(&self) -> Option<Elem> {
        match self.terms.as_slice() {
            [] => Some(Elem::ZERO),
            [(0, c)] => Some(*c),
            _ => None,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let f = &self.field;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() || j < other.terms.len() {
            let take_a = j >= other.terms.len() || (i < self.terms.len() && self.terms[i].0 < other.terms[j].0);
            let take_b = i >= self.terms.len() || (j < other.terms.len() && other.terms[j].0 < self.terms[i].0);
            if take_a {
                out.push(self.terms[i]);
                i += 1;
            } else if take_b {
                out.push(other.terms[j]);
                j += 1;
            } else {
                let c = f.add(self.terms[i].1, other.terms[j].1);
                if !c.is_zero() {
                    out.push((self.terms[i].0, c));
                }
                i += 1;
                j += 1;
            }
        }
        ThetaPoly { field: f.clone(), terms: out }
    }

    pub fn neg(&self) -> Self {
        let f = &self.field;
        ThetaPoly { field: f.clone(), terms: self.terms.iter().map(|&(d, c)| (d, f.neg(c))).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: Elem) -> Self {
        if c.is_zero() {
            return Self::zero(&self.field);
        }
        let f = &self.field;
        ThetaPoly { field: f.clone(), terms: self.terms.iter().map(|&(d, x)| (d, f.mul(x, c))).collect() }
    }

    /// Multiplication by `θ^k`.
    pub fn shift(&self, k: u64) -> Self {
        ThetaPoly { field: self.field.clone(), terms: self.terms.iter().map(|&(d, c)| (d + k, c)).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(&self.field);
        }
        let f = &self.field;
        let mut map: BTreeMap<u64, Elem> = BTreeMap::new();
        for &(da, ca) in &self.terms {
            for &(db, cb) in &other.terms {
                let e = map.entry(da + db).or_insert(Elem::ZERO);
                *e = f.add(*e, f.mul(ca, cb));
            }
        }
        ThetaPoly { field: f.clone(), terms: map.into_iter().filter(|(_, c)| !c.is_zero()).collect() }
    }

    pub fn pow(&self, mut k: u64) -> Self {
        let mut result = Self::one(&self.field);
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                result = result.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    pub fn eval(&self, x: Elem) -> Elem {
        let f = &self.field;
        let mut acc = Elem::ZERO;
        for &(d, c) in &self.terms {
            acc = f.add(acc, f.mul(c, f.pow(x, d as i64).unwrap()));
        }
        acc
    }

    /// Euclidean division: `(quotient, remainder)` with `deg rem < deg divisor`.
    pub fn divmod(&self, divisor: &Self) -> Result<(Self, Self)> {
        let f = &self.field;
        let dd = divisor.degree().ok_or(Error::DivisionByZero)?;
        let inv_lead = f.inv(divisor.leading())?;
        let mut rem: BTreeMap<u64, Elem> = self.terms.iter().copied().collect();
        let mut quot: Vec<(u64, Elem)> = Vec::new();
        while let Some((&d, &c)) = rem.iter().next_back() {
            if d < dd {
                break;
            }
            let qc = f.mul(c, inv_lead);
            let shift = d - dd;
            quot.push((shift, qc));
            for &(db, cb) in &divisor.terms {
                let e = rem.entry(db + shift).or_insert(Elem::ZERO);
                *e = f.sub(*e, f.mul(qc, cb));
                if e.is_zero() {
                    rem.remove(&(db + shift));
                }
            }
        }
        quot.reverse();
        Ok((
            ThetaPoly { field: f.clone(), terms: quot },
            ThetaPoly { field: f.clone(), terms: rem.into_iter().collect() },
        ))
    }

    pub fn rem(&self, divisor: &Self) -> Result<Self> {
        Ok(self.divmod(divisor)?.1)
    }

    /// Exact division; fails if the remainder is nonzero.
    pub fn div_exact(&self, divisor: &Self) -> Result<Self> {
        let (q, r) = self.divmod(divisor)?;
        if !r.is_zero() {
            return Err(Error::Precondition(format!("{divisor} does not divide {self}")));
        }
        Ok(q)
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(self.field.inv(self.leading()).unwrap())
    }

    /// Monic greatest common divisor (zero if both are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b).unwrap();
            a = b;
            b = r;
        }
        a.monic()
    }

    /// The `i`-fold twist `θ^a c ↦ θ^(a q^i) c^(q^i)` for `i >= 0`.
    pub fn twist(&self, i: u32) -> Self {
        let f = &self.field;
        let scale = f.q().pow(i);
        ThetaPoly {
            field: f.clone(),
            terms: self.terms.iter().map(|&(d, c)| (d * scale, f.frobenius(c, i as i64))).collect(),
        }
    }

    /// Applies the field Frobenius `c ↦ c^(q^i)` to the coefficients only
    /// (`i` may be negative).
    pub fn frob_coeffs(&self, i: i64) -> Self {
        let f = &self.field;
        ThetaPoly { field: f.clone(), terms: self.terms.iter().map(|&(d, c)| (d, f.frobenius(c, i))).collect() }
    }

    /// Whether every coefficient lies in `F_{q^r}`.
    pub fn coeffs_in_subfield(&self, r: u32) -> bool {
        self.terms.iter().all(|&(_, c)| self.field.in_subfield(c, r))
    }

    /// Composition `self(θ^k)`.
    pub fn inflate(&self, k: u64) -> Self {
        ThetaPoly { field: self.field.clone(), terms: self.terms.iter().map(|&(d, c)| (d * k, c)).collect() }
    }
}

/// A rational function `num / den` with monic `den` and `gcd(num, den) = 1`.
#[derive(Clone, PartialEq, Eq)]
pub struct RatFun {
    num: ThetaPoly,
    den: ThetaPoly,
}

impl fmt::Debug for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl RatFun {
    pub fn new(num: ThetaPoly, den: ThetaPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let field = num.field().clone();
        if num.is_zero() {
            return Ok(RatFun { num, den: ThetaPoly::one(&field) });
        }
        let g = num.gcd(&den);
        let num = num.div_exact(&g)?;
        let den = den.div_exact(&g)?;
        let lead_inv = field.inv(den.leading())?;
        Ok(RatFun { num: num.scale(lead_inv), den: den.scale(lead_inv) })
    }

    pub fn from_poly(p: ThetaPoly) -> Self {
        let den = ThetaPoly::one(p.field());
        RatFun { num: p, den }
    }

    pub fn zero(field: &Field) -> Self {
        Self::from_poly(ThetaPoly::zero(field))
    }

    pub fn one(field: &Field) -> Self {
        Self::from_poly(ThetaPoly::one(field))
    }

    pub fn num(&self) -> &ThetaPoly {
        &self.num
    }
    pub fn den(&self) -> &ThetaPoly {
        &self.den
    }
    pub fn field(&self) -> &Field {
        self.num.field()
    }
    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn add(&self, o: &Self) -> Self {
        let num = self.num.mul(&o.den).add(&o.num.mul(&self.den));
        Self::new(num, self.den.mul(&o.den)).unwrap()
    }
    pub fn neg(&self) -> Self {
        RatFun { num: self.num.neg(), den: self.den.clone() }
    }
    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }
    pub fn mul(&self, o: &Self) -> Self {
        Self::new(self.num.mul(&o.num), self.den.mul(&o.den)).unwrap()
    }
    pub fn inv(&self) -> Result<Self> {
        Self::new(self.den.clone(), self.num.clone())
    }
    pub fn div(&self, o: &Self) -> Result<Self> {
        Ok(self.mul(&o.inv()?))
    }
}

/// A polynomial in `t` whose coefficients are `θ`-polynomials.
#[derive(Clone)]
pub struct TPoly {
    field: Field,
    coeffs: Vec<ThetaPoly>,
}

impl PartialEq for TPoly {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs
    }
}
impl Eq for TPoly {}

impl fmt::Debug for TPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(j, c)| format!("({c})·t^{j}"))
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

impl TPoly {
    pub fn zero(field: &Field) -> Self {
        TPoly { field: field.clone(), coeffs: Vec::new() }
    }

    pub fn from_coeffs(field: &Field, mut coeffs: Vec<ThetaPoly>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        TPoly { field: field.clone(), coeffs }
    }

    pub fn constant(p: ThetaPoly) -> Self {
        let field = p.field().clone();
        Self::from_coeffs(&field, vec![p])
    }

    /// `t - θ^k`.
    pub fn t_minus_theta_pow(field: &Field, k: u64) -> Self {
        let minus = ThetaPoly::monomial(field, k, field.neg(Elem::ONE));
        Self::from_coeffs(field, vec![minus, ThetaPoly::one(field)])
    }

    pub fn field(&self) -> &Field {
        &self.field
    }
    pub fn coeffs(&self) -> &[ThetaPoly] {
        &self.coeffs
    }
    pub fn coeff(&self, j: usize) -> ThetaPoly {
        self.coeffs.get(j).cloned().unwrap_or_else(|| ThetaPoly::zero(&self.field))
    }
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    pub fn t_degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }
    pub fn theta_degree(&self) -> Option<u64> {
        self.coeffs.iter().filter_map(|c| c.degree()).max()
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        let coeffs = (0..n).map(|j| self.coeff(j).add(&o.coeff(j))).collect();
        Self::from_coeffs(&self.field, coeffs)
    }
    pub fn neg(&self) -> Self {
        TPoly { field: self.field.clone(), coeffs: self.coeffs.iter().map(|c| c.neg()).collect() }
    }
    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }
    pub fn scale(&self, c: Elem) -> Self {
        Self::from_coeffs(&self.field, self.coeffs.iter().map(|p| p.scale(c)).collect())
    }
    pub fn scale_poly(&self, p: &ThetaPoly) -> Self {
        Self::from_coeffs(&self.field, self.coeffs.iter().map(|c| c.mul(p)).collect())
    }
    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero(&self.field);
        }
        let mut coeffs = vec![ThetaPoly::zero(&self.field); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                coeffs[i + j] = coeffs[i + j].add(&a.mul(b));
            }
        }
        Self::from_coeffs(&self.field, coeffs)
    }
    pub fn pow(&self, mut k: u64) -> Self {
        let mut result = Self::constant(ThetaPoly::one(&self.field));
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                result = result.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// Twists the coefficients (`t` is untouched), `i >= 0`.
    pub fn twist(&self, i: u32) -> Self {
        Self::from_coeffs(&self.field, self.coeffs.iter().map(|c| c.twist(i)).collect())
    }

    /// Inverse of [`TPoly::twist`] when every `θ`-degree is divisible by
    /// `q^i`; fails otherwise.
    pub fn untwist(&self, i: u32) -> Result<Self> {
        let f = &self.field;
        let scale = f.q().pow(i);
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            let mut terms = Vec::with_capacity(c.terms().len());
            for &(d, x) in c.terms() {
                if d % scale != 0 {
                    return Err(Error::Precondition(format!("θ-degree {d} is not divisible by {scale}")));
                }
                terms.push((d / scale, f.frobenius(x, -(i as i64))));
            }
            out.push(ThetaPoly::from_terms(f, terms));
        }
        Ok(Self::from_coeffs(f, out))
    }

    /// Substitutes `t = θ^k`.
    pub fn eval_t_theta_pow(&self, k: u64) -> ThetaPoly {
        let mut acc = ThetaPoly::zero(&self.field);
        for (j, c) in self.coeffs.iter().enumerate() {
            acc = acc.add(&c.shift(k * j as u64));
        }
        acc
    }
}
