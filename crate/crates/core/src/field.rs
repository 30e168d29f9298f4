//! Exact arithmetic in a flat finite field `F_{q^M}` (`q = p^e`) together with
//! the cyclotomic data `(N', gamma_N, R, zeta_N, Gamma_N)` of a level `N`.
//!
//! Elements are stored by their coordinate encoding: the integer
//! `c_0 + c_1 p + ... + c_{n-1} p^{n-1}` of the residue polynomial modulo an
//! irreducible polynomial of degree `n = e M` over `F_p`. Multiplication goes
//! through discrete-log tables built once per field, so every field is meant
//! to stay small (desk scale, at most `2^20` elements).

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Largest field order for which tables are built.
pub const MAX_ORDER: u64 = 1 << 20;
const ADD_TABLE_LIMIT: u64 = 1024;

/// An element of the ambient field, stored by its `F_p`-coordinate encoding.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Elem(pub u32);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// Shared handle to an immutable field context.
pub type Field = Arc<FieldCtx>;

/// A finite field `F_{q^M}` with `q = p^e`, a verified irreducible modulus of
/// degree `e M` over `F_p`, and a fixed multiplicative generator.
pub struct FieldCtx {
    p: u32,
    e: u32,
    m: u32,
    n: u32,
    q: u64,
    order: u64,
    modulus: Vec<u32>,
    generator: Elem,
    exp: Vec<u32>,
    log: Vec<u32>,
    add_table: Option<Vec<u16>>,
}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldCtx")
            .field("p", &self.p)
            .field("e", &self.e)
            .field("M", &self.m)
            .field("modulus", &self.modulus)
            .field("generator", &self.generator)
            .finish()
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Distinct prime factors by trial division.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Multiplicative order of `a` modulo `m` (`gcd(a, m) = 1`, `m >= 1`).
pub fn mult_order(a: u64, m: u64) -> u64 {
    if m == 1 {
        return 1;
    }
    let mut x = a % m;
    let mut k = 1;
    while x != 1 {
        x = ((x as u128 * a as u128) % m as u128) as u64;
        k += 1;
    }
    k
}

fn ipow(base: u64, exp: u32) -> Option<u64> {
    let mut r: u64 = 1;
    for _ in 0..exp {
        r = r.checked_mul(base)?;
    }
    Some(r)
}

// Dense polynomials over F_p used only while building the tables.
fn poly_mulmod(a: &[u32], b: &[u32], modulus: &[u32], p: u32) -> Vec<u32> {
    let n = modulus.len() - 1;
    let mut prod = vec![0u64; a.len() + b.len()];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] += x as u64 * y as u64;
        }
    }
    let mut prod: Vec<u32> = prod.into_iter().map(|c| (c % p as u64) as u32).collect();
    for k in (n..prod.len()).rev() {
        let c = prod[k];
        if c == 0 {
            continue;
        }
        for i in 0..=n {
            let sub = (c as u64 * modulus[i] as u64 % p as u64) as u32;
            let idx = k - n + i;
            prod[idx] = (prod[idx] + p - sub) % p;
        }
    }
    prod.truncate(n);
    prod.resize(n, 0);
    prod
}

fn poly_powmod(base: &[u32], mut e: u128, modulus: &[u32], p: u32) -> Vec<u32> {
    let n = modulus.len() - 1;
    let mut result = vec![0u32; n];
    result[0] = 1;
    let mut b = base.to_vec();
    b.resize(n, 0);
    while e > 0 {
        if e & 1 == 1 {
            result = poly_mulmod(&result, &b, modulus, p);
        }
        b = poly_mulmod(&b, &b, modulus, p);
        e >>= 1;
    }
    result
}

fn trim(v: &mut Vec<u32>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn poly_rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut a = a.to_vec();
    trim(&mut a);
    let mut b = b.to_vec();
    trim(&mut b);
    let db = b.len() - 1;
    let inv_lead = modinv(b[db], p);
    while a.len() > db {
        let da = a.len() - 1;
        let c = a[da] as u64 * inv_lead as u64 % p as u64;
        for i in 0..=db {
            let idx = da - db + i;
            let sub = (c * b[i] as u64 % p as u64) as u32;
            a[idx] = (a[idx] + p - sub) % p;
        }
        trim(&mut a);
    }
    a
}

fn poly_gcd(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let r = poly_rem(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

fn modinv(a: u32, p: u32) -> u32 {
    let mut r = 1u64;
    let mut b = a as u64 % p as u64;
    let mut e = p as u64 - 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p as u64;
        }
        b = b * b % p as u64;
        e >>= 1;
    }
    r as u32
}

/// Rabin irreducibility test for a monic polynomial over `F_p`.
pub fn is_irreducible(modulus: &[u32], p: u32) -> bool {
    let n = modulus.len() - 1;
    if n == 0 || *modulus.last().unwrap() != 1 {
        return false;
    }
    if n == 1 {
        return true;
    }
    let x = {
        let mut v = vec![0u32; n];
        v[1] = 1;
        v
    };
    // x^(p^n) == x
    let mut frob = x.clone();
    for _ in 0..n {
        frob = poly_powmod(&frob, p as u128, modulus, p);
    }
    if frob != x {
        return false;
    }
    for r in prime_factors(n as u64) {
        let k = n / r as usize;
        let mut f = x.clone();
        for _ in 0..k {
            f = poly_powmod(&f, p as u128, modulus, p);
        }
        // f - x
        let mut d = f.clone();
        d[1] = (d[1] + p - 1) % p;
        let g = poly_gcd(modulus, &d, p);
        if g.len() != 1 {
            return false;
        }
    }
    true
}

fn encode(coords: &[u32], p: u32) -> u32 {
    coords.iter().rev().fold(0u64, |acc, &c| acc * p as u64 + c as u64) as u32
}

fn decode(mut x: u32, p: u32, n: u32) -> Vec<u32> {
    let mut v = Vec::with_capacity(n as usize);
    for _ in 0..n {
        v.push(x % p);
        x /= p;
    }
    v
}

impl FieldCtx {
    /// Builds `F_{q^M}` with `q = p^e` from the first primitive polynomial of
    /// degree `e M` over `F_p` (coefficients enumerated in encoding order).
    pub fn new(p: u64, e: u32, m: u32) -> Result<Field> {
        Self::check_params(p, e, m)?;
        let p32 = p as u32;
        let n = e * m;
        let order = ipow(p, n).unwrap();
        let factors = prime_factors(order - 1);
        for tail in 0..ipow(p, n).unwrap() {
            let mut modulus = decode(tail as u32, p32, n);
            modulus.push(1);
            if modulus[0] == 0 {
                continue;
            }
            let x: Vec<u32> = if n == 1 {
                // In degree one the residue of x is -modulus[0].
                vec![(p32 - modulus[0]) % p32]
            } else {
                let mut v = vec![0u32; n as usize];
                v[1] = 1;
                v
            };
            if Self::has_full_order(&x, &modulus, p32, order, &factors) {
                return Ok(Arc::new(Self::build(p32, e, m, modulus, x)));
            }
        }
        Err(Error::InvalidField("no primitive polynomial found".into()))
    }

    /// Builds the field from a user-supplied monic modulus of degree `e M`
    /// over `F_p` (coefficients low to high). The modulus must be irreducible;
    /// the generator is the smallest encoded element of full order.
    pub fn with_modulus(p: u64, e: u32, m: u32, modulus: Vec<u32>) -> Result<Field> {
        Self::check_params(p, e, m)?;
        let p32 = p as u32;
        let n = e * m;
        if modulus.len() != n as usize + 1 || modulus[n as usize] != 1 || modulus.iter().any(|&c| c >= p32) {
            return Err(Error::InvalidField(format!(
                "modulus must be monic of degree {n} with coefficients in F_{p}"
            )));
        }
        if !is_irreducible(&modulus, p32) {
            return Err(Error::ReducibleModulus);
        }
        let order = ipow(p, n).unwrap();
        let factors = prime_factors(order - 1);
        for cand in 1..order as u32 {
            let g = decode(cand, p32, n);
            if Self::has_full_order(&g, &modulus, p32, order, &factors) {
                return Ok(Arc::new(Self::build(p32, e, m, modulus, g)));
            }
        }
        Err(Error::InvalidField("no generator found".into()))
    }

    fn check_params(p: u64, e: u32, m: u32) -> Result<()> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if e == 0 || m == 0 {
            return Err(Error::InvalidField("e and M must be positive".into()));
        }
        match ipow(p, e * m) {
            Some(order) if order <= MAX_ORDER => Ok(()),
            _ => Err(Error::InvalidField(format!("p^(eM) = {p}^{} exceeds the table limit {MAX_ORDER}", e * m))),
        }
    }

    fn has_full_order(g: &[u32], modulus: &[u32], p: u32, order: u64, factors: &[u64]) -> bool {
        let n = modulus.len() - 1;
        let mut one = vec![0u32; n];
        one[0] = 1;
        if g.iter().all(|&c| c == 0) {
            return false;
        }
        if poly_powmod(g, (order - 1) as u128, modulus, p) != one {
            return false;
        }
        factors
            .iter()
            .all(|&r| poly_powmod(g, ((order - 1) / r) as u128, modulus, p) != one)
    }

    fn build(p: u32, e: u32, m: u32, modulus: Vec<u32>, g: Vec<u32>) -> FieldCtx {
        let n = e * m;
        let order = (p as u64).pow(n);
        let q = (p as u64).pow(e);
        let mut exp = Vec::with_capacity(order as usize - 1);
        let mut log = vec![0u32; order as usize];
        let mut cur = vec![0u32; n as usize];
        cur[0] = 1;
        for i in 0..order - 1 {
            let enc = encode(&cur, p);
            exp.push(enc);
            log[enc as usize] = i as u32;
            cur = poly_mulmod(&cur, &g, &modulus, p);
        }
        let generator = Elem(encode(&g, p));
        let mut ctx = FieldCtx {
            p,
            e,
            m,
            n,
            q,
            order,
            modulus,
            generator,
            exp,
            log,
            add_table: None,
        };
        if p != 2 && order <= ADD_TABLE_LIMIT {
            let mut table = vec![0u16; (order * order) as usize];
            for a in 0..order as u32 {
                for b in 0..order as u32 {
                    table[(a as u64 * order + b as u64) as usize] = ctx.add_slow(Elem(a), Elem(b)).0 as u16;
                }
            }
            ctx.add_table = Some(table);
        }
        ctx
    }

    pub fn p(&self) -> u64 {
        self.p as u64
    }
    pub fn e(&self) -> u32 {
        self.e
    }
    /// Extension degree `M` over `F_q`.
    pub fn degree(&self) -> u32 {
        self.m
    }
    /// Degree over the prime field, `e M`.
    pub fn prime_degree(&self) -> u32 {
        self.n
    }
    pub fn q(&self) -> u64 {
        self.q
    }
    /// Number of elements `q^M`.
    pub fn order(&self) -> u64 {
        self.order
    }
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }
    pub fn generator(&self) -> Elem {
        self.generator
    }

    fn add_slow(&self, a: Elem, b: Elem) -> Elem {
        let (mut x, mut y) = (a.0, b.0);
        let p = self.p;
        let mut out = 0u32;
        let mut place = 1u32;
        while x > 0 || y > 0 {
            out += ((x % p + y % p) % p) * place;
            x /= p;
            y /= p;
            place = place.wrapping_mul(p);
        }
        Elem(out)
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        if self.p == 2 {
            return Elem(a.0 ^ b.0);
        }
        match &self.add_table {
            Some(t) => Elem(t[(a.0 as u64 * self.order + b.0 as u64) as usize] as u32),
            None => self.add_slow(a, b),
        }
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        if self.p == 2 || a.is_zero() {
            return a;
        }
        let p = self.p;
        let mut x = a.0;
        let mut out = 0u32;
        let mut place = 1u32;
        while x > 0 {
            out += ((p - x % p) % p) * place;
            x /= p;
            place = place.wrapping_mul(p);
        }
        Elem(out)
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a.is_zero() || b.is_zero() {
            return Elem::ZERO;
        }
        let s = self.log[a.0 as usize] as u64 + self.log[b.0 as usize] as u64;
        let m = self.order - 1;
        Elem(self.exp[(if s >= m { s - m } else { s }) as usize])
    }

    pub fn inv(&self, a: Elem) -> Result<Elem> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let m = self.order - 1;
        let l = self.log[a.0 as usize] as u64;
        Ok(Elem(self.exp[((m - l) % m) as usize]))
    }

    pub fn div(&self, a: Elem, b: Elem) -> Result<Elem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// `a^k` for any integer `k` (`0^0 = 1`; negative powers of zero fail).
    pub fn pow(&self, a: Elem, k: i64) -> Result<Elem> {
        if a.is_zero() {
            return match k {
                0 => Ok(Elem::ONE),
                k if k > 0 => Ok(Elem::ZERO),
                _ => Err(Error::DivisionByZero),
            };
        }
        let m = (self.order - 1) as i128;
        let l = self.log[a.0 as usize] as i128;
        let e = (l * (k as i128)).rem_euclid(m);
        Ok(Elem(self.exp[e as usize]))
    }

    /// `g^k` for the fixed generator `g`.
    pub fn gen_pow(&self, k: i64) -> Elem {
        let m = (self.order - 1) as i64;
        Elem(self.exp[k.rem_euclid(m) as usize])
    }

    /// Discrete logarithm to the fixed generator.
    pub fn dlog(&self, a: Elem) -> Result<u64> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.log[a.0 as usize] as u64)
    }

    /// Multiplicative order of a nonzero element.
    pub fn elem_order(&self, a: Elem) -> Result<u64> {
        let m = self.order - 1;
        Ok(m / gcd(self.dlog(a)?, m))
    }

    /// The `i`-fold Frobenius twist `x^(q^i)`; negative `i` uses
    /// `q^(i mod M)` since `x^(q^M) = x`.
    pub fn frobenius(&self, x: Elem, i: i64) -> Elem {
        if x.is_zero() {
            return x;
        }
        let k = i.rem_euclid(self.m as i64) as u32;
        if k == 0 {
            return x;
        }
        let m = (self.order - 1) as u128;
        let mut f: u128 = 1;
        for _ in 0..k {
            f = f * self.q as u128 % m;
        }
        let e = self.log[x.0 as usize] as u128 * f % m;
        Elem(self.exp[e as usize])
    }

    /// The image of an integer in the prime field.
    pub fn from_int(&self, k: i64) -> Elem {
        Elem(k.rem_euclid(self.p as i64) as u32)
    }

    /// `F_p` coordinates (low to high) of an element.
    pub fn coords(&self, a: Elem) -> Vec<u32> {
        decode(a.0, self.p, self.n)
    }

    pub fn from_coords(&self, c: &[u32]) -> Elem {
        Elem(encode(c, self.p))
    }

    /// All elements of the subfield `F_{q^r}` (`r | M`), zero first.
    pub fn subfield_elements(&self, r: u32) -> Result<Vec<Elem>> {
        if !self.m.is_multiple_of(r) {
            return Err(Error::InvalidField(format!("{r} does not divide M = {}", self.m)));
        }
        let sub = self.q.pow(r);
        let step = (self.order - 1) / (sub - 1);
        let mut v = vec![Elem::ZERO];
        v.extend((0..sub - 1).map(|j| self.gen_pow((j * step) as i64)));
        Ok(v)
    }

    /// Whether `x` lies in `F_{q^r}`.
    pub fn in_subfield(&self, x: Elem, r: u32) -> bool {
        self.frobenius(x, r as i64) == x
    }

    /// A field generator of `F_{q^r}` over `F_p` (a primitive element).
    pub fn subfield_generator(&self, r: u32) -> Elem {
        let sub = self.q.pow(r);
        self.gen_pow(((self.order - 1) / (sub - 1)) as i64)
    }

    /// Canonical root of `x^n = c`: the solution with the smallest discrete
    /// logarithm to the fixed generator.
    pub fn root_in_cyclic(&self, c: Elem, n: u64) -> Result<Elem> {
        if c.is_zero() || n == 0 {
            return Err(Error::Precondition("root_in_cyclic needs c != 0 and n >= 1".into()));
        }
        let m = self.order - 1;
        let l = self.dlog(c)?;
        let g = gcd(n % m, m);
        let g = if g == 0 { m } else { g };
        if l % g != 0 {
            return Err(Error::NoRoot { n, order: self.order });
        }
        // n x = l (mod m)  <=>  (n/g) x = l/g (mod m/g)
        let mg = m / g;
        let a = (n / g) % mg;
        let b = (l / g) % mg;
        let x = if mg == 1 { 0 } else { (b as u128 * mod_inverse_u64(a, mg) as u128 % mg as u128) as u64 };
        Ok(self.gen_pow(x as i64))
    }
}

fn mod_inverse_u64(a: u64, m: u64) -> u64 {
    let (mut old_r, mut r) = (a as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let qt = old_r / r;
        (old_r, r) = (r, old_r - qt * r);
        (old_s, s) = (s, old_s - qt * s);
    }
    old_s.rem_euclid(m as i128) as u64
}

/// Cyclotomic data of level `N` inside a field context.
#[derive(Clone, Debug)]
pub struct CycloData {
    pub n: u64,
    /// Prime-to-`p` part `N'` of `N`.
    pub nprime: u64,
    /// `|Gamma_N| = N'`.
    pub gamma: u64,
    /// `R = [k_N : k]`, the order of `q` modulo `N'`.
    pub r: u32,
    pub zeta: Elem,
    /// `Gamma_N` listed as `zeta^0, zeta^1, ..., zeta^(N'-1)`.
    pub roots: Vec<Elem>,
}

/// `(N', R)` for level `N` over `F_q`.
pub fn cyclotomic_params(q: u64, p: u64, n: u64) -> (u64, u32) {
    let mut nprime = n;
    while nprime.is_multiple_of(p) {
        nprime /= p;
    }
    (nprime, mult_order(q, nprime) as u32)
}

impl CycloData {
    pub fn new(field: &FieldCtx, n: u64) -> Result<CycloData> {
        if n == 0 {
            return Err(Error::Precondition("N must be positive".into()));
        }
        let (nprime, r) = cyclotomic_params(field.q(), field.p(), n);
        if !(field.order() - 1).is_multiple_of(nprime) {
            return Err(Error::RootOfUnityMissing(nprime));
        }
        let zeta = field.gen_pow(((field.order() - 1) / nprime) as i64);
        let roots = (0..nprime).map(|j| field.pow(zeta, j as i64).unwrap()).collect();
        Ok(CycloData { n, nprime, gamma: nprime, r, zeta, roots })
    }

    /// Index `j` with `x = zeta^j`, if `x` is an `N'`-th root of unity.
    pub fn index_of(&self, x: Elem) -> Option<u32> {
        self.roots.iter().position(|&r| r == x).map(|j| j as u32)
    }
}

/// Everything a computation at level `N` needs: the ambient field sized so
/// that every `mu`-root exists, and the cyclotomic data.
#[derive(Clone, Debug)]
pub struct Ctx {
    pub field: Field,
    pub cyclo: CycloData,
}

impl Ctx {
    /// Picks the smallest `M` (a multiple of `R`) such that for every
    /// `eps` in `Gamma_N` a `(q^R - 1)`-th root of `eps^R` exists in `F_{q^M}`.
    pub fn new(p: u64, e: u32, n: u64) -> Result<Ctx> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let q = ipow(p, e).ok_or_else(|| Error::InvalidField("q overflows".into()))?;
        let m = Self::required_degree(q, p, n)?;
        Self::with_degree(p, e, n, m)
    }

    pub fn with_degree(p: u64, e: u32, n: u64, m: u32) -> Result<Ctx> {
        let field = FieldCtx::new(p, e, m)?;
        let cyclo = CycloData::new(&field, n)?;
        if !m.is_multiple_of(cyclo.r) {
            return Err(Error::InvalidField(format!("M = {m} is not a multiple of R = {}", cyclo.r)));
        }
        Ok(Ctx { field, cyclo })
    }

    pub fn required_degree(q: u64, p: u64, n: u64) -> Result<u32> {
        if n == 0 {
            return Err(Error::Precondition("N must be positive".into()));
        }
        let (nprime, r) = cyclotomic_params(q, p, n);
        let need = nprime / gcd(nprime, r as u64);
        let qr = q.pow(r);
        let mut m = r;
        loop {
            let qm = ipow(q, m).filter(|&x| x <= MAX_ORDER).ok_or_else(|| {
                Error::InvalidField(format!("no extension degree up to the table limit fits N = {n}"))
            })?;
            if ((qm - 1) / (qr - 1)) % need == 0 {
                return Ok(m);
            }
            m += r;
        }
    }

    pub fn q(&self) -> u64 {
        self.field.q()
    }
    pub fn p(&self) -> u64 {
        self.field.p()
    }
    pub fn r(&self) -> u32 {
        self.cyclo.r
    }
    pub fn gamma(&self) -> u64 {
        self.cyclo.gamma
    }
    /// `zeta_N^j`.
    pub fn root(&self, j: u32) -> Elem {
        self.cyclo.roots[(j as u64 % self.cyclo.nprime) as usize]
    }

    /// Canonical `mu` for `eps = zeta^j`: a `(q^R - 1)`-th root of `eps^R`.
    pub fn mu(&self, j: u32) -> Result<Elem> {
        let eps = self.root(j);
        let c = self.field.pow(eps, self.r() as i64)?;
        self.field.root_in_cyclic(c, self.q().pow(self.r()) - 1)
    }

    /// Elements of the constant field `F_q`, zero first.
    pub fn fq_elements(&self) -> Vec<Elem> {
        self.field.subfield_elements(1).expect("1 divides M")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_two() {
        let f = FieldCtx::new(2, 1, 1).unwrap();
        assert_eq!(f.order(), 2);
        assert_eq!(f.generator(), Elem::ONE);
    }

    #[test]
    fn rejects_non_prime() {
        assert_eq!(FieldCtx::new(4, 1, 1).unwrap_err(), Error::NotPrime(4));
        assert_eq!(FieldCtx::new(9, 1, 2).unwrap_err(), Error::NotPrime(9));
    }

    #[test]
    fn rejects_reducible_modulus() {
        // x^2 + 1 = (x + 1)^2 over F_2
        assert_eq!(FieldCtx::with_modulus(2, 1, 2, vec![1, 0, 1]).unwrap_err(), Error::ReducibleModulus);
        // x^2 - 1 over F_3
        assert_eq!(FieldCtx::with_modulus(3, 1, 2, vec![2, 0, 1]).unwrap_err(), Error::ReducibleModulus);
        // x^2 + 1 over F_3 is irreducible but x is not primitive
        let f = FieldCtx::with_modulus(3, 1, 2, vec![1, 0, 1]).unwrap();
        assert_eq!(f.elem_order(f.generator()).unwrap(), 8);
    }

    #[test]
    fn f9_generator_order_exhaustive() {
        let f = FieldCtx::new(3, 1, 2).unwrap();
        let g = f.generator();
        let mut x = Elem::ONE;
        let mut seen = std::collections::HashSet::new();
        for _ in 0..8 {
            seen.insert(x);
            x = f.mul(x, g);
        }
        assert_eq!(x, Elem::ONE);
        assert_eq!(seen.len(), 8);
        assert!(!seen.contains(&Elem::ZERO));
    }

    #[test]
    fn frobenius_identity_on_prime_field() {
        let f = FieldCtx::new(3, 1, 1).unwrap();
        for a in 0..3 {
            let x = Elem(a);
            assert_eq!(f.pow(x, 3).unwrap(), x);
            assert_eq!(f.frobenius(x, 1), x);
        }
    }

    #[test]
    fn field_axioms_small() {
        for (p, e, m) in [(2, 1, 4), (3, 1, 2), (3, 1, 4), (2, 2, 3), (5, 1, 2)] {
            let f = FieldCtx::new(p, e, m).unwrap();
            let n = f.order() as u32;
            for a in 0..n {
                let a = Elem(a);
                assert_eq!(f.add(a, f.neg(a)), Elem::ZERO);
                if !a.is_zero() {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), Elem::ONE);
                }
                assert_eq!(f.frobenius(a, f.degree() as i64), a);
                for b in (0..n).step_by(7) {
                    let b = Elem(b);
                    for c in (0..n).step_by(11) {
                        let c = Elem(c);
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn cyclotomic_examples() {
        let (np, r) = cyclotomic_params(3, 3, 2);
        assert_eq!((np, r), (2, 1));
        let (np, r) = cyclotomic_params(3, 3, 4);
        assert_eq!((np, r), (4, 2));
        let (np, r) = cyclotomic_params(2, 2, 1);
        assert_eq!((np, r), (1, 1));
        // p | N: only the prime-to-p part counts
        let (np, r) = cyclotomic_params(3, 3, 6);
        assert_eq!((np, r), (2, 1));

        let ctx = Ctx::new(2, 1, 1).unwrap();
        assert_eq!(ctx.cyclo.roots, vec![Elem::ONE]);
        let ctx = Ctx::new(3, 1, 4).unwrap();
        assert_eq!(ctx.cyclo.gamma, 4);
        let z = ctx.cyclo.zeta;
        for j in 1..4 {
            assert_ne!(ctx.field.pow(z, j).unwrap(), Elem::ONE);
        }
        assert_eq!(ctx.field.pow(z, 4).unwrap(), Elem::ONE);
        for &eps in &ctx.cyclo.roots {
            assert!(ctx.field.in_subfield(eps, ctx.r()));
            assert_eq!(ctx.field.frobenius(eps, ctx.r() as i64), eps);
        }
    }

    #[test]
    fn required_degrees() {
        assert_eq!(Ctx::required_degree(3, 3, 2).unwrap(), 2);
        assert_eq!(Ctx::required_degree(3, 3, 4).unwrap(), 4);
        assert_eq!(Ctx::required_degree(2, 2, 3).unwrap(), 6);
        assert_eq!(Ctx::required_degree(2, 2, 1).unwrap(), 1);
        assert_eq!(Ctx::required_degree(3, 3, 1).unwrap(), 1);
    }

    #[test]
    fn roots_in_cyclic() {
        let f = FieldCtx::new(3, 1, 2).unwrap();
        assert_eq!(f.root_in_cyclic(Elem::ONE, 8).unwrap(), Elem::ONE);
        // mu^8 = -1 has no solution inside F_9 since x^8 = 1 there
        let minus_one = f.neg(Elem::ONE);
        assert!(matches!(f.root_in_cyclic(minus_one, 8), Err(Error::NoRoot { .. })));
        // In F_81 it does; compare with exhaustive search for the minimal log.
        let f = FieldCtx::new(3, 1, 4).unwrap();
        let minus_one = f.neg(Elem::ONE);
        let mu = f.root_in_cyclic(minus_one, 8).unwrap();
        assert_eq!(f.pow(mu, 8).unwrap(), minus_one);
        let brute = (0..80).find(|&k| f.pow(f.gen_pow(k), 8).unwrap() == minus_one).unwrap();
        assert_eq!(mu, f.gen_pow(brute));
    }

    #[test]
    fn frobenius_composition() {
        let f = FieldCtx::new(2, 1, 6).unwrap();
        for a in 0..64 {
            let x = Elem(a);
            for i in -7..7 {
                for j in -7..7 {
                    assert_eq!(f.frobenius(f.frobenius(x, i), j), f.frobenius(x, i + j));
                }
            }
        }
        let f9 = FieldCtx::new(3, 1, 2).unwrap();
        let g = f9.generator();
        let g3 = f9.frobenius(g, 1);
        assert_eq!(g3, f9.pow(g, 3).unwrap());
        assert_eq!(f9.elem_order(g3).unwrap(), 8);
    }
}
