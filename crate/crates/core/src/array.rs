//! Positive arrays `(ε; s)`, the index sets `S_w`, `T_w`, `CS_{N,w}`,
//! `CT_{N,w}`, the bijection `ι`, and the dimension sequence `d_N(w)`.
//!
//! Characters are stored as exponents: `j` stands for `ζ_N^j` with
//! `0 <= j < N'`.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PositiveArray {
    /// Exponents `s_i >= 1`.
    pub s: Vec<u32>,
    /// Character exponents, `ε_i = ζ_N^(e_i)`.
    pub e: Vec<u32>,
    /// Order of the character group, `γ_N = N'`.
    pub gamma: u32,
}

impl PartialOrd for PositiveArray {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Deterministic total order: weight, depth, exponents, characters.
impl Ord for PositiveArray {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.weight(), self.depth(), &self.s, &self.e, self.gamma).cmp(&(
            other.weight(),
            other.depth(),
            &other.s,
            &other.e,
            other.gamma,
        ))
    }
}

impl fmt::Debug for PositiveArray {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// Written as `(s1;e1),(s2;e2),...`; the empty array prints as `()`.
impl fmt::Display for PositiveArray {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.s.is_empty() {
            return write!(f, "()");
        }
        let parts: Vec<String> = self.s.iter().zip(&self.e).map(|(s, e)| format!("({s};{e})")).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl PositiveArray {
    pub fn new(s: Vec<u32>, e: Vec<u32>, gamma: u32) -> Result<Self> {
        if s.len() != e.len() {
            return Err(Error::Precondition("s and ε must have equal length".into()));
        }
        if gamma == 0 {
            return Err(Error::Precondition("γ_N must be positive".into()));
        }
        if s.contains(&0) {
            return Err(Error::Precondition("entries of s must be positive".into()));
        }
        let e = e.into_iter().map(|x| x % gamma).collect();
        Ok(PositiveArray { s, e, gamma })
    }

    /// All characters trivial.
    pub fn trivial(s: Vec<u32>, gamma: u32) -> Self {
        let n = s.len();
        PositiveArray::new(s, vec![0; n], gamma).expect("valid array")
    }

    pub fn empty(gamma: u32) -> Self {
        PositiveArray { s: Vec::new(), e: Vec::new(), gamma }
    }

    pub fn single(s: u32, e: u32, gamma: u32) -> Self {
        PositiveArray { s: vec![s], e: vec![e % gamma], gamma }
    }

    /// Parses `(s;e),(s;e)` (a comma may replace the semicolon). `()` or the
    /// empty string is the empty array.
    pub fn parse(text: &str, gamma: u32) -> Result<Self> {
        let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if t.is_empty() || t == "()" {
            return Ok(Self::empty(gamma));
        }
        let mut s = Vec::new();
        let mut e = Vec::new();
        let body = t.strip_prefix('(').and_then(|x| x.strip_suffix(')')).ok_or_else(|| bad(text))?;
        for chunk in body.split("),(") {
            let mut it = chunk.split([';', ',']);
            let a = it.next().ok_or_else(|| bad(text))?.parse::<u32>().map_err(|_| bad(text))?;
            let b = it.next().unwrap_or("0").parse::<u32>().map_err(|_| bad(text))?;
            if it.next().is_some() {
                return Err(bad(text));
            }
            s.push(a);
            e.push(b);
        }
        PositiveArray::new(s, e, gamma)
    }

    pub fn weight(&self) -> u32 {
        self.s.iter().sum()
    }

    pub fn depth(&self) -> usize {
        self.s.len()
    }

    pub fn is_empty(&self) -> bool {
        self.s.is_empty()
    }

    /// `χ(ε)` as an exponent.
    pub fn chi(&self) -> u32 {
        (self.e.iter().map(|&x| x as u64).sum::<u64>() % self.gamma as u64) as u32
    }

    /// Length of `Init(s)`: the longest prefix with all entries `<= q`.
    pub fn init_len(&self, q: u32) -> usize {
        self.s.iter().take_while(|&&x| x <= q).count()
    }

    pub fn init(&self, q: u32) -> &[u32] {
        &self.s[..self.init_len(q)]
    }

    /// Partial sums `s_1 + ... + s_i` for `i = 1..=depth`.
    pub fn prefix_sums(&self) -> Vec<u32> {
        self.s
            .iter()
            .scan(0u32, |acc, &x| {
                *acc += x;
                Some(*acc)
            })
            .collect()
    }

    /// Partial sum `s_1 + ... + s_i` with `s_j = 0` beyond the depth.
    pub fn prefix_sum(&self, i: usize) -> u32 {
        self.s.iter().take(i).sum()
    }

    /// The array order `≤`: equal weight and character, dominated prefix sums.
    pub fn leq(&self, other: &Self) -> bool {
        if self.weight() != other.weight() || self.chi() != other.chi() {
            return false;
        }
        let n = self.depth().max(other.depth());
        (1..=n).all(|i| self.prefix_sum(i) <= other.prefix_sum(i))
    }

    /// Whether `T_k(self) <= T_k(other)` as tuples (weights equal, prefix
    /// sums from position `k` on dominated).
    pub fn tk_leq(&self, other: &Self, k: usize) -> bool {
        if self.weight() != other.weight() {
            return false;
        }
        let n = self.depth().max(other.depth());
        (k..=n.max(k)).all(|i| self.prefix_sum(i) <= other.prefix_sum(i))
    }

    /// Entrywise sum `(ε; s) + (ε'; t)` (missing entries are `(1; 0)`).
    pub fn plus(&self, other: &Self) -> Self {
        let n = self.depth().max(other.depth());
        let s = (0..n).map(|i| self.s.get(i).unwrap_or(&0) + other.s.get(i).unwrap_or(&0)).collect();
        let e = (0..n).map(|i| (self.e.get(i).unwrap_or(&0) + other.e.get(i).unwrap_or(&0)) % self.gamma).collect();
        PositiveArray { s, e, gamma: self.gamma }
    }

    /// `(s_1; e_1)`.
    pub fn head(&self) -> Option<(u32, u32)> {
        self.s.first().map(|&s| (s, self.e[0]))
    }

    /// `(ε_-; s_-)`.
    pub fn tail(&self) -> Self {
        PositiveArray { s: self.s[1.min(self.s.len())..].to_vec(), e: self.e[1.min(self.e.len())..].to_vec(), gamma: self.gamma }
    }

    pub fn prepend(&self, s: u32, e: u32) -> Self {
        let mut out = PositiveArray { s: vec![s], e: vec![e % self.gamma], gamma: self.gamma };
        out.s.extend_from_slice(&self.s);
        out.e.extend_from_slice(&self.e);
        out
    }

    pub fn concat(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.s.extend_from_slice(&other.s);
        out.e.extend_from_slice(&other.e);
        out
    }

    /// First `k` entries.
    pub fn prefix(&self, k: usize) -> Self {
        PositiveArray { s: self.s[..k].to_vec(), e: self.e[..k].to_vec(), gamma: self.gamma }
    }

    /// Entries from index `k` on.
    pub fn suffix(&self, k: usize) -> Self {
        PositiveArray { s: self.s[k..].to_vec(), e: self.e[k..].to_vec(), gamma: self.gamma }
    }

    /// Membership in `CT_{N,w}`: `s_1..s_{n-1} <= q`, `s_n < q`.
    pub fn in_ct(&self, q: u32) -> bool {
        match self.s.split_last() {
            None => true,
            Some((&last, rest)) => last < q && rest.iter().all(|&x| x <= q),
        }
    }

    /// Membership in `CS_{N,w}`: `q ∤ s_i` for every `i`.
    pub fn in_cs(&self, q: u32) -> bool {
        self.s.iter().all(|&x| x % q != 0)
    }

    /// Inverse character exponent.
    pub fn inv_char(&self, e: u32) -> u32 {
        (self.gamma - e % self.gamma) % self.gamma
    }

    pub fn mul_char(&self, a: u32, b: u32) -> u32 {
        (a + b) % self.gamma
    }
}

fn bad(text: &str) -> Error {
    Error::Config(format!("cannot parse array {text:?}; expected (s;e),(s;e),..."))
}

/// All compositions of `w` (ordered tuples of positive integers).
pub fn compositions(w: u32) -> Vec<Vec<u32>> {
    if w == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in 1..=w {
        for mut rest in compositions(w - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// `S_w`: compositions of `w` with `q ∤ s_i`.
pub fn tuples_s(w: u32, q: u32) -> Vec<Vec<u32>> {
    compositions(w).into_iter().filter(|t| t.iter().all(|&x| x % q != 0)).collect()
}

/// `T_w`: compositions of `w` with `s_1..s_{n-1} <= q` and `s_n < q`.
pub fn tuples_t(w: u32, q: u32) -> Vec<Vec<u32>> {
    compositions(w)
        .into_iter()
        .filter(|t| match t.split_last() {
            None => true,
            Some((&l, rest)) => l < q && rest.iter().all(|&x| x <= q),
        })
        .collect()
}

/// Every character assignment for the tuple `s`.
pub fn with_all_characters(s: &[u32], gamma: u32) -> Vec<PositiveArray> {
    let n = s.len();
    let total = (gamma as u64).pow(n as u32);
    (0..total)
        .map(|mut code| {
            let mut e = vec![0u32; n];
            for slot in e.iter_mut().rev() {
                *slot = (code % gamma as u64) as u32;
                code /= gamma as u64;
            }
            PositiveArray { s: s.to_vec(), e, gamma }
        })
        .collect()
}

/// All positive arrays of weight `w`.
pub fn all_arrays(w: u32, gamma: u32) -> Vec<PositiveArray> {
    let mut v: Vec<PositiveArray> = compositions(w).iter().flat_map(|s| with_all_characters(s, gamma)).collect();
    v.sort();
    v
}

pub fn enumerate_cs(w: u32, q: u32, gamma: u32) -> Vec<PositiveArray> {
    let mut v: Vec<PositiveArray> = tuples_s(w, q).iter().flat_map(|s| with_all_characters(s, gamma)).collect();
    v.sort();
    v
}

pub fn enumerate_ct(w: u32, q: u32, gamma: u32) -> Vec<PositiveArray> {
    let mut v: Vec<PositiveArray> = tuples_t(w, q).iter().flat_map(|s| with_all_characters(s, gamma)).collect();
    v.sort();
    v
}

/// `ι: S_w → T_w`, `s_i = h_i q + r_i ↦ (q^{h_1}, r_1, ..., q^{h_n}, r_n)`.
pub fn iota(s: &[u32], q: u32) -> Result<Vec<u32>> {
    let mut out = Vec::new();
    for &x in s {
        if x % q == 0 {
            return Err(Error::IotaUndefined(s.to_vec()));
        }
        out.extend(std::iter::repeat_n(q, (x / q) as usize));
        out.push(x % q);
    }
    Ok(out)
}

/// Inverse of [`iota`] on `T_w`.
pub fn iota_inv(t: &[u32], q: u32) -> Result<Vec<u32>> {
    let mut out = Vec::new();
    let mut acc = 0u32;
    for &x in t {
        if x > q {
            return Err(Error::Precondition(format!("{t:?} is not in T_w")));
        }
        acc += x;
        if x < q {
            out.push(acc);
            acc = 0;
        }
    }
    if acc != 0 {
        return Err(Error::Precondition(format!("{t:?} is not in T_w")));
    }
    Ok(out)
}

/// Lengths of the `ι`-blocks of `ι(s)`: block `i` has `h_i + 1` entries.
pub fn iota_blocks(s: &[u32], q: u32) -> Vec<usize> {
    s.iter().map(|&x| (x / q) as usize + 1).collect()
}

/// The dimension sequence `d_N(w)` for `γ_N = gamma`.
pub fn dim_dn(w: u32, q: u32, gamma: u64) -> u128 {
    let mut d: Vec<u128> = Vec::with_capacity(w as usize + 1);
    let g = gamma as u128;
    for n in 0..=w {
        let v = if n == 0 {
            1
        } else if n < q {
            g * (g + 1).pow(n - 1)
        } else if n == q {
            g * ((g + 1).pow(n - 1) - 1)
        } else {
            let s: u128 = (1..q).map(|i| d[(n - i) as usize]).sum();
            g * s + d[(n - q) as usize]
        };
        d.push(v);
    }
    d[w as usize]
}

/// `|CS_{N,w}| = Σ_{s ∈ S_w} γ^depth(s)`, counted without materializing.
pub fn count_cs(w: u32, q: u32, gamma: u64) -> u128 {
    tuples_s(w, q).iter().map(|s| (gamma as u128).pow(s.len() as u32)).sum()
}

pub fn count_ct(w: u32, q: u32, gamma: u64) -> u128 {
    tuples_t(w, q).iter().map(|s| (gamma as u128).pow(s.len() as u32)).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_roundtrip() {
        let a = PositiveArray::parse("(3;1),(2;0)", 4).unwrap();
        assert_eq!(a.s, vec![3, 2]);
        assert_eq!(a.e, vec![1, 0]);
        assert_eq!(PositiveArray::parse(&a.to_string(), 4).unwrap(), a);
        assert_eq!(PositiveArray::parse("(3,1)", 1).unwrap().s, vec![3]);
        assert!(PositiveArray::parse("()", 2).unwrap().is_empty());
        assert!(PositiveArray::parse("(0;1)", 2).is_err());
        assert!(PositiveArray::parse("3;1", 2).is_err());
    }

    #[test]
    fn init_and_order() {
        let a = PositiveArray::trivial(vec![2, 3, 4, 1], 1);
        assert_eq!(a.init(3), &[2, 3]);
        assert_eq!(PositiveArray::trivial(vec![4, 1], 1).init(3), &[] as &[u32]);
        let b = PositiveArray::trivial(vec![1, 2, 2], 1);
        let c = PositiveArray::trivial(vec![2, 3], 1);
        assert!(b.leq(&c));
        assert!(!c.leq(&b));
    }

    #[test]
    fn dims_examples() {
        assert_eq!(dim_dn(0, 3, 2), 1);
        let v: Vec<u128> = (1..=4).map(|w| dim_dn(w, 3, 2)).collect();
        assert_eq!(v, vec![2, 6, 16, 46]);
        let s3 = tuples_s(3, 3);
        assert_eq!(s3.len(), 3);
        assert_eq!(count_cs(3, 3, 2), 16);
    }

    #[test]
    fn iota_examples() {
        assert_eq!(iota(&[4, 2], 3).unwrap(), vec![3, 1, 2]);
        assert_eq!(iota(&[1], 3).unwrap(), vec![1]);
        assert!(matches!(iota(&[3], 3), Err(Error::IotaUndefined(_))));
        for q in [2, 3, 4] {
            for w in 1..=8 {
                let ss = tuples_s(w, q);
                let tt = tuples_t(w, q);
                assert_eq!(ss.len(), tt.len());
                for s in &ss {
                    let t = iota(s, q).unwrap();
                    assert!(tt.contains(&t));
                    assert_eq!(&iota_inv(&t, q).unwrap(), s);
                }
            }
        }
    }
}
