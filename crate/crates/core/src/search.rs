//! Bounded-degree linear relations among truncated series.
//!
//! Unknowns are the `θ`-coefficients (degree `≤ D`) of one polynomial per
//! value; equations are the coefficients of the combination on the window
//! where every product `θ^j v_i` is known. The nullspace is computed exactly
//! over the ambient field `F_{q^M}`.

use serde::Serialize;

use crate::array::{enumerate_cs, PositiveArray};
use crate::error::{Error, Result};
use crate::field::{Ctx, Elem, Field};
use crate::poly::ThetaPoly;
use crate::series::{carlitz_period, InfSeries};
use crate::values::Evaluator;

/// Extra equations demanded beyond the number of unknowns.
pub const SAFETY_MARGIN: usize = 16;

/// Reduced row echelon form, built one row at a time.
pub struct Echelon {
    field: Field,
    ncols: usize,
    rows: Vec<Vec<Elem>>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn new(field: &Field, ncols: usize) -> Self {
        Echelon { field: field.clone(), ncols, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Adds a row; returns whether the rank grew.
    pub fn push(&mut self, mut row: Vec<Elem>) -> bool {
        let f = &self.field;
        assert_eq!(row.len(), self.ncols);
        for (r, &p) in self.rows.iter().zip(&self.pivots) {
            let c = row[p];
            if c.is_zero() {
                continue;
            }
            for (x, &y) in row.iter_mut().zip(r).skip(p) {
                if !y.is_zero() {
                    *x = f.sub(*x, f.mul(c, y));
                }
            }
        }
        let Some(p) = row.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = f.inv(row[p]).expect("nonzero pivot");
        for x in row.iter_mut().skip(p) {
            *x = f.mul(*x, inv);
        }
        for r in self.rows.iter_mut() {
            let c = r[p];
            if c.is_zero() {
                continue;
            }
            for (x, &y) in r.iter_mut().zip(&row).skip(p) {
                if !y.is_zero() {
                    *x = f.sub(*x, f.mul(c, y));
                }
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.rows.insert(at, row);
        true
    }

    /// A basis of the right kernel, one vector per free column.
    pub fn nullspace(&self) -> Vec<Vec<Elem>> {
        let f = &self.field;
        let mut out = Vec::new();
        let mut pi = 0;
        for free in 0..self.ncols {
            if pi < self.pivots.len() && self.pivots[pi] == free {
                pi += 1;
                continue;
            }
            let mut v = vec![Elem::ZERO; self.ncols];
            v[free] = Elem::ONE;
            for (r, &p) in self.rows.iter().zip(&self.pivots) {
                v[p] = f.neg(r[free]);
            }
            out.push(v);
        }
        out
    }
}

/// All relations `Σ a_i(θ) v_i = 0` with `deg a_i ≤ D` visible on the window.
#[derive(Clone, Debug)]
pub struct RelationSpace {
    pub degree_bound: u32,
    pub equations: usize,
    pub unknowns: usize,
    pub rank: usize,
    /// `u`-exponents `[lo, hi)` on which the combination is matched.
    pub window: (i64, i64),
    pub relations: Vec<Vec<ThetaPoly>>,
}

/// `θ^j` as `(sign, u-shift)` in the ring of ramification `ram`.
fn theta_power(field: &Field, ram: u64, j: u32) -> (Elem, i64) {
    let shift = -(ram as i64) * j as i64;
    let c = InfSeries::theta(field, ram).pow(j as u64).coeff(shift).expect("exact");
    (c, shift)
}

/// Finds every relation of degree `≤ d` among `values` (one ring for all).
pub fn find_relations(field: &Field, values: &[InfSeries], d: u32) -> Result<RelationSpace> {
    let ram = values.first().map(|v| v.ram()).ok_or_else(|| Error::Precondition("no values".into()))?;
    if values.iter().any(|v| v.ram() != ram) {
        return Err(Error::Precondition("values live in different rings".into()));
    }
    let shifts: Vec<(Elem, i64)> = (0..=d).map(|j| theta_power(field, ram, j)).collect();
    let low = shifts[d as usize].1;
    let hi = values.iter().map(|v| v.prec()).min().unwrap() + low;
    let lo = values.iter().map(|v| v.valuation().unwrap_or(v.prec())).min().unwrap() + low;
    let unknowns = values.len() * (d as usize + 1);
    let equations = (hi - lo).max(0) as usize;
    if equations < unknowns + SAFETY_MARGIN {
        return Err(Error::Precision(format!(
            "{equations} equations for {unknowns} unknowns; raise the precision"
        )));
    }
    let mut ech = Echelon::new(field, unknowns);
    for k in lo..hi {
        let mut row = Vec::with_capacity(unknowns);
        for v in values {
            for &(c, s) in &shifts {
                let x = v.coeff(k - s).ok_or_else(|| Error::Precision(format!("coefficient {k} unknown")))?;
                row.push(field.mul(c, x));
            }
        }
        ech.push(row);
        if ech.rank() == unknowns {
            break;
        }
    }
    let relations: Vec<Vec<ThetaPoly>> = ech
        .nullspace()
        .into_iter()
        .map(|v| {
            v.chunks(d as usize + 1)
                .map(|c| ThetaPoly::from_terms(field, c.iter().enumerate().map(|(j, &x)| (j as u64, x))))
                .collect()
        })
        .collect();
    let space = RelationSpace { degree_bound: d, equations, unknowns, rank: ech.rank(), window: (lo, hi), relations };
    for r in &space.relations {
        let res = combine(values, r);
        if res.nonzero_terms().next().is_some() || res.prec() < hi {
            return Err(Error::Falsified("nullspace vector fails the direct residual check".into()));
        }
    }
    Ok(space)
}

/// `Σ a_i(θ) v_i`.
pub fn combine(values: &[InfSeries], coeffs: &[ThetaPoly]) -> InfSeries {
    let f = values[0].field();
    let ram = values[0].ram();
    let mut acc = InfSeries::exact_zero(f, ram);
    for (v, a) in values.iter().zip(coeffs) {
        for &(j, c) in a.terms() {
            let (sign, s) = theta_power(f, ram, j as u32);
            acc = acc.add(&v.shift(s).scale(f.mul(sign, c)));
        }
    }
    acc
}

/// Scales a relation so that its first nonzero leading coefficient is 1.
pub fn normalize(rel: &[ThetaPoly]) -> Vec<ThetaPoly> {
    let Some(lead) = rel.iter().find(|a| !a.is_zero()) else {
        return rel.to_vec();
    };
    let f = lead.field().clone();
    let inv = f.inv(lead.leading()).expect("nonzero");
    rel.iter().map(|a| a.scale(inv)).collect()
}

/// One relation, printed and checked for rationality over `F_q`.
#[derive(Clone, Debug, Serialize)]
pub struct RelationJson {
    pub degree: u32,
    pub coefficients: Vec<(String, String)>,
    pub coefficients_in_k: bool,
    pub involves_period: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct IndependenceReport {
    pub q: u64,
    pub n: u64,
    pub weight: u32,
    pub degree_bound: u32,
    pub precision: i64,
    pub with_period: bool,
    pub labels: Vec<String>,
    pub equations: usize,
    pub unknowns: usize,
    pub rank: usize,
    /// Dimension over `F_{q^M}` of the relation space at each degree `0..=D`.
    pub nullity_by_degree: Vec<usize>,
    /// Rank of the relation module: growth of the nullity from `D-1` to `D`.
    pub relation_rank: usize,
    pub minimal_relation: Option<RelationJson>,
    pub u_window: (i64, i64),
    /// Heuristic `x`-precision beyond which characters are told apart.
    pub coverage_precision: i64,
    pub precision_sufficient: bool,
}

impl IndependenceReport {
    /// The expected relation rank: one exactly when `(q-1) | w` and the
    /// period is among the values.
    pub fn expected_relation_rank(&self) -> usize {
        usize::from(self.with_period && (self.weight as u64).is_multiple_of(self.q - 1))
    }

    /// `Some(true)` when the search agrees with the expectation, `Some(false)`
    /// when it contradicts it on a sufficient window, `None` when inconclusive.
    pub fn consistent(&self) -> Option<bool> {
        let ok = self.relation_rank == self.expected_relation_rank()
            && self.minimal_relation.as_ref().is_none_or(|m| m.involves_period && m.coefficients_in_k);
        if ok {
            Some(true)
        } else if self.precision_sufficient {
            Some(false)
        } else {
            None
        }
    }
}

/// `deg ℓ_d = (q^(d+1) - q) / (q - 1)`.
pub fn ell_valuation(q: u64, d: u32) -> i64 {
    ((q.pow(d + 1) - q) / (q - 1)) as i64
}

/// Smallest valuation at which the chains `d_1 > … > d_r ≥ 0` of `Li(𝛆;𝔰)`
/// have met every residue class modulo `n`, maximized over the classes.
/// Below it, values with different characters are finite sums over too few
/// classes and may satisfy spurious relations.
pub fn class_valuation(q: u64, n: u32, s: &[u32]) -> i64 {
    let r = s.len();
    let mut worst = 0;
    let mut class = vec![0u32; r];
    loop {
        let mut d = vec![0u32; r];
        let mut v = 0;
        for i in (0..r).rev() {
            let floor = if i + 1 < r { d[i + 1] + 1 } else { 0 };
            d[i] = floor + (class[i] + n - floor % n) % n;
            v += s[i] as i64 * ell_valuation(q, d[i]);
        }
        worst = worst.max(v);
        let Some(i) = (0..r).find(|&i| class[i] + 1 < n) else {
            return worst;
        };
        class[i] += 1;
        class[..i].iter_mut().for_each(|c| *c = 0);
    }
}

/// `q · max_c class_valuation + D` over `CS_{N,w}`.
pub fn coverage_precision(ctx: &Ctx, w: u32, d: u32) -> i64 {
    let q = ctx.q();
    let n = ctx.cyclo.nprime as u32;
    let worst = crate::array::tuples_s(w, q as u32).iter().map(|s| class_valuation(q, n, s)).max().unwrap_or(0);
    q as i64 * worst + d as i64
}

/// The family `{π̃^w} ∪ {μ_c Li(c) : c ∈ CS_{N,w}}` in the ring `u`, all
/// known to `u`-precision `(q-1) p`. Dividing by `π̃^w` gives `{1} ∪ {L(c)(θ)}`.
pub fn period_scaled_values(ev: &Evaluator, w: u32, p: i64, with_period: bool) -> Result<(Vec<String>, Vec<InfSeries>)> {
    let ctx = ev.ctx();
    let f = &ctx.field;
    let q = ctx.q();
    let ram = q - 1;
    let target = ram as i64 * p;
    let mut labels = Vec::new();
    let mut values = Vec::new();
    if with_period {
        let qi = q as i64;
        let pi = carlitz_period(f, target + qi * w as i64 - qi)?;
        labels.push("pi^w".to_string());
        values.push(pi.pow(w as u64).truncate(target));
    }
    for c in enumerate_cs(w, q as u32, ctx.gamma() as u32) {
        let mu = mu_of(ctx, &c)?;
        labels.push(c.to_string());
        values.push(ev.li(&c, p).ramify_to(ram)?.scale(mu).truncate(target));
    }
    Ok((labels, values))
}

/// `μ_1 ⋯ μ_r` for the characters of `c`.
pub fn mu_of(ctx: &Ctx, c: &PositiveArray) -> Result<Elem> {
    let mut m = Elem::ONE;
    for &e in &c.e {
        m = ctx.field.mul(m, ctx.mu(e)?);
    }
    Ok(m)
}

/// Searches relations among the period-scaled `CS` values (optionally with
/// `π̃^w`) for every degree up to `d` at `x`-precision `p`.
pub fn certify_independence(ev: &Evaluator, w: u32, d: u32, p: i64, with_period: bool) -> Result<IndependenceReport> {
    let ctx = ev.ctx();
    let f = &ctx.field;
    let (labels, values) = period_scaled_values(ev, w, p, with_period)?;
    let mut nullity = Vec::new();
    let mut minimal = None;
    let mut last = None;
    for k in 0..=d {
        let space = find_relations(f, &values, k)?;
        nullity.push(space.relations.len());
        if minimal.is_none() {
            if let Some(r) = space.relations.first() {
                minimal = Some(relation_json(&labels, &normalize(r), k, with_period));
            }
        }
        last = Some(space);
    }
    let last = last.expect("d >= 0");
    let relation_rank = match nullity.len() {
        1 => nullity[0],
        n => nullity[n - 1] - nullity[n - 2],
    };
    Ok(IndependenceReport {
        q: ctx.q(),
        n: ctx.cyclo.n,
        weight: w,
        degree_bound: d,
        precision: p,
        with_period,
        labels,
        equations: last.equations,
        unknowns: last.unknowns,
        rank: last.rank,
        nullity_by_degree: nullity,
        relation_rank,
        minimal_relation: minimal,
        u_window: last.window,
        coverage_precision: coverage_precision(ctx, w, d),
        precision_sufficient: p >= coverage_precision(ctx, w, d),
    })
}

fn relation_json(labels: &[String], rel: &[ThetaPoly], degree: u32, with_period: bool) -> RelationJson {
    RelationJson {
        degree,
        coefficients: labels
            .iter()
            .zip(rel)
            .filter(|(_, a)| !a.is_zero())
            .map(|(l, a)| (l.clone(), a.to_string()))
            .collect(),
        coefficients_in_k: rel.iter().all(|a| a.coeffs_in_subfield(1)),
        involves_period: with_period && !rel[0].is_zero(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn echelon_kernel() {
        let ctx = Ctx::new(3, 1, 1).unwrap();
        let f = &ctx.field;
        let one = Elem::ONE;
        let two = f.from_int(2);
        let mut e = Echelon::new(f, 3);
        assert!(e.push(vec![one, one, Elem::ZERO]));
        assert!(!e.push(vec![two, two, Elem::ZERO]));
        assert!(e.push(vec![Elem::ZERO, one, one]));
        let ns = e.nullspace();
        assert_eq!(ns.len(), 1);
        assert_eq!(ns[0], vec![one, two, one]);
    }

    #[test]
    fn class_valuations() {
        assert_eq!(ell_valuation(3, 0), 0);
        assert_eq!(ell_valuation(3, 2), 12);
        // chains (5,3,1) and (7,3) are the latest classes
        assert_eq!(class_valuation(3, 2, &[1, 1, 1]), 363 + 39 + 3);
        assert_eq!(class_valuation(3, 4, &[1, 1]), 3279 + 39);
        assert_eq!(class_valuation(2, 1, &[1, 1]), 2);
    }

    #[test]
    fn duplicate_values_cancel() {
        let ctx = Ctx::new(3, 1, 1).unwrap();
        let ev = Evaluator::new(ctx.clone());
        let x = ev.li(&PositiveArray::single(2, 0, 1), 120);
        let sp = find_relations(&ctx.field, &[x.clone(), x], 2).unwrap();
        assert_eq!(sp.relations.len(), 3);
        let first = normalize(&sp.relations[0]);
        assert_eq!(first[0].add(&first[1]), ThetaPoly::zero(&ctx.field));
    }

    #[test]
    fn refuses_underdetermined() {
        let ctx = Ctx::new(3, 1, 1).unwrap();
        let ev = Evaluator::new(ctx.clone());
        let x = ev.li(&PositiveArray::single(1, 0, 1), 20);
        assert!(matches!(find_relations(&ctx.field, &[x.clone(), x], 8), Err(Error::Precision(_))));
    }
}
