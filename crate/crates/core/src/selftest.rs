//! The eight acceptance criteria, runnable at two scales. `Full` runs the
//! pinned parameters; `Small` is a quick smoke pass of the same code paths.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::array::{all_arrays, compositions, count_cs, dim_dn, enumerate_cs, with_all_characters, PositiveArray};
use crate::basis::TransitionMatrix;
use crate::checks::{agree_failures, comb_matches, product_failures, ratcomb_matches};
use crate::field::Ctx;
use crate::motives::{check_trivialization, omega_residual, sigma_degree_bound_holds, sigma_residual, solve_sigma_equation, value_identity};
use crate::poly::{ThetaPoly, TPoly};
use crate::reduce::{Operators, Reducer};
use crate::search::certify_independence;
use crate::values::{Evaluator, Flavor};

/// The `(q, N)` pairs every criterion sweeps.
pub const PAIRS: [(u64, u64); 5] = [(2, 1), (2, 3), (3, 1), (3, 2), (3, 4)];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Scale {
    Small,
    Full,
}

#[derive(Clone, Debug, Serialize)]
pub struct Outcome {
    pub id: u8,
    pub title: &'static str,
    pub passed: bool,
    pub checked: usize,
    pub failures: Vec<String>,
    /// Observations that do not decide the outcome.
    pub notes: Vec<String>,
    pub seconds: f64,
    pub budget_seconds: f64,
}

impl Outcome {
    pub fn line(&self) -> String {
        format!(
            "criterion {} [{}] {}: {} checks, {:.2}s (budget {:.0}s){}",
            self.id,
            if self.passed { "PASS" } else { "FAIL" },
            self.title,
            self.checked,
            self.seconds,
            self.budget_seconds,
            self.failures.first().map(|f| format!("; first failure: {f}")).unwrap_or_default()
        )
    }
}

struct Tally {
    checked: usize,
    failures: Vec<String>,
    notes: Vec<String>,
}

impl Tally {
    fn new() -> Self {
        Tally { checked: 0, failures: Vec::new(), notes: Vec::new() }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    fn extend(&mut self, fails: Vec<String>) {
        self.checked += 1;
        self.failures.extend(fails);
    }
}

fn ctx(q: u64, n: u64) -> Ctx {
    Ctx::new(q, 1, n).expect("pinned pairs are valid")
}

fn finish(id: u8, title: &'static str, budget: f64, start: Instant, t: Tally) -> Outcome {
    let seconds = start.elapsed().as_secs_f64();
    let mut failures = t.failures;
    if seconds > budget {
        failures.push(format!("runtime {seconds:.1}s exceeds {budget:.0}s"));
    }
    Outcome { id, title, passed: failures.is_empty(), checked: t.checked, failures, notes: t.notes, seconds, budget_seconds: budget }
}

/// `|CS_{N,w}| = d_N(w)`, with the enumeration itself for small weights.
pub fn dimensions(scale: Scale) -> Outcome {
    let start = Instant::now();
    let mut t = Tally::new();
    let wmax = if scale == Scale::Full { 10 } else { 6 };
    for (q, n) in PAIRS {
        let g = ctx(q, n).gamma();
        for w in 0..=wmax {
            let d = dim_dn(w, q as u32, g);
            t.check(count_cs(w, q as u32, g) == d, || format!("q={q} N={n} w={w}: |CS| != d_N(w) = {d}"));
            if w <= 6 {
                let listed = if w == 0 { 1 } else { enumerate_cs(w, q as u32, g as u32).len() as u128 };
                t.check(listed == d, || format!("q={q} N={n} w={w}: enumeration lists {listed}, d_N(w) = {d}"));
            }
        }
    }
    t.check(dim_dn(3, 3, 2) == 16 && dim_dn(4, 3, 2) == 46, || "d_2(3), d_2(4) at q=3".into());
    finish(1, "dimension identity", 1.0, start, t)
}

/// `R_ε` has identically zero residual on `rel` coefficients past its valuation.
pub fn fundamental_relations(scale: Scale) -> Outcome {
    let start = Instant::now();
    let mut t = Tally::new();
    let dmax = if scale == Scale::Full { 8 } else { 4 };
    let rel = 80;
    for (q, n) in PAIRS {
        let c = ctx(q, n);
        let ev = Evaluator::new(c.clone());
        let ops = Operators::new(c.clone(), Flavor::Cmpl);
        let g = c.gamma() as u32;
        for eps in 0..g {
            let r = ops.fundamental(eps);
            let head = PositiveArray::single(q as u32, eps, g);
            let inv = c.root((g - eps) % g);
            let lit = r.d1.values().all(|b| *b == ThetaPoly::d1(&c.field).scale(inv));
            t.check(lit, || format!("q={q} N={n} ε={eps}: d+1 coefficient is not ε^(-1) D_1"));
            for d in 0..=dmax {
                let prec = ev.val_bound(Flavor::Cmpl, &head, d) + rel;
                let res = r.residual(&ev, d, prec);
                let ok = res.nonzero_terms().next().is_none() && res.prec() >= prec;
                t.check(ok, || format!("q={q} N={n} ε={eps} d={d}: nonzero residual"));
            }
        }
    }
    finish(2, "fundamental relations", 10.0, start, t)
}

fn random_array(rng: &mut ChaCha8Rng, wmax: u32, gamma: u32) -> PositiveArray {
    let w = rng.gen_range(1..=wmax);
    let comps = compositions(w);
    let s = comps[rng.gen_range(0..comps.len())].clone();
    let e = s.iter().map(|_| rng.gen_range(0..gamma)).collect();
    PositiveArray::new(s, e, gamma).expect("positive")
}

/// Seeded random products in both flavors.
pub fn product_calculus(scale: Scale, seed: u64) -> Outcome {
    let start = Instant::now();
    let mut t = Tally::new();
    let (pairs, wmax) = if scale == Scale::Full { (50, 5) } else { (10, 3) };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let evs: Vec<Evaluator> = PAIRS.iter().map(|&(q, n)| Evaluator::new(ctx(q, n))).collect();
    for _ in 0..pairs {
        let ev = &evs[rng.gen_range(0..evs.len())];
        let g = ev.ctx().gamma() as u32;
        let a = random_array(&mut rng, wmax, g);
        let b = random_array(&mut rng, wmax, g);
        for flavor in [Flavor::Mzv, Flavor::Cmpl] {
            t.extend(product_failures(ev, flavor, &a, &b, 6, 100));
        }
    }
    finish(3, "product calculus", 120.0, start, t)
}

/// `S_d = Si_d` for every array with entries `≤ q`.
pub fn lemma_agree(scale: Scale) -> Outcome {
    let start = Instant::now();
    let mut t = Tally::new();
    let (wmax, dmax) = if scale == Scale::Full { (6, 8) } else { (4, 5) };
    for (q, n) in PAIRS {
        let ev = Evaluator::new(ctx(q, n));
        let g = ev.ctx().gamma() as u32;
        for w in 1..=wmax {
            for s in compositions(w).into_iter().filter(|s| s.iter().all(|&x| x as u64 <= q)) {
                for arr in with_all_characters(&s, g) {
                    t.extend(agree_failures(&ev, &arr, dmax, 60));
                }
            }
        }
    }
    finish(4, "lemma agree", 60.0, start, t)
}

/// Reduction to `CT`, expression in `CS`, and the transition matrix mod `D_1`.
pub fn effective_basis(scale: Scale) -> Outcome {
    let start = Instant::now();
    let mut t = Tally::new();
    let wmax = if scale == Scale::Full { 5 } else { 3 };
    let prec = 150;
    for (q, n) in PAIRS {
        let c = ctx(q, n);
        let ev = Evaluator::new(c.clone());
        let g = c.gamma() as u32;
        let cmpl = Reducer::new(c.clone(), Flavor::Cmpl);
        let mzv = Reducer::new(c.clone(), Flavor::Mzv);
        for w in 1..=wmax {
            let tm = match TransitionMatrix::build(&cmpl, w) {
                Ok(tm) => tm,
                Err(e) => {
                    t.check(false, || format!("q={q} N={n} w={w}: transition matrix: {e}"));
                    continue;
                }
            };
            t.check(tm.check_mod_d1().is_ok(), || format!("q={q} N={n} w={w}: not a signed identity mod D_1"));
            for arr in all_arrays(w, g) {
                for (flavor, red) in [(Flavor::Cmpl, &cmpl), (Flavor::Mzv, &mzv)] {
                    let comb = match red.reduce_to_ct(&arr) {
                        Ok(c) => c,
                        Err(e) => {
                            t.check(false, || format!("{flavor:?} {arr}: {e}"));
                            continue;
                        }
                    };
                    t.check(comb.keys().all(|u| u.in_ct(q as u32) && u.weight() == w), || format!("{flavor:?} {arr}: output leaves CT"));
                    t.check(comb_matches(&ev, flavor, &arr, &comb, prec), || format!("{flavor:?} {arr}: CT combination differs"));
                    match tm.express(&comb) {
                        Ok(y) => {
                            t.check(y.keys().all(|u| u.in_cs(q as u32)), || format!("{flavor:?} {arr}: output leaves CS"));
                            t.check(ratcomb_matches(&ev, flavor, &arr, &y, prec), || format!("{flavor:?} {arr}: CS combination differs"));
                        }
                        Err(e) => t.check(false, || format!("{flavor:?} {arr}: {e}")),
                    }
                }
            }
        }
        for red in [&cmpl, &mzv] {
            let steps = red.steps();
            let bad = steps.iter().filter(|s| s.measure_after_max >= s.measure_before).count();
            t.check(bad == 0, || format!("q={q} N={n}: {bad} steps without a measure decrease"));
        }
    }
    finish(5, "effective basis algorithm", 600.0, start, t)
}

/// `Ω` equation, trivialization and value identity at levels 1 and 2.
pub fn motives(scale: Scale) -> Outcome {
    let start = Instant::now();
    let mut t = Tally::new();
    let wmax = if scale == Scale::Full { 3 } else { 2 };
    let (t_prec, prec) = (8, 200);
    for (q, n, r) in [(3u64, 2u64, 1u32), (3, 4, 2)] {
        let c = ctx(q, n);
        t.check(c.r() == r, || format!("q={q} N={n}: level {} != {r}", c.r()));
        let om = omega_residual(&c.field, t_prec, prec);
        t.check(om.as_ref().is_ok_and(|o| o.ok()), || format!("q={q}: Ω equation residual"));
        let ev = Evaluator::new(c.clone());
        let g = c.gamma() as u32;
        let mut min_agree = i64::MAX;
        for w in 1..=wmax {
            for arr in all_arrays(w, g).into_iter().filter(|a| a.depth() <= 2) {
                let tr = check_trivialization(&c, &arr, t_prec, prec);
                t.check(tr.as_ref().is_ok_and(|x| x.ok()), || format!("q={q} N={n} {arr}: trivialization residual"));
                match value_identity(&ev, &arr, 6, prec) {
                    Ok(v) => {
                        min_agree = min_agree.min(v.agreeing);
                        t.check(v.agreeing >= 40 && v.agreeing == v.stabilized, || {
                            format!("q={q} N={n} {arr}: value identity agrees on {} of {} stabilized", v.agreeing, v.stabilized)
                        });
                    }
                    Err(e) => t.check(false, || format!("q={q} N={n} {arr}: {e}")),
                }
            }
        }
        t.notes.push(format!("q={q} N={n}: value identity agrees on at least {min_agree} coefficients"));
    }
    finish(6, "motives", 300.0, start, t)
}

/// Seeded construct-then-solve round trips of `ε δ^(R) = δ T^(R) + F`.
pub fn sigma_solver(scale: Scale, seed: u64) -> Outcome {
    let start = Instant::now();
    let mut t = Tally::new();
    let trips = if scale == Scale::Full { 100 } else { 20 };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ctxs: Vec<Ctx> = PAIRS.iter().map(|&(q, n)| ctx(q, n)).collect();
    for i in 0..trips {
        let c = &ctxs[i % ctxs.len()];
        let f = &c.field;
        let q = c.q();
        let m: u32 = rng.gen_range(1..=3);
        let eps = rng.gen_range(0..c.gamma() as u32);
        let dmax = q * m as u64 / (q - 1);
        let tdeg = rng.gen_range(0..=3);
        let coeffs = (0..=tdeg)
            .map(|_| ThetaPoly::from_terms(f, (0..=dmax).map(|d| (d, f.gen_pow(rng.gen_range(0..f.order() as i64))))))
            .collect();
        let d0 = TPoly::from_coeffs(f, coeffs);
        let rhs = sigma_residual(c, m, eps, &d0, &TPoly::zero(f));
        match solve_sigma_equation(c, m, eps, &rhs) {
            Ok(d) => {
                t.check(sigma_residual(c, m, eps, &d, &rhs).is_zero(), || format!("trip {i}: substitution check"));
                t.check(d == d0, || format!("trip {i}: solution differs from the constructed one"));
                t.check(sigma_degree_bound_holds(c, m, &d, &rhs), || format!("trip {i}: degree bound"));
            }
            Err(e) => t.check(false, || format!("trip {i}: {e}")),
        }
    }
    finish(7, "sigma solver", 60.0, start, t)
}

/// Relations among `{π̃^w} ∪ {μ Li(c) : c ∈ CS}`: none when `(q-1) ∤ w`,
/// a rank-one module involving `π̃^w` with coefficients in `K` otherwise.
pub fn independence(scale: Scale) -> Outcome {
    let start = Instant::now();
    let mut t = Tally::new();
    let (d, p) = (8, 400);
    let cases: &[(u64, u64, u32)] = if scale == Scale::Full {
        &[(2, 1, 1), (2, 1, 2), (2, 1, 3), (2, 3, 1), (2, 3, 2), (3, 1, 1), (3, 1, 2), (3, 1, 3), (3, 2, 1), (3, 2, 2), (3, 4, 1)]
    } else {
        &[(2, 1, 2), (3, 1, 2), (3, 2, 1)]
    };
    for &(q, n, w) in cases {
        let ev = Evaluator::new(ctx(q, n));
        for with_period in [false, true] {
            match certify_independence(&ev, w, d, p, with_period) {
                Ok(r) => {
                    t.check(r.precision_sufficient, || format!("({q},{n},{w}): P={p} below the coverage precision {}", r.coverage_precision));
                    t.check(r.consistent() == Some(true), || {
                        format!("({q},{n},{w}) period={with_period}: relation rank {} (expected {})", r.relation_rank, r.expected_relation_rank())
                    });
                }
                Err(e) => t.check(false, || format!("({q},{n},{w}): {e}")),
            }
        }
    }
    if scale == Scale::Full {
        // Depth-three characters at N=2 and depth-two at N=4 need more precision.
        for &(q, n, w, p) in &[(3u64, 2u64, 3u32, 400i64), (3, 4, 2, 400), (3, 2, 3, 1500), (3, 4, 2, 10000)] {
            let ev = Evaluator::new(ctx(q, n));
            match certify_independence(&ev, w, d, p, true) {
                Ok(r) => {
                    let verdict = r.consistent();
                    t.notes.push(format!("({q},{n},{w}) at P={p}: relation rank {}, verdict {verdict:?}", r.relation_rank));
                    t.check(verdict != Some(false), || format!("({q},{n},{w}) at P={p}: contradicts the expectation"));
                    if p > 400 {
                        t.check(verdict == Some(true), || format!("({q},{n},{w}) at P={p}: inconclusive"));
                    }
                }
                Err(e) => t.check(false, || format!("({q},{n},{w}) at P={p}: {e}")),
            }
        }
    }
    finish(8, "independence and the unique relation", 600.0, start, t)
}

pub fn run_all(scale: Scale, seed: u64) -> Vec<Outcome> {
    vec![
        dimensions(scale),
        fundamental_relations(scale),
        product_calculus(scale, seed),
        lemma_agree(scale),
        effective_basis(scale),
        motives(scale),
        sigma_solver(scale, seed),
        independence(scale),
    ]
}
