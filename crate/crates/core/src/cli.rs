//! The `cyclomzv` command line. Each subcommand builds a [`Report`]; text
//! goes to stdout, the JSON report to `--output` (or stdout with
//! `--format json`). Exit status: 0 ok, 1 bad input, 2 falsified invariant.

use std::ffi::OsString;
use std::io::Write as _;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::array::{count_cs, count_ct, dim_dn, enumerate_cs, PositiveArray};
use crate::basis::TransitionMatrix;
use crate::checks::{comb_matches, product_failures, ratcomb_matches};
use crate::config::{Overrides, RunConfig};
use crate::error::{Error, Result};
use crate::field::Ctx;
use crate::harmonic::{Harmonic, ProdSum};
use crate::motives::{check_trivialization, omega_residual, specialization_identity, value_identity, MotiveMatrix};
use crate::reduce::Reducer;
use crate::report::{table, Diagnostics, FieldInfo, Report, Timings};
use crate::search::certify_independence;
use crate::selftest::{run_all, Scale};
use crate::series::InfSeries;
use crate::values::{Evaluator, Flavor, Level};

#[derive(Debug, Parser)]
#[command(name = "cyclomzv", version, about = "Cyclotomic MZVs and Carlitz multiple polylogarithms over F_q[θ]")]
pub struct Cli {
    #[command(flatten)]
    pub common: Common,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Common {
    /// TOML run configuration; flags override its values.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Constant field size, a prime power (sets p and e).
    #[arg(long, global = true)]
    pub q: Option<u64>,
    #[arg(long, global = true)]
    pub p: Option<u64>,
    #[arg(long, global = true)]
    pub e: Option<u32>,
    /// Cyclotomic level.
    #[arg(long = "N", global = true)]
    pub n: Option<u64>,
    /// Precision in x = 1/θ.
    #[arg(long, global = true)]
    pub prec: Option<i64>,
    /// Number of t-coefficients kept in Tate-algebra series.
    #[arg(long, global = true)]
    pub tprec: Option<usize>,
    /// Degree bound for relation search.
    #[arg(long, global = true)]
    pub deg: Option<u32>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Write the JSON report here.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Add wall-clock timings to the report (breaks byte stability).
    #[arg(long, global = true)]
    pub timings: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    #[value(alias = "mzv")]
    Zeta,
    #[value(alias = "li")]
    Cmpl,
}

impl From<Kind> for Flavor {
    fn from(k: Kind) -> Flavor {
        match k {
            Kind::Zeta => Flavor::Mzv,
            Kind::Cmpl => Flavor::Cmpl,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Target {
    Ct,
    Cs,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate ζ_A or Li of an array as a Laurent series in 1/θ.
    Eval {
        #[arg(long, value_enum, default_value_t = Kind::Zeta)]
        kind: Kind,
        /// `(s1;e1),(s2;e2),...` with e the exponent of ζ_N.
        #[arg(long, allow_hyphen_values = true)]
        array: String,
        /// Only the degree-d part (or the part below d with --below).
        #[arg(long)]
        d: Option<i64>,
        #[arg(long, requires = "d")]
        below: bool,
    },
    /// Expand the products of two arrays and check them numerically.
    Product {
        #[arg(long, value_enum, default_value_t = Kind::Zeta)]
        flavor: Kind,
        #[arg(long = "A")]
        a: String,
        #[arg(long = "B")]
        b: String,
        /// Largest degree d at which the level products are compared.
        #[arg(long, default_value_t = 6)]
        dmax: i64,
    },
    /// Rewrite an array in CT or in the basis CS.
    Reduce {
        #[arg(long, value_enum, default_value_t = Kind::Zeta)]
        kind: Kind,
        #[arg(long)]
        array: String,
        #[arg(long, value_enum, default_value_t = Target::Cs)]
        to: Target,
    },
    /// Table of d_N(w), |CS| and |CT|.
    Dims {
        #[arg(long, default_value_t = 10)]
        wmax: u32,
    },
    /// Motive matrix, value identities and (optionally) the trivialization.
    Motive {
        #[arg(long)]
        array: String,
        #[arg(long)]
        check_triv: bool,
    },
    /// Search for relations among the weight-w CS values and the period.
    Independence {
        #[arg(long)]
        w: u32,
        #[arg(long)]
        no_period: bool,
    },
    /// Run the acceptance suite.
    Selftest {
        #[arg(long, value_enum, default_value_t = SelftestScale::Small)]
        scale: SelftestScale,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SelftestScale {
    Small,
    Full,
}

/// What a subcommand hands back before the report is assembled.
struct Output {
    results: Value,
    text: String,
    diagnostics: Diagnostics,
}

/// Parses `args` (program name first), runs, returns the exit status.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    match execute(&cli) {
        Ok((report, text, output)) => {
            let json = report.to_json();
            if let Some(path) = &output {
                if let Err(e) = std::fs::write(path, &json) {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    return 1;
                }
            }
            let mut out = std::io::stdout().lock();
            let _ = match cli.common.format {
                Format::Json => out.write_all(json.as_bytes()),
                Format::Text => out.write_all(text.as_bytes()),
            };
            if report.diagnostics.ok {
                0
            } else {
                for f in &report.diagnostics.failures {
                    eprintln!("falsified: {f}");
                }
                2
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

/// Runs the parsed command; returns the report, its text rendering and
/// where the JSON report should be written.
pub fn execute(cli: &Cli) -> Result<(Report, String, Option<PathBuf>)> {
    let start = Instant::now();
    let c = &cli.common;
    let overrides = Overrides {
        q: c.q,
        p: c.p,
        e: c.e,
        n: c.n,
        precision: c.prec,
        t_truncation: c.tprec,
        degree_bound: c.deg,
        seed: c.seed,
        output: c.output.clone(),
    };
    if let Command::Selftest { scale } = cli.command {
        return selftest(c, &overrides, scale, start);
    }
    let cfg = RunConfig::resolve(c.config.as_deref(), &overrides)?;
    let ctx = cfg.context()?;
    let out = match &cli.command {
        Command::Eval { kind, array, d, below } => eval(&cfg, &ctx, *kind, array, *d, *below)?,
        Command::Product { flavor, a, b, dmax } => product(&cfg, &ctx, *flavor, a, b, *dmax)?,
        Command::Reduce { kind, array, to } => reduce(&cfg, &ctx, *kind, array, *to)?,
        Command::Dims { wmax } => dims(&ctx, *wmax)?,
        Command::Motive { array, check_triv } => motive(&cfg, &ctx, array, *check_triv)?,
        Command::Independence { w, no_period } => independence(&cfg, &ctx, *w, !no_period)?,
        Command::Selftest { .. } => unreachable!(),
    };
    let output = cfg.output.clone();
    let report = Report {
        command: command_name(&cli.command).into(),
        config: serde_json::to_value(&cfg).expect("serializable"),
        field: Some(FieldInfo::of(&ctx)),
        results: out.results,
        diagnostics: out.diagnostics,
        timings: c.timings.then(|| Timings { total_seconds: start.elapsed().as_secs_f64() }),
    };
    let text = format!("{}{}", field_line(&ctx), out.text);
    Ok((report, text, output))
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Eval { .. } => "eval",
        Command::Product { .. } => "product",
        Command::Reduce { .. } => "reduce",
        Command::Dims { .. } => "dims",
        Command::Motive { .. } => "motive",
        Command::Independence { .. } => "independence",
        Command::Selftest { .. } => "selftest",
    }
}

fn field_line(ctx: &Ctx) -> String {
    format!(
        "q = {}, N = {}, |Γ_N| = {}, R = {}, ambient field F_{}^{} (modulus {:?})\n",
        ctx.q(),
        ctx.cyclo.n,
        ctx.gamma(),
        ctx.r(),
        ctx.p(),
        ctx.field.prime_degree(),
        ctx.field.modulus()
    )
}

fn parse_array(ctx: &Ctx, text: &str) -> Result<PositiveArray> {
    PositiveArray::parse(text, ctx.gamma() as u32)
}

fn parse_nonempty(ctx: &Ctx, text: &str) -> Result<PositiveArray> {
    let a = parse_array(ctx, text)?;
    if a.is_empty() {
        return Err(Error::Config("the array must be nonempty".into()));
    }
    Ok(a)
}

fn ok_diag(prec: i64) -> Diagnostics {
    Diagnostics { ok: true, residual_precision: Some(prec), ..Default::default() }
}

fn symbol(kind: Kind) -> &'static str {
    match kind {
        Kind::Zeta => "ζ_A",
        Kind::Cmpl => "Li",
    }
}

/// Nonzero terms as `c x^k` with `c` the field-element index.
fn series_text(s: &InfSeries, max_terms: usize) -> String {
    let terms: Vec<String> = s.nonzero_terms().take(max_terms).map(|(k, c)| format!("{} x^{k}", c.0)).collect();
    let more = s.nonzero_terms().count().saturating_sub(max_terms);
    let body = if terms.is_empty() { "0".to_string() } else { terms.join(" + ") };
    let tail = if more > 0 { format!(" + … ({more} more)") } else { String::new() };
    let prec = if s.is_exact() { "exact".to_string() } else { format!("O(x^{})", s.prec()) };
    format!("{body}{tail} + {prec}")
}

fn eval(cfg: &RunConfig, ctx: &Ctx, kind: Kind, array: &str, d: Option<i64>, below: bool) -> Result<Output> {
    let arr = parse_array(ctx, array)?;
    let ev = Evaluator::new(ctx.clone());
    let flavor = Flavor::from(kind);
    let prec = cfg.precision;
    let (series, what) = match d {
        None => (ev.total(flavor, &arr, prec), format!("{}({arr})", symbol(kind))),
        Some(d) => {
            let level = if below { Level::Below } else { Level::At };
            let s = if arr.is_empty() {
                let one = InfSeries::one(ev.field(), 1).truncate(prec);
                if below { one } else { InfSeries::zero(ev.field(), 1, prec) }
            } else {
                ev.eval(flavor, level, &arr, d, prec)
            };
            (s, format!("{}_{}{d}({arr})", symbol(kind), if below { "<" } else { "" }))
        }
    };
    let results = json!({
        "kind": kind_name(kind),
        "array": arr.to_string(),
        "weight": arr.weight(),
        "depth": arr.depth(),
        "character": arr.chi(),
        "d": d,
        "below": below,
        "series": series.to_json(),
    });
    let text = format!("{what} = {}\n", series_text(&series, 12));
    Ok(Output { results, text, diagnostics: ok_diag(prec) })
}

fn kind_name(k: Kind) -> &'static str {
    match k {
        Kind::Zeta => "zeta",
        Kind::Cmpl => "cmpl",
    }
}

#[derive(Serialize)]
struct Term {
    array: String,
    coefficient: String,
}

fn formal_sum(s: &ProdSum) -> Vec<Term> {
    s.iter().map(|(a, c)| Term { array: a.to_string(), coefficient: c.to_string() }).collect()
}

fn formal_sum_text(s: &ProdSum) -> String {
    let parts: Vec<String> = s.iter().map(|(a, c)| if *c == 1 { format!("[{a}]") } else { format!("{c}·[{a}]") }).collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

fn product(cfg: &RunConfig, ctx: &Ctx, kind: Kind, a: &str, b: &str, dmax: i64) -> Result<Output> {
    let a = parse_nonempty(ctx, a)?;
    let b = parse_nonempty(ctx, b)?;
    if dmax < 0 {
        return Err(Error::Config("dmax must be nonnegative".into()));
    }
    let flavor = Flavor::from(kind);
    let h = Harmonic::new(ctx.q(), ctx.p(), ctx.gamma() as u32, flavor);
    let ev = Evaluator::new(ctx.clone());
    let rel = cfg.precision;
    let failures = product_failures(&ev, flavor, &a, &b, dmax, rel);
    let names = ["sd_sd", "sd_slt", "slt_slt", "total"];
    let sums = [h.sd_sd(&a, &b), h.sd_slt(&a, &b), h.slt_slt(&a, &b), h.zeta_product(&a, &b)];
    let mut products = serde_json::Map::new();
    let mut text = String::new();
    let (x, lt) = match kind {
        Kind::Zeta => ("S", "ζ_A"),
        Kind::Cmpl => ("Si", "Li"),
    };
    let lhs = [
        format!("{x}_d({a}) {x}_d({b})"),
        format!("{x}_d({a}) {x}_<d({b})"),
        format!("{x}_<d({a}) {x}_<d({b})"),
        format!("{lt}({a}) {lt}({b})"),
    ];
    for ((name, sum), l) in names.iter().zip(&sums).zip(&lhs) {
        products.insert(name.to_string(), serde_json::to_value(formal_sum(sum)).expect("serializable"));
        text += &format!("{l} = {}\n", formal_sum_text(sum));
    }
    let residual_norm = u32::from(!failures.is_empty());
    text += &format!("residual norm {residual_norm} (d ≤ {dmax}, {rel} coefficients past the valuation bound)\n");
    let results = json!({
        "flavor": kind_name(kind),
        "A": a.to_string(),
        "B": b.to_string(),
        "dmax": dmax,
        "products": products,
        "residual_norm": residual_norm,
    });
    let diagnostics = Diagnostics { ok: failures.is_empty(), residual_precision: Some(rel), failures, notes: vec![] };
    Ok(Output { results, text, diagnostics })
}

fn reduce(cfg: &RunConfig, ctx: &Ctx, kind: Kind, array: &str, to: Target) -> Result<Output> {
    let arr = parse_nonempty(ctx, array)?;
    let flavor = Flavor::from(kind);
    let ev = Evaluator::new(ctx.clone());
    let red = Reducer::new(ctx.clone(), flavor);
    let prec = cfg.precision;
    let comb = red.reduce_to_ct(&arr)?;
    let steps = red.steps();
    let mut failures = Vec::new();
    let (output, lines): (Vec<Term>, Vec<String>) = match to {
        Target::Ct => {
            if !comb_matches(&ev, flavor, &arr, &comb, prec) {
                failures.push(format!("{arr}: CT combination differs from the input below x^{prec}"));
            }
            comb.iter().map(|(u, c)| (Term { array: u.to_string(), coefficient: c.to_string() }, format!("({c})·[{u}]"))).unzip()
        }
        Target::Cs => {
            // ζ_A and Li coincide on CT, so both flavors share the CMPL matrix.
            let cmpl = if flavor == Flavor::Cmpl { red } else { Reducer::new(ctx.clone(), Flavor::Cmpl) };
            let tm = TransitionMatrix::build(&cmpl, arr.weight())?;
            let y = tm.express(&comb)?;
            if !ratcomb_matches(&ev, flavor, &arr, &y, prec) {
                failures.push(format!("{arr}: CS combination differs from the input below x^{prec}"));
            }
            y.iter().map(|(u, c)| (Term { array: u.to_string(), coefficient: c.to_string() }, format!("({c})·Li[{u}]"))).unzip()
        }
    };
    let target = match to {
        Target::Ct => "ct",
        Target::Cs => "cs",
    };
    let results = json!({
        "kind": kind_name(kind),
        "input": arr.to_string(),
        "to": target,
        "steps": steps,
        "output": output,
    });
    let mut text = format!("{}({arr}) =\n", symbol(kind));
    for l in &lines {
        text += &format!("  + {l}\n");
    }
    text += &format!("{} reduction steps; residual checked below x^{prec}\n", steps.len());
    let diagnostics = Diagnostics { ok: failures.is_empty(), residual_precision: Some(prec), failures, notes: vec![] };
    Ok(Output { results, text, diagnostics })
}

fn dims(ctx: &Ctx, wmax: u32) -> Result<Output> {
    if wmax > 40 {
        return Err(Error::Config("wmax above 40".into()));
    }
    let (q, g) = (ctx.q(), ctx.gamma());
    let mut rows = Vec::new();
    let mut table_rows = Vec::new();
    let mut failures = Vec::new();
    for w in 0..=wmax {
        let d = dim_dn(w, q as u32, g);
        let cs = count_cs(w, q as u32, g);
        let ct = count_ct(w, q as u32, g);
        if cs != d {
            failures.push(format!("w = {w}: |CS| = {cs} but d_N(w) = {d}"));
        }
        // Explicit enumeration where it is cheap.
        if d <= 20_000 && w >= 1 && enumerate_cs(w, q as u32, g as u32).len() as u128 != d {
            failures.push(format!("w = {w}: enumeration of CS disagrees with d_N(w)"));
        }
        rows.push(json!({ "w": w, "d_N": d.to_string(), "cs": cs.to_string(), "ct": ct.to_string() }));
        table_rows.push(vec![w.to_string(), d.to_string(), cs.to_string(), ct.to_string()]);
    }
    let text = table(&["w", "d_N(w)", "|CS|", "|CT|"], &table_rows);
    let diagnostics = Diagnostics { ok: failures.is_empty(), residual_precision: None, failures, notes: vec![] };
    Ok(Output { results: json!({ "wmax": wmax, "rows": rows }), text, diagnostics })
}

fn motive(cfg: &RunConfig, ctx: &Ctx, array: &str, check_triv: bool) -> Result<Output> {
    let arr = parse_nonempty(ctx, array)?;
    let (tp, prec) = (cfg.t_truncation, cfg.precision);
    let phi = MotiveMatrix::build(ctx, &arr)?;
    let ev = Evaluator::new(ctx.clone());
    let mut failures = Vec::new();
    let mut notes = Vec::new();
    let omega = omega_residual(&ctx.field, tp, prec)?;
    if !omega.ok() {
        failures.push("Ω functional equation residual is nonzero".into());
    }
    if !phi.is_lower_triangular() {
        failures.push("Φ is not lower triangular".into());
    }
    let value = value_identity(&ev, &arr, tp, prec)?;
    let special = specialization_identity(ctx, &arr, tp, prec)?;
    for (name, v) in [("value identity", &value), ("specialization identity", &special)] {
        if v.agreeing < v.stabilized {
            failures.push(format!("{name}: agrees on {} of {} stabilized coefficients", v.agreeing, v.stabilized));
        }
        if v.stabilized == 0 {
            notes.push(format!("{name}: no coefficient stabilized; raise --tprec"));
        }
    }
    let triv = if check_triv {
        let r = check_trivialization(ctx, &arr, tp, prec)?;
        if !r.ok() {
            failures.push(format!("trivialization residual nonzero at entries {:?}", r.failures));
        }
        Some(r)
    } else {
        None
    };
    let entry_degrees: Vec<Vec<Option<(usize, u64)>>> = phi
        .entries
        .iter()
        .map(|row| row.iter().map(|e| e.t_degree().map(|td| (td, e.theta_degree().unwrap_or(0)))).collect())
        .collect();
    let results = json!({
        "array": arr.to_string(),
        "phi": {
            "size": phi.size(),
            "level": phi.level,
            "lower_triangular": phi.is_lower_triangular(),
            "mu": phi.mu.iter().map(|m| m.0).collect::<Vec<_>>(),
            "entry_degrees_t_eta": entry_degrees,
        },
        "omega_residual": omega,
        "value_identity": value,
        "specialization_identity": special,
        "trivialization": triv,
    });
    let mut text = format!("Φ({arr}): {0}×{0}, level R = {1}\n", phi.size(), phi.level);
    let rows = vec![
        vec!["value identity".into(), value.t_prec.to_string(), value.stabilized.to_string(), value.agreeing.to_string()],
        vec!["specialization".into(), special.t_prec.to_string(), special.stabilized.to_string(), special.agreeing.to_string()],
    ];
    text += &table(&["identity", "t_prec", "stable", "agree"], &rows);
    text += &format!("Ω equation: {}\n", if omega.ok() { "residual 0" } else { "RESIDUAL NONZERO" });
    if let Some(r) = &triv {
        text += &format!(
            "Ψ = Φ^(R) Ψ^(R): {} on t^<{}, u^<{}\n",
            if r.ok() { "residual 0" } else { "RESIDUAL NONZERO" },
            r.t_window,
            r.u_window
        );
    }
    let diagnostics = Diagnostics { ok: failures.is_empty(), residual_precision: Some(value.agreeing.min(special.agreeing)), failures, notes };
    Ok(Output { results, text, diagnostics })
}

fn independence(cfg: &RunConfig, ctx: &Ctx, w: u32, with_period: bool) -> Result<Output> {
    if w == 0 {
        return Err(Error::Config("weight must be positive".into()));
    }
    let ev = Evaluator::new(ctx.clone());
    let r = certify_independence(&ev, w, cfg.degree_bound, cfg.precision, with_period)?;
    let mut failures = Vec::new();
    let mut notes = Vec::new();
    let verdict = r.consistent();
    match verdict {
        Some(true) if r.relation_rank == 0 => {
            notes.push(format!("no relation up to (D, P) = ({}, {})", r.degree_bound, r.precision))
        }
        Some(true) => notes.push("relation module of rank one, involving the period".into()),
        Some(false) => failures.push(format!(
            "relation rank {} where {} is expected, on a window past the coverage precision {}",
            r.relation_rank,
            r.expected_relation_rank(),
            r.coverage_precision
        )),
        None => notes.push(format!(
            "inconclusive: relation rank {} (expected {}) but P = {} is below the coverage precision {}",
            r.relation_rank,
            r.expected_relation_rank(),
            r.precision,
            r.coverage_precision
        )),
    }
    let mut text = format!(
        "weight {w}, {} values, D = {}, P = {}: {} equations × {} unknowns, rank {}\n",
        r.labels.len(),
        r.degree_bound,
        r.precision,
        r.equations,
        r.unknowns,
        r.rank
    );
    text += &format!("nullity by degree {:?}, relation rank {}\n", r.nullity_by_degree, r.relation_rank);
    if let Some(m) = &r.minimal_relation {
        text += &format!("minimal relation (degree {}):\n", m.degree);
        for (l, c) in &m.coefficients {
            text += &format!("  ({c})·{l}\n");
        }
    }
    for n in &notes {
        text += &format!("{n}\n");
    }
    let results = serde_json::to_value(&r).expect("serializable");
    let diagnostics = Diagnostics { ok: failures.is_empty(), residual_precision: Some(r.u_window.1 - r.u_window.0), failures, notes };
    Ok(Output { results, text, diagnostics })
}

fn selftest(c: &Common, o: &Overrides, scale: SelftestScale, start: Instant) -> Result<(Report, String, Option<PathBuf>)> {
    // The suite sweeps its own pinned (q, N) pairs; only the seed is read.
    let seed = match &c.config {
        Some(path) => o.seed.unwrap_or(RunConfig::from_file(path)?.seed),
        None => o.seed.unwrap_or(0),
    };
    let scale = match scale {
        SelftestScale::Small => Scale::Small,
        SelftestScale::Full => Scale::Full,
    };
    let outcomes = run_all(scale, seed);
    let mut text = String::new();
    let mut failures = Vec::new();
    let mut results = Vec::new();
    for o in &outcomes {
        text += &o.line();
        text.push('\n');
        failures.extend(o.failures.iter().map(|f| format!("criterion {}: {f}", o.id)));
        let mut v = serde_json::to_value(o).expect("serializable");
        if !c.timings {
            let m = v.as_object_mut().expect("object");
            m.remove("seconds");
        }
        results.push(v);
    }
    let report = Report {
        command: "selftest".into(),
        config: json!({ "seed": seed }),
        field: None,
        results: json!({ "scale": scale, "seed": seed, "criteria": results }),
        diagnostics: Diagnostics { ok: failures.is_empty(), residual_precision: None, failures, notes: vec![] },
        timings: c.timings.then(|| Timings { total_seconds: start.elapsed().as_secs_f64() }),
    };
    Ok((report, text, o.output.clone()))
}
