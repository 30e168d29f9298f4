//! JSON reports written by the command line. Everything except the optional
//! `timings` block is a deterministic function of the configuration.

use serde::Serialize;
use serde_json::Value;

use crate::field::Ctx;

#[derive(Clone, Debug, Serialize)]
pub struct FieldInfo {
    pub p: u64,
    pub q: u64,
    /// `[F_{q^M} : F_q]`.
    pub degree: u32,
    /// Coefficients over `F_p` from the constant term up; monic.
    pub modulus: Vec<u32>,
    #[serde(rename = "N")]
    pub n: u64,
    pub gamma: u64,
    pub r: u32,
}

impl FieldInfo {
    pub fn of(ctx: &Ctx) -> Self {
        FieldInfo {
            p: ctx.p(),
            q: ctx.q(),
            degree: ctx.field.degree(),
            modulus: ctx.field.modulus().to_vec(),
            n: ctx.cyclo.n,
            gamma: ctx.gamma(),
            r: ctx.r(),
        }
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Diagnostics {
    pub ok: bool,
    /// Coefficients on which the reported identities were verified.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual_precision: Option<i64>,
    pub failures: Vec<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Timings {
    pub total_seconds: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: String,
    /// The resolved [`RunConfig`], or the parameters a suite run reads.
    pub config: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub field: Option<FieldInfo>,
    pub results: Value,
    pub diagnostics: Diagnostics,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings: Option<Timings>,
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize") + "\n"
    }
}

/// Left-aligned first column, right-aligned others.
pub fn table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut width: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for r in rows {
        for (w, c) in width.iter_mut().zip(r) {
            *w = (*w).max(c.chars().count());
        }
    }
    let line = |cells: Vec<&str>| -> String {
        let parts: Vec<String> = cells
            .iter()
            .enumerate()
            .map(|(i, c)| if i == 0 { format!("{c:<w$}", w = width[i]) } else { format!("{c:>w$}", w = width[i]) })
            .collect();
        parts.join("  ").trim_end().to_string() + "\n"
    };
    let mut out = line(header.to_vec());
    out += &(width.iter().map(|w| "-".repeat(*w)).collect::<Vec<_>>().join("  ") + "\n");
    for r in rows {
        out += &line(r.iter().map(String::as_str).collect());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_aligns() {
        let t = table(&["w", "dim"], &[vec!["1".into(), "2".into()], vec!["10".into(), "123".into()]]);
        assert_eq!(t, "w   dim\n--  ---\n1     2\n10  123\n");
    }
}
