//! Golden-file regression over `corpus/{q}_{N}/w{w}/*.json`. Every report is
//! regenerated in-process and compared byte for byte; set
//! `CYCLOMZV_BLESS=1` to rewrite the corpus instead.

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};

use clap::Parser;
use cyclomzv::array::all_arrays;
use cyclomzv::cli::{execute, Cli};
use cyclomzv::field::Ctx;
use cyclomzv::selftest::PAIRS;

fn corpus_root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

fn slug(arr: &str) -> String {
    arr.trim_matches(|c| c == '(' || c == ')').replace("),(", "_").replace(';', "-")
}

/// Relative path and argument vector of every corpus entry.
fn entries() -> Vec<(String, Vec<String>)> {
    let mut out = Vec::new();
    for (q, n) in PAIRS {
        let dir = format!("{q}_{n}");
        let base = ["cyclomzv".to_string(), "--q".into(), q.to_string(), "--N".into(), n.to_string(), "--format".into(), "json".into()];
        let with = |extra: &[&str]| -> Vec<String> { base.iter().cloned().chain(extra.iter().map(|s| s.to_string())).collect() };
        out.push((format!("{dir}/dims.json"), with(&["dims", "--wmax", "8"])));
        let g = Ctx::new(q, 1, n).unwrap().gamma() as u32;
        for w in 1..=3u32 {
            let arrays = all_arrays(w, g);
            let stride = arrays.len().div_ceil(6);
            for arr in arrays.iter().step_by(stride) {
                let a = arr.to_string();
                let s = slug(&a);
                out.push((format!("{dir}/w{w}/eval_zeta_{s}.json"), with(&["--prec", "60", "eval", "--kind", "zeta", "--array", &a])));
                out.push((format!("{dir}/w{w}/eval_li_{s}.json"), with(&["--prec", "60", "eval", "--kind", "li", "--array", &a])));
                out.push((format!("{dir}/w{w}/reduce_{s}.json"), with(&["--prec", "100", "reduce", "--array", &a])));
            }
            if w <= 2 && !(q == 3 && n == 4 && w == 2) {
                out.push((format!("{dir}/w{w}/independence.json"), with(&["--deg", "6", "--prec", "300", "independence", "--w", &w.to_string()])));
            }
        }
        let (a, b) = (format!("(2;{})", g - 1), "(1;0),(1;0)".to_string());
        out.push((format!("{dir}/w4/product_{}__{}.json", slug(&a), slug(&b)), with(&["--prec", "60", "product", "--A", &a, "--B", &b])));
    }
    out
}

fn render(args: &[String]) -> String {
    let cli = Cli::try_parse_from(args).expect("corpus arguments parse");
    let (report, _, _) = execute(&cli).unwrap_or_else(|e| panic!("{args:?}: {e}"));
    assert!(report.diagnostics.ok, "{args:?}: {:?}", report.diagnostics.failures);
    report.to_json()
}

fn files_under(dir: &Path, root: &Path, acc: &mut BTreeSet<String>) {
    for entry in std::fs::read_dir(dir).into_iter().flatten().flatten() {
        let path = entry.path();
        if path.is_dir() {
            files_under(&path, root, acc);
        } else if path.extension().is_some_and(|e| e == "json") {
            acc.insert(path.strip_prefix(root).unwrap().to_string_lossy().replace('\\', "/"));
        }
    }
}

#[test]
fn corpus_matches() {
    let root = corpus_root();
    let bless = std::env::var_os("CYCLOMZV_BLESS").is_some();
    let entries = entries();
    let mut mismatched = Vec::new();
    for (rel, args) in &entries {
        let json = render(args);
        let path = root.join(rel);
        if bless {
            std::fs::create_dir_all(path.parent().unwrap()).unwrap();
            std::fs::write(&path, json).unwrap();
            continue;
        }
        match std::fs::read_to_string(&path) {
            Ok(golden) if golden == json => {}
            Ok(_) => mismatched.push(format!("{rel}: differs")),
            Err(e) => mismatched.push(format!("{rel}: {e}")),
        }
    }
    let expected: BTreeSet<String> = entries.iter().map(|(r, _)| r.clone()).collect();
    let mut present = BTreeSet::new();
    files_under(&root, &root, &mut present);
    for stray in present.difference(&expected) {
        mismatched.push(format!("{stray}: not produced by any entry"));
    }
    assert!(mismatched.is_empty(), "{} corpus problems:\n{}", mismatched.len(), mismatched.join("\n"));
}

#[test]
fn reports_are_deterministic() {
    let args: Vec<String> = ["cyclomzv", "--q", "3", "--N", "2", "--prec", "80", "reduce", "--array", "(2;1),(2;1)"].map(String::from).to_vec();
    assert_eq!(render(&args), render(&args));
}
