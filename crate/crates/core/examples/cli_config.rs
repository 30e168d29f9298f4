//! Driving the command line in-process from a TOML configuration.

use clap::Parser;
use cyclomzv::cli::{execute, Cli};
use cyclomzv::config::RunConfig;

fn main() -> cyclomzv::Result<()> {
    let cfg = RunConfig::from_toml_str("p = 3\nN = 2\nprecision = 100\nseed = 11\n")?;
    cfg.validate()?;
    println!("config: q = {}, N = {}, precision {}", cfg.q(), cfg.n, cfg.precision);

    let path = std::env::temp_dir().join("cyclomzv-example.toml");
    std::fs::write(&path, toml::to_string(&cfg).expect("serializable")).expect("writable temp dir");
    let args = ["cyclomzv", "--config", path.to_str().unwrap(), "reduce", "--array", "(4;1)"];
    let (report, text, _) = execute(&Cli::parse_from(args))?;
    print!("{text}");
    println!("report ok: {}, residual precision {:?}", report.diagnostics.ok, report.diagnostics.residual_precision);
    Ok(())
}
