//! Drives the command-line front end in-process from a temporary directory.

use maxid::cli::run;

fn main() -> std::io::Result<()> {
    let dir = std::env::temp_dir().join("maxid-cli-session");
    std::fs::create_dir_all(&dir)?;
    let cfg = dir.join("run.json");
    std::fs::write(
        &cfg,
        r#"{
  "system": {"x": {"family": "exponential", "rate": 1.0},
             "y": {"family": "exponential", "rate": 0.5},
             "z": {"family": "weibull", "shape": 2.0, "scale": 1.0}},
  "coefficients": {"a": 1, "b": 1, "c": 2, "d": 2},
  "grid": {"count": 40, "lower": 0.05, "upper": 4.0, "spacing": "geometric"},
  "samples": {"n": 1000},
  "seed": 11
}"#,
    )?;
    let cfg = cfg.to_str().unwrap();
    let samples = dir.join("pairs.csv");
    let samples = samples.to_str().unwrap();
    let report = dir.join("recovery.json");
    let report = report.to_str().unwrap();
    for args in [
        vec!["maxid", "simulate", "--config", cfg, "--out", samples],
        vec!["maxid", "recover", "--config", cfg, "--out", report],
        vec!["maxid", "validate-generator", "--config", cfg, "--out", "/dev/null"],
    ] {
        println!("{} -> exit {}", args[1], run(args.clone()));
    }
    println!("recovery report in {report}");
    Ok(())
}
