//! End-to-end checks of the `canoma` binary: subcommand wiring, CSV output,
//! config handling, and exit codes (0 success, 2 config error, 3 oracle
//! disagreement; none expected).

use std::fs;
use std::path::PathBuf;
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_canoma"))
}

fn tmp_path(name: &str) -> PathBuf {
    let mut p = std::env::temp_dir();
    p.push(format!("canoma-cli-{}-{name}", std::process::id()));
    p
}

#[test]
fn region_writes_frontier_csv() {
    let out = tmp_path("region.csv");
    let status = bin()
        .args([
            "region",
            "--alpha-i",
            "1e-3",
            "--alpha-j",
            "1e-2",
            "--power",
            "10",
            "--grid",
            "40",
            "--out",
        ])
        .arg(&out)
        .status()
        .expect("binary runs");
    assert!(status.success());
    let text = fs::read_to_string(&out).unwrap();
    assert!(text.starts_with("scheme,r_i,r_j\n"));
    assert!(text.contains("proposed,"));
    assert!(text.contains("noma,"));
    assert!(text.contains("oma,"));
    fs::remove_file(&out).ok();
}

#[test]
fn delivery_prints_solution_from_explicit_channel() {
    let cfg = tmp_path("delivery.json");
    fs::write(&cfg, r#"{"alpha_i": 1e-9, "alpha_j": 1e-6, "seed": 3}"#).unwrap();
    let out = tmp_path("delivery.csv");
    let output = bin()
        .args(["delivery", "--config"])
        .arg(&cfg)
        .arg("--out")
        .arg(&out)
        .output()
        .expect("binary runs");
    assert!(output.status.success(), "{output:?}");
    let stdout = String::from_utf8(output.stdout).unwrap();
    assert!(stdout.contains("T* ="));
    assert!(stdout.contains("region: R"));
    assert!(stdout.contains("p* ="));
    let csv = fs::read_to_string(&out).unwrap();
    assert!(csv.starts_with("delivery_time_s,"));
    assert_eq!(csv.lines().count(), 2);
    fs::remove_file(&cfg).ok();
    fs::remove_file(&out).ok();
}

#[test]
fn mc_writes_deterministic_csv() {
    let cfg = tmp_path("mc.json");
    fs::write(&cfg, "{}").unwrap();
    let out_a = tmp_path("mc-a.csv");
    let out_b = tmp_path("mc-b.csv");
    for out in [&out_a, &out_b] {
        let status = bin()
            .args(["mc", "--config"])
            .arg(&cfg)
            .args([
                "--rj-sweep",
                "0.4:1.2:2",
                "--drops",
                "10",
                "--seed",
                "42",
                "--out",
            ])
            .arg(out)
            .status()
            .expect("binary runs");
        assert!(status.success());
    }
    let a = fs::read_to_string(&out_a).unwrap();
    let b = fs::read_to_string(&out_b).unwrap();
    assert_eq!(a, b, "same seed must give identical bytes");
    assert!(a.starts_with("r_j_km,scheme,mean_t_s,ci95_s\n"));
    assert_eq!(a.lines().count(), 1 + 2 * 4);
    for f in [cfg, out_a, out_b] {
        fs::remove_file(f).ok();
    }
}

#[test]
fn verify_exits_zero_on_agreement() {
    let output = bin()
        .args(["verify", "--samples", "400", "--seed", "11"])
        .output()
        .expect("binary runs");
    assert!(output.status.success());
    let stdout = String::from_utf8(output.stdout).unwrap();
    assert!(stdout.contains("disagreements: 0"));
    assert!(stdout.contains("result: PASS"));
}

#[test]
fn bad_config_exits_with_code_2() {
    let cfg = tmp_path("bad.json");
    fs::write(&cfg, r#"{"c_ia": 1.5}"#).unwrap();
    let output = bin()
        .args(["delivery", "--config"])
        .arg(&cfg)
        .output()
        .expect("binary runs");
    assert_eq!(output.status.code(), Some(2));
    fs::remove_file(&cfg).ok();

    let output = bin()
        .args(["mc", "--config", "/nonexistent/config.json"])
        .args([
            "--rj-sweep",
            "0.2:2:5",
            "--seed",
            "1",
            "--out",
            "/tmp/x.csv",
        ])
        .output()
        .expect("binary runs");
    assert_eq!(output.status.code(), Some(2));

    // Missing mandatory --seed is a usage error (clap also exits 2).
    let output = bin()
        .args(["verify", "--samples", "10"])
        .output()
        .expect("binary runs");
    assert_eq!(output.status.code(), Some(2));
}
