//! End-to-end tests of the `finfree` binary: outputs, exit codes, config
//! handling, and the annular disk cache.

use std::path::Path;
use std::process::{Command, Output};

use finfree::families::{bernoulli_pair, laguerre};
use finfree::freeprob::{InfLaw, InfLawJson, Law};
use finfree::scalar::{q_int, Q};
use num_traits::Zero;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_finfree"));
    c.env_remove("FINFREE_CACHE_DIR");
    c
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn run_ok(args: &[&str]) -> String {
    let out = bin().args(args).output().unwrap();
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    stdout(&out)
}

fn exit_code(args: &[&str]) -> i32 {
    bin().args(args).output().unwrap().status.code().unwrap()
}

#[test]
fn enumerate_counts() {
    assert!(run_ok(&["enumerate", "partitions", "3"]).contains("count: 5"));
    assert!(run_ok(&["enumerate", "nc", "4"]).contains("count: 14"));
    assert!(run_ok(&["enumerate", "annular", "2", "1"]).contains("count: 4"));
    assert!(run_ok(&["enumerate", "ci", "3"]).contains("count: 5"));
}

#[test]
fn enumerate_size_limit_exit_code() {
    assert_eq!(exit_code(&["enumerate", "partitions", "40"]), 2);
    assert_eq!(exit_code(&["enumerate", "annular", "6", "6"]), 2);
}

fn write_poly(dir: &Path, name: &str, p: &finfree::poly::MonicPoly) -> String {
    let path = dir.join(name);
    std::fs::write(&path, serde_json::to_string(p).unwrap()).unwrap();
    path.to_str().unwrap().to_owned()
}

#[test]
fn convolve_identities_and_errors() {
    let dir = tempfile::tempdir().unwrap();
    let p = finfree::poly::MonicPoly::from_roots(&[q_int(2), q_int(-1), q_int(3)]).unwrap();
    let p_path = write_poly(dir.path(), "p.json", &p);
    let xd_path = write_poly(dir.path(), "xd.json", &finfree::poly::MonicPoly::power(3));
    let one_path = write_poly(
        dir.path(),
        "one.json",
        &finfree::poly::MonicPoly::point_mass(3, &q_int(1)),
    );
    let out_path = dir.path().join("out.json");
    let out_str = out_path.to_str().unwrap();

    // additive identity echoes the input
    run_ok(&["convolve", "--op", "add", &p_path, &xd_path, "-o", out_str]);
    let echoed: finfree::poly::MonicPoly =
        serde_json::from_str(&std::fs::read_to_string(&out_path).unwrap()).unwrap();
    assert_eq!(echoed, p);

    // multiplicative identity (x-1)^d
    run_ok(&["convolve", "--op", "mul", &p_path, &one_path, "-o", out_str]);
    let echoed: finfree::poly::MonicPoly =
        serde_json::from_str(&std::fs::read_to_string(&out_path).unwrap()).unwrap();
    assert_eq!(echoed, p);

    // degree mismatch -> 3
    let small = write_poly(
        dir.path(),
        "small.json",
        &finfree::poly::MonicPoly::power(2),
    );
    assert_eq!(exit_code(&["convolve", "--op", "add", &p_path, &small]), 3);

    // garbage file -> 4
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "not json").unwrap();
    assert_eq!(
        exit_code(&["convolve", "--op", "add", &p_path, bad.to_str().unwrap()]),
        4
    );
    // missing file -> 4
    assert_eq!(exit_code(&["convolve", "--op", "add", &p_path, "/nope.json"]), 4);
}

#[test]
fn transform_cumulants_of_laguerre_are_ones() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_poly(dir.path(), "lag.json", &laguerre().generate(8).unwrap());
    let text = run_ok(&["transform", "cumulants", &path]);
    let parsed: serde_json::Value = serde_json::from_str(&text).unwrap();
    let ones: Vec<String> = parsed["cumulants"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_str().unwrap().to_owned())
        .collect();
    assert_eq!(ones, vec!["1"; 8]);
}

#[test]
fn transform_h_of_semicircle() {
    let dir = tempfile::tempdir().unwrap();
    let law = serde_json::json!({
        "order": 8,
        "cumulants": ["0", "1", "0", "0", "0", "0", "0", "0"],
    });
    let path = dir.path().join("semi.json");
    std::fs::write(&path, law.to_string()).unwrap();
    let text = run_ok(&["transform", "h", path.to_str().unwrap()]);
    let parsed: serde_json::Value = serde_json::from_str(&text).unwrap();
    let coeffs = parsed["coeffs"].as_array().unwrap();
    // coeffs[i] is the z^{-i-1} coefficient: h_2 at index 2, h_4 at index 4
    assert_eq!(coeffs[2].as_str().unwrap(), "1");
    assert_eq!(coeffs[4].as_str().unwrap(), "5");
}

#[test]
fn transform_k_of_point_mass() {
    let dir = tempfile::tempdir().unwrap();
    let law = serde_json::json!({
        "order": 6,
        "moments": ["2", "4", "8", "16", "32", "64"],
    });
    let path = dir.path().join("d2.json");
    std::fs::write(&path, law.to_string()).unwrap();
    // K_{delta_2} = 1/z + 2
    let text = run_ok(&["transform", "k", path.to_str().unwrap()]);
    let parsed: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(parsed["pole"].as_str().unwrap(), "1");
    let coeffs = parsed["coeffs"].as_array().unwrap();
    assert_eq!(coeffs[0].as_str().unwrap(), "2");
    assert!(coeffs[1..].iter().all(|c| c.as_str().unwrap() == "0"));
}

#[test]
fn transform_rhat_of_bernoulli() {
    let dir = tempfile::tempdir().unwrap();
    let base = Law::from_moments(
        [0i64, 1, 0, 1, 0, 1].map(q_int).to_vec(),
    )
    .unwrap();
    let inf = InfLaw::from_mprime(base, vec![Q::zero(); 6]).unwrap();
    let path = dir.path().join("bern.json");
    std::fs::write(&path, serde_json::to_string(&InfLawJson::from_inf_law(&inf)).unwrap())
        .unwrap();
    let text = run_ok(&["transform", "rhat", path.to_str().unwrap()]);
    let parsed: serde_json::Value = serde_json::from_str(&text).unwrap();
    let rhat: Vec<String> = parsed["rhat"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_str().unwrap().to_owned())
        .collect();
    assert_eq!(rhat, ["0", "1", "0", "-5", "0", "22"]);
    // the meta route through the family agrees
    let meta = bernoulli_pair().meta_fluct_law(6).unwrap();
    let rendered: Vec<String> = meta.rhat().iter().map(finfree::scalar::format_q).collect();
    assert_eq!(rhat, rendered);
}

#[test]
fn transform_theta_and_mk() {
    let dir = tempfile::tempdir().unwrap();
    let law = serde_json::json!({
        "order": 8,
        "moments": ["1", "1", "1", "1", "1", "1", "1", "1"],
    });
    let path = dir.path().join("d1.json");
    std::fs::write(&path, law.to_string()).unwrap();
    // theta of delta_1 is z
    let text = run_ok(&["transform", "theta", path.to_str().unwrap()]);
    let parsed: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(parsed["top"].as_str().unwrap(), "1");
    assert!(parsed["coeffs"]
        .as_array()
        .unwrap()
        .iter()
        .all(|c| c.as_str().unwrap() == "0"));
    // Markov-Krein of delta_1 is delta_1
    let text = run_ok(&["transform", "mk", path.to_str().unwrap()]);
    let parsed: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert!(parsed["moments"]
        .as_array()
        .unwrap()
        .iter()
        .all(|c| c.as_str().unwrap() == "1"));
}

#[test]
fn infinitesimal_hermite_csv() {
    let text = run_ok(&[
        "infinitesimal",
        "--family",
        "hermite",
        "--moments",
        "4",
        "--ladder",
        "128,256,512",
        "--format",
        "csv",
    ]);
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "n,d,delta_exact,richardson,predicted,abs_error"
    );
    let last_row: Vec<&str> = text
        .lines()
        .last()
        .unwrap()
        .split(',')
        .collect();
    assert_eq!(last_row[0], "4");
    assert_eq!(last_row[1], "512");
    assert_eq!(last_row[3], "-5");
    assert_eq!(last_row[4], "-5");
    assert_eq!(last_row[5], "0");
}

#[test]
fn infinitesimal_laguerre_inverse_cumulant_mode() {
    let text = run_ok(&[
        "infinitesimal",
        "--family",
        "laguerre-inverse",
        "--moments",
        "2",
        "--ladder",
        "100,200",
        "--mode",
        "cumulants",
    ]);
    let parsed: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(parsed[1]["predicted"].as_str().unwrap(), "-1");
}

#[test]
fn infinitesimal_dirac_exact() {
    let text = run_ok(&[
        "infinitesimal",
        "--family",
        "dirac:0:3",
        "--moments",
        "3",
        "--ladder",
        "64,128",
        "--format",
        "csv",
        "--approx",
    ]);
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "n,d,delta_exact,richardson,predicted,abs_error,delta_approx,richardson_approx,abs_error_approx"
    );
    for line in lines {
        let cols: Vec<&str> = line.split(',').collect();
        assert_eq!(cols[5], "0", "abs_error exact zero: {line}");
        assert_eq!(cols.len(), 9);
    }
}

#[test]
fn config_file_and_validation() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("cfg");
    std::fs::write(&cfg, "order=6\nladder=32,64\nformat=csv\n").unwrap();
    let out = bin()
        .args([
            "--config",
            cfg.to_str().unwrap(),
            "infinitesimal",
            "--family",
            "dirac:0:2",
            "--moments",
            "2",
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with("n,d,"));
    assert!(text.contains("\n2,64,"));

    let bad = dir.path().join("bad");
    std::fs::write(&bad, "order=12\n").unwrap();
    let code = bin()
        .args(["--config", bad.to_str().unwrap(), "enumerate", "nc", "3"])
        .output()
        .unwrap()
        .status
        .code()
        .unwrap();
    assert_eq!(code, 3);

    let worse = dir.path().join("worse");
    std::fs::write(&worse, "nonsense\n").unwrap();
    let code = bin()
        .args(["--config", worse.to_str().unwrap(), "enumerate", "nc", "3"])
        .output()
        .unwrap()
        .status
        .code()
        .unwrap();
    assert_eq!(code, 4);
}

#[test]
fn annular_disk_cache_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let run = || {
        let out = bin()
            .env("FINFREE_CACHE_DIR", dir.path())
            .args(["enumerate", "annular", "2", "2"])
            .output()
            .unwrap();
        assert!(out.status.success());
        stdout(&out)
    };
    let first = run();
    let cache = dir.path().join("annular_2_2.json");
    assert!(cache.exists(), "cache file written");
    let second = run();
    assert_eq!(first, second, "cached run matches fresh run");
}

#[test]
fn deterministic_output() {
    let a = run_ok(&["enumerate", "nc", "5"]);
    let b = run_ok(&["enumerate", "nc", "5"]);
    assert_eq!(a, b);
}
