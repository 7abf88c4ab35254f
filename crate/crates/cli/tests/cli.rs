use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use sha2::{Digest, Sha256};

fn cftype(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cftype"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn hash(path: &Path) -> String {
    hex::encode(Sha256::digest(fs::read(path).unwrap()))
}

fn json(path: &Path) -> Value {
    serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap()
}

fn golden(dir: &Path) -> String {
    let p = dir.join("golden.json");
    fs::write(
        &p,
        r#"{"a0": 1, "quotients": [], "generator": {"kind": "constant", "value": 1}}"#,
    )
    .unwrap();
    p.display().to_string()
}

#[test]
fn construct_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a");
    let b = dir.path().join("b");
    for d in [&a, &b] {
        let out = cftype(&[
            "construct",
            "--target",
            "2",
            "--steps",
            "10",
            "-o",
            d.to_str().unwrap(),
        ]);
        assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    }
    for f in ["trail.json", "expansion.json"] {
        assert_eq!(hash(&a.join(f)), hash(&b.join(f)));
    }
    let record = json(&a.join("record.json"));
    assert_eq!(record["command"], "construct");
    assert_eq!(record["certificates"].as_array().unwrap().len(), 10);
    assert_eq!(
        record["outputs"][0]["sha256"].as_str().unwrap(),
        hash(&a.join("trail.json"))
    );
}

#[test]
fn identity_transform_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let r = dir.path().join("r");
    let t = dir.path().join("t");
    assert_eq!(
        code(&cftype(&[
            "random-expansion",
            "--seed",
            "11",
            "--len",
            "40",
            "-o",
            r.to_str().unwrap()
        ])),
        0
    );
    let input = r.join("expansion.json");
    let out = cftype(&[
        "transform",
        input.to_str().unwrap(),
        "--matrix",
        "[[1,0],[0,1]]",
        "--out-len",
        "30",
        "-o",
        t.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    assert_eq!(
        fs::read(&input).unwrap(),
        fs::read(t.join("expansion.json")).unwrap()
    );
}

#[test]
fn random_expansion_depends_only_on_seed() {
    let dir = tempfile::tempdir().unwrap();
    let paths: Vec<_> = ["a", "b", "c"].iter().map(|n| dir.path().join(n)).collect();
    for (p, seed) in paths.iter().zip(["5", "5", "6"]) {
        assert_eq!(
            code(&cftype(&[
                "random-expansion",
                "--seed",
                seed,
                "-o",
                p.to_str().unwrap()
            ])),
            0
        );
    }
    let h: Vec<_> = paths
        .iter()
        .map(|p| hash(&p.join("expansion.json")))
        .collect();
    assert_eq!(h[0], h[1]);
    assert_ne!(h[0], h[2]);
}

#[test]
fn golden_kn_nest_passes() {
    let dir = tempfile::tempdir().unwrap();
    let g = golden(dir.path());
    let v = dir.path().join("v");
    let out = cftype(&[
        "verify",
        &g,
        "--suite",
        "kn-nest",
        "--horizon",
        "40",
        "-o",
        v.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&v.join("verify.json"))["results"][0]["pass"], true);
}

#[test]
fn verify_suites_in_parallel() {
    let dir = tempfile::tempdir().unwrap();
    let g = golden(dir.path());
    let r = dir.path().join("r");
    assert_eq!(
        code(&cftype(&[
            "random-expansion",
            "--seed",
            "3",
            "--len",
            "60",
            "-o",
            r.to_str().unwrap()
        ])),
        0
    );
    let rand = r.join("expansion.json").display().to_string();
    for suite in ["best-approx", "round-trips"] {
        let v = dir.path().join(suite);
        let out = cftype(&[
            "--jobs",
            "2",
            "verify",
            &g,
            &rand,
            "--suite",
            suite,
            "-o",
            v.to_str().unwrap(),
        ]);
        assert_eq!(
            code(&out),
            0,
            "{suite}: {}",
            String::from_utf8_lossy(&out.stderr)
        );
    }
}

#[test]
fn reduce_constant_beta_stays_in_first_interval() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().join("red");
    let out = cftype(&[
        "reduce",
        "--beta",
        "constant:1",
        "--target",
        "1",
        "--steps",
        "8",
        "-o",
        d.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    let trail = json(&d.join("trail.json"));
    let certs = trail["certificates"].as_array().unwrap();
    assert_eq!(certs.len(), 8);
    for c in certs {
        assert_eq!(
            (c["t_lo"].as_str().unwrap(), c["t_hi"].as_str().unwrap()),
            ("2/1", "5/2")
        );
    }
    assert_eq!(trail["Jmax"], 12);
}

#[test]
fn estimate_of_constructed_number() {
    let dir = tempfile::tempdir().unwrap();
    let c = dir.path().join("c");
    let e = dir.path().join("e");
    assert_eq!(
        code(&cftype(&[
            "construct",
            "--target",
            "1",
            "--steps",
            "10",
            "-o",
            c.to_str().unwrap()
        ])),
        0
    );
    let input = c.join("expansion.json");
    let out = cftype(&[
        "estimate",
        input.to_str().unwrap(),
        "--horizon",
        "10",
        "--window",
        "5",
        "-o",
        e.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    let v = json(&e.join("expansion.estimate.json"))["value"]
        .as_f64()
        .unwrap();
    assert!((1.0..1.0 + 3.0 / 5.0).contains(&v), "{v}");
    assert!(fs::read_to_string(e.join("expansion.theta.csv"))
        .unwrap()
        .starts_with("n,theta\n"));
}

#[test]
fn infinite_target_hits_resource_limit() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().join("inf");
    let out = cftype(&[
        "construct",
        "--target",
        "inf",
        "--steps",
        "6",
        "-o",
        d.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 3);
    let out = cftype(&[
        "construct",
        "--target",
        "inf",
        "--steps",
        "4",
        "-o",
        d.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    let ms: Vec<u64> = json(&d.join("trail.json"))["certificates"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["m"].as_u64().unwrap())
        .collect();
    assert!(ms.windows(2).all(|w| w[0] < w[1]), "{ms:?}");
}

#[test]
fn precondition_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().join("x");
    let d = d.to_str().unwrap();
    assert_eq!(code(&cftype(&["construct", "--target", "1/2", "-o", d])), 2);
    assert_eq!(
        code(&cftype(&[
            "construct",
            "--target",
            "2",
            "--start",
            "2,4",
            "-o",
            d
        ])),
        2
    );
    assert_eq!(
        code(&cftype(&[
            "reduce",
            "--beta",
            "constant:0",
            "--target",
            "1",
            "-o",
            d
        ])),
        2
    );
    assert_eq!(
        code(&cftype(&[
            "transform",
            "missing.json",
            "--matrix",
            "[[1,2],[2,4]]",
            "-o",
            d
        ])),
        2
    );
}
