use std::path::PathBuf;
use std::process::Command;

use clap::Parser;
use proptest::prelude::*;
use serde_json::Value;

use realfib_cli::{run, Cli, Status};
use realfib_core::schema;

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
        .display()
        .to_string()
}

struct Output {
    code: i32,
    stdout: String,
    stderr: String,
}

fn realfib(args: &[&str]) -> Output {
    let out = Command::new(env!("CARGO_BIN_EXE_realfib"))
        .args(args)
        .output()
        .expect("binary runs");
    Output {
        code: out.status.code().expect("exit code"),
        stdout: String::from_utf8(out.stdout).expect("utf-8"),
        stderr: String::from_utf8(out.stderr).expect("utf-8"),
    }
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    let out = realfib(&full);
    let v: Value = serde_json::from_str(&out.stdout).expect("stdout is JSON");
    (out.code, v)
}

fn squash(s: &str) -> String {
    s.split_whitespace().collect::<Vec<_>>().join(" ")
}

#[test]
fn table1_text_and_json() {
    let out = realfib(&["table1"]);
    assert_eq!(out.code, 0);
    let lines: Vec<String> = out.stdout.lines().map(squash).collect();
    assert!(lines.contains(&"D2 2 3 0 F-K 6 2 yes".to_string()));
    assert!(lines.contains(&"D4_2_0_11 2 0 2 -K 3 1 no".to_string()));
    assert_eq!(lines.len(), 25);

    let (code, v) = json(&["table1"]);
    assert_eq!(code, 0);
    assert_eq!(v.as_array().unwrap().len(), 24);
    let first = realfib(&["--format", "json", "table1"]).stdout;
    let second = realfib(&["table1", "--format", "json"]).stdout;
    assert_eq!(first, second);
}

#[test]
fn malformed_flags_exit_2() {
    assert_eq!(realfib(&["table1", "--format", "xml"]).code, 2);
    assert_eq!(realfib(&["table1", "--bogus"]).code, 2);
    assert_eq!(realfib(&["--strategy", "spiral", "table1"]).code, 2);
}

#[test]
fn enumerate_surfaces() {
    let (code, v) = json(&["enumerate", "D2"]);
    assert_eq!(code, 0);
    let texts: Vec<&str> = v["divisors"]
        .as_array()
        .unwrap()
        .iter()
        .map(|d| d["text"].as_str().unwrap())
        .collect();
    assert_eq!(texts, ["-F-3K", "F-K"]);
    let (code, v) = json(&["enumerate", "Q31_0_4"]);
    assert_eq!(code, 0);
    assert_eq!(v["divisors"], Value::Array(vec![]));
    let (code, v) = json(&["enumerate", "XYZ"]);
    assert_eq!((code, v["status"].as_str()), (2, Some("invalid")));
    let (code, v) = json(&["--strategy", "box:6", "enumerate", "D2_1_0"]);
    assert_eq!(code, 0);
    assert_eq!(v["divisors"].as_array().unwrap().len(), 4);
}

#[test]
fn check_divisors() {
    let (code, v) = json(&["check", "D2", "1", "-1"]);
    assert_eq!(code, 0);
    assert_eq!((v["ell"].as_i64(), v["genus"].as_i64()), (Some(6), Some(2)));
    let (code, v) = json(&["check", "D2", "-1", "-1"]);
    assert_eq!(code, 1);
    assert_eq!(v["conditions"]["c5"], Value::Bool(false));
    assert_eq!(realfib(&["check", "D2", "1"]).code, 2);
    let (code, _) = json(&["check", "D2", "--divisor", &fixture("d2_divisor.json")]);
    assert_eq!(code, 0);
    assert_eq!(realfib(&["check", "P2", "--divisor", &fixture("d2_divisor.json")]).code, 2);
}

#[test]
fn conic_commands() {
    let (code, v) = json(&["conic", "chow", "0", "3"]);
    assert_eq!(code, 0);
    for (k, want) in [("KX2", 2), ("s", 3), ("x", 1), ("y", -1)] {
        assert_eq!(v[k].as_i64(), Some(want), "{k}");
    }
    let (code, v) = json(&["conic", "conditions", "3", "1", "1"]);
    assert_eq!(code, 0);
    assert_eq!(v["conditions"], serde_json::json!([true, true, true, true, true, true]));
    assert_eq!(json(&["conic", "conditions", "3", "1", "0"]).0, 1);
    let (code, v) = json(&["conic", "candidate", "5"]);
    assert_eq!((code, v["genus"].as_i64(), v["ell_bound"].as_i64()), (0, Some(4), Some(8)));
    assert_eq!(realfib(&["conic", "candidate", "1"]).code, 2);

    let (code, v) = json(&["conic", "analyze", &fixture("ex2.json")]);
    assert_eq!(code, 0);
    for (k, want) in [("total", 6), ("real", 6), ("s", 3)] {
        assert_eq!(v[k].as_i64(), Some(want), "{k}");
    }
    let (_, v) = json(&["conic", "analyze", &fixture("ex1.json")]);
    assert_eq!((v["real"].as_i64(), v["infinity"].as_i64()), (Some(4), Some(1)));
    assert_eq!(json(&["conic", "analyze", &fixture("singular.json")]).0, 1);
    let out = realfib(&["conic", "discriminant", &fixture("ex2.json")]);
    assert_eq!(out.stdout.trim(), "u*v*(u - 2*v)*(u - v)*(u + v)*(u + 2*v)");
    let (code, v) = json(&["conic", "construct", &fixture("construct.json")]);
    assert_eq!((code, v["s"].as_i64()), (0, Some(4)));
    assert_eq!(realfib(&["conic", "analyze", &fixture("q31.json")]).code, 2);
}

#[test]
fn hyperbolicity_commands() {
    let q31 = fixture("q31.json");
    let (code, v) = json(&["hyp", &q31, "--point", "1,0,0,0", "--trials", "500", "--seed", "0"]);
    assert_eq!((code, v["verdict"].as_str()), (0, Some("supported")));
    let (code, v) = json(&["hyp", &q31, "--point", "0,0,0,1", "--trials", "50", "--seed", "0"]);
    assert_eq!((code, v["verdict"].as_str()), (1, Some("refuted")));
    let (code, v) = json(&["hyp", &fixture("empty_quadric.json"), "--point", "1,0,0,0", "--trials", "1"]);
    assert_eq!((code, v["trial"].as_i64()), (1, Some(1)));
    let out = realfib(&["hyp", &q31, "--point", "1,1,0,0"]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("center lies on the hypersurface"));
}

#[test]
fn linking_commands() {
    let center = fixture("center.json");
    let (code, v) = json(&["link", &fixture("nested_ovals.json"), &center, "--degree", "4"]);
    assert_eq!((code, v["criterion"].as_bool()), (0, Some(true)));
    let (code, v) = json(&["link", &fixture("circle.json"), &center, "--degree", "4"]);
    assert_eq!((code, v["criterion"].as_bool()), (1, Some(false)));
    let (code, v) = json(&["link", &fixture("pseudoline_circle.json"), &center, "--degree", "3", "--plane", "0,2,-1"]);
    assert_eq!((code, v["sum"].as_i64()), (0, Some(3)));
    // W on the y axis instead of the x axis
    let (code, v) = json(&["link", &fixture("circle.json"), &center, "--degree", "2", "--plane", "0,1,0"]);
    assert_eq!((code, v["sum"].as_i64()), (0, Some(2)));
    // a plane not through E
    assert_eq!(realfib(&["link", &fixture("circle.json"), &center, "--degree", "2", "--plane", "1,0,0"]).code, 2);
}

#[test]
fn degenerate_cycle_reports_segment() {
    let dir = std::env::temp_dir().join(format!("realfib-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("touching.json");
    std::fs::write(
        &path,
        r#"{"ambient":2,"closure":"sphere","points":[["1","1/4","0"],["1","0","1/4"],["1","-1/4","-1/4"]]}"#,
    )
    .unwrap();
    let (code, v) = json(&["link", path.to_str().unwrap(), &fixture("center.json"), "--degree", "2", "--plane", "0,0,1"]);
    assert_eq!(code, 2);
    assert!(v["error"].as_str().unwrap().contains("segment 0"));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn fixtures_round_trip() {
    let read = |name: &str| schema::parse(&std::fs::read_to_string(fixture(name)).unwrap()).unwrap();
    for name in ["ex1.json", "ex2.json", "singular.json"] {
        let v = read(name);
        let out = schema::conic_to_json(&schema::conic_from_json(&v).unwrap());
        assert_eq!(schema::canonical(&out), schema::canonical(&v), "{name}");
    }
    for name in ["q31.json", "empty_quadric.json"] {
        let v = read(name);
        let h = schema::hypersurface_from_json(&v).unwrap();
        let once = schema::hypersurface_to_json(&h);
        let twice = schema::hypersurface_to_json(&schema::hypersurface_from_json(&once).unwrap());
        assert_eq!(schema::canonical(&once), schema::canonical(&twice), "{name}");
    }
    for name in ["circle.json", "nested_ovals.json", "pseudoline_circle.json"] {
        let v = read(name);
        let cycles = schema::cycles_from_json(&v).unwrap();
        let out: Vec<Value> = cycles.iter().map(schema::cycle_to_json).collect();
        let expected = match &v {
            Value::Array(items) => items.clone(),
            other => vec![other.clone()],
        };
        assert_eq!(schema::canonical(&Value::Array(out)), schema::canonical(&Value::Array(expected)), "{name}");
    }
    let v = read("center.json");
    let out = schema::subspace_to_json(&schema::subspace_from_json(&v).unwrap());
    assert_eq!(schema::canonical(&out), schema::canonical(&v));
}

#[test]
fn help_per_subcommand() {
    for cmd in ["table1", "enumerate", "check", "conic", "hyp", "link"] {
        let out = realfib(&[cmd, "--help"]);
        assert_eq!(out.code, 0, "{cmd}");
        assert!(out.stdout.contains("--format"), "{cmd}");
    }
}

fn in_process(args: &[String]) -> (i32, Value) {
    let mut full = vec!["realfib".to_string()];
    full.extend_from_slice(args);
    let cli = Cli::try_parse_from(full).expect("valid arguments");
    let r = run(&cli);
    (r.exit_code(), r.payload)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn exit_code_follows_status(s in -3i64..25, a in -12i64..12, b in -3i64..6, which in 0usize..4) {
        let args: Vec<String> = match which {
            0 => vec!["conic".into(), "conditions".into(), s.to_string(), a.to_string(), b.to_string()],
            1 => vec!["conic".into(), "candidate".into(), s.to_string()],
            2 => vec!["conic".into(), "chow".into(), a.to_string(), s.to_string()],
            _ => vec!["check".into(), "D2".into(), a.to_string(), b.to_string()],
        };
        let (code, payload) = in_process(&args);
        let status = Status::parse(payload["status"].as_str().expect("status field")).expect("known status");
        prop_assert_eq!(code, status.exit_code());
    }
}
