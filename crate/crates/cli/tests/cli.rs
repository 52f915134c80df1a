use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn corpus(name: &str) -> PathBuf {
    root().join("corpus").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tsreconf"))
        .args(args)
        .env_remove("TSRECONF_OUT_DIR")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

/// Required keys and declared JSON types from one of the shipped schemas.
fn conforms(value: &Value, schema_name: &str) {
    let text = std::fs::read_to_string(root().join("docs/schemas").join(schema_name)).unwrap();
    let schema: Value = serde_json::from_str(&text).unwrap();
    check(value, &schema, schema_name);
}

fn type_ok(v: &Value, ty: &str) -> bool {
    match ty {
        "object" => v.is_object(),
        "array" => v.is_array(),
        "string" => v.is_string(),
        "integer" => v.is_u64() || v.is_i64(),
        "number" => v.is_number(),
        "boolean" => v.is_boolean(),
        "null" => v.is_null(),
        _ => panic!("unknown type {ty}"),
    }
}

fn check(v: &Value, schema: &Value, at: &str) {
    match &schema["type"] {
        Value::String(t) => assert!(type_ok(v, t), "{at}: expected {t}, got {v}"),
        Value::Array(ts) => assert!(ts.iter().any(|t| type_ok(v, t.as_str().unwrap())), "{at}: {v}"),
        _ => {}
    }
    if let Some(c) = schema.get("const") {
        assert_eq!(v, c, "{at}");
    }
    if let Some(Value::Array(opts)) = schema.get("enum") {
        assert!(opts.contains(v), "{at}: {v} not in enum");
    }
    if let Some(Value::Array(req)) = schema.get("required") {
        for k in req {
            assert!(v.get(k.as_str().unwrap()).is_some(), "{at}: missing {k}");
        }
    }
    if let (Some(Value::Object(props)), Some(obj)) = (schema.get("properties"), v.as_object()) {
        for (k, sub) in props {
            if let Some(x) = obj.get(k) {
                check(x, sub, &format!("{at}.{k}"));
            }
        }
    }
    if let (Some(items), Some(arr)) = (schema.get("items"), v.as_array()) {
        for (i, x) in arr.iter().enumerate() {
            check(x, items, &format!("{at}[{i}]"));
        }
    }
    if let (Some(extra), Some(obj)) = (schema.get("additionalProperties"), v.as_object()) {
        for (k, x) in obj {
            check(x, extra, &format!("{at}.{k}"));
        }
    }
}

fn json(args: &[&str]) -> Value {
    let o = run(args);
    assert!(o.status.success(), "{:?}: {}", args, String::from_utf8_lossy(&o.stderr));
    serde_json::from_str(&stdout(&o)).unwrap()
}

#[test]
fn gap_ratio_1024_strictly_between_one_and_two() {
    let v = json(&["gap-ratio", "--n", "1024", "--json"]);
    conforms(&v, "gap-ratio.schema.json");
    let (num, den) = v["ratio"].as_str().unwrap().split_once('/').unwrap();
    let (num, den): (u128, u128) = (num.parse().unwrap(), den.parse().unwrap());
    assert!(den < num && num < 2 * den);

    let o = run(&["gap-ratio", "--n", "1024"]);
    assert!(stdout(&o).contains("ratio 1048577/525313"));
}

#[test]
fn reconfig_approx_on_star_prints_size_two() {
    let o = run(&[
        "reconfig",
        p(&corpus("star.tss")),
        p(&corpus("star_x.txt")),
        p(&corpus("star_y.txt")),
        "--approx",
    ]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("size 2\n"));
}

#[test]
fn reconfig_reports_match_schemas() {
    let (g, x, y) = (corpus("star.tss"), corpus("star_x.txt"), corpus("star_y.txt"));
    let v = json(&["reconfig", p(&g), p(&x), p(&y), "--json"]);
    conforms(&v, "reconfig.schema.json");
    assert_eq!(v["value"], 2);
    assert_eq!(v["witness"], serde_json::json!([[2], [2, 3], [3]]));
    let v = json(&["reconfig", p(&g), p(&x), p(&y), "--cap", "1", "--json"]);
    conforms(&v, "reconfig-cap.schema.json");
    assert_eq!(v["reachable"], false);
    let v = json(&["reconfig", p(&g), p(&x), p(&y), "--cap", "2", "--json"]);
    assert_eq!(v["reachable"], true);
}

#[test]
fn selftest_exits_zero() {
    let o = run(&["selftest"]);
    assert!(o.status.success(), "{}", stdout(&o));
    let v = json(&["selftest", "--json", "--seed", "3"]);
    conforms(&v, "selftest.schema.json");
}

#[test]
fn check_target_and_trace() {
    let dir = tempfile::tempdir().unwrap();
    let s = dir.path().join("s.txt");
    std::fs::write(&s, "1\n").unwrap();
    let o = run(&["check-target", p(&corpus("p3.tss")), p(&s)]);
    assert_eq!(stdout(&o), "TARGET\ntrace length 2\n");
    let v = json(&["check-target", p(&corpus("p3.tss")), p(&s), "--json"]);
    conforms(&v, "check-target.schema.json");
    let v = json(&["trace", p(&corpus("p3.tss")), p(&s)]);
    conforms(&v, "trace.schema.json");
    assert_eq!(v, serde_json::json!([[1], [1, 2], [1, 2, 3]]));

    std::fs::write(&s, "1\n").unwrap();
    let o = run(&["check-target", p(&corpus("triangle.tss")), p(&s)]);
    assert_eq!(stdout(&o), "NOT-TARGET\ntrace length 0\n");
}

#[test]
fn solve_tss_both_methods() {
    for flag in ["--exact", "--greedy"] {
        let v = json(&["solve-tss", p(&corpus("triangle.tss")), flag, "--json"]);
        conforms(&v, "solve-tss.schema.json");
        assert_eq!(v["size"], 2);
    }
}

#[test]
fn reduce_writes_h_and_roles_under_out_dir() {
    let dir = tempfile::tempdir().unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_tsreconf"))
        .args(["reduce", p(&corpus("p2.tss")), "--ell", "2", "--out", "h.tss", "--roles", "roles.json"])
        .env("TSRECONF_OUT_DIR", dir.path())
        .output()
        .unwrap();
    assert!(o.status.success());
    let h = std::fs::read_to_string(dir.path().join("h.tss")).unwrap();
    assert!(h.starts_with("p tss 90 121\n"));
    let roles: Value = serde_json::from_str(&std::fs::read_to_string(dir.path().join("roles.json")).unwrap()).unwrap();
    conforms(&roles, "roles.schema.json");
    assert_eq!(roles.as_object().unwrap().len(), 90);
    let keys: Vec<&String> = roles.as_object().unwrap().keys().collect();
    assert_eq!(keys[0], "1");
    assert_eq!(keys[9], "10");
}

#[test]
fn verify_reduction_report() {
    let v = json(&["verify-reduction", p(&corpus("2k2.tss")), "--ell", "2", "--kc", "1", "--ks", "1"]);
    conforms(&v, "verify-reduction.schema.json");
    assert_eq!(v["opt_h"], 4);
    assert_eq!(v["soundness"]["holds"], true);
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.tss");
    std::fs::write(&bad, "p tss 2 1\nt 1 1\ne 1 2\n").unwrap();
    assert_eq!(run(&["solve-tss", p(&bad)]).status.code(), Some(1));
    assert_eq!(run(&["gap-ratio", "--n", "1"]).status.code(), Some(1));
    assert_eq!(
        run(&["solve-tss", p(&corpus("petersen.tss")), "--limit-n", "5"]).status.code(),
        Some(2)
    );
    assert_eq!(
        run(&["verify-reduction", p(&corpus("p2.tss")), "--ell", "2", "--kc", "2", "--ks", "1"]).status.code(),
        Some(1)
    );
}

#[test]
fn bench_csv_is_deterministic() {
    let args = ["bench", "--ns", "4", "--ps", "0.5", "--ells", "1,2", "--reps", "2", "--seed", "9"];
    let a = stdout(&run(&args));
    let b = stdout(&run(&args));
    assert_eq!(a, b);
    let mut lines = a.lines();
    assert!(lines.next().unwrap().starts_with("schema_version,"));
    assert_eq!(lines.count(), 8);
}
