use std::path::PathBuf;
use std::process::{Command, Output};

fn schur(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_schur")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "core", "fixtures", &format!("{name}.lp")].iter().collect();
    p.to_str().unwrap().to_string()
}

#[test]
fn heisenberg_at_five() {
    let o = schur(&["mult", &fixture("heis3"), "--at", "p=5"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "norm := [ 5, 5 ]\n");
}

#[test]
fn symbolic_mult_prints_the_ledger() {
    let o = schur(&["mult", &fixture("sym1")]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "norm := [ ], pseudounits := [ x ]\n");
    let o = schur(&["mult", &fixture("symquad")]);
    assert_eq!(stdout(&o), "norm := [ p ], pseudounits := [ x^2+x ]\n");
}

#[test]
fn json_fields() {
    let o = schur(&["mult", &fixture("symw"), "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["norm"], serde_json::json!([2]));
    assert_eq!(v["pseudo_units"], serde_json::json!(["x"]));
    assert_eq!(v["budget_exceeded"], serde_json::Value::Null);
}

#[test]
fn stress_fixture_hits_the_budget() {
    let o = schur(&["mult", &fixture("dim7stress")]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("budget exceeded: degree"), "{}", stderr(&o));
    let o = schur(&["mult", &fixture("dim7stress"), "--budget", "steps=50", "--format", "json"]);
    assert_eq!(o.status.code(), Some(2));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["budget_exceeded"], "steps");
}

#[test]
fn matrix_dump() {
    let o = schur(&["matrix", &fixture("heis3")]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 10);
    assert!(text.contains("v[1,2] : p*t[1,2] + s[3]\n"));
}

#[test]
fn split_tree() {
    let o = schur(&["split", &fixture("sym1")]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "root: norm := [ ], pseudounits := [ x ]\n  x = 0: norm := [ p, p ], pseudounits := [ ]\n");
    let o = schur(&["split", &fixture("sym3")]);
    assert!(stdout(&o).contains("UNRESOLVED: y*z+1"));
}

#[test]
fn verify_exit_codes() {
    let o = schur(&["verify", &fixture("sym1"), "--primes", "5,7"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("sym1 p=7 (exhaustive): 7 tested, 0 skipped, 7 match"));
    // without children the zero of x is uncovered
    let o = schur(&["verify", &fixture("sym1"), "--primes", "5", "--max-depth", "0"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stdout(&o).contains("uncovered p=5 {x=0}"));
    let o = schur(&["verify", &fixture("bad1"), "--primes", "5"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn sampled_verify_is_reproducible() {
    let args = ["verify", &fixture("sym3"), "--primes", "11", "--samples", "30", "--seed", "9", "--format", "json"];
    let a = schur(&args);
    let b = schur(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["summaries"][0]["exhaustive"], false);
    assert_eq!(v["records"].as_array().unwrap().len(), 30);
}

#[test]
fn check_reports_bad1() {
    let o = schur(&["check", &fixture("bad1"), "--at", "p=5"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o), "p-compat at i=1: -b3 != 0\n");
    let o = schur(&["check", &fixture("sym2")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("probabilistic"));
}

#[test]
fn specialise_round_trips() {
    let dir = std::env::temp_dir().join(format!("schur-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let out = dir.join("s.lp");
    let o = schur(&["specialise", &fixture("sym2"), "--subs", "x=0", "-o", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let printed = stdout(&schur(&["specialise", &fixture("sym2"), "--subs", "x=0"]));
    assert_eq!(std::fs::read_to_string(&out).unwrap(), printed);
    // the written file parses and specialising it again changes nothing
    let again = stdout(&schur(&["specialise", out.to_str().unwrap()]));
    assert_eq!(again, printed);
    let m = schur(&["mult", out.to_str().unwrap()]);
    assert_eq!(stdout(&m), "norm := [ p ], pseudounits := [ y ]\n");
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn input_errors() {
    let o = schur(&["mult", &fixture("sym1"), "--at", "p=5,q=1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("unknown parameter `q`"));
    let o = schur(&["mult", &fixture("sym1"), "--at", "p=6,x=1"]);
    assert!(stderr(&o).contains("6 is not a prime"));
    let o = schur(&["mult", &fixture("symquad"), "--at", "p=5,x=0"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("require x"));
    let o = schur(&["specialise", &fixture("sym1"), "--subs", "q=1"]);
    assert_eq!(o.status.code(), Some(1));

    let dir = std::env::temp_dir().join(format!("schur-cli-bad-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.lp");
    std::fs::write(&bad, "dim 3\n[b1,b2] = b3\n[b2,b3] = b1\n").unwrap();
    let o = schur(&["mult", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("line 3"), "{}", stderr(&o));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn output_is_deterministic() {
    for args in [vec!["split", "fixture:sym3"], vec!["verify", "fixture:sym2", "--primes", "5,7"]] {
        assert_eq!(schur(&args).stdout, schur(&args).stdout);
    }
}
