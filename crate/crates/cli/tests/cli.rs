use std::process::{Command, Output};

fn hilb(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hilb"))
        .args(args)
        .env_remove("HILB_CACHE")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf8")
}

fn ok(args: &[&str]) -> String {
    let o = hilb(args);
    assert!(o.status.success(), "{args:?} failed: {}", String::from_utf8_lossy(&o.stderr));
    stdout(&o)
}

#[test]
fn segre_numeric_examples() {
    assert_eq!(ok(&["segre", "--n", "1", "--d", "7", "--pi", "0", "--kappa", "-1", "--b2-extra", "0"]), "7\n");
    assert_eq!(ok(&["segre", "--n", "3", "--d", "1", "--pi", "0", "--kappa", "\u{2212}1", "--b2-extra", "0"]), "-1\n");
}

#[test]
fn segre_symbolic_two() {
    let out = ok(&["segre", "--n", "2", "--symbolic"]);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("1/2*d^2 - 5*d - 5/2*pi - 1/2*kappa + 1/2*e"));
    let map: serde_json::Value = serde_json::from_str(lines.next().unwrap()).unwrap();
    assert_eq!(map["d^2"], "1/2");
    assert_eq!(map["pi"], "-5/2");
    assert_eq!(map["e"], "1/2");
}

#[test]
fn segre_cache_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("samples.jsonl");
    let p = path.to_str().unwrap();
    let first = ok(&["segre", "--n", "3", "--symbolic", "--cache", p]);
    let lines = std::fs::read_to_string(&path).unwrap().lines().count();
    assert!(lines > 1);
    let again = Command::new(env!("CARGO_BIN_EXE_hilb"))
        .args(["segre", "--n", "3", "--symbolic"])
        .env("HILB_CACHE", p)
        .output()
        .unwrap();
    assert_eq!(stdout(&again), first);
    assert_eq!(std::fs::read_to_string(&path).unwrap().lines().count(), lines);
}

#[test]
fn dm_examples() {
    let out = ok(&["dm", "--max-m", "1"]);
    assert_eq!(out, "d1 = d  {\"d\":\"1\"}  [matches table]\n");
    let out = ok(&["dm", "--max-m", "2"]);
    assert!(out.contains("d2 = 10*d + 5*pi + kappa - e"));
    assert!(!out.contains("MISMATCH"));
    let out = ok(&["dm", "--max-m", "5", "--method", "linear-fit", "--jobs", "2"]);
    assert!(out.contains("d5 = 16016*d + 22120*pi + 9440*kappa - 4880*e"), "{out}");
    assert!(!out.contains("MISMATCH"));
}

#[test]
fn dm_json_shape() {
    let out = ok(&["--format", "json", "dm", "--max-m", "2"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["command"], "dm");
    assert!(v["engine_version"].as_str().unwrap().starts_with("hilb-core"));
    assert_eq!(v["parameters"]["max_m"], 2);
    assert_eq!(v["result"][1]["coefficients"]["pi"], "5");
    assert_eq!(v["result"][1]["matches_table"], true);
}

#[test]
fn conjecture_table() {
    let out = ok(&["conjecture", "--n-max", "2", "--d", "1", "--pi", "0", "--kappa", "-1", "--b2-extra", "0"]);
    assert_eq!(out, "n | engine | conjecture | equal\n0 | 1 | 1 | yes\n1 | 1 | 1 | yes\n2 | -2 | -2 | yes\n");
    let out = ok(&["conjecture", "--n-max", "0"]);
    assert_eq!(out.lines().count(), 2);
    let out = ok(&["conjecture", "--n-max", "4"]);
    assert!(out.lines().skip(1).all(|l| l.ends_with("| yes")));
}

#[test]
fn chern_examples() {
    assert_eq!(ok(&["chern", "--n", "1", "--bundle", "L(c1=h)"]), "q1[1+h]\n");
    assert_eq!(ok(&["chern", "--n", "0"]), "1\n");
    assert_eq!(
        ok(&["chern", "--n", "2", "--bundle", "L(c1=h)"]),
        "q2[-1/2-1/2*h] + 1/2*q1[1]*q1[1] + q1[1]*q1[h] + 1/2*q1[h]*q1[h]\n"
    );
}

#[test]
fn verify_examples() {
    let out = ok(&["verify", "oscillator", "--max-n", "5"]);
    assert!(out.starts_with("suite oscillator: pass"));
    let out = ok(&["verify", "goettsche-dim", "--max-n", "6"]);
    assert!(out.starts_with("suite goettsche-dim: pass"));
    let out = ok(&["verify", "worked-example"]);
    assert!(out.contains("N_2 = 1/2*d^2 - 5*d - 5/2*pi - 1/2*kappa + 1/2*e"));
}

#[test]
fn exit_codes() {
    assert_eq!(hilb(&["verify", "nonsense"]).status.code(), Some(2));
    assert_eq!(hilb(&["chern", "--n", "1", "--bundle", "L(c1="]).status.code(), Some(2));
    assert_eq!(hilb(&["segre", "--n", "1", "--d", "1", "--pi", "1", "--kappa", "1"]).status.code(), Some(3));
    assert_eq!(hilb(&["segre", "--n", "9"]).status.code(), Some(2));
    assert_eq!(hilb(&["--max-basis", "10", "verify", "oscillator"]).status.code(), Some(2));
    assert_eq!(hilb(&["segre"]).status.code(), Some(2));
}

#[test]
fn reports_are_deterministic() {
    let args = ["--format", "json", "verify", "pairing", "--seed", "7"];
    let a = hilb(&args);
    let b = hilb(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["status"], "pass");
    assert_eq!(v["parameters"]["seed"], 7);
}
