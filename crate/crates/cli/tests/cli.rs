use std::path::Path;
use std::process::{Command, Output};

fn qvset(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qvset")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn takeuti_demo() {
    let o = qvset(&["demo", "takeuti-counterexample", "--lattice", "mo2"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("[(E x in P~) !phi(x)] = 0\n"), "{s}");
    assert!(s.contains("[!(A x in P~) phi(x)] = a\n"), "{s}");
    assert!(s.contains("fingerprint="));
    let o = qvset(&["demo", "takeuti-counterexample", "--lattice", "bool2"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn ops_census_counts() {
    let s = stdout(&qvset(&["ops", "census", "--lattice", "mo2"]));
    assert!(s.contains("(noncommuting pairs): 6\n"), "{s}");
    assert!(s.contains("(full tables): 96\n"), "{s}");
    let j: serde_json::Value = serde_json::from_str(&stdout(&qvset(&["--json", "ops", "census", "--lattice", "bool2"]))).unwrap();
    assert_eq!(j["full_tables"], 16);
    assert!(j["fingerprint"].is_string());
}

#[test]
fn eval_with_env_file() {
    let dir = tempfile::tempdir().unwrap();
    let env = write(dir.path(), "env.txt", "# constants\nc0 = check 0\npA = ptilde a\n");
    let o = qvset(&["eval", "--lattice", "mo2", "--interp", "3,3", "--env", &env, "c0 in pA"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().last(), Some("a"));
    let o = qvset(&["--json", "eval", "--lattice", "mo2", "--interp", "sasaki", "--env", &env, "c0 in pA | !(c0 in pA)"]);
    let j: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(j["value"], "1");
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(qvset(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(qvset(&["eval", "--lattice", "mo2", "x in"]).status.code(), Some(2));
    assert_eq!(qvset(&["eval", "--lattice", "mo2", "x in y"]).status.code(), Some(2));
    assert_eq!(qvset(&["eval", "--lattice", "mo7x", "x = x"]).status.code(), Some(2));
    assert_eq!(qvset(&["eval", "--lattice", "mo2", "--interp", "9,9", "x = x"]).status.code(), Some(2));
    assert_eq!(qvset(&["lattice", "show", "--lattice", "o6"]).status.code(), Some(2));
    assert_eq!(qvset(&["--allow-non-oml", "lattice", "show", "--lattice", "o6"]).status.code(), Some(0));
}

#[test]
fn lattice_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("p.toml");
    let p = path.to_str().unwrap();
    assert!(qvset(&["lattice", "build", "--lattice", "prod(bool1,mo2)", "--out", p]).status.success());
    let o = qvset(&["lattice", "verify", p]);
    assert_eq!(o.status.code(), Some(0));
    let show = |name: &str| {
        let j: serde_json::Value = serde_json::from_str(&stdout(&qvset(&["--json", "lattice", "show", "--lattice", name]))).unwrap();
        j["fingerprint"].clone()
    };
    assert_eq!(show(&format!("file:{p}")), show("prod(bool1,mo2)"));
    let bad = write(dir.path(), "empty.toml", "");
    assert_eq!(qvset(&["lattice", "verify", &bad]).status.code(), Some(2));
}

#[test]
fn ops_table_and_classify() {
    let s = stdout(&qvset(&["ops", "table", "--lattice", "mo2", "--op", "conj3"]));
    let row = s.lines().find(|l| l.starts_with("a ")).unwrap();
    assert_eq!(row.split_whitespace().collect::<Vec<_>>(), ["a", "0", "a", "0", "a", "a", "a"]);
    let j: serde_json::Value = serde_json::from_str(&stdout(&qvset(&["--json", "ops", "classify", "--lattice", "mo2"]))).unwrap();
    let material: Vec<bool> = (0..6).map(|i| j["ops"][i]["material"].as_bool().unwrap()).collect();
    assert_eq!(material, [true, false, true, true, false, false]);
}

#[test]
fn census_and_checks() {
    let o = qvset(&["census", "--lattice", "mo2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("distinct interpretations: 36"));
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "c.toml", "lattices = [\"bool2\"]\ninterps = [\"join-conj\", \"3,3\"]\nbudget = 60\nrank_bound = 2\n");
    let o = qvset(&["check", "transfer", "--config", &cfg]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("non-normal"));
    let cfg = write(dir.path(), "m.toml", "lattices = [\"mo2\"]\ninterps = \"self-dual\"\nbudget = 50\nrank_bound = 2\n");
    assert_eq!(qvset(&["check", "demorgan", "--config", &cfg]).status.code(), Some(0));
    assert_eq!(qvset(&["check", "absolute", "--config", &cfg]).status.code(), Some(0));
    assert_eq!(qvset(&["check", "restrict", "--config", &cfg]).status.code(), Some(0));
    let o = qvset(&["--json", "check", "demorgan", "--config", &cfg]);
    let j: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(j["pass"], true);
    assert_eq!(qvset(&["check", "transfer", "--config", "/nonexistent.toml"]).status.code(), Some(2));
}

#[test]
fn corpus_path_relative_to_config() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "mini.txt", "id: refl\nformula: x = x\narity: 1\nnote: reflexivity\n");
    let cfg = write(dir.path(), "c.toml", "lattices = [\"mo2\"]\ninterps = \"3,3\"\nbudget = 5\ncorpus = \"mini.txt\"\n");
    let o = qvset(&["check", "transfer", "--config", &cfg]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("formulas=1"));
    write(dir.path(), "bad.txt", "id: wrong\nformula: x in y\narity: 2\n");
    let cfg = write(dir.path(), "b.toml", "lattices = [\"mo2\"]\ncorpus = \"bad.txt\"\n");
    let o = qvset(&["check", "transfer", "--config", &cfg]);
    assert_ne!(o.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&o.stderr).contains("sanity gate"));
}

#[test]
fn spectral_verbs() {
    let dir = tempfile::tempdir().unwrap();
    let a = write(dir.path(), "a.toml", "dim = 2\nmode = \"exact\"\nentries = [[[\"1\", \"0\"], [\"0\", \"0\"]], [[\"0\", \"0\"], [\"2\", \"0\"]]]\n");
    let b = write(dir.path(), "b.toml", "dim = 2\nmode = \"exact\"\nentries = [[[\"3\", \"0\"], [\"0\", \"0\"]], [[\"0\", \"0\"], [\"5/2\", \"0\"]]]\n");
    let s = stdout(&qvset(&["spectral", "order", "--A", &a, "--B", &b]));
    assert!(s.contains(": true"), "{s}");
    let s = stdout(&qvset(&["spectral", "order", "--A", &b, "--B", &a]));
    assert!(s.contains(": false"), "{s}");
    for j in ["0", "3", "4"] {
        let o = qvset(&["--json", "spectral", "qvalue", "--A", &a, "--B", &b, "--conj", j]);
        assert_eq!(o.status.code(), Some(0));
        let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
        assert_eq!(v["identity"], true);
    }
    assert_eq!(qvset(&["spectral", "qvalue", "--A", &a, "--B", &b, "--conj", "7"]).status.code(), Some(2));
}
