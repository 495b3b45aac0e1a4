use std::collections::HashMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output, Stdio};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tempfile::TempDir;

fn alcs(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_alcs"))
        .args(args)
        .env_remove("ALCS_SEED")
        .output()
        .unwrap()
}

fn ok(args: &[&str]) -> String {
    let out = alcs(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn kv(stdout: &str) -> HashMap<String, String> {
    stdout
        .lines()
        .filter_map(|l| l.split_once('='))
        .map(|(k, v)| (k.to_string(), v.to_string()))
        .collect()
}

struct Dir(TempDir);

impl Dir {
    fn new() -> Self {
        Dir(tempfile::tempdir().unwrap())
    }

    fn file(&self, name: &str, data: &[u8]) -> String {
        let p = self.0.path().join(name);
        fs::write(&p, data).unwrap();
        p.to_str().unwrap().to_string()
    }

    fn path(&self, name: &str) -> String {
        self.0.path().join(name).to_str().unwrap().to_string()
    }
}

fn abaab_index(d: &Dir) -> (String, String) {
    let text = d.file("t.txt", b"abaab");
    let idx = d.path("t.idx");
    ok(&["build", "--text", &text, "--out", &idx, "--epsilon", "0.5", "--seed", "1"]);
    (text, idx)
}

#[test]
fn build_reports_stats() {
    let d = Dir::new();
    let text = d.file("t.txt", b"abracadabra abracadabra");
    let idx = d.path("t.idx");
    let s = kv(&ok(&["build", "--text", &text, "--epsilon", "0.1", "--out", &idx, "--seed", "4"]));
    for key in ["n", "z", "lengths", "left_entries", "right_entries", "bytes", "build_ms"] {
        assert!(s.contains_key(key), "missing {key}");
    }
    assert_eq!(s["n"], "23");
    assert_eq!(s["bytes"].parse::<u64>().unwrap(), fs::metadata(&idx).unwrap().len());
}

#[test]
fn bad_epsilon_exits_1() {
    let d = Dir::new();
    let text = d.file("t.txt", b"abc");
    let out = alcs(&["build", "--text", &text, "--out", &d.path("x"), "--epsilon", "1.5"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("epsilon must be in (0,1)"));
}

#[test]
fn unreadable_inputs_exit_1() {
    let d = Dir::new();
    assert_eq!(alcs(&["build", "--text", &d.path("nope"), "--out", &d.path("x")]).status.code(), Some(1));
    let p = d.file("p", b"a");
    assert_eq!(alcs(&["query", "--index", &d.path("nope"), "--pattern", &p]).status.code(), Some(1));
    let junk = d.file("junk.idx", b"not an index");
    assert_eq!(alcs(&["query", "--index", &junk, "--pattern", &p]).status.code(), Some(1));
}

#[test]
fn worked_query_lines() {
    let d = Dir::new();
    let (_, idx) = abaab_index(&d);
    let p = d.file("p", b"aab");
    assert_eq!(ok(&["query", "--index", &idx, "--pattern", &p]), "1\t3\t1\t3\t3\t616162\n");
    let p = d.file("q", b"zzz");
    assert_eq!(ok(&["query", "--index", &idx, "--pattern", &p]), "1\t0\t-\t-\t-\t-\n");
    let list = d.file("list", b"aab\nzzz\nba\n");
    let out = ok(&["query", "--index", &idx, "--patterns-file", &list, "--algo", "naive"]);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 3);
    assert_eq!(lines[0], "1\t3\t1\t3\t3\t616162");
    assert_eq!(lines[1], "2\t0\t-\t-\t-\t-");
    assert!(lines[2].starts_with("3\t2\t1\t2\t"));
}

#[test]
fn patterns_from_stdin() {
    let d = Dir::new();
    let (_, idx) = abaab_index(&d);
    let mut child = Command::new(env!("CARGO_BIN_EXE_alcs"))
        .args(["query", "--index", &idx, "--patterns-file", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    use std::io::Write;
    child.stdin.take().unwrap().write_all(b"aab\n").unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "1\t3\t1\t3\t3\t616162\n");
}

fn random_patterns_file(d: &Dir, text: &[u8], count: usize, seed: u64) -> String {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut body = Vec::new();
    for _ in 0..count {
        let len = rng.gen_range(1..=60);
        if rng.gen_bool(0.5) {
            let start = rng.gen_range(0..text.len() - len);
            body.extend_from_slice(&text[start..start + len]);
        } else {
            body.extend((0..len).map(|_| b"ACGT"[rng.gen_range(0..4)]));
        }
        body.push(b'\n');
    }
    d.file("patterns", &body)
}

fn column(out: &str, k: usize) -> Vec<String> {
    out.lines().map(|l| l.split('\t').nth(k).unwrap().to_string()).collect()
}

fn gen_corpus(d: &Dir, name: &str, extra: &[&str]) -> String {
    let out = d.path(name);
    let mut args = vec!["gen", "--out", &out];
    args.extend_from_slice(extra);
    ok(&args);
    out
}

#[test]
fn naive_and_pruned_agree_through_cli() {
    let d = Dir::new();
    let text_path = gen_corpus(&d, "c.txt", &["--base-len", "300", "--repeats", "20", "--mut-rate", "0.01"]);
    let text = fs::read(&text_path).unwrap();
    let idx = d.path("c.idx");
    ok(&["build", "--text", &text_path, "--out", &idx, "--epsilon", "0.25", "--seed", "2"]);
    let pats = random_patterns_file(&d, &text, 1000, 3);
    let common = ["query", "--index", &idx, "--patterns-file", &pats, "--verify", "--text", &text_path];
    let naive = ok(&[&common[..], &["--algo", "naive"]].concat());
    let pruned = ok(&[&common[..], &["--algo", "pruned"]].concat());
    assert_eq!(naive.lines().count(), 1000);
    assert_eq!(column(&naive, 1), column(&pruned, 1));

    let threaded = ok(&[&common[..], &["--threads", "4"]].concat());
    assert_eq!(threaded, pruned);
}

#[test]
fn verify_requires_text() {
    let d = Dir::new();
    let (_, idx) = abaab_index(&d);
    let p = d.file("p", b"aab");
    assert_eq!(alcs(&["query", "--index", &idx, "--pattern", &p, "--verify"]).status.code(), Some(1));
}

#[test]
fn verify_flags_wrong_text() {
    let d = Dir::new();
    let (_, idx) = abaab_index(&d);
    let other = d.file("other.txt", b"bbbbb");
    let list = d.file("list", b"zzz\naab\n");
    let out = alcs(&["query", "--index", &idx, "--patterns-file", &list, "--verify", "--text", &other]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("verify failed: pattern 2"));
}

#[test]
fn oracle_outputs() {
    let d = Dir::new();
    let t = d.file("t", b"abaab");
    let p = d.file("p", b"aab");
    let s = kv(&ok(&["oracle", "--text", &t, "--pattern", &p]));
    assert_eq!(s["length"], "3");
    assert_eq!(s["t_span"], "3-5");
    let same = d.file("same", b"abaab");
    assert_eq!(kv(&ok(&["oracle", "--text", &t, "--pattern", &same]))["length"], "5");
    let disjoint = d.file("dis", b"xyz");
    assert_eq!(kv(&ok(&["oracle", "--text", &t, "--pattern", &disjoint]))["length"], "0");
    assert_eq!(alcs(&["oracle", "--text", &d.path("none"), "--pattern", &p]).status.code(), Some(1));
}

#[test]
fn gen_is_deterministic() {
    let d = Dir::new();
    let flags = ["--base-len", "1024", "--repeats", "64", "--mut-rate", "0.001", "--seed", "7"];
    let a = fs::read(gen_corpus(&d, "a", &flags)).unwrap();
    let b = fs::read(gen_corpus(&d, "b", &flags)).unwrap();
    assert_eq!(a, b);
    assert_eq!(a.len(), 64 * 1024);

    let exact = fs::read(gen_corpus(&d, "c", &["--base-len", "100", "--repeats", "5", "--mut-rate", "0"])).unwrap();
    assert_eq!(exact, exact[..100].repeat(5));

    assert_eq!(alcs(&["gen", "--out", &d.path("x"), "--mut-rate", "2"]).status.code(), Some(1));
    assert_eq!(alcs(&["gen", "--out", &d.path("x"), "--alphabet", ""]).status.code(), Some(1));
}

#[test]
fn default_corpus_compresses() {
    let d = Dir::new();
    let text = gen_corpus(&d, "c", &[]);
    let s = kv(&ok(&["build", "--text", &text, "--out", &d.path("c.idx"), "--seed", "1"]));
    let z: usize = s["z"].parse().unwrap();
    assert!(z < 3000, "z = {z}");
    assert!(z < 65536 / 10);
}

fn bench(text: &str, extra: &[&str]) -> HashMap<String, String> {
    kv(&ok(&[&["bench", "--text", text, "--num-patterns", "40"][..], extra].concat()))
}

#[test]
fn bench_fields_and_scaling() {
    let d = Dir::new();
    let text = gen_corpus(&d, "c", &[]);
    let s = bench(&text, &["--pattern-len", "256"]);
    for key in [
        "algo", "n", "z", "entries", "build_ms", "index_bytes", "queries", "mean_us", "median_us", "p99_us",
        "mean_checks", "total_checks", "mean_grid_queries", "mean_length",
    ] {
        assert!(s.contains_key(key), "missing {key}");
    }
    let checks = |m: &str| bench(&text, &["--pattern-len", m])["mean_checks"].parse::<f64>().unwrap();
    let ratio = checks("512") / checks("256");
    assert!((1.5..=3.0).contains(&ratio), "ratio {ratio}");

    let total = |algo: &str| {
        bench(&text, &["--pattern-len", "128", "--algo", algo])["total_checks"].parse::<u64>().unwrap()
    };
    assert!(total("naive") > total("pruned"));
}

#[test]
fn stats_and_json() {
    let d = Dir::new();
    let (_, idx) = abaab_index(&d);
    let s = kv(&ok(&["stats", "--index", &idx]));
    assert_eq!(s["magic"], "ALCS");
    assert_eq!(s["n"], "5");
    assert_eq!(s["z"], "4");
    assert_eq!(s["kr_seed"], "1");
    assert_eq!(s["file_bytes"], "380");

    let j: serde_json::Value = serde_json::from_str(&ok(&["stats", "--index", &idx, "--json"])).unwrap();
    assert_eq!(j["z"], 4);
    let p = d.file("p", b"aab");
    let j: serde_json::Value = serde_json::from_str(&ok(&["query", "--index", &idx, "--pattern", &p, "--json"])).unwrap();
    assert_eq!(j["hex"], "616162");
    assert_eq!(j["t_pos"], 3);
}

#[test]
fn seed_from_environment() {
    let d = Dir::new();
    let text = d.file("t", b"mississippi");
    let run = |out: &Path| {
        let o = Command::new(env!("CARGO_BIN_EXE_alcs"))
            .args(["build", "--text", &text, "--out", out.to_str().unwrap()])
            .env("ALCS_SEED", "42")
            .output()
            .unwrap();
        assert!(o.status.success());
        fs::read(out).unwrap()
    };
    let (a, b): (PathBuf, PathBuf) = (d.path("a").into(), d.path("b").into());
    assert_eq!(run(&a), run(&b));
    assert_eq!(kv(&ok(&["stats", "--index", a.to_str().unwrap()]))["kr_seed"], "42");
}
