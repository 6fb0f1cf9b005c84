use std::path::Path;
use std::process::{Command, Output};

use bct::constructions::{gen_example1, gen_random};
use bct::format::parse_graph;
use bct::lemmas::LemmaId;

fn bct(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bct")).args(args).env("BCT_THREADS", "2").output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

fn gen_to(dir: &Path, name: &str, args: &[&str]) -> String {
    let p = dir.join(name).to_str().unwrap().to_string();
    let mut full = vec!["gen"];
    full.extend_from_slice(args);
    full.extend_from_slice(&["-o", &p]);
    assert_eq!(code(&bct(&full)), 0, "{args:?}");
    p
}

#[test]
fn solve_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let g1 = gen_to(dir.path(), "g1.bbg", &["--example", "1", "--k", "2"]);
    assert_eq!(code(&bct(&["solve", &g1, "--k", "2", "--mode", "cyclable"])), 1);

    let mut k44 = String::from("p bbg 4 16\ns 1 2 3 4\n");
    for i in 1..=4 {
        for j in 1..=4 {
            k44.push_str(&format!("e {i} {j}\n"));
        }
    }
    let k44 = write(dir.path(), "k44.bbg", &k44);
    let out = bct(&["solve", &k44, "--k", "1", "--mode", "two-factor"]);
    assert_eq!(code(&out), 0);
    let json: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(json["status"], "FOUND");
    assert_eq!(json["witness"][0].as_array().unwrap().len(), 8);

    // The s line has to follow the header.
    let early_s = write(dir.path(), "early.bbg", &std::fs::read_to_string(&k44).unwrap().replacen("p bbg 4 16\ns 1 2 3 4", "s 1 2 3 4\np bbg 4 16", 1));
    assert_eq!(code(&bct(&["solve", &early_s, "--k", "1"])), 65);
    // Without an s line S is empty and no cycle is feasible.
    let no_s = write(dir.path(), "nos.bbg", &std::fs::read_to_string(&k44).unwrap().replace("s 1 2 3 4\n", ""));
    assert_eq!(code(&bct(&["solve", &no_s, "--k", "1", "--mode", "two-factor"])), 1);

    let with_s = k44.clone();
    assert_eq!(code(&bct(&["solve", &with_s, "--mode", "partition", "--k", "2", "--parts", "2,3"])), 64);
    assert_eq!(code(&bct(&["solve", &with_s, "--mode", "partition", "--parts", "2,2"])), 0);
    assert_eq!(code(&bct(&["solve", &with_s, "--k", "2", "--budget", "1"])), 2);
    assert_eq!(code(&bct(&["solve", &with_s, "--mode", "sideways"])), 64);
    assert_eq!(code(&bct(&["solve", &with_s, "--k", "0"])), 64);
    assert_eq!(code(&bct(&["solve", "/nonexistent/g.bbg"])), 66);
    assert_eq!(code(&bct(&["solve"])), 64);
    assert_eq!(code(&bct(&["frobnicate"])), 64);
    assert_eq!(code(&bct(&["--help"])), 0);
    assert_eq!(code(&bct(&["--version"])), 0);
}

#[test]
fn malformed_file_names_the_line() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.bbg", "c ok\np bbg 2 1\ne 1 9\n");
    let out = bct(&["solve", &bad]);
    assert_eq!(code(&out), 65);
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));
}

#[test]
fn gen_prints_both_sigmas() {
    let out = bct(&["gen", "--example", "1", "--k", "2"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).lines().any(|l| l == "p bbg 5 15"));
    let err = String::from_utf8_lossy(&out.stderr).to_string();
    assert!(err.contains("sigma closed-form 6") && err.contains("sigma computed 6"));

    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("g3.bbg");
    let out = bct(&["gen", "--example", "3", "--n", "5", "--s-size", "3", "-o", p.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("sigma computed 5"));

    let out = bct(&["gen", "--example", "2", "--p", "3"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).lines().any(|l| l.starts_with("p bbg 10 ")));
}

#[test]
fn gen_rejects_bad_parameters() {
    for args in [
        vec!["gen", "--example", "1", "--k", "3"],
        vec!["gen", "--example", "1"],
        vec!["gen", "--example", "2", "--p", "4", "--n", "30"],
        vec!["gen", "--example", "2", "--p", "3", "--n", "9"],
        vec!["gen", "--example", "2", "--p", "2"],
        vec!["gen", "--example", "4", "--n", "5", "--k", "3", "--s-size", "5"],
        vec!["gen", "--example", "7"],
        vec!["gen", "--example", "random", "--n", "4", "--s-size", "9"],
    ] {
        assert_eq!(code(&bct(&args)), 64, "{args:?}");
    }
}

#[test]
fn generated_files_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let p = gen_to(dir.path(), "r.bbg", &["--example", "random", "--n", "6", "--s-size", "4", "--sigma-floor", "7", "--seed", "1"]);
    let (g, s) = parse_graph(&std::fs::read_to_string(&p).unwrap()).unwrap();
    assert_eq!((g, s), gen_random(6, 4, 700, Some(7), 1).unwrap());

    let p = gen_to(dir.path(), "g1.bbg", &["--example", "1", "--k", "4"]);
    assert_eq!(parse_graph(&std::fs::read_to_string(&p).unwrap()).unwrap(), gen_example1(4).unwrap());

    let again = gen_to(dir.path(), "r2.bbg", &["--example", "random", "--n", "6", "--s-size", "4", "--sigma-floor", "7", "--seed", "1"]);
    assert_eq!(std::fs::read(dir.path().join("r.bbg")).unwrap(), std::fs::read(again).unwrap());
}

#[test]
fn verify_exhaustive_reports() {
    let out = bct(&["verify", "--theorem", "4", "--n-max", "4", "--k", "1", "--exhaustive"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.ends_with("}\n"));
    let r: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(r["target"], "theorem4");
    assert_eq!(r["failures"].as_array().unwrap().len(), 0);
    let keys: Vec<&str> = r.as_object().unwrap().keys().map(String::as_str).collect();
    for k in ["target", "parameters", "instances_checked", "statuses", "failures", "seed"] {
        assert!(keys.contains(&k), "{k}");
    }
    // Field order is fixed.
    let pos = |k: &str| text.find(&format!("\"{k}\"")).unwrap();
    assert!(pos("target") < pos("parameters") && pos("parameters") < pos("instances_checked"));
    assert!(pos("failures") < pos("seed"));

    assert_eq!(code(&bct(&["verify", "--theorem", "3", "--n-max", "6", "--exhaustive"])), 64);
    assert_eq!(code(&bct(&["verify", "--theorem", "5"])), 64);
    assert_eq!(code(&bct(&["verify", "--lemma", "L9"])), 64);
    assert_eq!(code(&bct(&["verify"])), 64);
}

#[test]
fn verify_lemma_and_timings() {
    let out = bct(&["verify", "--lemma", "L6", "--samples", "1000", "--seed", "7"]);
    assert_eq!(code(&out), 0);
    let r: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(r["target"], "lemma:L6");
    assert_eq!(r["instances_checked"], 1000);
    assert_eq!(r["failures"], serde_json::json!([]));
    assert!(r.get("runtime_ms").is_none());

    let timed = bct(&["verify", "--lemma", "L4.2", "--samples", "20", "--timings"]);
    let r: serde_json::Value = serde_json::from_str(&stdout(&timed)).unwrap();
    assert!(r["runtime_ms"].is_u64());
    for id in LemmaId::ALL {
        assert_eq!(code(&bct(&["verify", "--lemma", id.name(), "--samples", "5"])), 0, "{id}");
    }
}

#[test]
fn search_reports_flag() {
    let out = bct(&["search", "--conjecture", "1", "--n", "5", "--k", "2", "--samples", "2000", "--seed", "3"]);
    assert_eq!(code(&out), 0);
    let r: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(r["counterexample"], false);
    assert_eq!(r["target"], "conjecture1");
    assert_eq!(code(&bct(&["search", "--conjecture", "2", "--n", "7", "--k", "1"])), 64);
    assert_eq!(code(&bct(&["search", "--conjecture", "3", "--n", "5"])), 64);
    assert_eq!(code(&bct(&["search", "--conjecture", "2", "--n", "5", "--k", "2"])), 64);
}

#[test]
fn output_file_matches_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("r.json");
    let args = ["verify", "--theorem", "3", "--n-max", "5", "--samples", "100", "--seed", "4"];
    let direct = bct(&args);
    let mut with_o = args.to_vec();
    with_o.extend_from_slice(&["-o", p.to_str().unwrap()]);
    assert_eq!(code(&bct(&with_o)), 0);
    assert_eq!(std::fs::read(&p).unwrap(), direct.stdout);
}
