//! Table-driven runs of the `regext` binary.

use std::io::Write;
use std::process::{Command, Stdio};

use regext_core::{parse_graph6, Graph, Matching, TutteViolator};
use serde_json::Value;

const C6: &str = "EhEG";
const K33: &str = "EFz_";
const TWO_K4: &str = "G~`HW{";
const PETERSEN: &str = "IheA@GUAo";
const BALLOONS: &str = "Ir]?GGB?w";
const PATH4: &str = "Ch";

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn regext(args: &[&str], stdin: &str) -> Run {
    let mut child = Command::new(env!("CARGO_BIN_EXE_regext"))
        .args(args)
        .env_remove("REGEXT_LOG")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    Run {
        code: out.status.code().unwrap(),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

#[test]
fn table() {
    // (args, stdin, exit code, substrings expected on stdout or stderr)
    let cases: &[(&[&str], &str, i32, &[&str])] = &[
        (&["extend"], C6, 0, &["extended r=2 -> 3"]),
        (&["extend", "--strategy", "blossom"], C6, 0, &["extended r=2 -> 3"]),
        (&["extend"], K33, 1, &["stuck at r=3", "S={} leaves 2 odd components"]),
        (&["extend", "--target-r", "7"], TWO_K4, 0, &["extended r=4 -> 7: G~~~~{"]),
        (&["extend", "--target-r", "5", "--strategy", "dirac"], C6, 1, &["dirac strategy"]),
        (&["extend", "--target-r", "9"], C6, 1, &["must lie in"]),
        (&["extend"], PATH4, 1, &["not regular"]),
        (&["check"], C6, 0, &["T1: extendable"]),
        (&["check"], K33, 0, &["T4: not-extendable (biclique 3/3)"]),
        (&["check"], PATH4, 1, &["error: graph is not regular"]),
        (&["match"], PETERSEN, 0, &["perfect matching of 5 edges"]),
        (&["match"], "Cs", 1, &["no perfect matching (maximum 1 edges): S={0} leaves 3 odd components"]),
        (&["analyze"], BALLOONS, 0, &["r=3", "bridges=1", "b=2", "balloons=[5, 5]"]),
        (&["gen", "--n", "6", "--r", "3", "--enumerate"], "", 0, &["EFz_\nELv_\n"]),
        (&["gen", "--n", "8", "--r", "3", "--enumerate", "--connected"], "", 0, &[]),
        (&["gen", "--n", "5", "--r", "3"], "", 2, &["odd"]),
        (&["gen", "--n", "11", "--r", "2", "--enumerate"], "", 2, &["11"]),
        (&["verify", "--rule", "T1", "--n", "4..10"], "", 0, &["105 confirmed, 0 counterexamples"]),
        (&["verify", "--rule", "L", "--r", "17", "--n", "18..30", "--samples", "5"], "", 0, &["35 confirmed, 0 counterexamples"]),
        (&["verify", "--rule", "INEQ", "--r", "16..40"], "", 0, &["0 counterexamples"]),
        (&["verify", "--rule", "T4", "--n-range", "8..8"], "", 0, &["notice: skipped n=8 r=4"]),
        (&["verify", "--rule", "T9", "--n", "4"], "", 2, &["unknown rule"]),
        (&["verify", "--rule", "T1"], "", 2, &["needs --n-range"]),
        (&["verify", "--rule", "T1", "--n", "9..4"], "", 2, &["empty range"]),
        (&["check"], "C~\nC \n", 2, &["line 2:"]),
        (&["check"], "\nC~\n\nE\n", 2, &["line 4:"]),
        (&["check", "--strategy", "auto"], C6, 2, &["unexpected argument"]),
        (&["extend", "--strategy", "greedy"], C6, 2, &["greedy"]),
    ];
    for (args, stdin, code, expect) in cases {
        let run = regext(args, stdin);
        assert_eq!(run.code, *code, "{args:?}\nstdout: {}\nstderr: {}", run.stdout, run.stderr);
        for e in *expect {
            assert!(
                run.stdout.contains(e) || run.stderr.contains(e),
                "{args:?}: missing {e:?}\nstdout: {}\nstderr: {}",
                run.stdout,
                run.stderr
            );
        }
    }
    assert_eq!(regext(&["gen", "--n", "8", "--r", "3", "--enumerate", "--connected"], "").stdout.lines().count(), 5);
}

#[test]
fn input_file_and_missing_file() {
    let dir = std::env::temp_dir().join(format!("regext-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("in.g6");
    std::fs::write(&path, format!("{C6}\n{K33}\n")).unwrap();
    let run = regext(&["check", "--input", path.to_str().unwrap()], "");
    assert_eq!(run.code, 0);
    assert_eq!(run.stdout.lines().count(), 3);
    let run = regext(&["check", "--input", dir.join("nope").to_str().unwrap()], "");
    assert_eq!(run.code, 2);
}

fn json_lines(s: &str) -> Vec<Value> {
    s.lines().map(|l| serde_json::from_str(l).unwrap()).collect()
}

fn graph(v: &Value) -> Graph {
    parse_graph6(v.as_str().unwrap()).unwrap()
}

/// Every certificate in a JSON report re-validates against its host.
#[test]
fn json_certificates_validate() {
    let corpus = regext(&["gen", "--n", "8", "--r", "3", "--enumerate"], "").stdout
        + &regext(&["gen", "--n", "10", "--r", "4", "--count", "20", "--seed", "4"], "").stdout
        + &format!("{K33}\n{C6}\n{TWO_K4}\nGs@ipo\n");
    let mut records = Vec::new();
    for target in [&["--target-r", "7"][..], &[]] {
        let args = [&["extend", "--json", "--certificates", "--backtrack", "2"][..], target].concat();
        records.extend(json_lines(&regext(&args, &corpus).stdout));
    }
    let mut seen = (0, 0);
    for rec in records.iter().filter(|r| r["type"] == "result" && r["status"] != "error") {
        let start = graph(&rec["graph6"]);
        let steps: Vec<Matching> = serde_json::from_value(rec["matchings"].clone()).unwrap();
        let mut cur = start.clone();
        for m in &steps {
            assert!(m.is_perfect_for(cur.order()) && m.validate(&cur.complement()).is_ok());
            cur = cur.add_matching(m).unwrap();
        }
        match rec["status"].as_str().unwrap() {
            "extended" => {
                seen.0 += 1;
                assert_eq!(cur, graph(&rec["output"]));
            }
            "stuck" => {
                seen.1 += 1;
                assert_eq!(cur, graph(&rec["stuck_graph"]));
                let v: TutteViolator = serde_json::from_value(rec["violator"].clone()).unwrap();
                assert!(v.verify(&cur.complement()));
            }
            other => panic!("unexpected status {other}"),
        }
    }
    assert!(seen.0 > 0 && seen.1 > 0, "{seen:?}");

    let run = regext(&["match", "--json"], &corpus);
    for rec in json_lines(&run.stdout).iter().filter(|r| r["type"] == "result") {
        let g = graph(&rec["graph6"]);
        if rec["status"] == "perfect" {
            let m: Matching = serde_json::from_value(rec["matching"].clone()).unwrap();
            assert!(m.is_perfect_for(g.order()) && m.validate(&g).is_ok());
        } else {
            let v: TutteViolator = serde_json::from_value(rec["violator"].clone()).unwrap();
            assert!(v.verify(&g));
        }
    }
}

#[test]
fn output_is_stable_across_runs_and_jobs() {
    let args = ["verify", "--rule", "L0-balloon", "--n", "10..14", "--samples", "4", "--seed", "9", "--json"];
    let one = regext(&[&args[..], &["--jobs", "1"]].concat(), "");
    let four = regext(&[&args[..], &["--jobs", "4"]].concat(), "");
    assert_eq!(one.code, 0);
    assert_eq!(one.stdout, four.stdout);
    let a = regext(&["gen", "--n", "20", "--r", "5", "--count", "5", "--seed", "3"], "");
    let b = regext(&["gen", "--n", "20", "--r", "5", "--count", "5", "--seed", "3"], "");
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn log_level_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_regext"))
        .args(["gen", "--n", "4", "--r", "3"])
        .env("REGEXT_LOG", "info")
        .output()
        .unwrap();
    assert!(String::from_utf8_lossy(&out.stderr).contains("generated 1 graphs"));
}
