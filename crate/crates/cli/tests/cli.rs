use std::io::Write as _;
use std::process::{Command, Stdio};

use kpage_cli::{run, EXIT_DATA, EXIT_INCONCLUSIVE, EXIT_IO, EXIT_OK, EXIT_REFUTED, EXIT_USAGE};
use serde_json::Value;

struct Output {
    code: i32,
    stdout: String,
    stderr: String,
}

fn kpage(args: &[&str], stdin: &str) -> Output {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("kpage").chain(args.iter().copied());
    let code = run(argv, &mut stdin.as_bytes(), &mut out, &mut err);
    Output { code, stdout: String::from_utf8(out).unwrap(), stderr: String::from_utf8(err).unwrap() }
}

fn ok(args: &[&str]) -> String {
    let o = kpage(args, "");
    assert_eq!(o.code, EXIT_OK, "{args:?}: {}", o.stderr);
    o.stdout
}

#[test]
fn count_drawings() {
    assert_eq!(ok(&["count-drawings", "4", "5"]), "10\n");
    assert_eq!(ok(&["count-drawings", "5", "7"]), "38\n");
    assert_eq!(ok(&["count-drawings", "6", "10"]), "280\n");
}

#[test]
fn enumerate_text_and_json() {
    let text = ok(&["enumerate", "2", "2"]);
    assert_eq!(text, "0011\n0101\n");
    let json: Vec<String> = serde_json::from_str(&ok(&["enumerate", "4", "5", "--emit", "json"])).unwrap();
    assert_eq!(json.len(), 10);
}

#[test]
fn verify_k45_three_pages_is_proven() {
    let dir = tempfile::tempdir().unwrap();
    let log = dir.path().join("run.jsonl");
    let cnf = dir.path().join("cnf");
    let o = kpage(
        &[
            "verify-pagenumber",
            "4",
            "5",
            "3",
            "--jobs",
            "2",
            "--log",
            log.to_str().unwrap(),
            "--export-cnf",
            cnf.to_str().unwrap(),
        ],
        "",
    );
    assert_eq!(o.code, EXIT_OK, "{}", o.stderr);
    let report: Value = serde_json::from_str(&o.stdout).unwrap();
    assert_eq!(report["verdict"], "proven");
    let layouts = report["layouts"].as_array().unwrap();
    assert_eq!(layouts.len(), 10);
    assert!(layouts.iter().all(|l| l["verdict"] == "not_colorable"));

    let lines: Vec<Value> =
        std::fs::read_to_string(&log).unwrap().lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(lines.len(), 10);
    for entry in &lines {
        for key in ["canonical_string", "verdict", "nodes", "millis"] {
            assert!(entry.get(key).is_some(), "log entry lacks {key}");
        }
    }
    let files: Vec<_> = std::fs::read_dir(&cnf).unwrap().collect();
    assert_eq!(files.len(), 10);
    let first = std::fs::read_to_string(files[0].as_ref().unwrap().path()).unwrap();
    assert!(first.lines().any(|l| l.starts_with("p cnf 60 ")));

    // resuming from a complete log does no new work and reaches the same verdict
    let again = kpage(&["verify-pagenumber", "4", "5", "3", "--resume", log.to_str().unwrap()], "");
    assert_eq!(again.code, EXIT_OK);
    let again: Value = serde_json::from_str(&again.stdout).unwrap();
    assert_eq!(again["verdict"], "proven");
}

#[test]
fn verify_exit_codes_for_refuted_and_inconclusive() {
    let o = kpage(&["verify-pagenumber", "4", "4", "3"], "");
    assert_eq!(o.code, EXIT_REFUTED);
    let report: Value = serde_json::from_str(&o.stdout).unwrap();
    assert_eq!(report["verdict"], "refuted");

    let o = kpage(&["verify-pagenumber", "5", "7", "4", "--budget", "0"], "");
    // layouts settled by a large clique need no search nodes, the others run out
    assert_eq!(o.code, EXIT_INCONCLUSIVE, "{}", o.stderr);
}

#[test]
fn construct_then_count_via_stdin() {
    let drawing = ok(&["construct", "blowup", "3", "5"]);
    let counted = kpage(&["crossings", "-"], &drawing);
    assert_eq!(counted.code, EXIT_OK);
    assert_eq!(counted.stdout.lines().next(), Some("total 1"));

    let drawing = ok(&["construct", "block-cyclic", "4", "5", "3"]);
    let json: Value = serde_json::from_str(&kpage(&["crossings", "-", "--json"], &drawing).stdout).unwrap();
    assert_eq!(json["total"], 2);
    assert_eq!(json["per_page"].as_array().unwrap().len(), 3);
}

#[test]
fn construct_file_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    for family in [vec!["balanced", "5"], vec!["riskin", "3", "7"], vec!["block-cyclic", "6", "6", "2"]] {
        let path = dir.path().join("d.json");
        let mut args = vec!["construct"];
        args.extend(&family);
        args.extend(["-o", path.to_str().unwrap()]);
        assert_eq!(ok(&args), "");
        let text = std::fs::read_to_string(&path).unwrap();
        let direct = kpage(&["crossings", "-", "--json"], &text).stdout;
        let from_file = ok(&["crossings", path.to_str().unwrap(), "--json"]);
        assert_eq!(direct, from_file);
    }
    assert!(ok(&["crossings", dir.path().join("d.json").to_str().unwrap()]).starts_with("total 36\n"));
}

#[test]
fn bounds_table_and_scan() {
    let rows: Vec<Value> = serde_json::from_str(&ok(&["bounds", "3", "5"])).unwrap();
    let main1 = rows.iter().find(|r| r["formula"] == "main1").expect("main1 row");
    assert_eq!(main1["value"], "1");
    let scan: Value = serde_json::from_str(&ok(&["bounds", "3", "60", "--scan", "--drawings"])).unwrap();
    assert_eq!(scan["checked"], 60);
    assert_eq!(scan["violations"].as_array().unwrap().len(), 0);
}

#[test]
fn oracle_and_its_limits() {
    let v: Value = serde_json::from_str(&ok(&["oracle", "3", "3", "2"])).unwrap();
    assert_eq!(v["value"], 1);
    let o = kpage(&["oracle", "6", "6", "2"], "");
    assert_eq!(o.code, EXIT_INCONCLUSIVE);
    assert!(o.stderr.contains("m + n"));
}

#[test]
fn render_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let drawing = dir.path().join("d.json");
    ok(&["construct", "balanced", "3", "-o", drawing.to_str().unwrap()]);
    let a = dir.path().join("a.svg");
    let b = dir.path().join("b.svg");
    ok(&["render", drawing.to_str().unwrap(), "-o", a.to_str().unwrap(), "--labels"]);
    ok(&["render", drawing.to_str().unwrap(), "-o", b.to_str().unwrap(), "--labels"]);
    let svg = std::fs::read_to_string(&a).unwrap();
    assert_eq!(svg, std::fs::read_to_string(&b).unwrap());
    assert!(svg.starts_with("<svg"));
    assert_eq!(svg.matches(r#"<g class="page""#).count(), 3);
}

#[test]
fn error_exit_codes() {
    assert_eq!(kpage(&["crossings", "-"], "{not json").code, EXIT_DATA);
    let missing_edge = r#"{"m":1,"n":2,"k":1,"order":["b0","w0","w1"],"edges":[[0,0,0]]}"#;
    assert_eq!(kpage(&["crossings", "-"], missing_edge).code, EXIT_DATA);
    assert_eq!(kpage(&["frobnicate"], "").code, EXIT_USAGE);
    assert_eq!(kpage(&["count-drawings", "4"], "").code, EXIT_USAGE);
    assert_eq!(kpage(&["construct", "balanced", "0"], "").code, EXIT_USAGE);
    assert_eq!(kpage(&["crossings", "/nonexistent/drawing.json"], "").code, EXIT_IO);
}

#[test]
fn binary_end_to_end() {
    let exe = env!("CARGO_BIN_EXE_kpage");
    let built = Command::new(exe).args(["construct", "blowup", "3", "5"]).output().unwrap();
    assert!(built.status.success());
    let mut child =
        Command::new(exe).args(["crossings", "-"]).stdin(Stdio::piped()).stdout(Stdio::piped()).spawn().unwrap();
    child.stdin.take().unwrap().write_all(&built.stdout).unwrap();
    let counted = child.wait_with_output().unwrap();
    assert!(counted.status.success());
    assert!(String::from_utf8(counted.stdout).unwrap().starts_with("total 1\n"));

    let status = Command::new(exe).args(["verify-pagenumber", "4", "4", "3"]).stdout(Stdio::null()).status().unwrap();
    assert_eq!(status.code(), Some(EXIT_REFUTED));
    let status = Command::new(exe).arg("--bogus").stderr(Stdio::null()).status().unwrap();
    assert_eq!(status.code(), Some(EXIT_USAGE));
}
