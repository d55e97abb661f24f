use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sl2-tilting"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

#[test]
fn decide_exit_codes() {
    for (args, expected, word) in [
        (["-p", "2", "-r", "3", "-s", "1"], 0, "TILTING"),
        (["-p", "2", "-r", "6", "-s", "3"], 0, "TILTING"),
        (["-p", "3", "-r", "4", "-s", "1"], 1, "NOT TILTING"),
        (["-p", "2", "-r", "2", "-s", "0"], 1, "NOT TILTING"),
    ] {
        let mut full = vec!["decide"];
        full.extend(args);
        let out = run(&full);
        assert_eq!(code(&out), expected, "{full:?}");
        assert_eq!(stdout(&out).lines().next(), Some(word), "{full:?}");
    }
}

#[test]
fn decide_rejects_bad_input() {
    assert_eq!(code(&run(&["decide", "-p", "4", "-r", "1", "-s", "1"])), 2);
    assert_eq!(code(&run(&["decide", "-p", "2", "-r", "-3", "-s", "1"])), 2);
    assert_eq!(code(&run(&["decide", "-p", "2", "-r", "1"])), 2);
    assert_eq!(code(&run(&["frobnicate"])), 2);
    assert_eq!(code(&run(&["--help"])), 0);
}

#[test]
fn decide_both_methods_with_traces() {
    let out = run(&["decide", "-p", "2", "-r", "6", "-s", "3", "--method", "both", "--trace"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.starts_with("TILTING\n"));
    assert!(text.contains("explicit: TILTING"));
    assert!(text.contains("recursive: TILTING"));
    assert!(text.contains("digit-criterion (6, 3)"));
    assert!(text.contains("jantzen-filtration (6, 3)"));

    let out = run(&["decide", "-p", "5", "-r", "12", "-s", "3", "--method", "recursive"]);
    assert_eq!(code(&out), 1);
    assert_eq!(stdout(&out), "NOT TILTING\n");
}

#[test]
fn decompose_outputs() {
    let out = run(&["decompose", "-p", "2", "-r", "3", "-s", "2"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "{\"5\": 1, \"3\": 1}\ndim 12 = 4 x 3\n");

    let out = run(&["decompose", "-p", "2", "-r", "1", "-s", "1"]);
    assert_eq!(stdout(&out), "{\"2\": 1}\ndim 4 = 2 x 2\n");

    let out = run(&["decompose", "-p", "3", "-r", "4", "-s", "1"]);
    assert_eq!(code(&out), 1);
    let text = stdout(&out);
    assert!(text.starts_with("NOT TILTING\nnecessary condition fails"), "{text}");
}

#[test]
fn char_outputs() {
    let cases = [
        ("chi 1", "x + x^-1 = χ(1)\n"),
        ("chi -1", "0 = 0\n"),
        ("tilt 4", "x^4 + 2x^2 + 2 + 2x^-2 + x^-4 = χ(4) + χ(2)\n"),
        ("prod 3 2", "x^5 + 2x^3 + 3x + 3x^-1 + 2x^-3 + x^-5 = χ(5) + χ(3) + χ(1)\n"),
    ];
    for (expr, expected) in cases {
        let out = run(&["char", "-p", "2", expr]);
        assert_eq!(code(&out), 0, "{expr}");
        assert_eq!(stdout(&out), expected, "{expr}");
    }
    assert_eq!(code(&run(&["char", "-p", "2", "bogus"])), 2);
    assert_eq!(code(&run(&["char", "-p", "2", "chi -2"])), 2);
}

#[test]
fn grid_formats() {
    let out = run(&["grid", "-p", "3", "--max", "4", "--format", "ascii"]);
    assert_eq!(stdout(&out), "###..\n###..\n#####\n..###\n..###\n");

    let out = run(&["grid", "-p", "2", "--max", "1", "--format", "json"]);
    assert_eq!(stdout(&out), "{\"p\":2,\"max\":1,\"tilting\":[[0,0],[0,1],[1,0],[1,1]]}\n");

    let out = run(&["grid", "-p", "2", "--max", "3", "--format", "svg"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).starts_with("<svg "));

    let golden = include_str!("golden/p2_max31.tsv");
    let out = run(&["grid", "-p", "2", "--max", "31"]);
    assert_eq!(stdout(&out), golden);
}

#[test]
fn grid_writes_files_and_reports_failures() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("grid.tsv");
    let out = run(&["grid", "-p", "2", "--max", "31", "-o", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert!(out.stdout.is_empty());
    assert_eq!(std::fs::read_to_string(&path).unwrap(), include_str!("golden/p2_max31.tsv"));

    let missing = dir.path().join("no/such/dir/grid.tsv");
    assert_eq!(code(&run(&["grid", "-p", "2", "--max", "3", "-o", missing.to_str().unwrap()])), 2);
    assert_eq!(code(&run(&["grid", "-p", "2", "--max", "5000"])), 2);
    assert_eq!(code(&run(&["grid", "-p", "2", "--format", "png"])), 2);
}

#[test]
fn selftest_passes() {
    let out = run(&["selftest", "--p-list", "2,3", "--max", "200"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).ends_with("all suites passed\n"));

    let out = run(&["selftest", "--max", "0"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).ends_with("all suites passed\n"));

    assert_eq!(code(&run(&["selftest", "--p-list", "2,6"])), 2);
}
