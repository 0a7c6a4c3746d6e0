use std::collections::BTreeSet;
use std::process::Command;

use ringline_cli::{exit, run};
use ringline_core::export::LineDoc;
use ringline_core::{ring_from_text, BuildOptions, ProjLine};

const CUBIC: &str = "GF(2)[x]/(x^3-x)";

fn call(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let argv = std::iter::once("ringline").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn ok(args: &[&str]) -> String {
    let (code, out, err) = call(args);
    assert_eq!(code, 0, "{args:?}: {err}");
    assert!(err.is_empty());
    out
}

#[test]
fn line_graph_json_round_trips() {
    for spec in [CUBIC, "GF(2)*GF(2)", "GF(3)"] {
        let doc: LineDoc =
            serde_json::from_str(&ok(&["line-graph", "--ring", spec, "--format", "json"])).unwrap();
        let ring = ring_from_text(spec, &BuildOptions::default()).unwrap();
        let line = ProjLine::new(&ring);
        assert_eq!(doc.ring, ring.description());
        assert_eq!(doc.points.len(), line.len());
        for (i, p) in doc.points.iter().enumerate() {
            let text = format!("({},{})", p.canonical[0], p.canonical[1]);
            assert_eq!(line.parse_point(&text).unwrap().0, i);
            for [a, b] in &p.orbit {
                assert_eq!(line.parse_point(&format!("({a},{b})")).unwrap().0, i);
            }
        }
        let edges: BTreeSet<(usize, usize)> = doc.edges.iter().map(|&[a, b]| (a, b)).collect();
        let expected: BTreeSet<(usize, usize)> = line
            .neighbour_graph()
            .edges()
            .into_iter()
            .map(|(p, q)| (p.0, q.0))
            .collect();
        assert_eq!(edges, expected);
    }
}

#[test]
fn dot_export_shape() {
    let dot = ok(&["line-graph", "--ring", CUBIC, "--format", "dot"]);
    assert_eq!(dot.matches(" -- ").count(), 81);
    assert_eq!(dot.matches("[label=").count(), 18);
    assert_eq!(dot.matches("shape=box").count(), 4);
    let gf2 = ok(&["line-graph", "--ring", "GF(2)", "--format", "dot"]);
    assert_eq!(
        (gf2.matches("[label=").count(), gf2.matches(" -- ").count()),
        (3, 0)
    );
}

#[test]
fn machine_formats_are_deterministic() {
    let runs: &[&[&str]] = &[
        &["ring-info", "--ring", CUBIC, "--format", "json"],
        &["ring-table", "--ring", CUBIC, "--format", "csv"],
        &["line-points", "--ring", CUBIC, "--format", "csv"],
        &["line-stats", "--ring", CUBIC, "--format", "json"],
        &["line-graph", "--ring", CUBIC, "--format", "dot"],
        &[
            "hom-induced",
            "--ring",
            CUBIC,
            "--ideal",
            "jacobson",
            "--format",
            "json",
        ],
        &["verify", "--format", "json"],
    ];
    for args in runs {
        let first = ok(args);
        assert!(first.ends_with('\n'));
        assert_eq!(first, ok(args), "{args:?}");
    }
}

#[test]
fn ring_report_and_table() {
    let info = ok(&["ring-info", "--ring", CUBIC]);
    assert!(info.contains("not local"));
    assert!(info.contains("{0, x^2+x}"));
    assert!(ok(&["ring-info", "--ring", "GF(2)"]).contains("locality:          local"));
    let csv = ok(&["ring-table", "--ring", CUBIC, "--format", "csv"]);
    let first = csv.lines().next().unwrap();
    assert_eq!(first, "*,0,1,x,x^2,x+1,x^2+1,x^2+x,x^2+x+1");
    let add = ok(&[
        "ring-table",
        "--ring",
        "GF(3)",
        "--op",
        "add",
        "--format",
        "csv",
    ]);
    assert_eq!(add.lines().nth(1).unwrap(), "0,0,1,2");
}

#[test]
fn neighbours_accept_any_representative() {
    let a = ok(&[
        "line-neighbours",
        "--ring",
        CUBIC,
        "--point",
        "(x^2+x+1, 0)",
        "--format",
        "json",
    ]);
    let b = ok(&[
        "line-neighbours",
        "--ring",
        CUBIC,
        "--point",
        "(1,0)",
        "--format",
        "json",
    ]);
    assert_eq!(a, b);
    let v: serde_json::Value = serde_json::from_str(&a).unwrap();
    assert_eq!(v["neighbours"].as_array().unwrap().len(), 9);
}

#[test]
fn errors_have_distinct_codes_and_use_stderr_only() {
    let cases: &[(&[&str], i32)] = &[
        (&["line-stats", "--ring", "GF(2)[x]/(x^3"], exit::SPEC),
        (
            &[
                "line-stats",
                "--ring",
                "GF(11)*GF(11)",
                "--max-elements",
                "100",
            ],
            exit::BOUND,
        ),
        (
            &["line-neighbours", "--ring", CUBIC, "--point", "(z,1)"],
            exit::ELEMENT,
        ),
        (
            &["line-neighbours", "--ring", CUBIC, "--point", "(x,x^2)"],
            exit::POINT,
        ),
        (
            &["hom-induced", "--ring", CUBIC, "--ideal", "x^2+x+1"],
            exit::IDEAL,
        ),
        (
            &["line-stats", "--ring", CUBIC, "--format", "dot"],
            exit::FORMAT,
        ),
        (&["line-stats"], exit::USAGE),
    ];
    let mut seen = BTreeSet::new();
    for (args, expected) in cases {
        let (code, out, err) = call(args);
        assert_eq!(code, *expected, "{args:?}: {err}");
        assert!(out.is_empty(), "{args:?}");
        assert!(!err.is_empty(), "{args:?}");
        assert!(seen.insert(code));
    }
    assert!(!seen.contains(&exit::OK));
}

#[test]
fn spec_errors_point_at_the_offset() {
    let (_, _, err) = call(&["ring-info", "--ring", "GF(6)"]);
    let lines: Vec<&str> = err.lines().collect();
    assert_eq!(lines[1], "  GF(6)");
    assert_eq!(lines[2], "     ^");
}

#[test]
fn bound_comes_from_the_environment() {
    let bin = env!("CARGO_BIN_EXE_ringline");
    let out = Command::new(bin)
        .args(["ring-info", "--ring", "GF(5)"])
        .env("RINGLINE_MAX_ELEMENTS", "3")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(exit::BOUND));
    assert!(out.stdout.is_empty());
    let out = Command::new(bin)
        .args(["ring-info", "--ring", "GF(5)"])
        .env("RINGLINE_MAX_ELEMENTS", "5")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn help_goes_to_stdout() {
    let (code, out, err) = call(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("line-neighbours"));
    assert!(err.is_empty());
}

#[test]
fn verify_on_a_single_ring() {
    let out = ok(&["verify", "--ring", "GF(3)"]);
    assert!(out.contains("[PASS] P(GF(3)): PG(1,p) has p+1 points"));
    assert!(out.ends_with("0 failed\n"));
}
