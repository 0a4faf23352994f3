use hypconst::cli::{run_with, EXIT_COMPUTATION, EXIT_OK, EXIT_USAGE};
use hypconst::{Interval, Rational, Value};
use serde_json::Value as Json;

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("hypconst").chain(args.iter().copied());
    let code = run_with(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn json_lines(out: &str) -> Vec<Json> {
    out.lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect()
}

#[test]
fn siegel_constant_as_json() {
    let (code, out, _) = run(&["cp", "siegel", "--g", "8", "--p", "21", "--format", "json"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out, "{\"g\":8,\"p\":21,\"D\":\"1\",\"C\":\"1/9\"}\n");
}

#[test]
fn kobayashi_level_text() {
    let (code, out, _) = run(&["level", "ag", "--g", "4"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("threshold 24, smallest level 25"), "{out}");
}

#[test]
fn exact_verification_is_clean() {
    let (code, out, _) = run(&[
        "verify", "siegel", "--gmax", "4", "--oracle", "exact", "--format", "json",
    ]);
    assert_eq!(code, EXIT_OK);
    let r = &json_lines(&out)[0];
    assert_eq!(r["oracle"], "exact");
    assert_eq!(r["checked"], 19);
    assert_eq!(r["mismatches"], Json::Array(vec![]));
}

#[test]
fn table_verification() {
    let (code, out, _) = run(&["verify", "siegel", "--gmax", "5", "--oracle", "table"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("34 pairs, 0 mismatches"), "{out}");
}

#[test]
fn usage_errors() {
    assert_eq!(run(&["bogus"]).0, EXIT_USAGE);
    assert_eq!(run(&["cp", "siegel", "--g", "3"]).0, EXIT_USAGE);
    assert_eq!(
        run(&["cp", "siegel", "--g", "3", "--p", "2", "--format", "xml"]).0,
        EXIT_USAGE
    );
    assert_eq!(
        run(&["level", "ag", "--g", "3", "--prec", "2"]).0,
        EXIT_USAGE
    );
    assert_eq!(
        run(&[
            "volume-factor",
            "--cp",
            "x",
            "--lambda",
            "1",
            "--alpha",
            "2",
            "--q",
            "1"
        ])
        .0,
        EXIT_USAGE
    );
    let (code, _, err) = run(&["frobnicate"]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("Usage"));
    assert_eq!(run(&["--help"]).0, EXIT_OK);
}

#[test]
fn computation_errors() {
    let (code, _, err) = run(&["codim", "ag", "--g", "11"]);
    assert_eq!(code, EXIT_COMPUTATION);
    assert!(err.starts_with("error:"));
    assert_eq!(
        run(&["cp", "siegel", "--g", "3", "--p", "7"]).0,
        EXIT_COMPUTATION
    );
    assert_eq!(
        run(&[
            "volume-factor",
            "--cp",
            "1",
            "--lambda",
            "2",
            "--alpha",
            "2",
            "--q",
            "1"
        ])
        .0,
        EXIT_COMPUTATION
    );
    assert_eq!(
        run(&["beta", "--a", "1,0", "--r", "2", "--p", "1"]).0,
        EXIT_COMPUTATION
    );
}

#[test]
fn values_round_trip() {
    let (_, out, _) = run(&[
        "alpha", "ball", "--n", "9", "--prec", "32", "--format", "json",
    ]);
    let v = &json_lines(&out)[0];
    let iv: Interval = v["value"].as_str().unwrap().parse().unwrap();
    assert!(iv.width_within(32));
    assert_eq!(iv.to_string(), v["value"].as_str().unwrap());
    let parsed: Value = v["value"].as_str().unwrap().parse().unwrap();
    assert_eq!(parsed, Value::Enclosed(iv));

    let (_, out, _) = run(&["table", "siegel", "--g", "4", "--format", "json"]);
    for r in json_lines(&out) {
        let c: Rational = r["C"].as_str().unwrap().parse().unwrap();
        assert_eq!(c.to_string(), r["C"].as_str().unwrap());
        assert_eq!(r["match"], true);
    }
}

#[test]
fn output_is_independent_of_thread_count() {
    for format in ["json", "text", "csv", "md"] {
        let one = run(&[
            "table", "siegel", "--g", "6", "--jobs", "1", "--format", format,
        ]);
        let four = run(&[
            "table", "siegel", "--g", "6", "--jobs", "4", "--format", format,
        ]);
        assert_eq!(one, four);
        assert_eq!(one.0, EXIT_OK);
    }
}

#[test]
fn formats() {
    let (_, csv, _) = run(&["cp", "ball", "--n", "9", "--p", "4", "--format", "csv"]);
    assert_eq!(csv, "\"n\",\"p\",\"C\"\n\"9\",\"4\",\"1/2\"\n");
    let (_, md, _) = run(&["table", "siegel", "--g", "3", "--format", "md"]);
    assert!(
        md.starts_with("| (g+1)·C_p | g-k=1 | g-k=2 | g-k=3 |"),
        "{md}"
    );
    let (_, text, _) = run(&["table", "siegel", "--g", "5"]);
    assert!(
        text.contains("23/16") && text.contains("all 15 entries match"),
        "{text}"
    );
    let (_, md, _) = run(&[
        "beta", "--a", "1,1,2", "--r", "3", "--p", "2", "--format", "md",
    ]);
    assert!(md.contains("| 1/3 |"), "{md}");
}

fn binary(args: &[&str], prec_env: Option<&str>) -> (i32, String) {
    let mut cmd = std::process::Command::new(env!("CARGO_BIN_EXE_hypconst"));
    cmd.args(args).env_remove("HYPCONST_PREC");
    if let Some(p) = prec_env {
        cmd.env("HYPCONST_PREC", p);
    }
    let out = cmd.output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
    )
}

#[test]
fn precision_flag_beats_environment() {
    let enclosure = |out: &str| -> Interval {
        json_lines(out)[0]["value"]
            .as_str()
            .unwrap()
            .parse()
            .unwrap()
    };
    let (code, env_only) = binary(
        &["alpha", "ball", "--n", "1", "--format", "json"],
        Some("16"),
    );
    assert_eq!(code, EXIT_OK);
    assert!(enclosure(&env_only).width_within(16) && !enclosure(&env_only).width_within(30));
    let (_, flagged) = binary(
        &[
            "alpha", "ball", "--n", "1", "--prec", "40", "--format", "json",
        ],
        Some("16"),
    );
    assert!(enclosure(&flagged).width_within(40));
    let (_, default) = binary(&["alpha", "ball", "--n", "1", "--format", "json"], None);
    assert!(enclosure(&default).width_within(128));
    assert_eq!(
        binary(&["level", "ag", "--g", "2"], Some("3")).0,
        EXIT_USAGE
    );
    assert_eq!(
        binary(&["codim", "ag", "--g", "3"], None).0,
        EXIT_COMPUTATION
    );
}

#[test]
fn remaining_subcommands() {
    let (code, out, _) = run(&["level", "mg", "--g", "7", "--format", "json"]);
    assert_eq!(code, EXIT_OK);
    let r = &json_lines(&out)[0];
    assert_eq!(r["certified_level"], 7);
    assert_eq!(r["agrees"], false);
    assert_eq!(r["published"]["value"], 22);

    let (_, out, _) = run(&["level", "ball", "--l", "2", "--format", "json"]);
    assert_eq!(json_lines(&out)[0]["dimension"], 3);

    let (_, out, _) = run(&["level", "ag-uniform", "--prec", "48", "--format", "json"]);
    let r = &json_lines(&out)[0];
    assert_eq!(r["report"]["certified_level"], 54);
    assert_eq!(r["per_genus"].as_array().unwrap().len(), 29);

    let (_, out, _) = run(&["codim", "ag", "--g", "15"]);
    assert!(out.contains("codimension <= 3"));

    let (_, out, _) = run(&["alpha", "--g", "3", "--bound", "ht06", "--format", "json"]);
    assert_eq!(json_lines(&out)[0]["value"], "1/23");
    let (_, out, _) = run(&["alpha", "--g", "11", "--bound", "weissauer"]);
    assert!(out.contains(": 1\n"), "{out}");
    assert_eq!(run(&["alpha", "--g", "3"]).0, EXIT_USAGE);

    let (_, out, _) = run(&[
        "condition-i",
        "--a",
        "2,2",
        "--r",
        "4",
        "--d",
        "2",
        "--format",
        "json",
    ]);
    assert_eq!(json_lines(&out)[0]["holds"], true);

    let (_, out, _) = run(&[
        "volume-factor",
        "--cp",
        "1",
        "--lambda",
        "1",
        "--alpha",
        "2",
        "--q",
        "0",
        "--format",
        "json",
    ]);
    assert_eq!(json_lines(&out)[0]["value"], "[1,1]");
}
