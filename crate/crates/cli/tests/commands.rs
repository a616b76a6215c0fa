use std::process::{Command, Output};

use springer_core::Poly;

fn springer(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_springer"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn ok(args: &[&str]) -> String {
    let out = springer(args);
    assert_eq!(out.status.code(), Some(0), "{args:?}: {}", stderr(&out));
    stdout(&out)
}

#[test]
fn eval_examples() {
    assert_eq!(
        ok(&["eval", "--series", "C", "--partition", "2,2", "--z", "z2"]),
        "x + 1\n"
    );
    assert_eq!(
        ok(&["eval", "--series", "C", "--partition", "6", "--z", "id"]),
        "1\n"
    );
    assert_eq!(
        ok(&["eval", "--series", "C", "--partition", "2,2,1,1"]),
        "5*x^4 + 9*x^3 + 6*x^2 + 3*x + 1\n"
    );
}

#[test]
fn invalid_inputs_exit_2() {
    let out = springer(&["eval", "--series", "C", "--partition", "2,1", "--z", "id"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("size 3 is odd"), "{}", stderr(&out));
    assert!(stdout(&out).is_empty());

    for args in [
        &["eval", "--series", "C", "--partition", "4,2", "--z", "z6"][..],
        &["eval", "--series", "D", "--partition", "3,1", "--z", "z1"],
        &["eval", "--series", "C", "--partition", "2,0"],
        &["eval", "--series", "E", "--partition", "2"],
        &["eval", "--series", "C", "--partition", "2,2:+"],
        &["table", "--series", "C", "--n", "0"],
        &["verify", "--series", "C", "--max-size", "4", "--q", "4"],
    ] {
        assert_eq!(springer(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn orbit_suffix_is_accepted_with_notice() {
    let out = springer(&["eval", "--series", "D", "--partition", "2,2:-"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "x + 1\n");
    assert!(stderr(&out).contains("ignoring orbit suffix"));
}

#[test]
fn json_schema() {
    let text = ok(&[
        "eval",
        "--series",
        "C",
        "--partition",
        "2,2",
        "--z",
        "z2",
        "--format",
        "json",
    ]);
    let value: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(value["series"], "C");
    assert_eq!(value["partition"], serde_json::json!([2, 2]));
    assert_eq!(value["z"], serde_json::json!([2]));
    assert_eq!(value["poly"], serde_json::json!(["1", "1"]));
    assert_eq!(value["betti"], serde_json::json!(["1", "3"]));
}

#[test]
fn table_csv_sp4() {
    let csv = ok(&["table", "--series", "C", "--n", "2", "--format", "csv"]);
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "partition,z,poly,betti");
    assert_eq!(
        &lines[1..],
        [
            "4,id,1,1",
            "4,z4,1,1",
            "2.2,id,3*x + 1,1;3",
            "2.2,z2,x + 1,1;3",
            "2.1.1,id,x^2 + 2*x + 1,1;2;1",
            "2.1.1,z2,x^2 + 2*x + 1,1;2;1",
            "1.1.1.1,id,x^4 + 2*x^3 + 2*x^2 + 2*x + 1,1;2;2;2;1",
        ]
    );
    for line in &lines[1..] {
        assert_eq!(line.split(',').count(), 4);
    }
}

#[test]
fn table_initial_conditions() {
    let text = ok(&["table", "--series", "C", "--n", "1"]);
    assert_eq!(text.lines().count(), 3);
}

#[test]
fn table_d2_annotates_very_even() {
    let text = ok(&["table", "--series", "D", "--n", "2"]);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 4);
    assert!(lines[0].starts_with("(3,1)") && lines[1].starts_with("(3,1)"));
    assert!(lines[2].starts_with("(2,2)") && lines[2].contains("very even"));
    assert!(lines[3].starts_with("(1,1,1,1)"));
    assert_eq!(lines.iter().filter(|l| l.contains("very even")).count(), 1);
}

#[test]
fn table_is_identical_across_thread_counts() {
    for format in ["text", "csv", "json"] {
        let one = ok(&[
            "--threads",
            "1",
            "table",
            "--series",
            "B",
            "--n",
            "4",
            "--format",
            format,
        ]);
        let four = ok(&[
            "table",
            "--series",
            "B",
            "--n",
            "4",
            "--format",
            format,
            "--threads",
            "4",
        ]);
        let again = ok(&[
            "table",
            "--series",
            "B",
            "--n",
            "4",
            "--format",
            format,
            "--threads",
            "4",
        ]);
        assert_eq!(one, four);
        assert_eq!(four, again);
    }
}

#[test]
fn printed_polynomials_round_trip() {
    for series in ["B", "C", "D"] {
        let csv = ok(&["table", "--series", series, "--n", "4", "--format", "csv"]);
        for line in csv.lines().skip(1) {
            let fields: Vec<&str> = line.split(',').collect();
            let poly: Poly = fields[2].parse().unwrap();
            assert_eq!(poly.to_string(), fields[2]);
        }
    }
    let text = ok(&[
        "expand",
        "--series",
        "B",
        "--partition",
        "1,1,1",
        "--show-null",
        "--format",
        "csv",
    ]);
    for line in text.lines().skip(1) {
        let coeff = line.split(',').next().unwrap();
        assert_eq!(coeff.parse::<Poly>().unwrap().to_string(), coeff);
    }
}

#[test]
fn expand_sp4_derivation() {
    let csv = ok(&[
        "expand",
        "--series",
        "C",
        "--partition",
        "2,2",
        "--format",
        "csv",
    ]);
    assert_eq!(
        csv.lines().skip(1).collect::<Vec<_>>(),
        ["1/2*x - 1/2,2,id", "1/2*x - 1/2,2,z2", "2,1.1,id"]
    );
}

#[test]
fn expand_hides_null_terms_by_default() {
    let args = [
        "expand",
        "--series",
        "B",
        "--partition",
        "1,1,1",
        "--format",
        "csv",
    ];
    let hidden = ok(&args);
    assert_eq!(hidden.lines().skip(1).collect::<Vec<_>>(), ["x + 1,1,id"]);

    let shown = ok(&[&args[..], &["--show-null"]].concat());
    let rows: Vec<&str> = shown.lines().skip(1).collect();
    assert_eq!(rows.len(), 3);
    assert_eq!(rows[0], "x + 1,1,id");
    let mut nulls: Vec<&str> = rows[1..]
        .iter()
        .map(|r| {
            assert!(r.contains(",null,"));
            r.split(',').next().unwrap()
        })
        .collect();
    nulls.sort_unstable();
    assert_eq!(nulls, ["1/2*x^2 + 1/2*x", "1/2*x^2 - 1/2*x"]);
}

#[test]
fn expand_single_term() {
    let csv = ok(&[
        "expand",
        "--series",
        "C",
        "--partition",
        "4",
        "--z",
        "z4",
        "--format",
        "csv",
    ]);
    assert_eq!(csv.lines().skip(1).collect::<Vec<_>>(), ["1,2,z2"]);
}

#[test]
fn verify_sp4() {
    let text = ok(&["verify", "--series", "C", "--max-size", "4", "--q", "3"]);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 7);
    assert!(lines.iter().all(|l| l.ends_with("ok")));
    assert!(text.contains("(1,1,1,1) id over F_3: 160 flags, predicted 160"));
}

#[test]
fn verify_b_to_size_5() {
    let csv = ok(&[
        "verify",
        "--series",
        "B",
        "--max-size",
        "5",
        "--q",
        "3",
        "--format",
        "csv",
    ]);
    let rows: Vec<&str> = csv.lines().skip(1).collect();
    assert!(!rows.is_empty());
    assert!(rows.iter().all(|r| r.ends_with(",ok")), "{csv}");
}

#[test]
fn verify_twisted_includes_22_z2() {
    let text = ok(&[
        "verify",
        "--series",
        "C",
        "--max-size",
        "4",
        "--q",
        "3",
        "--twisted",
    ]);
    assert!(
        text.contains("(2,2) z2 over F_9: 4 flags, predicted 4  ok"),
        "{text}"
    );
}

#[test]
fn verify_json_rows() {
    let text = ok(&[
        "verify",
        "--series",
        "D",
        "--max-size",
        "4",
        "--format",
        "json",
    ]);
    let rows: Vec<serde_json::Value> = serde_json::from_str(&text).unwrap();
    assert!(rows.iter().all(|r| r["matched"] == true));
    let very_even = rows
        .iter()
        .find(|r| r["partition"] == serde_json::json!([2, 2]))
        .unwrap();
    assert_eq!(very_even["mirror_count"], very_even["count"]);
}
