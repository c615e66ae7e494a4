use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use syment_core::spectra::schema::{BlockSpectrumDoc, WeightedSpectrumDoc};

fn syment(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_syment"))
        .args(args)
        .env_remove("SYMENT_OUT_DIR")
        .output()
        .expect("binary runs")
}

fn ok_json(args: &[&str]) -> (String, Value) {
    let out = syment(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = String::from_utf8(out.stdout).unwrap();
    let v: Value = serde_json::from_str(&text).unwrap();
    (text, v)
}

fn error_record(out: &Output) -> Value {
    let text = String::from_utf8_lossy(&out.stderr);
    serde_json::from_str(text.trim()).unwrap_or_else(|e| panic!("stderr is not one JSON record ({e}): {text}"))
}

const COMMANDS: &[&[&str]] = &[
    &["dims", "--n", "4", "--d", "3"],
    &["spectrum", "--p", "7/10,3/10", "--n", "5", "--form", "block"],
    &[
        "spectrum", "--source", "clone1", "--p", "0.7,0.3", "--m", "6", "--r", "2",
    ],
    &[
        "spectrum", "--source", "clone2", "--p", "0.7,0.3", "--m", "4", "--n", "2",
    ],
    &["fidelity-curve", "--p", "0.7,0.3", "--n", "30", "--points", "7"],
    &[
        "fidelity-curve",
        "--kind",
        "pure",
        "--source",
        "clone1",
        "--p",
        "0.6,0.4",
        "--m",
        "20",
        "--r",
        "2",
    ],
    &["rates", "--p", "0.7,0.3", "--n", "40", "--epsilon", "0.01,0.1"],
    &[
        "exponent", "--p", "0.7,0.3", "--r", "2", "--r-min", "0.9", "--r-max", "1", "--points", "3",
    ],
    &["tradeoff", "--p", "0.7,0.3", "--r", "2", "--eta", "0.02"],
    &[
        "protocol", "--p", "0.7,0.3", "--n", "20", "--kind", "dilution", "--R", "0.9", "--trials", "500",
    ],
    &[
        "converse-report",
        "--p",
        "0.7,0.3",
        "--sizes",
        "10,20",
        "--epsilon",
        "0.05",
    ],
    &["oracle-check", "--scope", "clone1"],
];

#[test]
fn dims_example() {
    let (_, v) = ok_json(&["dims", "--n", "3", "--d", "2"]);
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["command"], "dims");
    let r = &v["result"];
    let blocks: Vec<(String, String, String)> = r["blocks"]
        .as_array()
        .unwrap()
        .iter()
        .map(|b| {
            (
                b["lambda"].to_string(),
                b["dimU"].as_str().unwrap().into(),
                b["dimV"].as_str().unwrap().into(),
            )
        })
        .collect();
    assert_eq!(
        blocks,
        [
            ("[3,0]".into(), "4".into(), "1".into()),
            ("[2,1]".into(), "2".into(), "2".into())
        ]
    );
    assert_eq!(r["completeness"]["sum"], "8");
    assert_eq!(r["completeness"]["holds"], true);
}

#[test]
fn rates_example_brackets_entropy() {
    let (_, v) = ok_json(&[
        "rates",
        "--source",
        "clone1",
        "--p",
        "0.7,0.3",
        "--r",
        "2",
        "--m",
        "200",
        "--epsilon",
        "0.01",
    ]);
    let row = &v["result"]["estimates"][0];
    let (ec, ed) = (row["Ec"].as_f64().unwrap(), row["Ed"].as_f64().unwrap());
    let h = v["result"]["entropy"].as_f64().unwrap();
    assert!((h - 0.8813).abs() < 1e-4);
    assert!(ed < h && h < ec, "Ed {ed}, H {h}, Ec {ec}");
    assert_eq!(row["n"], 200);
}

#[test]
fn exponent_example_respects_bound() {
    let (_, v) = ok_json(&["exponent", "--p", "0.7,0.3", "--r", "2", "--R", "1.0"]);
    let row = &v["result"]["rows"][0];
    let clone = row["clone_exponent"].as_f64().unwrap();
    assert!(clone > 0.0 && clone <= 0.0629, "{clone}");
    assert!((row["iid_exponent"].as_f64().unwrap() - 0.125769).abs() < 1e-5);
}

#[test]
fn json_outputs_round_trip() {
    for args in COMMANDS {
        let (text, v) = ok_json(args);
        let mut again = serde_json::to_string_pretty(&v).unwrap();
        again.push('\n');
        assert_eq!(again, text, "{args:?}");
        for key in [
            "schema_version",
            "tool_version",
            "command",
            "config",
            "seed",
            "wall_time_ms",
            "result",
        ] {
            assert!(v.get(key).is_some(), "{args:?} lacks {key}");
        }
    }
}

#[test]
fn csv_outputs_round_trip() {
    for args in COMMANDS {
        let mut full = args.to_vec();
        full.extend(["--format", "csv"]);
        let out = syment(&full);
        assert!(out.status.success(), "{full:?}");
        let text = String::from_utf8(out.stdout).unwrap();
        let (meta, body): (Vec<&str>, Vec<&str>) = text.lines().partition(|l| l.starts_with('#'));
        assert!(meta.iter().any(|l| l.starts_with("# schema_version=1")), "{full:?}");
        assert!(meta.iter().any(|l| l.starts_with("# wall_time_ms=")), "{full:?}");
        let body = body.join("\n") + "\n";
        let mut reader = csv::Reader::from_reader(body.as_bytes());
        let headers = reader.headers().unwrap().clone();
        let records: Vec<csv::StringRecord> = reader.records().map(Result::unwrap).collect();
        assert!(!records.is_empty(), "{full:?}");
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&headers).unwrap();
        for r in &records {
            w.write_record(r).unwrap();
        }
        assert_eq!(String::from_utf8(w.into_inner().unwrap()).unwrap(), body, "{full:?}");
    }
}

#[test]
fn spectrum_results_parse_with_their_schema() {
    let (_, v) = ok_json(COMMANDS[1]);
    let doc = BlockSpectrumDoc::from_json(&v["result"].to_string()).unwrap();
    assert_eq!(doc.spectrum.n, 5);
    doc.spectrum.validate().unwrap();
    let (_, v) = ok_json(COMMANDS[2]);
    let doc = WeightedSpectrumDoc::from_json(&v["result"].to_string()).unwrap();
    assert_eq!(doc.spectrum.n, 6);
    assert!((doc.spectrum.total_mass() - 1.0).abs() < 1e-9);
}

#[test]
fn protocol_is_deterministic_across_threads() {
    let base = [
        "protocol",
        "--p",
        "0.7,0.3",
        "--n",
        "40",
        "--kind",
        "distillation",
        "--trials",
        "20000",
        "--seed",
        "11",
    ];
    let dir = tempfile::tempdir().unwrap();
    let mut results = Vec::new();
    let mut trials = Vec::new();
    for threads in ["1", "4"] {
        let jsonl = dir.path().join(format!("t{threads}.jsonl"));
        let mut args = base.to_vec();
        args.extend(["--threads", threads, "--jsonl", jsonl.to_str().unwrap()]);
        let (_, v) = ok_json(&args);
        assert_eq!(v["seed"], 11);
        results.push(v["result"].clone());
        trials.push(std::fs::read_to_string(&jsonl).unwrap());
    }
    assert_eq!(results[0], results[1]);
    assert_eq!(trials[0], trials[1]);
    assert_eq!(trials[0].lines().count(), 20000);
    let mut other = base.to_vec();
    *other.last_mut().unwrap() = "12";
    assert_ne!(ok_json(&other).1["result"], results[0]);
}

#[test]
fn identical_configs_give_identical_payloads() {
    for args in COMMANDS {
        let (_, a) = ok_json(args);
        let (_, b) = ok_json(args);
        assert_eq!(a["result"], b["result"], "{args:?}");
        assert_eq!(a["config"], b["config"], "{args:?}");
    }
}

#[test]
fn exit_codes_follow_error_classes() {
    let cases: &[(&[&str], i32, &str)] = &[
        (&["dims", "--n", "3"], 2, "usage"),
        (&["bogus"], 2, "usage"),
        (&["rates", "--p", "0.5,0.6", "--n", "3"], 2, "invalid_argument"),
        (&["rates", "--p", "0.5,0.5", "--n", "3", "--epsilon", "1.5"], 2, "usage"),
        (
            &[
                "spectrum",
                "--source",
                "clone2",
                "--p",
                "0.5,0.3,0.2",
                "--m",
                "3",
                "--n",
                "1",
            ],
            2,
            "unsupported_dimension",
        ),
        (
            &["spectrum", "--p", "0.7,0.3", "--n", "300", "--max-types", "10"],
            3,
            "budget_exceeded",
        ),
        (&["exponent", "--p", "0.7,0.3", "--R", "1.5"], 4, "infeasible_rate"),
    ];
    for (args, code, kind) in cases {
        let out = syment(args);
        assert_eq!(out.status.code(), Some(*code), "{args:?}");
        let rec = error_record(&out);
        assert_eq!(rec["error"]["kind"], *kind, "{args:?}");
        assert_eq!(rec["exit_code"], *code);
        assert!(out.stdout.is_empty());
    }
}

#[test]
fn help_exits_zero() {
    let out = syment(&["--help"]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).contains("oracle-check"));
}

#[test]
fn oracle_check_reports_caps_without_failing() {
    let out = syment(&["oracle-check", "--scope", "clone2", "--dense-cap", "64"]);
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    let statuses: Vec<&str> = v["result"]["checks"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["status"].as_str().unwrap())
        .collect();
    assert!(statuses.contains(&"pass") && statuses.contains(&"cap_exceeded"));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(
        stderr.lines().all(|l| l.starts_with("PASS") || l.starts_with("CAP")),
        "{stderr}"
    );
}

#[test]
fn full_oracle_check_passes() {
    let (_, v) = ok_json(&["oracle-check"]);
    assert_eq!(v["result"]["passed"], true);
    let checks = v["result"]["checks"].as_array().unwrap();
    for scope in ["spectra", "clone1", "clone2", "exponent"] {
        assert!(checks.iter().any(|c| c["scope"] == scope));
    }
}

#[test]
fn config_run_matches_direct_invocation() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("nested/rates.json");
    let cfg = dir.path().join("job.toml");
    std::fs::write(
        &cfg,
        format!(
            "command = \"rates\"\n\n[params]\nsource = \"clone1\"\np = \"0.7,0.3\"\nr = 2\nm = 60\nepsilon = [0.01, 0.05]\n\n\
             [output]\npath = {:?}\nformat = \"json\"\n\n[budget]\nmax_types = 1000\n",
            out_path.to_str().unwrap()
        ),
    )
    .unwrap();
    let out = syment(&["run", "--config", cfg.to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let from_file: Value = serde_json::from_str(&std::fs::read_to_string(&out_path).unwrap()).unwrap();
    let (_, direct) = ok_json(&[
        "rates",
        "--source",
        "clone1",
        "--p",
        "0.7,0.3",
        "--r",
        "2",
        "--m",
        "60",
        "--epsilon",
        "0.01,0.05",
    ]);
    assert_eq!(from_file["result"], direct["result"]);
    assert_eq!(from_file["config"]["budget"]["max_types"], 1000);

    // command-line format override wins over [output]
    let out = syment(&[
        "run",
        "--config",
        cfg.to_str().unwrap(),
        "--format",
        "csv",
        "--output",
        "-",
    ]);
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("# schema_version=1"));

    std::fs::write(&cfg, "command = \"rates\"\n[params]\nbogus = 1\n").unwrap();
    assert_eq!(
        syment(&["run", "--config", cfg.to_str().unwrap()]).status.code(),
        Some(2)
    );
    assert_eq!(syment(&["run", "--config", "/nonexistent.toml"]).status.code(), Some(2));
}

#[test]
fn out_dir_variable_sets_default_destination() {
    let dir = tempfile::tempdir().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_syment"))
        .args(["dims", "--n", "2", "--d", "2", "--format", "csv"])
        .env("SYMENT_OUT_DIR", dir.path())
        .output()
        .unwrap();
    assert!(out.status.success() && out.stdout.is_empty());
    assert!(Path::new(&dir.path().join("dims.csv")).exists());
}
