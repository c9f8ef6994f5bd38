//! End-to-end tests of the `jel` binary: envelope shape, determinism, file
//! formats and exit codes.

use std::process::{Command, Output};

use serde_json::Value;

fn jel(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_jel"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn jel_env(args: &[&str], key: &str, value: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_jel"))
        .args(args)
        .env(key, value)
        .output()
        .expect("binary runs")
}

fn parse_stdout(out: &Output) -> Value {
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is one JSON document")
}

#[test]
fn min_support_envelope_and_determinism() {
    let out = jel(&["min-support", "--n", "9", "--w", "3"]);
    let v = parse_stdout(&out);
    assert_eq!(v["command"], "min-support");
    assert_eq!(v["result"]["value"], "39");
    assert_eq!(
        v["result"]["attained_by"],
        serde_json::json!(["TwoValued(3)"])
    );
    assert_eq!(v["result"]["pair_branch"], "42");

    let again = jel(&["min-support", "--n", "9", "--w", "3"]);
    assert_eq!(out.stdout, again.stdout, "byte-identical reruns");
}

#[test]
fn min_support_with_oracle() {
    let out = jel(&[
        "min-support",
        "--n",
        "8",
        "--w",
        "2",
        "--oracle",
        "--radius",
        "4",
    ]);
    let v = parse_stdout(&out);
    assert_eq!(v["result"]["value"], "12");
    assert_eq!(v["result"]["oracle"]["value"], "12");
    assert_eq!(v["result"]["oracle"]["matches"], true);
    assert!(v["provenance"]
        .as_array()
        .unwrap()
        .iter()
        .any(|p| p == "brute-force-oracle"));
}

#[test]
fn eberlein_and_eigenvalue_values() {
    let v = parse_stdout(&jel(&[
        "eberlein", "--k", "3", "--i", "2", "--w", "3", "--n", "12",
    ]));
    assert_eq!(v["result"]["value"], "7");
    let v = parse_stdout(&jel(&["eigenvalue", "--i", "1", "--n", "10", "--w", "3"]));
    assert_eq!(v["result"]["value"], "11");
}

#[test]
fn scan_csv_format() {
    let dir = tempfile::tempdir().unwrap();
    let csv_path = dir.path().join("scan.csv");
    let out = jel(&[
        "scan",
        "--n-min",
        "6",
        "--n-max",
        "20",
        "--csv",
        csv_path.to_str().unwrap(),
    ]);
    let v = parse_stdout(&out);
    assert_eq!(v["result"]["violations"], serde_json::json!([]));

    let csv = std::fs::read_to_string(&csv_path).unwrap();
    let mut lines = csv.lines();
    assert_eq!(
        lines.next().unwrap(),
        "n,w,value,winner,pair_branch,twovalued_k,twovalued_value"
    );
    let rows: Vec<&str> = lines.collect();
    assert_eq!(
        rows.len() as u64,
        v["result"]["row_count"].as_u64().unwrap()
    );
    assert_eq!(rows[0], "6,2,6,TwoValued(3),8,3,6");
    assert!(rows.contains(&"8,2,12,PairVector|TwoValued(4),12,4,12"));
    // Rows sorted by (n, w).
    let keys: Vec<(u32, u32)> = rows
        .iter()
        .map(|r| {
            let mut it = r.split(',');
            (
                it.next().unwrap().parse().unwrap(),
                it.next().unwrap().parse().unwrap(),
            )
        })
        .collect();
    let mut sorted = keys.clone();
    sorted.sort_unstable();
    assert_eq!(keys, sorted);
}

#[test]
fn partition_roundtrip_via_files() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("odd4.partition");
    let out = jel(&[
        "build-partition",
        "--kind",
        "odd",
        "--r",
        "4",
        "--out",
        path.to_str().unwrap(),
    ]);
    let v = parse_stdout(&out);
    assert_eq!(v["result"]["r"], 6);
    assert_eq!(
        v["result"]["quotient"][0],
        serde_json::json!([3, 6, 6, 0, 3, 0])
    );

    let verify = parse_stdout(&jel(&[
        "verify-partition",
        "--file",
        path.to_str().unwrap(),
    ]));
    assert_eq!(verify["result"]["equitable"], true);
    assert_eq!(verify["result"]["quotient"], v["result"]["quotient"]);

    // Corrupt one assignment: swap a vertex into another part.
    let text = std::fs::read_to_string(&path).unwrap();
    let mangled = text.replace("\n0\t1\n", "\n0\t3\n");
    assert_ne!(text, mangled);
    std::fs::write(&path, mangled).unwrap();
    let bad = parse_stdout(&jel(&[
        "verify-partition",
        "--file",
        path.to_str().unwrap(),
    ]));
    assert_eq!(bad["result"]["equitable"], false);
    assert!(bad["result"]["witness"]["vertex"].is_number());
}

#[test]
fn build_partition_inlines_assignments_without_out() {
    let v = parse_stdout(&jel(&["build-partition", "--kind", "even", "--r", "4"]));
    let assignments = v["result"]["assignments"].as_array().unwrap();
    assert_eq!(assignments.len(), 56); // C(8,3)
    assert_eq!(v["result"]["quotient"], serde_json::json!([[9, 6], [8, 7]]));
}

#[test]
fn search_exhaustive_with_witness_export() {
    let dir = tempfile::tempdir().unwrap();
    let wpath = dir.path().join("witness.json");
    let out = jel(&[
        "search-negatives",
        "--i",
        "1",
        "--n",
        "5",
        "--w",
        "2",
        "--exhaustive",
        "--s-max",
        "3",
        "--witness-out",
        wpath.to_str().unwrap(),
    ]);
    let v = parse_stdout(&out);
    assert_eq!(v["result"]["value"]["exact"], 3);
    assert_eq!(v["result"]["method"], "exhaustive");
    let witness: Value = serde_json::from_str(&std::fs::read_to_string(&wpath).unwrap()).unwrap();
    assert_eq!(witness["n"], 5);
    assert_eq!(witness["lambda"], 1);
    assert_eq!(witness["entries"].as_array().unwrap().len(), 10);
    assert_eq!(v["result"]["witness"], witness);
}

#[test]
fn search_random_deterministic_by_seed() {
    let args = [
        "search-negatives",
        "--i",
        "1",
        "--n",
        "6",
        "--w",
        "3",
        "--random",
        "--iters",
        "10",
        "--seed",
        "11",
    ];
    let a = jel(&args);
    let b = jel(&args);
    let v = parse_stdout(&a);
    assert_eq!(v["result"]["value"]["upper_bound"], 10);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn scan_output_independent_of_thread_count() {
    let one = jel(&["scan", "--n-min", "6", "--n-max", "40", "--threads", "1"]);
    let two = jel(&["scan", "--n-min", "6", "--n-max", "40", "--threads", "2"]);
    let default = jel(&["scan", "--n-min", "6", "--n-max", "40"]);
    assert_eq!(one.stdout, two.stdout);
    assert_eq!(one.stdout, default.stdout);
}

#[test]
fn exit_codes() {
    // Unknown flag: 1.
    let out = jel(&["min-support", "--nope", "3"]);
    assert_eq!(out.status.code(), Some(1));
    // Regime refusal: 2.
    let out = jel(&["min-support", "--n", "5", "--w", "3"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("regime"));
    // Missing file: 1.
    let out = jel(&["verify-partition", "--file", "/nonexistent/path"]);
    assert_eq!(out.status.code(), Some(1));
    // Help: 0.
    let out = jel(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn vertex_cap_env_override() {
    // C(8,2) = 28 fits the default exhaustive cap but not a lowered one.
    let ok = jel(&[
        "search-negatives",
        "--i",
        "1",
        "--n",
        "8",
        "--w",
        "2",
        "--exhaustive",
        "--s-max",
        "1",
    ]);
    assert!(ok.status.success());
    let refused = jel_env(
        &[
            "search-negatives",
            "--i",
            "1",
            "--n",
            "8",
            "--w",
            "2",
            "--exhaustive",
            "--s-max",
            "1",
        ],
        "JEL_MAX_VERTICES",
        "10",
    );
    assert_eq!(refused.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&refused.stderr).contains("cap"));
}

#[test]
fn bounds_with_user_partition_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("odd4.partition");
    jel(&[
        "build-partition",
        "--kind",
        "odd",
        "--r",
        "4",
        "--out",
        path.to_str().unwrap(),
    ]);
    let v = parse_stdout(&jel(&[
        "bounds",
        "--i",
        "2",
        "--n",
        "9",
        "--w",
        "3",
        "--partition",
        path.to_str().unwrap(),
    ]));
    assert_eq!(v["result"]["best_lower"], "9");
    assert_eq!(v["result"]["best_upper"], "28");
    assert!(v["result"]["upper_bounds"]
        .as_array()
        .unwrap()
        .iter()
        .any(|b| b["provenance"] == "user-partition"));
}
