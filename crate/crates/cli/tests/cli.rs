use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;
use weyl_pauli::basis::{self, PartitionRecord};
use weyl_pauli::export;
use weyl_pauli::mub::HadamardMatrix;
use weyl_pauli::weyl::DenseMatrix;
use weyl_pauli::Phase;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_weylpauli"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 output")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("JSON on stdout")
}

fn golden(name: &str) -> Value {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name);
    serde_json::from_str(&std::fs::read_to_string(path).expect("golden file")).expect("golden JSON")
}

/// Entries are written as in print: "0", "1", "-1", "q", "q^k".
fn golden_entry(text: &str, d: u32) -> Option<Phase> {
    match text {
        "0" => None,
        "1" => Some(Phase::one(d)),
        "-1" => Some(Phase::new(d as i64, d)),
        "q" => Some(Phase::q_pow(1, d)),
        _ => {
            let k: i64 = text
                .strip_prefix("q^")
                .expect("q power")
                .parse()
                .expect("integer power");
            Some(Phase::q_pow(k, d))
        }
    }
}

/// `(a, b, rows)` with `None` for zero entries.
type GoldenMatrix = (i64, i64, Vec<Vec<Option<Phase>>>);

fn golden_matrices(name: &str) -> (u32, Vec<GoldenMatrix>) {
    let g = golden(name);
    let d = g["d"].as_u64().unwrap() as u32;
    let matrices = g["matrices"]
        .as_array()
        .unwrap()
        .iter()
        .map(|m| {
            let rows = m["rows"]
                .as_array()
                .unwrap()
                .iter()
                .map(|r| {
                    r.as_array()
                        .unwrap()
                        .iter()
                        .map(|e| golden_entry(e.as_str().unwrap(), d))
                        .collect()
                })
                .collect();
            (m["a"].as_i64().unwrap(), m["b"].as_i64().unwrap(), rows)
        })
        .collect();
    (d, matrices)
}

fn check_golden_operators(name: &str) {
    let (d, matrices) = golden_matrices(name);
    for (a, b, rows) in matrices {
        let op = basis::u_ab(d, a, b).unwrap();
        let mut generated = vec![vec![None; d as usize]; d as usize];
        for col in 0..d {
            let (row, phase) = op.apply_basis(col);
            generated[row as usize][col as usize] = Some(phase);
        }
        assert_eq!(generated, rows, "u_{a}{b} at d = {d}");
    }
}

fn dense_from_golden(rows: &[Vec<Option<Phase>>]) -> DenseMatrix {
    DenseMatrix::from_fn(rows.len(), |i, j| rows[i][j].map(Phase::to_complex).unwrap_or_default())
}

#[test]
fn pauli_matrices_match_qubit_golden() {
    check_golden_operators("example1.json");
}

#[test]
fn pauli_matrices_match_qutrit_golden() {
    check_golden_operators("example2.json");
}

#[test]
fn dense_weyl_pair_matches_golden() {
    for name in ["example1.json", "example2.json"] {
        let (d, matrices) = golden_matrices(name);
        let out = run(&["weyl", "pair", "--d", &d.to_string(), "--format", "dense-csv"]);
        assert!(out.status.success());
        let parsed = export::from_csv(&stdout(&out)).unwrap();
        let find = |a, b| dense_from_golden(&matrices.iter().find(|m| (m.0, m.1) == (a, b)).unwrap().2);
        assert_eq!(parsed[0].0, "X");
        assert_eq!(parsed[0].1.max_abs_diff(&find(1, 0)), 0.0);
        assert_eq!(parsed[1].0, "Z");
        assert_eq!(parsed[1].1.max_abs_diff(&find(0, 1)), 0.0);
    }
}

#[test]
fn exact_pair_encoding() {
    let out = run(&["weyl", "pair", "--d", "3", "--format", "exact-json"]);
    let v = json(&out);
    assert_eq!(v["schema"], 1);
    assert_eq!(
        v["data"]["x"],
        serde_json::json!({"d": 3, "tau_exp": 0, "shift": 1, "clock": 0})
    );
    assert_eq!(
        v["data"]["z"],
        serde_json::json!({"d": 3, "tau_exp": 0, "shift": 0, "clock": 1})
    );
}

#[test]
fn prime_partition_matches_golden() {
    let out = run(&["basis", "partition", "--d", "7"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["complete"], true);
    assert_eq!(v["data"], golden("example3.json"));
}

#[test]
fn composite_partition_is_incomplete() {
    let out = run(&["basis", "partition", "--d", "4"]);
    assert_eq!(out.status.code(), Some(2));
    let v = json(&out);
    assert_eq!(v["complete"], false);
    assert_eq!(v["data"], golden("counterexample.json"));
    assert!(!out.stderr.is_empty());
}

#[test]
fn spread_sets_match_golden() {
    let record = basis::su4_spread_sets().record();
    let expected: PartitionRecord = serde_json::from_value(golden("spread.json")).unwrap();
    assert_eq!(record, expected);
    assert!(basis::su4_spread_check().passed());
}

#[test]
fn tensor_partition_is_complete() {
    let out = run(&["basis", "partition", "--tensor", "2,2"]);
    assert_eq!(out.status.code(), Some(0));
    let record: PartitionRecord = serde_json::from_value(json(&out)["data"].clone()).unwrap();
    assert_eq!(record.classes.len(), 5);
    let partition = basis::CartanPartition::<basis::TensorIndex>::from_record(&record).unwrap();
    let universe = basis::tensor_indices(&[2, 2]).unwrap();
    assert!(partition.validate(&universe).is_valid(5, 3));
}

#[test]
fn hadamard_json_roundtrip_is_byte_identical() {
    let out = run(&["mub", "hadamard", "--d", "6", "--a", "5"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let h: HadamardMatrix = export::from_json(&text).unwrap();
    assert_eq!(export::to_json(&h).unwrap(), text);
}

#[test]
fn hadamard_csv_contains_i() {
    let out = run(&["mub", "hadamard", "--d", "2", "--a", "1", "--format", "csv"]);
    let text = stdout(&out);
    assert_eq!(text.lines().next(), Some("matrix,row,col,re,im"));
    assert!(text
        .lines()
        .any(|l| l.ends_with("0.0000000000000000e0,1.0000000000000000e0")));
}

#[test]
fn partition_json_roundtrip() {
    let out = run(&["basis", "partition", "--d", "7"]);
    let record: PartitionRecord = export::from_json(&stdout(&out)).unwrap();
    let partition = basis::CartanPartition::<basis::PauliIndex>::from_record(&record).unwrap();
    assert_eq!(partition, basis::cartan_partition_prime(7).unwrap());
}

#[test]
fn verify_group_two() {
    let out = run(&["verify", "group", "--d", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let check = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["name"] == "class_count")
        .unwrap()
        .clone();
    assert_eq!(check["detail"], "classes=5");
    assert_eq!(v["overall"], "pass");
}

#[test]
fn verify_mub_eleven() {
    let out = run(&["verify", "mub", "--p", "11"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let pairs: Vec<&Value> = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["name"].as_str().unwrap().starts_with("unbiased:"))
        .collect();
    assert_eq!(pairs.len(), 66);
    assert!(pairs.iter().all(|c| c["status"] == "pass"));
}

#[test]
fn verify_failure_sets_exit_code() {
    let out = run(&["verify", "group", "--d", "4"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["overall"], "fail");
    assert!(String::from_utf8_lossy(&out.stderr).contains("class_count"));
}

#[test]
fn outputs_are_deterministic() {
    for args in [
        &["verify", "all", "--d", "3"][..],
        &["group", "classes", "--d", "5"][..],
        &["mub", "family", "--p", "5"][..],
        &["basis", "structure", "--d", "3"][..],
    ] {
        let first = run(args);
        assert!(first.status.success(), "{args:?}");
        assert_eq!(first.stdout, run(args).stdout, "{args:?}");
    }
}

#[test]
fn timing_is_opt_in() {
    let plain = json(&run(&["hw", "check"]));
    assert!(plain.get("timing").is_none());
    let timed = json(&run(&["hw", "check", "--timing"]));
    assert!(timed["timing"]["total_seconds"].is_number());
    let mut stripped = timed.clone();
    stripped.as_object_mut().unwrap().remove("timing");
    assert_eq!(stripped, plain);
}

#[test]
fn mub_family_respects_tolerance() {
    let ok = run(&["mub", "family", "--p", "7"]);
    assert_eq!(ok.status.code(), Some(0));
    let v = json(&ok);
    assert_eq!(v["data"]["bases"].as_array().unwrap().len(), 8);
    assert_eq!(v["data"]["deviations"].as_array().unwrap().len(), 8);
    let strict = run(&["mub", "family", "--p", "7", "--tolerance", "1e-300"]);
    assert_eq!(strict.status.code(), Some(1));
}

#[test]
fn group_commands() {
    let classes = json(&run(&["group", "classes", "--d", "3"]));
    assert_eq!(classes["data"]["class_count"], 11);
    assert_eq!(classes["data"]["classes"][0], serde_json::json!([[0, 0, 0]]));
    let cent = json(&run(&["group", "centralizer", "--d", "3", "--elem", "0,1,0"]));
    assert_eq!(cent["data"]["size"], 9);
    let subs = json(&run(&["group", "subgroups", "--d", "2"]));
    let diagonal = subs["data"]["subgroups"]
        .as_array()
        .unwrap()
        .iter()
        .find(|s| s["name"] == "diagonal")
        .unwrap()
        .clone();
    assert_eq!(diagonal["tag"], "generic_abelian");
    let irreps = json(&run(&["group", "irreps", "--d", "3"]));
    assert_eq!(irreps["data"]["burnside_holds"], true);
}

#[test]
fn weyl_commands() {
    let su2 = run(&["weyl", "su2-check", "--d", "5"]);
    assert_eq!(su2.status.code(), Some(0));
    let vra = json(&run(&["weyl", "vra", "--d", "4", "--r", "1", "--a", "2"]));
    assert!(vra["data"]["max_residual"].as_f64().unwrap() < 1e-10);
    let fourier = json(&run(&["weyl", "fourier", "--d", "6"]));
    assert!(fourier["data"]["order_four_residual"].as_f64().unwrap() < 1e-10);
}

#[test]
fn errors_exit_with_one() {
    let capped = run(&["group", "classes", "--d", "20"]);
    assert_eq!(capped.status.code(), Some(1));
    assert!(capped.stdout.is_empty());
    assert!(String::from_utf8_lossy(&capped.stderr).contains("cap"));
    assert_eq!(run(&["group", "classes"]).status.code(), Some(1));
    assert_eq!(run(&["verify", "nonsense"]).status.code(), Some(1));
    assert_eq!(run(&["mub", "family", "--p", "6"]).status.code(), Some(1));
    assert_eq!(
        run(&["group", "classes", "--d", "20", "--max-d", "20"]).status.code(),
        Some(0)
    );
}
