use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use qgraph::fixtures;
use qgraph::graph::{complete_graph, ConventionChoice};
use qgraph::io::{read_matrix, write_graph, write_matrix};
use qgraph::linalg::ComplexMatrix;
use qgraph::oracle::random_state;
use qgraph::Partition;
use tempfile::TempDir;

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/tests/data").join(name)
}

fn qgraph(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qgraph")).args(args).output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

fn write_matrix_file(dir: &TempDir, name: &str, m: &ComplexMatrix) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, write_matrix(m)).unwrap();
    path
}

fn read_matrix_file(path: &Path) -> ComplexMatrix {
    read_matrix(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn build_writes_reference_matrix() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("f1.json");
    let run = qgraph(&["build", p(&data("pure_phase_product.json")), "--out", p(&out)]);
    assert_eq!(code(&run), 0);
    assert!(stdout(&run).contains("purity          1.0000000000e0"));
    assert!(read_matrix_file(&out).max_abs_diff(&fixtures::pure_phase_product()) <= 1e-12);
}

#[test]
fn build_rejects_signed_convention_on_complex_weights() {
    let run = qgraph(&["build", "--convention", "signed", p(&data("complex_complete.json"))]);
    assert_eq!(code(&run), 2);
    assert!(String::from_utf8_lossy(&run.stderr).contains("real weights"));
}

#[test]
fn build_complete_graph_on_eight_vertices() {
    let dir = TempDir::new().unwrap();
    let g = complete_graph(Partition::new(1, 2).unwrap(), 1.0).unwrap();
    let graph = dir.path().join("k8.json");
    std::fs::write(&graph, write_graph(&g, ConventionChoice::Auto)).unwrap();
    let out = dir.path().join("k8_matrix.json");
    let run = qgraph(&["--format", "structured", "build", p(&graph), "--out", p(&out)]);
    assert_eq!(code(&run), 0);
    let summary: serde_json::Value = serde_json::from_str(&stdout(&run)).unwrap();
    assert_eq!(summary["dim"], 8);
    assert!((summary["trace"].as_f64().unwrap() - 1.0).abs() < 1e-12);
    let m = read_matrix_file(&out);
    assert_eq!(m.rows(), 8);
}

#[test]
fn check_pure_on_phase_product() {
    let run = qgraph(&["check", "pure", p(&data("pure_phase_product.json"))]);
    assert_eq!(code(&run), 0);
    let run = qgraph(&["check", "pure", p(&data("complex_complete.json"))]);
    assert_eq!(code(&run), 1);
}

#[test]
fn check_discord_lists_certificates() {
    let run = qgraph(&["--format", "structured", "check", "discord", p(&data("complex_complete.json"))]);
    assert_eq!(code(&run), 0);
    let report: serde_json::Value = serde_json::from_str(&stdout(&run)).unwrap();
    assert_eq!(report["verdict"], "certified_zero");
    let fired: Vec<&str> = report["certificates"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|e| e["passed"] == true)
        .map(|e| e["name"].as_str().unwrap())
        .collect();
    for name in [
        "two_qubit_block_identity",
        "hermitian_part_commutation",
        "block_products_hermitian",
        "normal_commuting_blocks",
    ] {
        assert!(fired.contains(&name), "{name} missing from {fired:?}");
    }
    let keys: Vec<&str> = report.as_object().unwrap().keys().map(String::as_str).collect();
    for key in ["verdict", "certificates", "convention", "measured_side", "tolerances"] {
        assert!(keys.contains(&key));
    }
}

#[test]
fn check_discord_on_random_state_fails() {
    let dir = TempDir::new().unwrap();
    let rho = random_state(7, 4).unwrap();
    let file = write_matrix_file(&dir, "random.json", rho.matrix());
    let run = qgraph(&["check", "discord", p(&file)]);
    assert_eq!(code(&run), 1);
    assert!(stdout(&run).starts_with("verdict        not_certified"));
}

#[test]
fn measured_side_selects_the_certified_factor() {
    let graph = data("block_diagonal_state.json");
    assert_eq!(code(&qgraph(&["--measured", "A", "check", "discord", p(&graph)])), 0);
}

#[test]
fn with_oracle_adds_both_sides() {
    let dir = TempDir::new().unwrap();
    let file = write_matrix_file(&dir, "bd.json", &fixtures::bell_diagonal(0.7, 0.0, 0.0));
    let run = qgraph(&["check", "discord", p(&file), "--with-oracle"]);
    assert_eq!(code(&run), 0);
    assert!(stdout(&run).contains("note: oracle D_A = "));
}

#[test]
fn psd_check_reports_negative_eigenvalue() {
    let dir = TempDir::new().unwrap();
    let file = write_matrix_file(&dir, "f3.json", &fixtures::single_edge_pure());
    let out = dir.path().join("f3_partial.json");
    assert_eq!(code(&qgraph(&["gate", p(&file), "partial(q=1)", "--out", p(&out)])), 0);
    assert_eq!(code(&qgraph(&["check", "psd", p(&file)])), 0);
    assert_eq!(code(&qgraph(&["check", "psd", p(&out)])), 1);
    // The partially transposed state is not a density operator at all.
    assert_eq!(code(&qgraph(&["check", "discord", p(&out)])), 3);
}

#[test]
fn identity_gate_keeps_canonical_file() {
    let dir = TempDir::new().unwrap();
    let file = write_matrix_file(&dir, "f1.json", &fixtures::pure_phase_product());
    let out = dir.path().join("out.json");
    assert_eq!(code(&qgraph(&["gate", p(&file), "I(0)", "--out", p(&out)])), 0);
    assert_eq!(std::fs::read(&file).unwrap(), std::fs::read(&out).unwrap());
}

#[test]
fn partial_gate_twice_is_identity() {
    let dir = TempDir::new().unwrap();
    let file = write_matrix_file(&dir, "f5.json", &fixtures::bipartite_four_edge());
    let run = qgraph(&["gate", p(&file), "partial(q=1),partial(q=1)"]);
    assert_eq!(code(&run), 0);
    assert_eq!(stdout(&run), std::fs::read_to_string(&file).unwrap());
}

#[test]
fn hadamard_twice_acts_trivially() {
    let dir = TempDir::new().unwrap();
    let f6 = fixtures::bipartite_cube();
    let file = write_matrix_file(&dir, "f6.json", &f6);
    let run = qgraph(&["gate", p(&file), "H(0),H(0)"]);
    assert_eq!(code(&run), 0);
    assert!(read_matrix(&stdout(&run)).unwrap().max_abs_diff(&f6) <= 1e-12);
}

#[test]
fn bad_gate_word_is_an_input_error() {
    let dir = TempDir::new().unwrap();
    let file = write_matrix_file(&dir, "f1.json", &fixtures::pure_phase_product());
    assert_eq!(code(&qgraph(&["gate", p(&file), "Q(0)"])), 2);
    assert_eq!(code(&qgraph(&["gate", p(&file), "CX(0,0)"])), 2);
    assert_eq!(code(&qgraph(&["gate", p(&file), "X(5)"])), 2);
}

#[test]
fn oracle_exit_codes() {
    let dir = TempDir::new().unwrap();
    let bd = write_matrix_file(&dir, "bd.json", &fixtures::bell_diagonal(0.7, 0.0, 0.0));
    let werner = write_matrix_file(&dir, "werner.json", &fixtures::bell_diagonal(-0.5, -0.5, -0.5));
    let product = write_matrix_file(&dir, "product.json", &fixtures::signed_product());
    let big = write_matrix_file(&dir, "big.json", &fixtures::bipartite_cube());
    assert_eq!(code(&qgraph(&["oracle", p(&bd)])), 0);
    assert_eq!(code(&qgraph(&["oracle", p(&werner)])), 1);
    assert_eq!(code(&qgraph(&["oracle", p(&product)])), 0);
    assert_eq!(code(&qgraph(&["oracle", p(&big)])), 2);
    let run = qgraph(&["--format", "structured", "oracle", p(&werner), "--n-theta", "32", "--passes", "2"]);
    let est: serde_json::Value = serde_json::from_str(&stdout(&run)).unwrap();
    assert_eq!(est["grid"], serde_json::json!([32, 128]));
    assert_eq!(est["refinement_passes"], 2);
    assert!(est["value"].as_f64().unwrap() >= 0.02);
}

#[test]
fn input_errors_exit_two() {
    let dir = TempDir::new().unwrap();
    let missing = dir.path().join("missing.json");
    assert_eq!(code(&qgraph(&["check", "psd", p(&missing)])), 2);
    let broken = dir.path().join("broken.json");
    std::fs::write(&broken, "{\"dim\": 2, \"entries\": [[1, 0]]}").unwrap();
    let run = qgraph(&["check", "psd", p(&broken)]);
    assert_eq!(code(&run), 2);
    assert!(String::from_utf8_lossy(&run.stderr).contains("entries"));
    let bad_edge = dir.path().join("edge.json");
    std::fs::write(
        &bad_edge,
        r#"{"qubits": 2, "partition": [1, 1], "edges": [{"u": 5, "v": 5, "w": [1, 0]}], "loops": []}"#,
    )
    .unwrap();
    assert_eq!(code(&qgraph(&["build", p(&bad_edge)])), 2);
    assert_eq!(code(&qgraph(&["--tol", "-1", "check", "psd", p(&data("pure_phase_product.json"))])), 2);
    assert_eq!(code(&qgraph(&["check", "discord", p(&data("pure_phase_product.json")), "--partition", "2,1"])), 2);
}

#[test]
fn non_psd_input_is_a_numerical_error() {
    let dir = TempDir::new().unwrap();
    let m = ComplexMatrix::from_real_rows(&[[1.5, 0.0], [0.0, -0.5]]).unwrap();
    let file = write_matrix_file(&dir, "neg.json", &m);
    assert_eq!(code(&qgraph(&["check", "pure", p(&file)])), 3);
    assert_eq!(code(&qgraph(&["check", "psd", p(&file)])), 1);
}

#[test]
fn matrix_partition_flag() {
    let dir = TempDir::new().unwrap();
    let file = write_matrix_file(&dir, "f8.json", &fixtures::parity_graph_state());
    let run = qgraph(&["--format", "structured", "check", "discord", p(&file), "--partition", "2,1"]);
    assert_eq!(code(&run), 0);
    let report: serde_json::Value = serde_json::from_str(&stdout(&run)).unwrap();
    assert_eq!(report["verdict"], "certified_zero");
}

#[test]
fn structured_output_is_deterministic() {
    let graph = data("bipartite_cube.json");
    for args in [
        vec!["--format", "structured", "check", "discord", p(&graph), "--with-oracle"],
        vec!["--format", "structured", "check", "psd", p(&graph)],
        vec!["--format", "structured", "build", p(&graph)],
    ] {
        let a = qgraph(&args);
        let b = qgraph(&args);
        assert_eq!(a.stdout, b.stdout);
        serde_json::from_slice::<serde_json::Value>(&a.stdout).expect("single document");
    }
}

#[test]
fn commands_compose_through_files() {
    let dir = TempDir::new().unwrap();
    let built = dir.path().join("built.json");
    let gated = dir.path().join("gated.json");
    assert_eq!(code(&qgraph(&["build", p(&data("single_edge_pure.json")), "--out", p(&built)])), 0);
    assert_eq!(code(&qgraph(&["gate", p(&built), "CX(0,1)", "--out", p(&gated)])), 0);
    // CX maps (|00> + i|11>)/sqrt2 to the product (|0> + i|1>)|0>/sqrt2.
    assert_eq!(code(&qgraph(&["check", "discord", p(&gated)])), 0);
    assert_eq!(code(&qgraph(&["oracle", p(&gated)])), 0);
    assert_eq!(code(&qgraph(&["oracle", p(&built)])), 1);
}
