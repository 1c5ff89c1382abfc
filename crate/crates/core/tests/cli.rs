use std::path::Path;
use std::process::{Command, Output};

use sicpovm::fixtures::{hesse_fiducial, qubit_fiducial};
use sicpovm::io::{write_json, FiducialFile, OrbitFile, ReportFile};
use sicpovm::linalg::StateVector;
use sicpovm::verify::verify;
use sicpovm::weyl_heisenberg::orbit;

fn run(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sicpovm"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write_fiducial(dir: &Path, name: &str, state: &StateVector) {
    write_json(&dir.join(name), &FiducialFile::new(state, None)).unwrap();
}

#[test]
fn search_writes_a_fiducial_that_verifies() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(dir.path(), &["search", "--dim", "3", "--no-timestamp", "--out", "f.json"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let text = stdout(&o);
    assert!(text.contains("converged=true"));
    assert!(text.contains("completeness_rank=9 pass=true"));
    assert!(text.ends_with("wrote f.json\n"));

    let file = FiducialFile::load(&dir.path().join("f.json")).unwrap();
    let meta = file.metadata.as_ref().unwrap();
    assert_eq!((meta.seed, meta.restarts, meta.converged), (Some(1), Some(50), Some(true)));
    assert!(meta.timestamp.is_none());

    // The residuals printed by `verify` match a fresh in-process check.
    let v = run(dir.path(), &["verify", "f.json"]);
    assert_eq!(v.status.code(), Some(0));
    let report = ReportFile::from_json(&stdout(&v)).unwrap();
    let local = verify(&orbit(&file.state().unwrap()), 1e-9).unwrap();
    assert!((report.verification.equiangularity_residual - local.equiangularity_residual).abs() < 1e-12);
    assert!((report.verification.identity_residual - local.identity_residual).abs() < 1e-12);
    assert_eq!(report.verification.completeness_rank, 9);
    assert!(report.simplex.regular && report.simplex.on_outsphere);
    assert!(report.vertices.is_none());
}

#[test]
fn default_output_name_and_timestamp() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(dir.path(), &["search", "--dim", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let file = FiducialFile::load(&dir.path().join("fiducial_d2.json")).unwrap();
    assert!(file.metadata.unwrap().timestamp.is_some());
}

#[test]
fn no_timestamp_runs_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["search", "--dim", "4", "--seed", "7", "--no-timestamp", "--out", "a.json"];
    let first = run(dir.path(), &args);
    let bytes_a = std::fs::read(dir.path().join("a.json")).unwrap();
    let second = run(dir.path(), &args);
    let bytes_b = std::fs::read(dir.path().join("a.json")).unwrap();
    assert_eq!(first.stdout, second.stdout);
    assert_eq!(bytes_a, bytes_b);
}

#[test]
fn unconverged_search_exits_2_and_writes_side_file() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(dir.path(), &["search", "--dim", "4", "--restarts", "1", "--out", "f.json"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(!dir.path().join("f.json").exists());
    let side = FiducialFile::load(&dir.path().join("f.unconverged.json")).unwrap();
    assert_eq!(side.metadata.unwrap().converged, Some(false));
    assert!(!String::from_utf8_lossy(&o.stderr).is_empty());
}

#[test]
fn verify_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path();
    write_fiducial(p, "qubit.json", &qubit_fiducial());
    write_fiducial(p, "basis.json", &StateVector::basis(3, 0).unwrap());
    std::fs::write(
        p.join("short.json"),
        r#"{"format": "sicpovm-fiducial/1", "dim": 2, "fiducial": [0.9, 0.0, 0.0, 0.0]}"#,
    )
    .unwrap();
    std::fs::write(p.join("broken.json"), "{\n  \"dim\": 2,\n").unwrap();

    assert_eq!(run(p, &["verify", "qubit.json"]).status.code(), Some(0));
    assert_eq!(run(p, &["verify", "basis.json"]).status.code(), Some(1));
    assert_eq!(run(p, &["verify", "short.json"]).status.code(), Some(65));
    assert_eq!(run(p, &["verify", "broken.json"]).status.code(), Some(65));
    assert_eq!(run(p, &["verify", "missing.json"]).status.code(), Some(74));
    assert_eq!(run(p, &["verify", "qubit.json", "--tol", "0"]).status.code(), Some(64));
    assert_eq!(run(p, &["verify"]).status.code(), Some(64));
}

#[test]
fn basis_vector_report_shows_failure() {
    let dir = tempfile::tempdir().unwrap();
    write_fiducial(dir.path(), "basis.json", &StateVector::basis(3, 0).unwrap());
    let o = run(dir.path(), &["verify", "basis.json"]);
    let report = ReportFile::from_json(&stdout(&o)).unwrap();
    assert!(!report.verification.pass);
    assert!(report.verification.max_overlap_ij.is_some());
    assert!(report.verification.completeness_rank < 9);
}

#[test]
fn orbit_command_lists_n_squared_states() {
    let dir = tempfile::tempdir().unwrap();
    write_fiducial(dir.path(), "hesse.json", &hesse_fiducial());
    let o = run(dir.path(), &["orbit", "hesse.json"]);
    assert_eq!(o.status.code(), Some(0));
    let file: OrbitFile = serde_json::from_str(&stdout(&o)).unwrap();
    let ens = file.ensemble().unwrap();
    assert_eq!(ens.len(), 9);
    assert!(verify(&ens, 1e-9).unwrap().pass);

    assert_eq!(run(dir.path(), &["orbit", "hesse.json", "--out", "o.json"]).status.code(), Some(0));
    let text = std::fs::read_to_string(dir.path().join("o.json")).unwrap();
    assert_eq!(text, stdout(&o));
}

#[test]
fn report_command_adds_vertices() {
    let dir = tempfile::tempdir().unwrap();
    write_fiducial(dir.path(), "q.json", &qubit_fiducial());
    let o = run(dir.path(), &["report", "q.json", "--out", "r.json"]);
    assert_eq!(o.status.code(), Some(0));
    let report = ReportFile::from_json(&std::fs::read_to_string(dir.path().join("r.json")).unwrap()).unwrap();
    let vertices = report.vertices.unwrap();
    assert_eq!(vertices.len(), 4);
    assert!(vertices.iter().all(|v| v.len() == 4));
    // Vertices of the qubit SIC: unit trace coordinate and a tetrahedron.
    for v in &vertices {
        assert!((v[0] - 1.0 / 2f64.sqrt()).abs() < 1e-14);
    }
}

#[test]
fn moment_demo_output() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(dir.path(), &["moment-demo", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("e0 -> (0.5, 0, 0)"));
    assert!(text.contains("e1 -> (0, 0.5, 0)"));
    assert!(text.contains("e2 -> (0, 0, 0.5)"));
    assert!(text.contains("min 0.5 max 0.5 regular=true"));
    assert_eq!(run(dir.path(), &["moment-demo", "0"]).status.code(), Some(64));
    assert_eq!(run(dir.path(), &["moment-demo", "x"]).status.code(), Some(64));
}

#[test]
fn unwritable_output_exits_74() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(dir.path(), &["search", "--dim", "2", "--out", "no/such/dir/f.json"]);
    assert_eq!(o.status.code(), Some(74));
}

#[test]
fn committed_search_outputs_are_reproducible() {
    let data = Path::new(env!("CARGO_MANIFEST_DIR")).join("data");
    let dir = tempfile::tempdir().unwrap();
    for n in [2, 3] {
        let name = format!("search_d{n}.json");
        let o = run(
            dir.path(),
            &["search", "--dim", &n.to_string(), "--seed", "1", "--restarts", "50", "--no-timestamp", "--out", &name],
        );
        assert_eq!(o.status.code(), Some(0));
        let fresh = std::fs::read(dir.path().join(&name)).unwrap();
        let committed = std::fs::read(data.join(&name)).unwrap();
        assert_eq!(fresh, committed, "{name} drifted");
    }
    for name in ["known_d2.json", "known_d3.json"] {
        let o = run(&data, &["verify", name, "--tol", "1e-11"]);
        assert_eq!(o.status.code(), Some(0), "{name}");
    }
}
