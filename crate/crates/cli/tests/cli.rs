use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tetfield::fixtures::{reference_body, REFERENCE_POINT};
use tetfield::records::{read_records, write_points};
use tetfield::{tet_field, Containment, Vec3};
use tetfield_cli::exit;

fn tetfield(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tetfield"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn data_mesh() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data/tetrahedron.json")
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn line_scan_matches_library() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("x.csv");
    let run = tetfield(&[
        "eval",
        "--mesh",
        s(&data_mesh()),
        "--line",
        "axis=x,through=3e-3:3e-3:2.5e-3,range=0:6e-3,n=200",
        "--out",
        s(&out),
    ]);
    assert_eq!(
        run.status.code(),
        Some(exit::OK),
        "{}",
        String::from_utf8_lossy(&run.stderr)
    );
    let records = read_records(std::fs::File::open(&out).unwrap()).unwrap();
    assert_eq!(records.len(), 200);
    let body = reference_body();
    for rec in &records {
        assert_eq!(rec.point.y, REFERENCE_POINT.y);
        let h = tet_field(&body, rec.point).unwrap();
        assert!((rec.h - h).norm() <= 1e-15 * h.norm(), "{:?}", rec.point);
    }
    assert!(records
        .iter()
        .any(|r| r.containment == Containment::Inside && r.element == Some(0)));
    assert!(records
        .iter()
        .any(|r| r.containment == Containment::Outside && r.element.is_none()));
}

#[test]
fn point_file_and_grid_inputs() {
    let dir = tempfile::tempdir().unwrap();
    let points = dir.path().join("points.csv");
    let pts = vec![REFERENCE_POINT, Vec3::new(1e-2, 0.0, 0.0)];
    write_points(std::fs::File::create(&points).unwrap(), &pts).unwrap();
    let out = dir.path().join("p.csv");
    let run = tetfield(&[
        "eval",
        "--mesh",
        s(&data_mesh()),
        "--points",
        s(&points),
        "--out",
        s(&out),
    ]);
    assert_eq!(run.status.code(), Some(exit::OK));
    let records = read_records(std::fs::File::open(&out).unwrap()).unwrap();
    assert_eq!(records.iter().map(|r| r.point).collect::<Vec<_>>(), pts);

    let run = tetfield(&[
        "eval",
        "--mesh",
        s(&data_mesh()),
        "--grid",
        "min=0:0:0,max=6e-3:6e-3:5e-3,n=4:3:2",
        "--out",
        s(&out),
    ]);
    assert_eq!(run.status.code(), Some(exit::OK));
    assert_eq!(
        read_records(std::fs::File::open(&out).unwrap())
            .unwrap()
            .len(),
        24
    );
}

#[test]
fn split_mesh_file_agrees_outside() {
    let dir = tempfile::tempdir().unwrap();
    let mesh = write(
        dir.path(),
        "split.json",
        r#"{"unit": "mm",
            "vertices": [[2.5, 3, 1], [2, 1, 4], [1.5, 4, 3], [4.5, 5, 2], [2.625, 3.25, 2.5]],
            "elements": [[4, 1, 2, 3], [0, 4, 2, 3], [0, 1, 4, 3], [0, 1, 2, 4]],
            "magnetization": [[0.32, 0.74, 0.89], [0.32, 0.74, 0.89], [0.32, 0.74, 0.89], [0.32, 0.74, 0.89]]}"#,
    );
    let out = dir.path().join("z.csv");
    let run = tetfield(&[
        "eval",
        "--mesh",
        s(&mesh),
        "--line",
        "axis=z,through=8e-3:8e-3:0,range=-5e-3:1e-2,n=50",
        "--out",
        s(&out),
    ]);
    assert_eq!(run.status.code(), Some(exit::OK));
    let body = reference_body();
    for rec in read_records(std::fs::File::open(&out).unwrap()).unwrap() {
        let h = tet_field(&body, rec.point).unwrap();
        assert!((rec.h - h).norm() <= 1e-9 * h.norm());
    }
}

#[test]
fn verify_is_deterministic() {
    let a = tetfield(&["verify", "--seed", "5"]);
    let b = tetfield(&["verify", "--seed", "5"]);
    assert_eq!(a.status.code(), Some(exit::OK));
    assert_eq!(a.stdout, b.stdout);
    let text = String::from_utf8(a.stdout).unwrap();
    assert!(text.contains("reference z-scan"));
    assert!(text.contains("seed 5"));
}

#[test]
fn verify_breach_has_its_own_status() {
    let run = tetfield(&["verify", "--tol", "1e-17"]);
    assert_eq!(run.status.code(), Some(exit::VERIFICATION));
    assert!(String::from_utf8_lossy(&run.stdout).contains("FAIL"));
}

#[test]
fn bench_reports_both_timings() {
    let run = tetfield(&["bench", "--n", "2000", "--cache-pose"]);
    assert_eq!(run.status.code(), Some(exit::OK));
    let text = String::from_utf8(run.stdout).unwrap();
    assert!(text.contains("geometry set up per point"));
    assert!(text.contains("geometry cached"));
    assert!(text.contains("us target"));
}

#[test]
fn error_statuses() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out.csv");
    let line = "axis=x,through=0:0:0,range=0:1,n=3";
    let eval =
        |mesh: &Path| tetfield(&["eval", "--mesh", s(mesh), "--line", line, "--out", s(&out)]);
    let stderr = |o: &Output| String::from_utf8_lossy(&o.stderr).into_owned();

    let empty = write(
        dir.path(),
        "empty.json",
        r#"{"unit": "m", "vertices": [[0,0,0],[1,0,0],[0,1,0],[0,0,1]], "elements": [], "magnetization": []}"#,
    );
    let run = eval(&empty);
    assert_eq!(run.status.code(), Some(exit::VALIDATION));
    assert!(stderr(&run).contains("no elements"));

    let degenerate = write(
        dir.path(),
        "degenerate.json",
        r#"{"unit": "m", "vertices": [[0,0,0],[1,0,0],[0,1,0],[0,0,1]], "elements": [[0,1,2,2]], "magnetization": [[0,0,1]]}"#,
    );
    let run = eval(&degenerate);
    assert_eq!(run.status.code(), Some(exit::VALIDATION));
    assert!(stderr(&run).contains("degenerate element 0"));

    let broken = write(
        dir.path(),
        "broken.json",
        "{\"unit\": \"m\",\n \"vertices\": [[0,0]",
    );
    let run = eval(&broken);
    assert_eq!(run.status.code(), Some(exit::PARSE));
    assert!(stderr(&run).contains("line 2"));

    assert_eq!(
        eval(&dir.path().join("missing.json")).status.code(),
        Some(exit::IO)
    );

    let bad_points = write(dir.path(), "pts.csv", "x,y,z\n1,2,oops\n");
    let run = tetfield(&[
        "eval",
        "--mesh",
        s(&data_mesh()),
        "--points",
        s(&bad_points),
        "--out",
        s(&out),
    ]);
    assert_eq!(run.status.code(), Some(exit::PARSE));

    let run = tetfield(&[
        "eval",
        "--mesh",
        s(&data_mesh()),
        "--line",
        "axis=q",
        "--out",
        s(&out),
    ]);
    assert_eq!(run.status.code(), Some(exit::USAGE));
    let run = tetfield(&["eval", "--mesh", s(&data_mesh()), "--out", s(&out)]);
    assert_eq!(run.status.code(), Some(exit::USAGE));

    let run = tetfield(&[
        "eval",
        "--mesh",
        s(&data_mesh()),
        "--line",
        line,
        "--out",
        s(&dir.path().join("no/such/dir.csv")),
    ]);
    assert_eq!(run.status.code(), Some(exit::IO));
}

#[test]
fn shipped_scans_are_reproduced() {
    let dir = tempfile::tempdir().unwrap();
    let data = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data");
    for axis in ["x", "y", "z"] {
        let out = dir.path().join(format!("{axis}.csv"));
        let line = format!("axis={axis},through=3e-3:3e-3:2.5e-3,range=0:6e-3,n=200");
        let run = tetfield(&[
            "eval",
            "--mesh",
            s(&data_mesh()),
            "--line",
            &line,
            "--out",
            s(&out),
        ]);
        assert_eq!(run.status.code(), Some(exit::OK));
        let fresh = read_records(std::fs::File::open(&out).unwrap()).unwrap();
        let shipped =
            read_records(std::fs::File::open(data.join(format!("scan_{axis}.csv"))).unwrap())
                .unwrap();
        assert_eq!(fresh.len(), shipped.len());
        for (a, b) in fresh.iter().zip(&shipped) {
            assert_eq!(a.point, b.point);
            assert_eq!((a.containment, a.element), (b.containment, b.element));
            assert!((a.h - b.h).norm() <= 1e-12 * b.h.norm());
        }
    }
}
