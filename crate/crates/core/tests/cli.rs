use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use duffing::grid::Grid2D;
use duffing::records::{read_csv, read_json};

fn duffing(args: &[&str], out_dir: Option<&Path>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_duffing"));
    cmd.args(args).env_remove("DUFFING_OUT_DIR");
    if let Some(dir) = out_dir {
        cmd.env("DUFFING_OUT_DIR", dir);
    }
    cmd.output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

const FAST: [&str; 4] = ["--step", "0.1", "--dim", "21"];

#[test]
fn sweep_undriven_writes_one_row_per_step() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sweep.csv");
    let out = duffing(
        &[
            &[
                "sweep-undriven",
                "--eps-max",
                "0.8",
                "--steps",
                "9",
                "--out",
                path.to_str().unwrap(),
            ],
            &FAST[..],
        ]
        .concat(),
        None,
    );
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert!(stdout(&out).starts_with("9 records"));
    let records = read_csv(fs::File::open(&path).unwrap()).unwrap();
    assert_eq!(records.len(), 9);
    assert!(records.iter().all(|r| r.fidelity.is_some()));
}

#[test]
fn json_format_follows_extension_and_flag() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("drive.json");
    let forced = dir.path().join("drive.dat");
    for (path, extra) in [(&json, None), (&forced, Some("--format=json"))] {
        let mut args = vec![
            "sweep-driven",
            "--steps",
            "3",
            "--eps-max",
            "0.2",
            "--out",
            path.to_str().unwrap(),
        ];
        args.extend(FAST);
        args.extend(extra);
        let out = duffing(&args, None);
        assert!(
            out.status.success(),
            "{}",
            String::from_utf8_lossy(&out.stderr)
        );
        let records = read_json(fs::File::open(path).unwrap()).unwrap();
        assert_eq!(records.len(), 3);
        assert!(records
            .iter()
            .all(|r| r.fidelity.is_none() && r.params.omega == 1.018));
    }
}

#[test]
fn wigner_grid_of_ground_state_has_negative_region() {
    let dir = tempfile::tempdir().unwrap();
    let out = duffing(
        &["wigner", "--epsilon", "0.1", "--out", "gs_wigner.grid"],
        Some(dir.path()),
    );
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = fs::read(dir.path().join("gs_wigner.grid")).unwrap();
    let grid = Grid2D::read_text(text.as_slice()).unwrap();
    assert_eq!((grid.nx, grid.ny), (601, 601));
    assert!(grid.min() < 0.0);
    assert!((grid.integral() - 1.0).abs() < 1e-4);
}

#[test]
fn fidelity_reports_minimum_above_band() {
    let out = duffing(&["fidelity", "--eps-max", "0.8", "--steps", "81"], None);
    assert!(out.status.success());
    let line = stdout(&out);
    let min: f64 = line.split_whitespace().nth(3).unwrap().parse().unwrap();
    assert!(min >= 0.95, "{line}");
    assert!(line.contains("epsilon = 0.8"));
}

#[test]
fn fit_reads_records_and_writes_report() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("sweep.csv");
    let report = dir.path().join("fit.json");
    let args = [
        &[
            "sweep-undriven",
            "--steps",
            "12",
            "--out",
            csv.to_str().unwrap(),
        ],
        &FAST[..],
    ]
    .concat();
    assert!(duffing(&args, None).status.success());
    let out = duffing(
        &[
            "fit",
            "--input",
            csv.to_str().unwrap(),
            "--out",
            report.to_str().unwrap(),
        ],
        None,
    );
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert!(stdout(&out).contains("12 points"));
    let value: serde_json::Value = serde_json::from_slice(&fs::read(&report).unwrap()).unwrap();
    assert_eq!(value["eta_b_vs_eta_ng"]["model_tag"], "sqrt");
    assert_eq!(
        value["eta_ng_vs_nu"]["coefficients"]
            .as_array()
            .unwrap()
            .len(),
        3
    );
}

#[test]
fn potential_surface_and_density() {
    let dir = tempfile::tempdir().unwrap();
    let out = duffing(
        &[
            "potential",
            "--epsilon",
            "0.5",
            "--force",
            "0.015",
            "--out",
            "v.grid",
            "--density-out",
            "rho.dat",
        ],
        Some(dir.path()),
    );
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let grid = Grid2D::read_text(fs::read(dir.path().join("v.grid")).unwrap().as_slice()).unwrap();
    assert_eq!((grid.nx, grid.ny, grid.y_name.as_str()), (121, 101, "t"));
    let density = fs::read_to_string(dir.path().join("rho.dat")).unwrap();
    assert_eq!(density.lines().count(), 122);
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(duffing(&["sweep-undriven"], None).status.code(), Some(2));
    assert_eq!(
        duffing(&["wigner", "--epsilon", "abc", "--out", "x"], None)
            .status
            .code(),
        Some(2)
    );
    assert_eq!(duffing(&["bogus"], None).status.code(), Some(2));
}

#[test]
fn module_errors_exit_with_one_and_leave_no_output() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.csv");
    let cases: [&[&str]; 3] = [
        &["sweep-undriven", "--eps-min", "0.5", "--eps-max", "0.2"],
        &["sweep-driven", "--omega", "1.0"],
        &["sweep-undriven", "--dim", "3"],
    ];
    for case in cases {
        let out = duffing(&[case, &["--out", path.to_str().unwrap()]].concat(), None);
        assert_eq!(out.status.code(), Some(1), "{case:?}");
        assert!(String::from_utf8_lossy(&out.stderr).starts_with("error: "));
        assert!(!path.exists());
    }
    assert_eq!(fs::read_dir(dir.path()).unwrap().count(), 0);
}

#[test]
fn repeated_runs_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let files: Vec<_> = ["a.csv", "b.csv"]
        .iter()
        .map(|name| {
            let path = dir.path().join(name);
            let args = [
                &[
                    "sweep-undriven",
                    "--steps",
                    "6",
                    "--out",
                    path.to_str().unwrap(),
                ],
                &FAST[..],
            ]
            .concat();
            assert!(duffing(&args, None).status.success());
            fs::read(path).unwrap()
        })
        .collect();
    assert_eq!(files[0], files[1]);
}
