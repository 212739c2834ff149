use std::path::Path;
use std::process::{Command, Output};

use trackbench::benchmark::report::write_results_csv;
use trackbench::benchmark::{run_scenario, ScenarioConfig};
use trackbench::trajectories::{gen_car_path, CarPath, OuConfig};
use trackbench::{MeasurementSeries, TrackerKind, Trajectory};

const SUBCOMMANDS: [&str; 8] = ["gen-path", "add-noise", "train", "track", "bench", "table1", "known-eom", "plot-data"];

fn trackbench(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_trackbench")).args(args).output().unwrap()
}

fn ok(args: &[&str]) -> Output {
    let out = trackbench(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    out
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn path_noise_track_pipeline() {
    let dir = tempfile::tempdir().unwrap();
    let (path, meas, est) = (dir.path().join("p.csv"), dir.path().join("m.csv"), dir.path().join("e.csv"));
    ok(&["gen-path", "--path", "car1", "--dt", "1", "--laps", "2", "--out", s(&path)]);
    let traj = Trajectory::read_csv(std::fs::File::open(&path).unwrap(), None).unwrap();
    assert_eq!(traj.points, gen_car_path(CarPath::One, 1.0, 2).unwrap().points);

    ok(&["add-noise", "--in", s(&path), "--sigma", "1", "--seed", "5", "--out", s(&meas)]);
    let first = std::fs::read(&meas).unwrap();
    ok(&["add-noise", "--in", s(&path), "--sigma", "1", "--seed", "5", "--out", s(&meas)]);
    assert_eq!(first, std::fs::read(&meas).unwrap());
    let series = MeasurementSeries::read_csv(first.as_slice(), 1.0, None).unwrap();
    assert_eq!(series.len(), traj.len());

    ok(&["track", "--tracker", "window", "--window", "1", "--in", s(&meas), "--out", s(&est)]);
    let text = std::fs::read_to_string(&est).unwrap();
    assert_eq!(text.lines().next().unwrap(), "t,xhat,yhat");
    for (line, z) in text.lines().skip(1).zip(&series.samples) {
        let v: Vec<f64> = line.split(',').map(|c| c.parse().unwrap()).collect();
        assert_eq!((v[1], v[2]), (z.zx, z.zy));
    }
    ok(&["track", "--tracker", "kalman", "--ou-a", "0.5", "--ou-b", "1", "--format", "json", "--in", s(&meas), "--out", s(&est)]);
    let doc: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&est).unwrap()).unwrap();
    assert_eq!(doc["estimates"].as_array().unwrap().len(), traj.len());
}

#[test]
fn bench_matches_library() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.csv");
    ok(&[
        "bench", "--scenario", "ou", "--a", "0.5", "--b", "1", "--dt", "0.1", "--sigma", "1", "--steps", "300", "--runs",
        "20", "--trackers", "kalman,window", "--seed", "3", "--out", s(&out),
    ]);
    let ou = OuConfig { a: 0.5, b: 1.0, dt: 0.1, n_steps: 300, x0: 0.0, rc: 0.1 };
    let cfg = ScenarioConfig::ou(ou, 20, 3).unwrap().with_trackers(&[TrackerKind::Kalman, TrackerKind::Window]);
    let mut expected = Vec::new();
    write_results_csv(&mut expected, [&run_scenario(&cfg).unwrap()]).unwrap();
    assert_eq!(std::fs::read(&out).unwrap(), expected);
}

#[test]
fn train_then_track_nn() {
    let dir = tempfile::tempdir().unwrap();
    let (model, path, meas, est) =
        (dir.path().join("nn.json"), dir.path().join("p.csv"), dir.path().join("m.csv"), dir.path().join("e.csv"));
    ok(&["train", "--iterations", "50", "--hidden", "8", "--seed", "2", "--out", s(&model)]);
    ok(&["gen-path", "--path", "walk", "--steps", "200", "--seed", "4", "--out", s(&path)]);
    ok(&["add-noise", "--in", s(&path), "--out", s(&meas)]);
    ok(&["track", "--tracker", "nn", "--model", s(&model), "--in", s(&meas), "--out", s(&est)]);
    assert_eq!(std::fs::read_to_string(&est).unwrap().lines().count(), 201);
    let plot = dir.path().join("plot.csv");
    ok(&["plot-data", "--path", "car2", "--model", s(&model), "--out", s(&plot)]);
    assert!(std::fs::read_to_string(&plot).unwrap().starts_with("t,x_true,y_true,zx,zy,"));
}

#[test]
fn exit_codes() {
    for bad in [
        &["bench", "--scenario", "car1", "--runs", "0", "--out", "x.csv"][..],
        &["gen-path", "--path", "moon", "--out", "x.csv"],
        &["add-noise", "--in", "a.csv", "--sigma", "-1", "--out", "b.csv"],
        &["frobnicate"],
    ] {
        assert_eq!(trackbench(bad).status.code(), Some(2), "{bad:?}");
    }
    let dir = tempfile::tempdir().unwrap();
    let missing = dir.path().join("nope.csv");
    let out = trackbench(&["add-noise", "--in", s(&missing), "--out", s(&dir.path().join("o.csv"))]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.starts_with("error: ") && err.lines().count() == 1, "{err}");
    assert!(!dir.path().join("o.csv").exists());
}

#[test]
fn help_matches_golden() {
    let mut text = String::from_utf8(ok(&["--help"]).stdout).unwrap();
    for sub in SUBCOMMANDS {
        text += &format!("\n===== {sub} =====\n");
        text += &String::from_utf8(ok(&[sub, "--help"]).stdout).unwrap();
    }
    let golden = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden/help.txt");
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&golden, &text).unwrap();
    }
    let expected = std::fs::read_to_string(&golden).expect("golden file missing; rerun with UPDATE_GOLDEN=1");
    assert_eq!(text, expected);
}
