use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use ovenctl_core::output::TrajectoryTable;

fn ovenctl(args: &[&str], cwd: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ovenctl"))
        .args(args)
        .current_dir(cwd)
        .env_remove("OVENCTL_OUT_DIR")
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn analyze_steak_prints_poles_and_stability() {
    let dir = tempfile::tempdir().unwrap();
    let out = ovenctl(&["analyze", "--food", "steak"], dir.path());
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let text = stdout(&out);
    for p in ["-9.472", "-0.104", "-1.341", "asymptotically stable"] {
        assert!(text.contains(p), "missing {p} in\n{text}");
    }
}

#[test]
fn unknown_food_is_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let out = ovenctl(&["simulate", "--food", "turkey"], dir.path());
    assert_eq!(code(&out), 2);
    let err = stderr(&out);
    for p in ["steak", "chicken", "potato"] {
        assert!(err.contains(p), "{err}");
    }
}

#[test]
fn bad_arguments_are_usage_errors() {
    let dir = tempfile::tempdir().unwrap();
    for args in [
        &["frobnicate"][..],
        &["simulate"],
        &["simulate", "--food", "steak", "--config", "x.json"],
        &["design", "--food", "steak", "--controller-poles", "-1,-2"],
        &["simulate", "--food", "steak", "--mode", "sideways"],
        &["simulate", "--food", "steak", "--dt", "0"],
        &["simulate", "--food", "steak", "--x0-hat", "1,2"],
        &["simulate", "--food", "steak", "--emit-plot-script"],
        &["model", "--config", "does-not-exist.json"],
        &["model", "--food", "steak", "--preheat", "50"],
    ] {
        let out = ovenctl(args, dir.path());
        assert_eq!(code(&out), 2, "{args:?}: {}", stderr(&out));
    }
}

#[test]
fn infeasible_designs_exit_3() {
    let dir = tempfile::tempdir().unwrap();
    let out = ovenctl(
        &["design", "--food", "steak", "--controller-poles", "1,-2,-3"],
        dir.path(),
    );
    assert_eq!(code(&out), 3, "{}", stderr(&out));

    // A food with no air contact cannot be reached by the heater input.
    let cfg = dir.path().join("insulated.json");
    fs::write(
        &cfg,
        r#"{"name":"slab","mass_lb":1,"cp_btu_per_lb_f":0.5,"char_length_ft":0.5,
            "surface_area_ft2":0,"h_air":1,"target_temp_f":150,"safe_temp_f":150}"#,
    )
    .unwrap();
    let out = ovenctl(
        &[
            "design",
            "--config",
            "insulated.json",
            "--controller-poles",
            "-1,-2,-3",
            "--observer-poles",
            "-5,-10,-15",
        ],
        dir.path(),
    );
    assert_eq!(code(&out), 3, "{}", stderr(&out));
    assert!(stderr(&out).contains("not controllable"));
}

#[test]
fn potato_closed_loop_csv_ends_at_target() {
    let dir = tempfile::tempdir().unwrap();
    let out = ovenctl(
        &[
            "simulate", "--mode", "closed", "--food", "potato", "--format", "csv", "--out", "run.csv",
        ],
        dir.path(),
    );
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let text = fs::read_to_string(dir.path().join("run.csv")).unwrap();
    assert!(text.starts_with("t,T_air,T_wall,T_food,T_air_hat,T_wall_hat,T_food_hat,u\n"));
    let table = TrajectoryTable::from_csv(&text).unwrap();
    let food = table.column("T_food").unwrap();
    let last = *food.last().unwrap();
    assert!((last - 200.0).abs() <= 0.5, "final T_food {last}");
    assert!(food.iter().all(|&y| y <= 200.5));
}

#[test]
fn open_loop_csv_schema_and_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let out = ovenctl(
        &["simulate", "--mode", "open", "--food", "steak", "--stride", "100"],
        dir.path(),
    );
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.starts_with("t,T_air,T_wall,T_food,u\n"));
    let table = TrajectoryTable::from_csv(&text).unwrap();
    assert_eq!(table.rows.len(), 1001);
    assert_eq!(table.to_csv(), text);
}

#[test]
fn json_output_parses() {
    let dir = tempfile::tempdir().unwrap();
    let out = ovenctl(
        &["simulate", "--food", "chicken", "--format", "json", "--stride", "1000"],
        dir.path(),
    );
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["columns"][3], "T_food");

    for args in [
        &["presets", "--format", "json"][..],
        &["design", "--food", "steak", "--format", "json"],
    ] {
        let out = ovenctl(args, dir.path());
        assert_eq!(code(&out), 0);
        serde_json::from_str::<serde_json::Value>(&stdout(&out)).unwrap();
    }
}

#[test]
fn identical_arguments_give_identical_files() {
    let dir = tempfile::tempdir().unwrap();
    let args = |name: &'static str| ["simulate", "--food", "steak", "--t-final", "10", "--out", name];
    assert_eq!(code(&ovenctl(&args("a.csv"), dir.path())), 0);
    assert_eq!(code(&ovenctl(&args("b.csv"), dir.path())), 0);
    let a = fs::read(dir.path().join("a.csv")).unwrap();
    let b = fs::read(dir.path().join("b.csv")).unwrap();
    assert!(!a.is_empty());
    assert_eq!(a, b);
}

#[test]
fn reproduce_passes_and_writes_figures() {
    let dir = tempfile::tempdir().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_ovenctl"))
        .args(["reproduce", "--emit-plot-script"])
        .current_dir(dir.path())
        .env("OVENCTL_OUT_DIR", "figs")
        .output()
        .unwrap();
    assert_eq!(code(&out), 0, "{}{}", stdout(&out), stderr(&out));
    assert!(stdout(&out).contains("ALL PASS"));
    for f in [
        "fig1_steak_open.csv",
        "fig2_steak_closed.csv",
        "fig3_chicken_closed.csv",
        "fig4_potato_closed.csv",
        "fig1_steak_open.gp",
        "report.json",
    ] {
        assert!(dir.path().join("figs").join(f).is_file(), "missing {f}");
    }
    let fig1 = fs::read_to_string(dir.path().join("figs/fig1_steak_open.csv")).unwrap();
    assert!(fig1.starts_with("t,T_air,T_wall,T_food,u\n"));

    let out = ovenctl(&["reproduce", "--out-dir", "explicit", "--sequential"], dir.path());
    assert_eq!(code(&out), 0);
    assert_eq!(
        fs::read(dir.path().join("explicit/fig4_potato_closed.csv")).unwrap(),
        fs::read(dir.path().join("figs/fig4_potato_closed.csv")).unwrap()
    );
}

#[test]
fn reproduce_detects_perturbed_model() {
    let dir = tempfile::tempdir().unwrap();
    let out = ovenctl(&["reproduce", "--perturb-a", "0.01"], dir.path());
    assert_eq!(code(&out), 1);
    let report = stdout(&out);
    let failing: Vec<&str> = report.lines().filter(|l| l.ends_with("FAIL")).collect();
    assert!(failing.iter().any(|l| l.starts_with("steak: A entries")), "{report}");
    assert!(
        failing.iter().all(|l| l.starts_with("steak") || l.contains("checks")),
        "{report}"
    );
}

#[test]
fn pole_scale_sweep_writes_one_file_per_factor() {
    let dir = tempfile::tempdir().unwrap();
    let out = ovenctl(
        &[
            "simulate",
            "--food",
            "steak",
            "--pole-scale",
            "1,2",
            "--t-final",
            "5",
            "--out",
            "sweep/s.csv",
        ],
        dir.path(),
    );
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    assert!(dir.path().join("sweep/s_scale1.csv").is_file());
    assert!(dir.path().join("sweep/s_scale2.csv").is_file());
    assert_eq!(stdout(&out).lines().count(), 2);
}

#[test]
fn rk4_method_matches_exact_closely() {
    let dir = tempfile::tempdir().unwrap();
    let base = [
        "simulate",
        "--food",
        "steak",
        "--mode",
        "open",
        "--t-final",
        "5",
        "--stride",
        "500",
    ];
    let exact = stdout(&ovenctl(&base, dir.path()));
    let rk4 = stdout(&ovenctl(&[&base[..], &["--method", "rk4"]].concat(), dir.path()));
    let (a, b) = (
        TrajectoryTable::from_csv(&exact).unwrap(),
        TrajectoryTable::from_csv(&rk4).unwrap(),
    );
    for (ra, rb) in a.rows.iter().zip(&b.rows) {
        for (x, y) in ra.iter().zip(rb) {
            assert!((x - y).abs() < 1e-6, "{x} vs {y}");
        }
    }
}

#[test]
fn htc_reports_groups() {
    let dir = tempfile::tempdir().unwrap();
    let out = ovenctl(
        &["htc", "--length", "0.5", "--delta-t", "100", "--area", "0.375"],
        dir.path(),
    );
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("Pr = 0.7035"), "{text}");
    assert!(text.contains("q  ="));
    assert_eq!(code(&ovenctl(&["htc", "--length", "0"], dir.path())), 2);
}
