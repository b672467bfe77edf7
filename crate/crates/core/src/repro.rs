//! One-shot regeneration of the published model numbers and response claims.

use serde::Serialize;

use crate::control::default_poles;
use crate::error::Result;
use crate::matrix::{eigenvalues, Matrix};
use crate::output::TrajectoryTable;
use crate::plant::PRESET_NAMES;
use crate::reference::{self, CONVERGENCE_TOL_F, MATRIX_TOL, POLE_TOL};
use crate::scenario::{self, Scenario};
use crate::sim::{self, DEFAULT_DT, DEFAULT_SETTLING_BAND, DEFAULT_T_FINAL};
use crate::sweep::{self, Execution};

pub const PLACEMENT_REL_TOL: f64 = 1e-8;
pub const UNION_TOL: f64 = 1e-6;
/// Open-loop food temperature must end this close to the preheat, °F.
pub const OPEN_LOOP_FINAL_TOL_F: f64 = 1.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Comparison {
    /// `|computed − expected| ≤ tolerance`
    Within,
    /// `computed ≤ expected + tolerance`
    AtMost,
    /// `computed > expected − tolerance`
    Exceeds,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub expected: f64,
    pub computed: f64,
    pub tolerance: f64,
    pub comparison: Comparison,
    pub passed: bool,
}

impl Check {
    pub fn new(name: impl Into<String>, expected: f64, computed: f64, tolerance: f64, comparison: Comparison) -> Self {
        let passed = match comparison {
            Comparison::Within => (computed - expected).abs() <= tolerance,
            Comparison::AtMost => computed <= expected + tolerance,
            Comparison::Exceeds => computed > expected - tolerance,
        };
        Self {
            name: name.into(),
            expected,
            computed,
            tolerance,
            comparison,
            passed: passed && computed.is_finite(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Figure {
    pub file_name: String,
    pub title: String,
    pub table: TrajectoryTable,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReproReport {
    pub checks: Vec<Check>,
    #[serde(skip)]
    pub figures: Vec<Figure>,
}

impl ReproReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            0
        } else {
            1
        }
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    /// Fixed-width pass/fail table.
    pub fn render(&self) -> String {
        let width = self.checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
        let mut out = format!(
            "{:<width$}  {:>14}  {:>14}  {:>9}  result\n",
            "check", "expected", "computed", "tol"
        );
        for c in &self.checks {
            out.push_str(&format!(
                "{:<width$}  {:>14.6}  {:>14.6}  {:>9.1e}  {}\n",
                c.name,
                c.expected,
                c.computed,
                c.tolerance,
                if c.passed { "PASS" } else { "FAIL" }
            ));
        }
        let failed = self.failures().count();
        out.push_str(&format!(
            "{} checks, {} failed: {}\n",
            self.checks.len(),
            failed,
            if failed == 0 { "ALL PASS" } else { "FAIL" }
        ));
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReproOptions {
    /// Added to the steak `A[0][0]` before any check runs; used to prove checks can fail.
    pub perturb_a: Option<f64>,
    pub exec: Execution,
    /// Keep every n-th sample in the figure tables.
    pub figure_stride: usize,
}

impl Default for ReproOptions {
    fn default() -> Self {
        Self {
            perturb_a: None,
            exec: Execution::default(),
            figure_stride: 10,
        }
    }
}

struct FoodOutcome {
    checks: Vec<Check>,
    figures: Vec<(usize, Figure)>,
}

/// Runs every check for every preset food.
pub fn reproduce(opts: &ReproOptions) -> Result<ReproReport> {
    let outcomes = sweep::map(opts.exec, &PRESET_NAMES, |name| food_checks(name, opts));
    let mut checks = Vec::new();
    let mut figures = Vec::new();
    for outcome in outcomes {
        let outcome = outcome?;
        checks.extend(outcome.checks);
        figures.extend(outcome.figures);
    }
    figures.sort_by_key(|(i, _)| *i);
    Ok(ReproReport {
        checks,
        figures: figures.into_iter().map(|(_, f)| f).collect(),
    })
}

fn food_checks(name: &str, opts: &ReproOptions) -> Result<FoodOutcome> {
    let mut scenario = Scenario::preset(name)?;
    if let (Some(delta), "steak") = (opts.perturb_a, name) {
        scenario.plant.a[(0, 0)] += delta;
    }
    let ss = &scenario.plant;
    let mut checks = Vec::new();

    let printed = reference::printed_a_matrix(name)?;
    checks.push(Check::new(
        format!("{name}: A entries vs printed (max |diff|)"),
        0.0,
        ss.a.max_abs_diff(&printed),
        MATRIX_TOL,
        Comparison::AtMost,
    ));
    let bc_dev =
        ss.b.max_abs_diff(&Matrix::column(&[1.0, 0.0, 0.0]))
            .max(ss.c.max_abs_diff(&Matrix::row(&[0.0, 0.0, 1.0])));
    checks.push(Check::new(
        format!("{name}: B = [1,0,0]^T, C = [0,0,1] exactly"),
        0.0,
        bc_dev,
        0.0,
        Comparison::AtMost,
    ));

    let spectrum = eigenvalues(&ss.a)?;
    let mut computed = spectrum.real_parts();
    computed.sort_by(f64::total_cmp);
    let mut tabulated = reference::tabulated_poles(name)?;
    tabulated.sort_by(f64::total_cmp);
    for (want, got) in tabulated.iter().zip(&computed) {
        checks.push(Check::new(
            format!("{name}: open-loop pole {want}"),
            *want,
            *got,
            POLE_TOL,
            Comparison::Within,
        ));
    }

    let poles = default_poles(name)?;
    let design = scenario.design(&poles, true)?;
    let cl = &design.closed_loop;
    let ctrl_spec = eigenvalues(&(&ss.a - &(&ss.b * &cl.gains.k)))?;
    let obs_spec = eigenvalues(&(&ss.a - &(&cl.gains.l * &ss.c)))?;
    let union: Vec<_> = poles.controller.iter().chain(&poles.observer).copied().collect();
    let fb_spec = eigenvalues(&cl.a_fb)?;
    checks.push(Check::new(
        format!("{name}: eig(A-BK) vs controller poles (max rel err)"),
        0.0,
        ctrl_spec
            .max_relative_matching_distance(&poles.controller)
            .unwrap_or(f64::INFINITY),
        PLACEMENT_REL_TOL,
        Comparison::AtMost,
    ));
    checks.push(Check::new(
        format!("{name}: eig(A-LC) vs observer poles (max rel err)"),
        0.0,
        obs_spec
            .max_relative_matching_distance(&poles.observer)
            .unwrap_or(f64::INFINITY),
        PLACEMENT_REL_TOL,
        Comparison::AtMost,
    ));
    checks.push(Check::new(
        format!("{name}: eig(A_fb) vs pole union (max |diff|)"),
        0.0,
        fb_spec.max_matching_distance(&union).unwrap_or(f64::INFINITY),
        UNION_TOL,
        Comparison::AtMost,
    ));

    let target = scenario.target();
    let horizon = scenario::closed_loop_horizon(&poles);
    let cfg = scenario.closed_loop_config(cl, None, DEFAULT_DT, horizon)?;
    let closed = sim::lsim(cl, &cfg)?;
    let metrics = sim::step_metrics(&closed, target, DEFAULT_SETTLING_BAND)?;
    checks.push(Check::new(
        format!("{name}: closed-loop final T_food"),
        target,
        metrics.final_value,
        CONVERGENCE_TOL_F,
        Comparison::Within,
    ));
    checks.push(Check::new(
        format!("{name}: closed-loop peak T_food never exceeds target"),
        target,
        metrics.peak,
        CONVERGENCE_TOL_F,
        Comparison::AtMost,
    ));

    let open_cfg = scenario.open_loop_config(DEFAULT_DT, DEFAULT_T_FINAL);
    let open = sim::lsim(ss, &open_cfg)?;
    let worst_drop = open.output.windows(2).map(|w| w[0] - w[1]).fold(0.0f64, f64::max);
    checks.push(Check::new(
        format!("{name}: open-loop T_food non-decreasing (max drop)"),
        0.0,
        worst_drop,
        0.0,
        Comparison::AtMost,
    ));
    checks.push(Check::new(
        format!("{name}: open-loop T_food at t={DEFAULT_T_FINAL}"),
        scenario.oven.preheat,
        *open.output.last().expect("non-empty"),
        OPEN_LOOP_FINAL_TOL_F,
        Comparison::Within,
    ));
    checks.push(Check::new(
        format!("{name}: open-loop T_food exceeds target (peak)"),
        target,
        open.output.iter().copied().fold(f64::NEG_INFINITY, f64::max),
        0.0,
        Comparison::Exceeds,
    ));

    let mut figures = Vec::new();
    let stride = opts.figure_stride;
    match name {
        "steak" => {
            figures.push((
                1,
                Figure {
                    file_name: "fig1_steak_open.csv".into(),
                    title: "Oven and steak, open loop".into(),
                    table: TrajectoryTable::open_loop(&open, stride),
                },
            ));
            figures.push((
                2,
                Figure {
                    file_name: "fig2_steak_closed.csv".into(),
                    title: "Oven and steak, closed loop".into(),
                    table: TrajectoryTable::closed_loop(&closed, cl, stride),
                },
            ));
        }
        "chicken" => figures.push((
            3,
            Figure {
                file_name: "fig3_chicken_closed.csv".into(),
                title: "Oven and chicken, closed loop".into(),
                table: TrajectoryTable::closed_loop(&closed, cl, stride),
            },
        )),
        "potato" => figures.push((
            4,
            Figure {
                file_name: "fig4_potato_closed.csv".into(),
                title: "Oven and potato, closed loop".into(),
                table: TrajectoryTable::closed_loop(&closed, cl, stride),
            },
        )),
        _ => {}
    }
    Ok(FoodOutcome { checks, figures })
}
