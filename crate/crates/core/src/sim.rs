//! Fixed-step simulation of continuous-time LTI systems.
//!
//! [`lsim`] propagates the exact zero-order-hold discretization, so the only
//! error is rounding. [`rk4_sim`] integrates the same ODE with classical
//! Runge-Kutta and exists to cross-check it.

use serde::Serialize;

use crate::control::ClosedLoop;
use crate::error::{Error, Result};
use crate::matrix::{expm, Matrix};
use crate::plant::StateSpace;

pub const DEFAULT_DT: f64 = 1e-3;
pub const DEFAULT_T_FINAL: f64 = 100.0;
pub const DEFAULT_SETTLING_BAND: f64 = 1.0;

/// Anything of the form `ẋ = A x + B u`, `y = C x` with scalar input and output.
pub trait LinearSystem {
    fn a(&self) -> &Matrix;
    fn b(&self) -> &Matrix;
    fn c(&self) -> &Matrix;
    fn state_labels(&self) -> &[String];

    fn order(&self) -> usize {
        self.a().rows()
    }
}

impl LinearSystem for StateSpace {
    fn a(&self) -> &Matrix {
        &self.a
    }
    fn b(&self) -> &Matrix {
        &self.b
    }
    fn c(&self) -> &Matrix {
        &self.c
    }
    fn state_labels(&self) -> &[String] {
        &self.state_labels
    }
}

impl LinearSystem for ClosedLoop {
    fn a(&self) -> &Matrix {
        &self.a_fb
    }
    fn b(&self) -> &Matrix {
        &self.b_fb
    }
    fn c(&self) -> &Matrix {
        &self.c_fb
    }
    fn state_labels(&self) -> &[String] {
        &self.state_labels
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Method {
    ExactDiscretization,
    Rk4,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum Input {
    Constant(f64),
    /// One value per sample, held until the next sample.
    Sequence(Vec<f64>),
}

impl Input {
    fn at(&self, k: usize) -> f64 {
        match self {
            Input::Constant(u) => *u,
            Input::Sequence(v) => v[k],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimConfig {
    pub x0: Vec<f64>,
    pub input: Input,
    pub dt: f64,
    pub t_final: f64,
    pub method: Method,
    /// RK4 steps taken per sample interval.
    pub rk4_substeps: usize,
}

impl SimConfig {
    pub fn new(x0: Vec<f64>, input: Input) -> Self {
        Self {
            x0,
            input,
            dt: DEFAULT_DT,
            t_final: DEFAULT_T_FINAL,
            method: Method::ExactDiscretization,
            rk4_substeps: 1,
        }
    }

    pub fn with_step(mut self, dt: f64, t_final: f64) -> Self {
        self.dt = dt;
        self.t_final = t_final;
        self
    }

    pub fn with_method(mut self, method: Method) -> Self {
        self.method = method;
        self
    }

    pub fn with_rk4_substeps(mut self, substeps: usize) -> Self {
        self.rk4_substeps = substeps;
        self
    }

    /// Number of steps after the initial sample.
    pub fn steps(&self) -> usize {
        (self.t_final / self.dt).round() as usize
    }

    pub fn validate(&self, order: usize) -> Result<()> {
        if !(self.dt > 0.0 && self.dt.is_finite()) {
            return Err(Error::InvalidConfig(format!("dt must be positive, got {}", self.dt)));
        }
        if !(self.t_final >= self.dt && self.t_final.is_finite()) {
            return Err(Error::InvalidConfig(format!(
                "t_final ({}) must be at least dt ({})",
                self.t_final, self.dt
            )));
        }
        if self.x0.len() != order {
            return Err(Error::DimensionMismatch(format!(
                "x0 has {} entries for an order-{order} system",
                self.x0.len()
            )));
        }
        if self.rk4_substeps == 0 {
            return Err(Error::InvalidConfig("rk4_substeps must be at least 1".into()));
        }
        if let Input::Sequence(v) = &self.input {
            if v.len() != self.steps() + 1 {
                return Err(Error::InvalidConfig(format!(
                    "input sequence has {} samples, expected {}",
                    v.len(),
                    self.steps() + 1
                )));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub states: Vec<Vec<f64>>,
    pub output: Vec<f64>,
    pub input: Vec<f64>,
    pub state_labels: Vec<String>,
}

impl Trajectory {
    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    /// Values of state `i` over time.
    pub fn state_series(&self, i: usize) -> Vec<f64> {
        self.states.iter().map(|x| x[i]).collect()
    }

    pub fn final_state(&self) -> &[f64] {
        self.states.last().map(Vec::as_slice).unwrap_or(&[])
    }

    /// Largest state difference between two trajectories on the same grid.
    pub fn max_state_diff(&self, other: &Trajectory) -> f64 {
        assert_eq!(self.len(), other.len(), "trajectories differ in length");
        self.states
            .iter()
            .zip(&other.states)
            .flat_map(|(a, b)| a.iter().zip(b).map(|(x, y)| (x - y).abs()))
            .fold(0.0, f64::max)
    }
}

/// Exact zero-order-hold pair `(A_d, B_d)` from `expm([[A, B], [0, 0]]·dt)`.
pub fn discretize(a: &Matrix, b: &Matrix, dt: f64) -> Result<(Matrix, Matrix)> {
    if !(dt > 0.0) {
        return Err(Error::InvalidConfig(format!("dt must be positive, got {dt}")));
    }
    let n = a.rows();
    let m = b.cols();
    if !a.is_square() || b.rows() != n {
        return Err(Error::DimensionMismatch("discretize needs A n×n and B n×m".into()));
    }
    let mut aug = Matrix::zeros(n + m, n + m);
    aug.set_block(0, 0, a);
    aug.set_block(0, n, b);
    let e = expm(&aug.scale(dt))?;
    Ok((e.submatrix(0, 0, n, n), e.submatrix(0, n, n, m)))
}

pub fn simulate<S: LinearSystem + ?Sized>(sys: &S, cfg: &SimConfig) -> Result<Trajectory> {
    match cfg.method {
        Method::ExactDiscretization => lsim(sys, cfg),
        Method::Rk4 => rk4_sim(sys, cfg),
    }
}

fn record<S: LinearSystem + ?Sized>(sys: &S, cfg: &SimConfig, step: impl FnMut(&[f64], f64) -> Vec<f64>) -> Trajectory {
    let mut step = step;
    let steps = cfg.steps();
    let mut times = Vec::with_capacity(steps + 1);
    let mut states = Vec::with_capacity(steps + 1);
    let mut output = Vec::with_capacity(steps + 1);
    let mut input = Vec::with_capacity(steps + 1);
    let mut x = cfg.x0.clone();
    for k in 0..=steps {
        let u = cfg.input.at(k);
        times.push(k as f64 * cfg.dt);
        output.push(sys.c().mul_vec(&x)[0]);
        input.push(u);
        let next = if k < steps { Some(step(&x, u)) } else { None };
        states.push(x);
        match next {
            Some(n) => x = n,
            None => break,
        }
    }
    Trajectory {
        times,
        states,
        output,
        input,
        state_labels: sys.state_labels().to_vec(),
    }
}

/// `x[k+1] = A_d x[k] + B_d u[k]`, `y[k] = C x[k]`.
pub fn lsim<S: LinearSystem + ?Sized>(sys: &S, cfg: &SimConfig) -> Result<Trajectory> {
    cfg.validate(sys.order())?;
    let (ad, bd) = discretize(sys.a(), sys.b(), cfg.dt)?;
    let bd = bd.column_vec(0);
    Ok(record(sys, cfg, |x, u| {
        let mut next = ad.mul_vec(x);
        for (n, b) in next.iter_mut().zip(&bd) {
            *n += b * u;
        }
        next
    }))
}

/// Classical fourth-order Runge-Kutta with the input held over each sample.
pub fn rk4_sim<S: LinearSystem + ?Sized>(sys: &S, cfg: &SimConfig) -> Result<Trajectory> {
    cfg.validate(sys.order())?;
    let a = sys.a();
    let b = sys.b().column_vec(0);
    let h = cfg.dt / cfg.rk4_substeps as f64;
    let f = |x: &[f64], u: f64| -> Vec<f64> {
        let mut dx = a.mul_vec(x);
        for (d, bi) in dx.iter_mut().zip(&b) {
            *d += bi * u;
        }
        dx
    };
    let axpy = |x: &[f64], k: &[f64], s: f64| -> Vec<f64> { x.iter().zip(k).map(|(xi, ki)| xi + s * ki).collect() };
    Ok(record(sys, cfg, |x0, u| {
        let mut x = x0.to_vec();
        for _ in 0..cfg.rk4_substeps {
            let k1 = f(&x, u);
            let k2 = f(&axpy(&x, &k1, h / 2.0), u);
            let k3 = f(&axpy(&x, &k2, h / 2.0), u);
            let k4 = f(&axpy(&x, &k3, h), u);
            for i in 0..x.len() {
                x[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
            }
        }
        x
    }))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StepMetrics {
    pub final_value: f64,
    /// `max(0, peak − target)`
    pub overshoot: f64,
    /// First time after which the output stays inside the band; `None` if it never settles.
    pub settling_time: Option<f64>,
    pub band: f64,
    pub peak: f64,
    pub peak_time: f64,
}

impl StepMetrics {
    pub fn settled(&self) -> bool {
        self.settling_time.is_some()
    }
}

pub fn step_metrics(traj: &Trajectory, target: f64, band: f64) -> Result<StepMetrics> {
    if traj.is_empty() {
        return Err(Error::InvalidConfig("empty trajectory".into()));
    }
    let (peak_idx, peak) =
        traj.output.iter().copied().enumerate().fold(
            (0, f64::NEG_INFINITY),
            |best, (i, y)| if y > best.1 { (i, y) } else { best },
        );
    let last_outside = traj.output.iter().rposition(|y| (y - target).abs() > band);
    let settling_time = match last_outside {
        None => Some(traj.times[0]),
        Some(i) if i + 1 < traj.len() => Some(traj.times[i + 1]),
        Some(_) => None,
    };
    Ok(StepMetrics {
        final_value: *traj.output.last().expect("non-empty"),
        overshoot: (peak - target).max(0.0),
        settling_time,
        band,
        peak,
        peak_time: traj.times[peak_idx],
    })
}
