//! Observer-based state feedback for single-input single-output plants.
//!
//! Gains come from Ackermann's formula; the observer gain is the dual
//! placement on `(Aᵀ, Cᵀ)`. With the estimation error `e = x − x̂` as the
//! second half of the state, the loop under `u = −K x̂ + N r` is
//!
//! ```text
//! d/dt [x]   [A − BK    BK  ] [x]   [B]
//!      [e] = [  0     A − LC] [e] + [0] N r,     y = [C 0] [x; e]
//! ```

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::{self, eigenvalues, Matrix, Polynomial, Spectrum};
use crate::plant::{controllability_matrix, StateSpace};

/// Observer poles are expected to be at least this many times faster than the controller's.
pub const OBSERVER_SPEEDUP: f64 = 5.0;

const ILL_CONDITIONED_RESIDUAL: f64 = 1e-6;
const DC_GAIN_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PoleSet {
    pub controller: Vec<Complex64>,
    pub observer: Vec<Complex64>,
}

impl PoleSet {
    /// Validates that both sets are conjugate-closed and strictly stable.
    pub fn new(controller: Vec<Complex64>, observer: Vec<Complex64>) -> Result<Self> {
        for p in controller.iter().chain(&observer) {
            if !(p.re < 0.0) {
                return Err(Error::UnstablePole { re: p.re, im: p.im });
            }
        }
        matrix::check_conjugate_closed(&controller)?;
        matrix::check_conjugate_closed(&observer)?;
        Ok(Self { controller, observer })
    }

    pub fn from_real(controller: &[f64], observer: &[f64]) -> Result<Self> {
        Self::new(matrix::real_roots(controller), matrix::real_roots(observer))
    }

    /// Every pole multiplied by `factor`.
    pub fn scaled(&self, factor: f64) -> Result<Self> {
        Self::new(
            self.controller.iter().map(|p| p * factor).collect(),
            self.observer.iter().map(|p| p * factor).collect(),
        )
    }

    /// Slowest controller decay rate, `min |Re p|`.
    pub fn slowest_controller_rate(&self) -> f64 {
        self.controller.iter().map(|p| p.re.abs()).fold(f64::INFINITY, f64::min)
    }

    /// Design-guideline violations. These never block a design.
    pub fn guideline_warnings(&self) -> Vec<String> {
        let mut warnings = Vec::new();
        let mut ctrl: Vec<f64> = self.controller.iter().map(|p| p.re.abs()).collect();
        let mut obs: Vec<f64> = self.observer.iter().map(|p| p.re.abs()).collect();
        ctrl.sort_by(f64::total_cmp);
        obs.sort_by(f64::total_cmp);
        for (i, (c, o)) in ctrl.iter().zip(&obs).enumerate() {
            if *o < OBSERVER_SPEEDUP * c * (1.0 - 1e-12) {
                warnings.push(format!(
                    "observer pole {i} (|Re| = {o}) is less than {OBSERVER_SPEEDUP}x faster than controller pole {i} (|Re| = {c})"
                ));
            }
        }
        for (label, set) in [("controller", &self.controller), ("observer", &self.observer)] {
            for i in 0..set.len() {
                for j in i + 1..set.len() {
                    if (set[i] - set[j]).norm() <= 1e-9 * set[i].norm().max(1.0) {
                        warnings.push(format!("repeated {label} pole {}", set[i]));
                    }
                }
            }
        }
        for c in &self.controller {
            if self.observer.iter().any(|o| (o - c).norm() <= 1e-9 * c.norm().max(1.0)) {
                warnings.push(format!("controller pole {c} coincides with an observer pole"));
            }
        }
        warnings
    }
}

/// Tabulated controller and observer poles for the built-in foods.
pub fn default_poles(food: &str) -> Result<PoleSet> {
    let (ctrl, obs): ([f64; 3], [f64; 3]) = match food.to_ascii_lowercase().as_str() {
        "steak" => ([-39.0, -0.1, -1.0], [-195.0, -0.5, -5.0]),
        "chicken" => ([-27.0, -0.1, -1.0], [-135.0, -0.5, -5.0]),
        "potato" => ([-38.5, -0.05, -0.97], [-192.5, -0.25, -4.85]),
        _ => return Err(Error::UnknownPreset { name: food.to_string() }),
    };
    PoleSet::from_real(&ctrl, &obs)
}

/// State-feedback gain `K` (1×n) placing the eigenvalues of `A − B K` at `poles`.
pub fn place(a: &Matrix, b: &Matrix, poles: &[Complex64]) -> Result<Matrix> {
    let n = a.rows();
    if !a.is_square() || b.rows() != n {
        return Err(Error::DimensionMismatch(format!(
            "A is {}x{}, B is {}x{}",
            a.rows(),
            a.cols(),
            b.rows(),
            b.cols()
        )));
    }
    if b.cols() != 1 {
        return Err(Error::NotSiso);
    }
    if poles.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "{} poles requested for an order-{n} system",
            poles.len()
        )));
    }
    let desired = Polynomial::from_roots(poles)?;
    let ctrb = controllability_matrix(a, b);
    let rank = matrix::rank_default(&ctrb);
    if rank < n {
        return Err(Error::Uncontrollable { rank, order: n });
    }

    // K = e_nᵀ · Ctrb⁻¹ · p(A); the row e_nᵀ Ctrb⁻¹ solves Ctrbᵀ w = e_n.
    let mut e_n = Matrix::zeros(n, 1);
    e_n[(n - 1, 0)] = 1.0;
    let ctrb_t = ctrb.transpose();
    let w = matrix::solve(&ctrb_t, &e_n).map_err(|e| match e {
        Error::SingularMatrix => Error::IllConditioned(f64::INFINITY),
        other => other,
    })?;
    let residual = (&(&ctrb_t * &w) - &e_n).norm_inf() / (ctrb_t.norm_inf() * w.norm_inf()).max(1.0);
    if !(residual <= ILL_CONDITIONED_RESIDUAL) {
        return Err(Error::IllConditioned(residual));
    }
    Ok(&w.transpose() * &desired.eval_matrix(a))
}

/// Observer injection gain `L` (n×1) placing the eigenvalues of `A − L C` at `poles`.
pub fn observer_gain(a: &Matrix, c: &Matrix, poles: &[Complex64]) -> Result<Matrix> {
    if c.rows() != 1 {
        return Err(Error::NotSiso);
    }
    match place(&a.transpose(), &c.transpose(), poles) {
        Ok(k) => Ok(k.transpose()),
        Err(Error::Uncontrollable { rank, order }) => Err(Error::Unobservable { rank, order }),
        Err(e) => Err(e),
    }
}

/// Reference gain `N = −1 / (C (A − BK)⁻¹ B)` giving unit closed-loop DC gain.
pub fn feedforward(a: &Matrix, b: &Matrix, c: &Matrix, k: &Matrix) -> Result<f64> {
    let acl = a - &(b * k);
    let x = matrix::solve(&acl, b).map_err(|e| match e {
        Error::SingularMatrix => Error::SingularDcGain,
        other => other,
    })?;
    let g = (c * &x)[(0, 0)];
    if g.abs() <= DC_GAIN_TOL {
        return Err(Error::SingularDcGain);
    }
    Ok(-1.0 / g)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GainSet {
    /// 1×n state-feedback gain.
    pub k: Matrix,
    /// n×1 observer output injection.
    pub l: Matrix,
    /// Reference pre-scaling, 1.0 when disabled.
    pub n_ff: f64,
}

/// Plant plus observer-based controller in `(x, e)` coordinates.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClosedLoop {
    pub a_fb: Matrix,
    pub b_fb: Matrix,
    pub c_fb: Matrix,
    pub state_labels: Vec<String>,
    pub gains: GainSet,
}

impl ClosedLoop {
    /// Plant order `n`; the augmented system has order `2n`.
    pub fn plant_order(&self) -> usize {
        self.a_fb.rows() / 2
    }

    /// Augmented initial state `[x0; x0 − x̂0]`.
    pub fn initial_state(&self, x0: &[f64], x0_hat: &[f64]) -> Result<Vec<f64>> {
        let n = self.plant_order();
        if x0.len() != n || x0_hat.len() != n {
            return Err(Error::DimensionMismatch(format!(
                "initial state and estimate must have {n} entries"
            )));
        }
        Ok(x0
            .iter()
            .copied()
            .chain(x0.iter().zip(x0_hat).map(|(x, xh)| x - xh))
            .collect())
    }

    /// `x̂ = x − e` from an augmented state.
    pub fn estimate(&self, state: &[f64]) -> Vec<f64> {
        let n = self.plant_order();
        (0..n).map(|i| state[i] - state[n + i]).collect()
    }

    /// Plant input `u = −K x̂ + N r` given the reference already scaled by `N`.
    pub fn plant_input(&self, state: &[f64], scaled_reference: f64) -> f64 {
        let xhat = self.estimate(state);
        scaled_reference - self.gains.k.mul_vec(&xhat)[0]
    }
}

/// Builds the augmented closed loop from a plant and gains.
pub fn augment(ss: &StateSpace, gains: &GainSet) -> Result<ClosedLoop> {
    let n = ss.order();
    if gains.k.shape() != (ss.b.cols(), n) || gains.l.shape() != (n, ss.c.rows()) {
        return Err(Error::DimensionMismatch(format!(
            "K is {}x{}, L is {}x{} for an order-{n} plant",
            gains.k.rows(),
            gains.k.cols(),
            gains.l.rows(),
            gains.l.cols()
        )));
    }
    let bk = &ss.b * &gains.k;
    let a_ctrl = &ss.a - &bk;
    let a_obs = &ss.a - &(&gains.l * &ss.c);
    let zero_a = Matrix::zeros(n, n);
    let a_fb = Matrix::block(&[&[&a_ctrl, &bk], &[&zero_a, &a_obs]])?;
    let b_fb = Matrix::block(&[&[&ss.b], &[&Matrix::zeros(n, ss.b.cols())]])?;
    let c_fb = Matrix::block(&[&[&ss.c, &Matrix::zeros(ss.c.rows(), n)]])?;
    let state_labels = ss
        .state_labels
        .iter()
        .cloned()
        .chain(ss.state_labels.iter().map(|l| format!("e_{l}")))
        .collect();
    Ok(ClosedLoop {
        a_fb,
        b_fb,
        c_fb,
        state_labels,
        gains: gains.clone(),
    })
}

/// Full observer-based design for one plant and pole set.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Design {
    pub poles: PoleSet,
    pub closed_loop: ClosedLoop,
    pub warnings: Vec<String>,
}

impl Design {
    pub fn gains(&self) -> &GainSet {
        &self.closed_loop.gains
    }
}

pub fn design(ss: &StateSpace, poles: &PoleSet, with_feedforward: bool) -> Result<Design> {
    let k = place(&ss.a, &ss.b, &poles.controller)?;
    let l = observer_gain(&ss.a, &ss.c, &poles.observer)?;
    let n_ff = if with_feedforward {
        feedforward(&ss.a, &ss.b, &ss.c, &k)?
    } else {
        1.0
    };
    let closed_loop = augment(ss, &GainSet { k, l, n_ff })?;
    Ok(Design {
        poles: poles.clone(),
        closed_loop,
        warnings: poles.guideline_warnings(),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StabilityReport {
    pub poles: Spectrum,
    pub asymptotically_stable: bool,
    pub controllability_rank: usize,
    pub observability_rank: usize,
    pub order: usize,
}

impl StabilityReport {
    pub fn controllable(&self) -> bool {
        self.controllability_rank == self.order
    }

    pub fn observable(&self) -> bool {
        self.observability_rank == self.order
    }
}

/// Open-loop poles, stability verdict and structural ranks.
pub fn analyze(ss: &StateSpace) -> Result<StabilityReport> {
    let poles = eigenvalues(&ss.a)?;
    Ok(StabilityReport {
        asymptotically_stable: poles.is_hurwitz(),
        controllability_rank: matrix::rank_default(&ss.controllability_matrix()),
        observability_rank: matrix::rank_default(&ss.observability_matrix()),
        order: ss.order(),
        poles,
    })
}
