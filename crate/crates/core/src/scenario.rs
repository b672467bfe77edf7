//! Standard simulation set-ups: an oven preheated to `preheat` with the food
//! at `ambient`, either held at the preheat drive (open loop) or regulated to
//! the food's target (closed loop).

use crate::control::{self, ClosedLoop, Design, PoleSet};
use crate::error::Result;
use crate::plant::{self, FoodPreset, OvenSpec, StateSpace};
use crate::sim::{self, Input, SimConfig, StepMetrics, Trajectory, DEFAULT_T_FINAL};

/// Closed-loop horizons cover this many time constants of the slowest controller pole.
pub const HORIZON_TIME_CONSTANTS: f64 = 10.0;

#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub oven: OvenSpec,
    pub food: FoodPreset,
    pub plant: StateSpace,
}

impl Scenario {
    pub fn new(oven: OvenSpec, food: FoodPreset) -> Result<Self> {
        let plant = plant::build_plant(&oven, &food)?;
        Ok(Self { oven, food, plant })
    }

    pub fn preset(name: &str) -> Result<Self> {
        let (oven, food) = plant::preset(name)?;
        Self::new(oven, food)
    }

    pub fn name(&self) -> &str {
        &self.food.body.name
    }

    pub fn target(&self) -> f64 {
        self.food.target_temp
    }

    /// `(preheat, preheat, ambient)`
    pub fn initial_plant_state(&self) -> Vec<f64> {
        vec![self.oven.preheat, self.oven.preheat, self.oven.ambient]
    }

    pub fn open_loop_config(&self, dt: f64, t_final: f64) -> SimConfig {
        SimConfig::new(self.initial_plant_state(), Input::Constant(self.oven.preheat)).with_step(dt, t_final)
    }

    /// Closed-loop run from the standard plant state. The estimate starts at
    /// the true plant state unless `x0_hat` is given.
    pub fn closed_loop_config(
        &self,
        cl: &ClosedLoop,
        x0_hat: Option<&[f64]>,
        dt: f64,
        t_final: f64,
    ) -> Result<SimConfig> {
        let x0 = self.initial_plant_state();
        let x0_hat = x0_hat.map(<[f64]>::to_vec).unwrap_or_else(|| x0.clone());
        let aug = cl.initial_state(&x0, &x0_hat)?;
        Ok(SimConfig::new(aug, Input::Constant(cl.gains.n_ff * self.target())).with_step(dt, t_final))
    }

    pub fn design(&self, poles: &PoleSet, with_feedforward: bool) -> Result<Design> {
        control::design(&self.plant, poles, with_feedforward)
    }
}

/// Default closed-loop horizon: at least `DEFAULT_T_FINAL`, longer for slow designs.
pub fn closed_loop_horizon(poles: &PoleSet) -> f64 {
    DEFAULT_T_FINAL.max(HORIZON_TIME_CONSTANTS / poles.slowest_controller_rate())
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClosedLoopRun {
    pub design: Design,
    pub trajectory: Trajectory,
    pub metrics: StepMetrics,
}

/// Designs, simulates and summarises one closed-loop run.
pub fn run_closed_loop(
    scenario: &Scenario,
    poles: &PoleSet,
    with_feedforward: bool,
    cfg_for: impl FnOnce(&ClosedLoop) -> Result<SimConfig>,
    band: f64,
) -> Result<ClosedLoopRun> {
    let design = scenario.design(poles, with_feedforward)?;
    let cfg = cfg_for(&design.closed_loop)?;
    let trajectory = sim::simulate(&design.closed_loop, &cfg)?;
    let metrics = sim::step_metrics(&trajectory, scenario.target(), band)?;
    Ok(ClosedLoopRun {
        design,
        trajectory,
        metrics,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::control::default_poles;
    use crate::sim::DEFAULT_SETTLING_BAND;

    #[test]
    fn horizons() {
        assert_eq!(closed_loop_horizon(&default_poles("steak").unwrap()), 100.0);
        assert!((closed_loop_horizon(&default_poles("potato").unwrap()) - 200.0).abs() < 1e-9);
    }

    #[test]
    fn closed_loop_config_defaults_to_zero_error() {
        let s = Scenario::preset("chicken").unwrap();
        let d = s.design(&default_poles("chicken").unwrap(), true).unwrap();
        let cfg = s.closed_loop_config(&d.closed_loop, None, 0.01, 1.0).unwrap();
        assert_eq!(cfg.x0, vec![400.0, 400.0, 80.0, 0.0, 0.0, 0.0]);
        assert_eq!(cfg.input, Input::Constant(d.gains().n_ff * 165.0));
        let cfg = s
            .closed_loop_config(&d.closed_loop, Some(&[80.0, 80.0, 80.0]), 0.01, 1.0)
            .unwrap();
        assert_eq!(&cfg.x0[3..], &[320.0, 320.0, 0.0]);
    }

    #[test]
    fn chicken_closed_loop_reaches_target() {
        let s = Scenario::preset("chicken").unwrap();
        let poles = default_poles("chicken").unwrap();
        let run = run_closed_loop(
            &s,
            &poles,
            true,
            |cl| s.closed_loop_config(cl, None, 1e-2, 100.0),
            DEFAULT_SETTLING_BAND,
        )
        .unwrap();
        assert!((run.metrics.final_value - 165.0).abs() < 0.5);
        assert!(run.metrics.overshoot < 0.5);
        assert!(run.metrics.settled());
    }
}
