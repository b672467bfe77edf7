//! Batch evaluation over independent inputs.
//!
//! Every item is processed by a pure function, so results are identical
//! whichever execution strategy runs them; only wall-clock time differs.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::control::PoleSet;
use crate::error::Result;
use crate::scenario::{self, ClosedLoopRun, Scenario};
use crate::sim::StepMetrics;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum Execution {
    #[cfg_attr(not(feature = "parallel"), default)]
    Sequential,
    #[cfg(feature = "parallel")]
    #[default]
    Parallel,
}

/// Order-preserving map over `items`.
pub fn map<T, R, F>(exec: Execution, items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    match exec {
        Execution::Sequential => items.iter().map(f).collect(),
        #[cfg(feature = "parallel")]
        Execution::Parallel => items.par_iter().map(f).collect(),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepPoint {
    pub scale: f64,
    pub poles: PoleSet,
    pub metrics: StepMetrics,
    pub run: ClosedLoopRun,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepSettings {
    pub dt: f64,
    /// `None` picks the horizon from each scaled pole set.
    pub t_final: Option<f64>,
    pub with_feedforward: bool,
    pub band: f64,
}

/// Closed-loop runs with every pole of `base` multiplied by each factor in `scales`.
pub fn pole_scale_sweep(
    scenario: &Scenario,
    base: &PoleSet,
    scales: &[f64],
    x0_hat: Option<&[f64]>,
    settings: SweepSettings,
    exec: Execution,
) -> Vec<Result<SweepPoint>> {
    map(exec, scales, |&scale| {
        let poles = base.scaled(scale)?;
        let t_final = settings
            .t_final
            .unwrap_or_else(|| scenario::closed_loop_horizon(&poles));
        let run = scenario::run_closed_loop(
            scenario,
            &poles,
            settings.with_feedforward,
            |cl| scenario.closed_loop_config(cl, x0_hat, settings.dt, t_final),
            settings.band,
        )?;
        Ok(SweepPoint {
            scale,
            poles,
            metrics: run.metrics,
            run,
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::control::default_poles;

    #[test]
    fn map_preserves_order() {
        let items: Vec<u32> = (0..257).collect();
        let seq = map(Execution::Sequential, &items, |x| x * x);
        let def = map(Execution::default(), &items, |x| x * x);
        assert_eq!(seq, def);
        assert_eq!(seq[16], 256);
    }

    #[test]
    fn sweep_is_execution_independent() {
        let s = Scenario::preset("steak").unwrap();
        let base = default_poles("steak").unwrap();
        let settings = SweepSettings {
            dt: 1e-2,
            t_final: Some(20.0),
            with_feedforward: true,
            band: 1.0,
        };
        let scales = [0.5, 1.0, 2.0];
        let a = pole_scale_sweep(&s, &base, &scales, None, settings, Execution::Sequential);
        let b = pole_scale_sweep(&s, &base, &scales, None, settings, Execution::default());
        let a: Vec<_> = a.into_iter().map(|r| r.unwrap()).collect();
        let b: Vec<_> = b.into_iter().map(|r| r.unwrap()).collect();
        assert_eq!(a, b);
        assert_eq!(a[2].poles.controller[0].re, -78.0);
        assert!(pole_scale_sweep(&s, &base, &[-1.0], None, settings, Execution::Sequential)[0].is_err());
    }
}
