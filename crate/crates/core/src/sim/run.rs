use std::path::Path;

use rayon::prelude::*;

use crate::dynamics::{solve_instant, DynamicsResult};
use crate::error::{Error, Result};
use crate::kinematics::{LegSolution, PlatformState};
use crate::model::{LegIndex, RobotParams};
use crate::oracle::{energy_report, newton_euler_solve, EnergyReport};
use crate::sim::config::SimConfig;
use crate::sim::csv::to_csv_string;
use crate::sim::plot::{render_svg, write_svg, Series};

/// Largest tolerated disagreement between virtual-work and Newton–Euler forces, N.
pub const NE_FORCE_TOL: f64 = 1e-8;
/// Largest tolerated `|Σp - dE/dt|`, relative to `max(1, |Σp|)`.
pub const ENERGY_RATE_TOL: f64 = 1e-6;

#[derive(Clone, Debug, PartialEq)]
pub struct Sample {
    pub t: f64,
    pub pose: PlatformState,
    pub legs: [LegSolution; 3],
    pub dynamics: DynamicsResult,
    pub energy: EnergyReport,
    /// Largest force disagreement with the Newton–Euler oracle (or its own
    /// residual, whichever is larger); zero when the oracle is off.
    pub ne_residual: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct TimeSeries {
    pub scenario: String,
    pub duration: f64,
    pub samples: Vec<Sample>,
}

impl TimeSeries {
    pub fn times(&self) -> Vec<f64> {
        self.samples.iter().map(|s| s.t).collect()
    }

    pub fn max_ne_residual(&self) -> f64 {
        self.samples.iter().map(|s| s.ne_residual).fold(0.0, f64::max)
    }

    /// Largest scaled energy-balance residual over the run.
    pub fn max_energy_residual(&self) -> f64 {
        self.samples
            .iter()
            .map(|s| s.energy.balance_residual().abs() / s.energy.sum_power.abs().max(1.0))
            .fold(0.0, f64::max)
    }
}

/// Evaluates one instant; with `oracle` the Newton–Euler solve runs too.
pub fn evaluate_sample(params: &RobotParams, pose: &PlatformState, t: f64, oracle: bool) -> Result<Sample> {
    let sol = solve_instant(params, pose)?;
    let mut dynamics = sol.dynamics;
    dynamics.time = Some(t);
    let energy = energy_report(params, pose, &sol.legs, dynamics.total_power());
    let ne_residual = if oracle {
        let ne = newton_euler_solve(params, pose, &sol.legs)?;
        LegIndex::ALL
            .iter()
            .map(|l| {
                let (v, n) = (dynamics.leg(*l), &ne.legs[l.idx()]);
                (v.f10 - n.actuator).abs().max((v.f21y - n.revolute_y).abs()).max((v.f21z - n.revolute_z).abs())
            })
            .fold(ne.residual, f64::max)
    } else {
        0.0
    };
    Ok(Sample { t, pose: *pose, legs: sol.legs, dynamics, energy, ne_residual })
}

/// Samples the scenario without writing anything.
pub fn simulate(config: &SimConfig) -> Result<TimeSeries> {
    config.validate()?;
    let sc = &config.scenario;
    let samples = sc
        .sample_times()
        .into_par_iter()
        .map(|t| {
            evaluate_sample(&config.params, &sc.eval(t), t, config.oracle).map_err(|e| match e {
                e if e.is_singular() => Error::SingularAt { t, source: Box::new(e) },
                e => e,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(TimeSeries { scenario: sc.name.clone(), duration: sc.duration, samples })
}

/// Samples the scenario, writes the configured CSV and plots, then checks
/// the oracle residuals.
pub fn run_sim(config: &SimConfig) -> Result<TimeSeries> {
    let series = simulate(config)?;
    let csv = to_csv_string(&series)?;
    if let Some(out) = &config.out {
        if let Some(dir) = out.parent().filter(|d| !d.as_os_str().is_empty()) {
            std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
        }
        std::fs::write(out, csv).map_err(|e| Error::io(out, e))?;
    }
    if config.plots {
        let dir = config.plots_dir.clone().unwrap_or_else(|| "plots".into());
        write_plots(&series, &dir.join(&series.scenario))?;
    }
    if config.oracle {
        let ne = series.max_ne_residual();
        if ne > NE_FORCE_TOL {
            return Err(Error::OracleResidual(format!("Newton–Euler disagreement {ne:e} N exceeds {NE_FORCE_TOL:e}")));
        }
        let en = series.max_energy_residual();
        if en > ENERGY_RATE_TOL {
            return Err(Error::OracleResidual(format!("energy-balance residual {en:e} exceeds {ENERGY_RATE_TOL:e}")));
        }
    }
    Ok(series)
}

/// Writes `powers.svg`, `f21y.svg` and `f21z.svg` into `dir`.
pub fn write_plots(series: &TimeSeries, dir: &Path) -> Result<()> {
    let t = series.times();
    let figures: [(&str, &str, &str, fn(&Sample, usize) -> f64); 3] = [
        ("powers.svg", "Actuator powers p10", "W", |s, i| s.dynamics.legs[i].p10),
        ("f21y.svg", "Joint forces f21y", "N", |s, i| s.dynamics.legs[i].f21y),
        ("f21z.svg", "Joint forces f21z", "N", |s, i| s.dynamics.legs[i].f21z),
    ];
    for (file, title, unit, get) in figures {
        let series_list: Vec<Series> = LegIndex::ALL
            .iter()
            .map(|l| Series { label: l.name(), values: series.samples.iter().map(|s| get(s, l.idx())).collect() })
            .collect();
        let svg = render_svg(&format!("{title} ({})", series.scenario), unit, &t, series.duration, &series_list);
        write_svg(&dir.join(file), &svg)?;
    }
    Ok(())
}
