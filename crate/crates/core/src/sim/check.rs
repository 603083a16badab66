//! The property and oracle suite behind `prp3 check`.

use std::fmt;

use serde::Serialize;

use crate::error::Result;
use crate::kinematics::{inverse_geometry, loop_closure_residual, solve_legs, LegSolution};
use crate::model::{LegIndex, RobotParams};
use crate::oracle::{fd_derivative, newton_euler_solve};
use crate::sim::config::SimConfig;
use crate::sim::run::simulate;
use crate::sim::scenario::Scenario;

/// Finite-difference step for kinematic differentiation checks, s.
pub const FD_STEP: f64 = 1e-6;
/// Absolute floor added to relative tolerances, for channels passing
/// through zero.
pub const FD_ABS_FLOOR: f64 = 1e-10;

#[derive(Clone, Debug, Serialize)]
pub struct CheckItem {
    pub name: String,
    pub value: f64,
    pub tolerance: f64,
    pub passed: bool,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct CheckReport {
    pub items: Vec<CheckItem>,
}

impl CheckReport {
    fn push(&mut self, name: String, value: f64, tolerance: f64) {
        let passed = value <= tolerance;
        self.items.push(CheckItem { name, value, tolerance, passed });
    }

    pub fn all_passed(&self) -> bool {
        self.items.iter().all(|i| i.passed)
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in &self.items {
            writeln!(f, "[{}] {:<40} {:>12.3e} <= {:.1e}", if i.passed { "PASS" } else { "FAIL" }, i.name, i.value, i.tolerance)?;
        }
        Ok(())
    }
}

/// `|fd - a| / (rel·|a| + FD_ABS_FLOOR)`; at most 1 when within tolerance.
pub fn scaled_error(fd: f64, analytic: f64, rel: f64) -> f64 {
    (fd - analytic).abs() / (rel * analytic.abs() + FD_ABS_FLOOR)
}

fn channels(legs: &[LegSolution; 3], order: usize) -> [f64; 6] {
    let mut out = [0.0; 6];
    for (i, s) in legs.iter().enumerate() {
        let (a, b) = match order {
            0 => (s.lambda10, s.lambda32),
            1 => (s.lambda10d, s.lambda32d),
            _ => (s.lambda10dd, s.lambda32dd),
        };
        out[2 * i] = a;
        out[2 * i + 1] = b;
    }
    out
}

/// Worst scaled error of finite-differenced joint channels of `order` against
/// the analytic channels of `order + 1`, over the scenario's samples.
pub fn fd_kinematics_error(params: &RobotParams, sc: &Scenario, order: usize, rel: f64) -> Result<f64> {
    let mut worst = 0.0_f64;
    for t in sc.sample_times() {
        let analytic = channels(&solve_legs(params, &sc.eval(t))?, order + 1);
        let at = |t: f64| solve_legs(params, &sc.eval(t)).map(|l| channels(&l, order));
        let (plus, minus) = (at(t + FD_STEP)?, at(t - FD_STEP)?);
        for j in 0..6 {
            let fd = fd_derivative(|s| if s > t { plus[j] } else { minus[j] }, t, FD_STEP);
            worst = worst.max(scaled_error(fd, analytic[j], rel));
        }
    }
    Ok(worst)
}

/// `|∫Σp dt - ΔE|` by the trapezoidal rule on the scenario's sample grid.
pub fn energy_integral_error(params: &RobotParams, sc: &Scenario) -> Result<f64> {
    let cfg = SimConfig { scenario: sc.clone(), params: params.clone(), oracle: false, ..Default::default() };
    let series = simulate(&cfg)?;
    let s = &series.samples;
    let work: f64 = s.windows(2).map(|w| 0.5 * (w[1].t - w[0].t) * (w[0].energy.sum_power + w[1].energy.sum_power)).sum();
    let delta = s.last().unwrap().energy.total() - s[0].energy.total();
    Ok((work - delta).abs())
}

/// Runs every check over both built-in scenarios sampled at `dt`. The
/// energy integral always uses a 1 ms grid.
pub fn run_checks(params: &RobotParams, dt: f64) -> Result<CheckReport> {
    let mut r = CheckReport::default();
    for base in [Scenario::vertical(), Scenario::rotation()] {
        let sc = base.with_dt(dt);
        let name = sc.name.clone();
        let mut closure = 0.0_f64;
        for t in sc.sample_times() {
            let pose = sc.eval(t);
            let legs = inverse_geometry(params, &pose)?;
            for leg in LegIndex::ALL {
                closure = closure.max(loop_closure_residual(params, &pose, leg, &legs[leg.idx()]));
            }
        }
        r.push(format!("{name}: loop closure [m]"), closure, 1e-12);
        r.push(format!("{name}: rates vs fd (scaled)"), fd_kinematics_error(params, &sc, 0, 1e-6)?, 1.0);
        r.push(format!("{name}: accels vs fd (scaled)"), fd_kinematics_error(params, &sc, 1, 1e-5)?, 1.0);

        let cfg = SimConfig { scenario: sc.clone(), params: params.clone(), oracle: true, ..Default::default() };
        let series = simulate(&cfg)?;
        let balance = series.samples.iter().map(|s| s.energy.balance_residual().abs()).fold(0.0, f64::max);
        r.push(format!("{name}: |sum p - dE/dt| [W]"), balance, 1e-6);
        r.push(format!("{name}: virtual work vs newton-euler [N]"), series.max_ne_residual(), 1e-8);
        let mut ne_res = 0.0_f64;
        for s in &series.samples {
            ne_res = ne_res.max(newton_euler_solve(params, &s.pose, &s.legs)?.residual);
        }
        r.push(format!("{name}: newton-euler residual"), ne_res, 1e-10);
        r.push(format!("{name}: energy integral [J]"), energy_integral_error(params, &sc.clone().with_dt(1e-3))?, 1e-6);
    }
    Ok(r)
}
