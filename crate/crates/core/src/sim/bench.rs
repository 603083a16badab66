//! Cost comparison of the recursive virtual-work solve against the dense
//! Newton–Euler solve of all joint reactions.

use std::hint::black_box;
use std::time::{Duration, Instant};

use serde::Serialize;

use crate::dynamics::{solve_instant_from_legs, DynamicsResult};
use crate::error::{Error, Result};
use crate::kinematics::{solve_legs, LegSolution, PlatformState};
use crate::model::{LegIndex, RobotParams};
use crate::opcount;
use crate::oracle::{newton_euler_solve, ConstraintSolution};
use crate::sim::config::SimConfig;
use crate::sim::run::NE_FORCE_TOL;

#[derive(Clone, Debug, Serialize)]
pub struct PathCost {
    pub total: Duration,
    /// `None` when no evaluations were timed.
    pub mean: Option<Duration>,
    /// Kernel flops of one evaluation; `None` without the `opcount` feature.
    pub flops: Option<u64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct BenchReport {
    pub n: usize,
    pub pose: PlatformState,
    /// Largest force difference between the two paths before timing, N.
    pub agreement: f64,
    pub virtual_work: PathCost,
    pub newton_euler: PathCost,
}

impl BenchReport {
    /// Whether the recursive path needs strictly fewer kernel flops.
    pub fn recursive_is_cheaper(&self) -> Option<bool> {
        Some(self.virtual_work.flops? < self.newton_euler.flops?)
    }
}

fn virtual_work_path(params: &RobotParams, pose: &PlatformState, legs: [LegSolution; 3]) -> Result<DynamicsResult> {
    Ok(solve_instant_from_legs(params, pose, legs)?.dynamics)
}

fn newton_euler_path(params: &RobotParams, pose: &PlatformState, legs: &[LegSolution; 3]) -> Result<ConstraintSolution> {
    newton_euler_solve(params, pose, legs)
}

fn disagreement(vw: &DynamicsResult, ne: &ConstraintSolution) -> f64 {
    LegIndex::ALL
        .iter()
        .map(|l| {
            let (v, n) = (vw.leg(*l), &ne.legs[l.idx()]);
            (v.f10 - n.actuator).abs().max((v.f21y - n.revolute_y).abs()).max((v.f21z - n.revolute_z).abs())
        })
        .fold(0.0, f64::max)
}

fn time_path<R>(n: usize, mut f: impl FnMut() -> Result<R>) -> Result<PathCost> {
    let (first, flops) = opcount::measure(&mut f);
    first?;
    let start = Instant::now();
    for _ in 0..n {
        black_box(f()?);
    }
    let total = start.elapsed();
    let mean = (n > 0).then(|| total / n as u32);
    Ok(PathCost { total, mean, flops })
}

/// Times `config.bench_n` inverse-dynamics evaluations per path at the
/// scenario's mid-point. Both paths start from the same solved joint motion.
pub fn bench(config: &SimConfig) -> Result<BenchReport> {
    config.validate()?;
    let params = &config.params;
    let pose = config.scenario.eval(0.5 * config.scenario.duration);
    let legs = solve_legs(params, &pose)?;

    let vw = virtual_work_path(params, &pose, legs)?;
    let ne = newton_euler_path(params, &pose, &legs)?;
    let agreement = disagreement(&vw, &ne);
    if !(agreement <= NE_FORCE_TOL) {
        return Err(Error::OracleResidual(format!("paths disagree by {agreement:e} N before timing")));
    }

    let n = config.bench_n.min(u32::MAX as usize);
    let virtual_work = time_path(n, || virtual_work_path(params, black_box(&pose), black_box(legs)))?;
    let newton_euler = time_path(n, || newton_euler_path(params, black_box(&pose), black_box(&legs)))?;
    Ok(BenchReport { n, pose, agreement, virtual_work, newton_euler })
}

impl std::fmt::Display for BenchReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "evaluations per path: {}", self.n)?;
        writeln!(f, "path agreement:       {:.3e} N", self.agreement)?;
        for (name, c) in [("virtual work", &self.virtual_work), ("newton-euler", &self.newton_euler)] {
            let mean = c.mean.map_or("-".to_string(), |m| format!("{:.3} us", m.as_secs_f64() * 1e6));
            let flops = c.flops.map_or("-".to_string(), |v| v.to_string());
            writeln!(f, "{name:<13} total {:>10.3} ms  mean {mean:>12}  flops {flops:>8}", c.total.as_secs_f64() * 1e3)?;
        }
        Ok(())
    }
}
