//! Kinetic and potential energy along a trajectory against the work done by
//! the actuators.
//!
//! cargo run --example energy_audit -- [vertical|rotation]

use prp3::sim::config::parse_scenario;
use prp3::sim::{simulate, SimConfig};

fn main() -> prp3::Result<()> {
    let name = std::env::args().nth(1).unwrap_or_else(|| "vertical".into());
    let cfg = SimConfig { scenario: parse_scenario(&name)?.with_dt(1e-3), oracle: false, ..Default::default() };
    let series = simulate(&cfg)?;
    let mut work = 0.0;
    for (i, w) in series.samples.windows(2).enumerate() {
        work += 0.5 * (w[1].t - w[0].t) * (w[0].energy.sum_power + w[1].energy.sum_power);
        if (i + 1) % 500 == 0 {
            let e = &w[1].energy;
            let gain = e.total() - series.samples[0].energy.total();
            println!("t {:.1} s  T {:.6} J  V {:+.6} J  work {work:+.8} J  dE {gain:+.8} J", w[1].t, e.kinetic, e.potential);
        }
    }
    let worst = series.samples.iter().map(|s| s.energy.balance_residual().abs()).fold(0.0, f64::max);
    println!("largest |sum p - dE/dt|: {worst:.1e} W");
    Ok(())
}
