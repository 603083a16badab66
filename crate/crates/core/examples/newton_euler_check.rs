//! Compares the recursive virtual-work forces with a dense Newton–Euler
//! solve of all 21 joint reactions over a sweep of moving states.
//!
//! cargo run --example newton_euler_check

use prp3::dynamics::solve_instant;
use prp3::kinematics::PlatformState;
use prp3::model::standard_params;
use prp3::oracle::newton_euler_solve;

fn main() -> prp3::Result<()> {
    let params = standard_params();
    let mut worst = 0.0_f64;
    for k in 0..40 {
        let s = k as f64 / 40.0 * std::f64::consts::TAU;
        let pose = PlatformState { x: 0.04 * s.cos(), y: 0.03 * s.sin(), phi: 0.4 * (2.0 * s).sin(), xd: -0.1 * s.sin(), yd: 0.08 * s.cos(), phid: 0.3, xdd: 0.5, ydd: -0.2 * s.cos(), phidd: s.sin() };
        let sol = solve_instant(&params, &pose)?;
        let ne = newton_euler_solve(&params, &pose, &sol.legs)?;
        for (v, n) in sol.dynamics.legs.iter().zip(&ne.legs) {
            worst = worst.max((v.f10 - n.actuator).abs()).max((v.f21y - n.revolute_y).abs()).max((v.f21z - n.revolute_z).abs());
        }
        if k % 10 == 0 {
            let a = &ne.legs[0];
            println!("state {k:2}: f10_A {:+9.4} N, base normal {:+9.4} N, platform couple {:+8.4} N m, cond {:.1e}", a.actuator, a.base_normal, a.platform_moment, ne.condition);
        }
    }
    println!("largest disagreement over the sweep: {worst:.2e} N");
    Ok(())
}
