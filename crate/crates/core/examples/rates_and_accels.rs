//! Joint rates and accelerations along the built-in vertical trajectory.
//!
//! cargo run --example rates_and_accels

use prp3::kinematics::solve_legs;
use prp3::model::standard_params;
use prp3::sim::Scenario;

fn main() -> prp3::Result<()> {
    let params = standard_params();
    let sc = Scenario::vertical();
    println!("{:>5} {:>10} {:>11} {:>11} {:>11}", "t", "y", "l10d_A", "l10dd_A", "l32d_B");
    for i in 0..=6 {
        let t = 0.5 * i as f64;
        let pose = sc.eval(t);
        let legs = solve_legs(&params, &pose)?;
        println!("{t:5.2} {:10.6} {:+11.6} {:+11.6} {:+11.6}", pose.y, legs[0].lambda10d, legs[0].lambda10dd, legs[1].lambda32d);
    }
    Ok(())
}
