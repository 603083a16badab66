//! Actuator and joint forces needed to hold the platform still.
//!
//! cargo run --example static_hold

use prp3::dynamics::static_hold;
use prp3::kinematics::PlatformState;
use prp3::model::standard_params;

fn main() -> prp3::Result<()> {
    let params = standard_params();
    println!("total mass {:.3} kg", params.total_mass());
    for (x, y, phi) in [(0.0, 0.0, 0.0), (0.0, 0.05, 0.0), (0.03, 0.0, -0.3)] {
        let hold = static_hold(&params, &PlatformState::at_rest(x, y, phi))?;
        let f: Vec<String> = hold.legs.iter().map(|l| format!("f10 {:+8.4} f21y {:+8.4} f21z {:+8.4}", l.f10, l.f21y, l.f21z)).collect();
        println!("({x:+.2}, {y:+.2}, {phi:+.2})\n  A: {}\n  B: {}\n  C: {}", f[0], f[1], f[2]);
    }
    Ok(())
}
