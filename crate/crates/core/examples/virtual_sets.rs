//! The nine unit virtual motions used to expose actuator and revolute-joint
//! forces, with their platform twists.
//!
//! cargo run --example virtual_sets

use prp3::kinematics::{inverse_geometry, virtual_rate_sets, PlatformState};
use prp3::model::standard_params;

fn main() -> prp3::Result<()> {
    let params = standard_params();
    let pose = PlatformState::at_rest(0.01, 0.02, 0.1);
    let legs = inverse_geometry(&params, &pose)?;
    for set in virtual_rate_sets(&params, &pose, &legs)? {
        let [vx, vy, w] = set.platform_twist;
        let v32: Vec<String> = set.rates.iter().map(|r| format!("{:+.4}", r.v32)).collect();
        println!(
            "{:<12} platform ({vx:+.4}, {vy:+.4}, {w:+.4})  v32 [{}]  residual {:.1e}",
            format!("{:?}", set.label),
            v32.join(", "),
            set.connectivity_residual(&params, &pose, &legs)
        );
    }
    Ok(())
}
