//! Joint positions for a few platform poses, with the loop-closure residual.
//!
//! cargo run --example inverse_geometry

use prp3::kinematics::{inverse_geometry, loop_closure_residual, PlatformState};
use prp3::model::{standard_params, LegIndex};

fn main() -> prp3::Result<()> {
    let params = standard_params();
    for (x, y, phi) in [(0.0, 0.0, 0.0), (0.0, 0.05, 0.0), (0.02, -0.01, 0.2)] {
        let pose = PlatformState::at_rest(x, y, phi);
        let legs = inverse_geometry(&params, &pose)?;
        println!("pose x = {x} m, y = {y} m, phi = {phi} rad");
        for leg in LegIndex::ALL {
            let s = &legs[leg.idx()];
            let res = loop_closure_residual(&params, &pose, leg, s);
            println!("  {leg}: lambda10 = {:+.7} m  lambda32 = {:+.7} m  phi21 = {:+.4} rad  (closure {res:.1e} m)", s.lambda10, s.lambda32, s.phi21);
        }
    }

    // the pistons and platform guides line up at phi = 60 degrees
    let err = inverse_geometry(&params, &PlatformState::at_rest(0.0, 0.0, std::f64::consts::FRAC_PI_3)).unwrap_err();
    println!("phi = pi/3: {err}");
    Ok(())
}
