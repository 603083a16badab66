#![allow(dead_code)]

use std::f64::consts::FRAC_PI_4;
use std::io::Write;

use prp3::kinematics::{LegSolution, PlatformState};
use prp3::oracle::ConstraintSolution;
use prp3::dynamics::DynamicsResult;
use prp3::model::LegIndex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random pose and motion well inside the workspace.
pub fn random_state(r: &mut impl Rng) -> PlatformState {
    PlatformState {
        x: r.gen_range(-0.05..0.05),
        y: r.gen_range(-0.05..0.05),
        phi: r.gen_range(-FRAC_PI_4..FRAC_PI_4),
        xd: r.gen_range(-0.2..0.2),
        yd: r.gen_range(-0.2..0.2),
        phid: r.gen_range(-0.5..0.5),
        xdd: r.gen_range(-1.0..1.0),
        ydd: r.gen_range(-1.0..1.0),
        phidd: r.gen_range(-2.0..2.0),
    }
}

pub fn leg_values(l: &LegSolution) -> [f64; 6] {
    [l.lambda10, l.lambda32, l.lambda10d, l.lambda32d, l.lambda10dd, l.lambda32dd]
}

pub fn force_gap(vw: &DynamicsResult, ne: &ConstraintSolution) -> f64 {
    LegIndex::ALL
        .iter()
        .map(|l| {
            let (v, n) = (vw.leg(*l), &ne.legs[l.idx()]);
            (v.f10 - n.actuator).abs().max((v.f21y - n.revolute_y).abs()).max((v.f21z - n.revolute_z).abs())
        })
        .fold(0.0, f64::max)
}

/// Writes a verdict line past the test harness's output capture.
pub fn verdict(id: u32, name: &str, pass: bool, detail: &str) {
    let line = format!("criterion {id:>2} [{}] {name}: {detail}\n", if pass { "PASS" } else { "FAIL" });
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(line.as_bytes());
    let _ = out.flush();
}
