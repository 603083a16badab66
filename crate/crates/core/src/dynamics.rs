//! Inverse dynamics by virtual work.
//!
//! Each link contributes the wrench `W_k0 = -(inertia) - (weight)` reduced to
//! its frame origin. Wrenches are accumulated from the platform end of every
//! leg towards the base, and each unknown force is the total virtual power of
//! the accumulated wrenches under the unit virtual motion that exposes it.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::kinematics::{
    all_link_states, solve_legs, virtual_rate_sets, JointRates, LegFrames, LegSolution, LinkState, PlatformState,
    VirtualLabel, VirtualMotion,
};
use crate::model::{central_chain, LegIndex, Link, RobotParams};
use crate::smallmat::{Mat3, Vec3};

/// Frame a wrench is expressed in: link `link` of leg `leg`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrameTag {
    pub leg: LegIndex,
    pub link: Link,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Wrench {
    pub force: Vec3,
    /// Moment about the frame origin.
    pub moment: Vec3,
    pub frame: FrameTag,
}

impl Wrench {
    pub fn zero(leg: LegIndex, link: Link) -> Self {
        Self { force: Vec3::ZERO, moment: Vec3::ZERO, frame: FrameTag { leg, link } }
    }

    /// Power of this wrench on a link moving with `state`'s origin velocity and
    /// angular velocity (both in the same frame).
    pub fn power(&self, state: &LinkState) -> f64 {
        self.force.dot(&state.vel) + self.moment.dot(&state.omega)
    }
}

/// Weight of link `k` in its own frame: `m_k q_k0 g`, with moment about the
/// frame origin `c_k × F`.
pub fn gravity_wrench(params: &RobotParams, leg: LegIndex, k: Link, q_k0: &Mat3) -> Wrench {
    let m = params.link_mass(leg, k);
    let force = (*q_k0 * params.gravity) * m;
    let moment = params.link_com(leg, k).cross(&force);
    Wrench { force, moment, frame: FrameTag { leg, link: k } }
}

/// d'Alembert inertia wrench of link `k` about its frame origin:
/// `F = -m(γ + (ω̃² + ε̃)c)`, `M = -(m c×γ + Jε + ω×Jω)`.
pub fn inertia_wrench(params: &RobotParams, leg: LegIndex, k: Link, state: &LinkState) -> Wrench {
    let m = params.link_mass(leg, k);
    let c = params.link_com(leg, k);
    let j = params.link_inertia_origin(leg, k);
    let tang = state.omega.cross(&state.omega.cross(&c)) + state.epsilon.cross(&c);
    let force = -((state.acc + tang) * m);
    let moment = -(c.cross(&state.acc) * m + j * state.epsilon + state.omega.cross(&(j * state.omega)));
    Wrench { force, moment, frame: FrameTag { leg, link: k } }
}

/// External platform load reduced to the origin of leg A's frame 3.
fn platform_load(params: &RobotParams, q30: &Mat3) -> (Vec3, Vec3) {
    let f = *q30 * params.platform_force;
    let normal = central_chain(params, LegIndex::A) * Vec3::U3;
    let m = params.link_com(LegIndex::A, 3).cross(&f) + normal * params.platform_moment;
    (f, m)
}

/// Source wrenches `W_k0 = -F_in - F*` of the three links of a leg.
pub fn link_sources(params: &RobotParams, leg: LegIndex, links: &[LinkState; 3]) -> [Wrench; 3] {
    let mut out = [Wrench::zero(leg, 1); 3];
    for k in 1..=3 {
        let s = &links[k - 1];
        let inertia = inertia_wrench(params, leg, k, s);
        let weight = gravity_wrench(params, leg, k, &s.rotation);
        let mut w = Wrench {
            force: -(inertia.force + weight.force),
            moment: -(inertia.moment + weight.moment),
            frame: FrameTag { leg, link: k },
        };
        if leg == LegIndex::A && k == 3 {
            let (f, m) = platform_load(params, &s.rotation);
            w.force = w.force - f;
            w.moment = w.moment - m;
        }
        out[k - 1] = w;
    }
    out
}

/// Backward accumulation along a leg:
/// `F_k = F_k0 + a_{k+1,k}ᵀ F_{k+1}`,
/// `M_k = M_k0 + a_{k+1,k}ᵀ M_{k+1} + r̃_{k+1,k} a_{k+1,k}ᵀ F_{k+1}`.
pub fn accumulate_leg(frames: &LegFrames, sources: &[Wrench; 3]) -> [Wrench; 3] {
    let mut out = *sources;
    for k in (1..3).rev() {
        let a = frames.rot.relative(k + 1);
        let r = frames.offset(k + 1);
        let child = out[k];
        let f = a.tr_mul(&child.force);
        out[k - 1].force = sources[k - 1].force + f;
        out[k - 1].moment = sources[k - 1].moment + a.tr_mul(&child.moment) + r.cross(&f);
    }
    out
}

/// Virtual power of one leg's accumulated wrenches under joint rates `r`.
pub fn leg_virtual_power(frames: &LegFrames, acc: &[Wrench; 3], r: &JointRates) -> f64 {
    let f2_in_1 = frames.rot.q21.tr_mul(&acc[1].force);
    r.v10 * acc[0].force.z() + r.v21y * f2_in_1.y() + r.v21z * f2_in_1.z() + r.w21 * acc[1].moment.z() + r.v32 * acc[2].force.z()
}

/// Forces and power of one leg.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct LegForces {
    /// Actuator force along the piston axis, N.
    pub f10: f64,
    /// Force of the piston on link 2 along frame-1 `y` (normal to the piston), N.
    pub f21y: f64,
    /// Force of the piston on link 2 along frame-1 `z` (the piston axis), N.
    pub f21z: f64,
    /// Actuator power `f10·λ̇10`, W.
    pub p10: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DynamicsResult {
    pub legs: [LegForces; 3],
    pub pose: PlatformState,
    pub time: Option<f64>,
}

impl DynamicsResult {
    pub fn total_power(&self) -> f64 {
        self.legs.iter().map(|l| l.p10).sum()
    }

    pub fn leg(&self, leg: LegIndex) -> &LegForces {
        &self.legs[leg.idx()]
    }
}

/// Actuator forces, revolute-joint forces and actuator powers at one instant.
pub fn solve_inverse_dynamics(
    params: &RobotParams,
    pose: &PlatformState,
    legs: &[LegSolution; 3],
    links: &[[LinkState; 3]; 3],
    sets: &[VirtualMotion; 9],
) -> Result<DynamicsResult> {
    let frames = LegIndex::ALL.map(|leg| LegFrames::new(params, leg, &legs[leg.idx()]));
    let accumulated = LegIndex::ALL.map(|leg| {
        let i = leg.idx();
        accumulate_leg(&frames[i], &link_sources(params, leg, &links[i]))
    });
    let mut out = [LegForces::default(); 3];
    for set in sets {
        let power: f64 = (0..3).map(|i| leg_virtual_power(&frames[i], &accumulated[i], &set.rates[i])).sum();
        match set.label {
            VirtualLabel::Actuator(l) => out[l.idx()].f10 = power,
            VirtualLabel::JointY(l) => out[l.idx()].f21y = power,
            VirtualLabel::JointZ(l) => out[l.idx()].f21z = power,
        }
    }
    for (f, s) in out.iter_mut().zip(legs) {
        f.p10 = f.f10 * s.lambda10d;
    }
    Ok(DynamicsResult { legs: out, pose: *pose, time: None })
}

/// Everything solved for one platform state.
#[derive(Clone, Debug)]
pub struct InstantSolution {
    pub legs: [LegSolution; 3],
    pub links: [[LinkState; 3]; 3],
    pub sets: [VirtualMotion; 9],
    pub dynamics: DynamicsResult,
}

/// Full pipeline from a platform state: joint motion, link states, virtual
/// motions and forces.
pub fn solve_instant(params: &RobotParams, pose: &PlatformState) -> Result<InstantSolution> {
    let legs = solve_legs(params, pose)?;
    solve_instant_from_legs(params, pose, legs)
}

pub fn solve_instant_from_legs(params: &RobotParams, pose: &PlatformState, legs: [LegSolution; 3]) -> Result<InstantSolution> {
    let links = all_link_states(params, &legs);
    let sets = virtual_rate_sets(params, pose, &legs)?;
    let dynamics = solve_inverse_dynamics(params, pose, &legs, &links, &sets)?;
    Ok(InstantSolution { legs, links, sets, dynamics })
}

/// Forces needed to hold the platform still at `pose`.
pub fn static_hold(params: &RobotParams, pose: &PlatformState) -> Result<DynamicsResult> {
    let still = PlatformState::at_rest(pose.x, pose.y, pose.phi);
    Ok(solve_instant(params, &still)?.dynamics)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kinematics::link_twists;
    use crate::model::standard_params;

    #[test]
    fn platform_weight_in_identity_frame() {
        let mut p = standard_params();
        p.com[2] = Vec3::ZERO;
        let w = gravity_wrench(&p, LegIndex::A, 3, &Mat3::IDENTITY);
        assert!((w.force - Vec3::new(0.0, -29.43, 0.0)).max_abs() < 1e-12);
        assert_eq!(w.moment, Vec3::ZERO);
        let q = crate::smallmat::rot_z(0.8) * crate::model::THETA1;
        let w = gravity_wrench(&p, LegIndex::B, 2, &q);
        assert!((w.force.norm() - 9.81 * 0.75).abs() < 1e-12);
        assert_eq!(w.moment, Vec3::ZERO);
    }

    #[test]
    fn inertia_wrench_cases() {
        let p = standard_params();
        assert_eq!(inertia_wrench(&p, LegIndex::A, 3, &LinkState::default()).force, Vec3::ZERO);
        let s = LinkState { acc: Vec3::new(0.3, -1.0, 2.0), ..Default::default() };
        let w = inertia_wrench(&p, LegIndex::B, 1, &s);
        assert!((w.force - Vec3::new(-0.3, 1.0, -2.0)).max_abs() < 1e-15);
        assert_eq!(w.moment, Vec3::ZERO);
    }

    #[test]
    fn spinning_platform_about_its_frame_origin() {
        let p = standard_params();
        let axis = central_chain(&p, LegIndex::A) * Vec3::U3;
        let (wd, wdd) = (0.9, 2.5);
        let s = LinkState { omega: axis * wd, epsilon: axis * wdd, ..Default::default() };
        let w = inertia_wrench(&p, LegIndex::A, 3, &s);
        let j_origin = 0.0675 + 3.0 * (0.15f64.powi(2) * (4.0 / 3.0));
        assert!((w.moment.dot(&axis) + j_origin * wdd).abs() < 1e-12);
    }

    #[test]
    fn accumulation_base_cases() {
        let p = standard_params();
        let legs = solve_legs(&p, &PlatformState::at_rest(0.01, 0.0, 0.1)).unwrap();
        let frames = LegFrames::new(&p, LegIndex::A, &legs[0]);
        let zero = [Wrench::zero(LegIndex::A, 1), Wrench::zero(LegIndex::A, 2), Wrench::zero(LegIndex::A, 3)];
        for w in accumulate_leg(&frames, &zero) {
            assert_eq!((w.force, w.moment), (Vec3::ZERO, Vec3::ZERO));
        }
        let mut src = zero;
        src[2].force = Vec3::new(1.0, 2.0, 3.0);
        assert_eq!(accumulate_leg(&frames, &src)[2].force, src[2].force);
    }

    #[test]
    fn accumulated_power_equals_per_body_power() {
        let p = standard_params();
        let pose = PlatformState {
            xd: 0.05,
            yd: -0.02,
            phid: 0.4,
            xdd: 0.3,
            ydd: 0.1,
            phidd: -0.7,
            ..PlatformState::at_rest(0.02, 0.03, 0.2)
        };
        let sol = solve_instant(&p, &pose).unwrap();
        for set in &sol.sets {
            let mut direct = 0.0;
            let mut recursive = 0.0;
            for leg in LegIndex::ALL {
                let i = leg.idx();
                let frames = LegFrames::new(&p, leg, &sol.legs[i]);
                let src = link_sources(&p, leg, &sol.links[i]);
                let twists = link_twists(&p, leg, &sol.legs[i], &set.rates[i]);
                direct += src.iter().zip(&twists).map(|(w, t)| w.power(t)).sum::<f64>();
                recursive += leg_virtual_power(&frames, &accumulate_leg(&frames, &src), &set.rates[i]);
            }
            assert!((direct - recursive).abs() < 1e-10, "{:?}: {direct} vs {recursive}", set.label);
        }
    }

    #[test]
    fn static_hold_has_zero_power_and_vanishes_without_gravity() {
        let mut p = standard_params();
        let r = static_hold(&p, &PlatformState::default()).unwrap();
        assert_eq!(r.legs.map(|l| l.p10), [0.0; 3]);
        p.gravity = Vec3::ZERO;
        let r = static_hold(&p, &PlatformState::at_rest(0.02, -0.01, 0.3)).unwrap();
        for l in r.legs {
            assert_eq!([l.f10, l.f21y, l.f21z], [0.0; 3]);
        }
    }
}
