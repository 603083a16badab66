//! Inverse kinematics: joint coordinates, rates and accelerations from the
//! platform motion, per-link recursive kinematics, and the unit virtual
//! motions used by the virtual-work dynamics.
//!
//! Per leg the loop closes as
//! `A0 + (l0/√3 + λ10)·e1 + λ32·e3 + ρ = G`, with `e1` the piston axis at angle
//! `α`, `e3` the platform-side prismatic axis at angle `φ - π/3 + α`, and `ρ`
//! the platform arm from `A3` to `G`. The 2x2 matrix `[e1 e3]` has
//! determinant `sin(φ - π/3)` for every leg, so `φ = π/3 (mod π)` is a
//! structural singularity.

use std::f64::consts::FRAC_PI_3;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{leg_rotations, LegIndex, LegRotations, RobotParams, THETA1, THETA2};
use crate::smallmat::{solve2, DenseLu, Mat3, Vec3};

const SQRT3: f64 = 1.732_050_807_568_877_2;

/// Platform pose `(x, y, φ)` of the centre `G` with its first and second
/// time derivatives.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct PlatformState {
    pub x: f64,
    pub y: f64,
    pub phi: f64,
    pub xd: f64,
    pub yd: f64,
    pub phid: f64,
    pub xdd: f64,
    pub ydd: f64,
    pub phidd: f64,
}

impl PlatformState {
    pub fn at_rest(x: f64, y: f64, phi: f64) -> Self {
        Self { x, y, phi, ..Default::default() }
    }

    pub fn is_finite(&self) -> bool {
        self.as_array().iter().all(|v| v.is_finite())
    }

    pub fn as_array(&self) -> [f64; 9] {
        [self.x, self.y, self.phi, self.xd, self.yd, self.phid, self.xdd, self.ydd, self.phidd]
    }

    /// The same motion turned by `angle` about the base centre.
    ///
    /// Position, velocity and acceleration of `G` rotate; `φ` is kept, since
    /// a 2π/3 turn maps the symmetric platform onto itself with its
    /// attachment points relabelled A→B→C.
    pub fn rotated(&self, angle: f64) -> Self {
        let (s, c) = angle.sin_cos();
        let r = |x: f64, y: f64| (c * x - s * y, s * x + c * y);
        let (x, y) = r(self.x, self.y);
        let (xd, yd) = r(self.xd, self.yd);
        let (xdd, ydd) = r(self.xdd, self.ydd);
        Self { x, y, xd, yd, xdd, ydd, ..*self }
    }
}

/// Joint coordinates of one leg: piston stroke `λ10`, revolute angle `φ21`,
/// platform-side stroke `λ32`, with rates and accelerations.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct LegSolution {
    pub lambda10: f64,
    pub lambda32: f64,
    pub phi21: f64,
    pub lambda10d: f64,
    pub lambda32d: f64,
    pub phi21d: f64,
    pub lambda10dd: f64,
    pub lambda32dd: f64,
    pub phi21dd: f64,
}

/// Kinematic state of one link, all vectors in the link's own frame.
/// `vel` and `acc` are those of the frame origin (the link's first joint).
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct LinkState {
    pub rotation: Mat3,
    pub omega: Vec3,
    pub epsilon: Vec3,
    pub vel: Vec3,
    pub acc: Vec3,
}

impl LinkState {
    pub fn omega_base(&self) -> Vec3 {
        self.rotation.tr_mul(&self.omega)
    }

    pub fn epsilon_base(&self) -> Vec3 {
        self.rotation.tr_mul(&self.epsilon)
    }

    /// Velocity of a point fixed to the link at `r` (link coordinates),
    /// returned in base coordinates.
    pub fn point_velocity_base(&self, r: &Vec3) -> Vec3 {
        self.rotation.tr_mul(&(self.vel + self.omega.cross(r)))
    }
}

/// Connectivity matrix `[e1 e3]` of a leg, row-major.
pub type ConnectivityMatrix = [[f64; 2]; 2];

struct PlanarLeg {
    e1: [f64; 2],
    e3: [f64; 2],
    /// Piston-normal direction, frame-1 y axis in base coordinates.
    n1: [f64; 2],
    /// Platform arm `A3 → G`.
    rho: [f64; 2],
}

impl PlanarLeg {
    fn new(params: &RobotParams, leg: LegIndex, phi: f64) -> Self {
        let alpha = params.alpha[leg.idx()];
        let (sa, ca) = alpha.sin_cos();
        let (s3, c3) = (phi - FRAC_PI_3 + alpha).sin_cos();
        // platform offset carried from frame 3 into frame-2 axes (constant), then turned by φ + α
        let p = THETA2.tr_mul(&THETA1.tr_mul(&params.platform_offset));
        let (sb, cb) = (phi + alpha).sin_cos();
        Self {
            e1: [ca, sa],
            e3: [c3, s3],
            n1: [-sa, ca],
            rho: [cb * p[0] - sb * p[1], sb * p[0] + cb * p[1]],
        }
    }

    /// `G - A2` for stroke `λ32`.
    fn arm(&self, lambda32: f64) -> [f64; 2] {
        [lambda32 * self.e3[0] + self.rho[0], lambda32 * self.e3[1] + self.rho[1]]
    }
}

fn check_orientation(params: &RobotParams, phi: f64) -> Result<()> {
    let s = (phi - FRAC_PI_3).sin();
    if !(s.abs() >= params.tolerances.singular_sin) {
        return Err(Error::singular("piston and platform axes parallel", s.abs()));
    }
    Ok(())
}

/// Connectivity matrix of `leg` at the pose's orientation. Columns are the
/// in-plane directions of the two prismatic axes; the determinant equals
/// `sin(φ - π/3)`.
pub fn leg_connectivity_matrix(params: &RobotParams, pose: &PlatformState, leg: LegIndex) -> ConnectivityMatrix {
    let g = PlanarLeg::new(params, leg, pose.phi);
    [[g.e1[0], g.e3[0]], [g.e1[1], g.e3[1]]]
}

fn solve_leg(m: &ConnectivityMatrix, rhs: [f64; 2]) -> Result<[f64; 2]> {
    solve2([m[0][0], m[1][0]], [m[0][1], m[1][1]], rhs, 0.0)
        .ok_or_else(|| Error::singular("connectivity matrix", 0.0))
}

/// Joint positions of all three legs for the pose (rates and accelerations
/// left at zero). `φ21 = φ` for every leg.
pub fn inverse_geometry(params: &RobotParams, pose: &PlatformState) -> Result<[LegSolution; 3]> {
    check_orientation(params, pose.phi)?;
    let mut out = [LegSolution::default(); 3];
    let reach = params.l0 / SQRT3;
    for leg in LegIndex::ALL {
        let g = PlanarLeg::new(params, leg, pose.phi);
        let anchor = params.base_anchors[leg.idx()];
        let rhs = [
            pose.x - anchor.x() - reach * g.e1[0] - g.rho[0],
            pose.y - anchor.y() - reach * g.e1[1] - g.rho[1],
        ];
        let [l10, l32] = solve_leg(&leg_connectivity_matrix(params, pose, leg), rhs)?;
        out[leg.idx()] = LegSolution { lambda10: l10, lambda32: l32, phi21: pose.phi, ..Default::default() };
    }
    Ok(out)
}

/// Joint rates from the platform twist, given solved positions.
pub fn inverse_rates(params: &RobotParams, pose: &PlatformState, legs: &[LegSolution; 3]) -> Result<[LegSolution; 3]> {
    check_orientation(params, pose.phi)?;
    let mut out = *legs;
    let w = pose.phid;
    for leg in LegIndex::ALL {
        let g = PlanarLeg::new(params, leg, pose.phi);
        let s = &mut out[leg.idx()];
        let d = g.arm(s.lambda32);
        let rhs = [pose.xd + w * d[1], pose.yd - w * d[0]];
        let [r10, r32] = solve_leg(&leg_connectivity_matrix(params, pose, leg), rhs)?;
        s.lambda10d = r10;
        s.lambda32d = r32;
        s.phi21d = w;
    }
    Ok(out)
}

/// Joint accelerations, given solved positions and rates.
pub fn inverse_accels(params: &RobotParams, pose: &PlatformState, legs: &[LegSolution; 3]) -> Result<[LegSolution; 3]> {
    check_orientation(params, pose.phi)?;
    let mut out = *legs;
    let (w, e) = (pose.phid, pose.phidd);
    for leg in LegIndex::ALL {
        let g = PlanarLeg::new(params, leg, pose.phi);
        let s = &mut out[leg.idx()];
        let d = g.arm(s.lambda32);
        // centripetal, angular-acceleration and Coriolis corrections
        let cor = 2.0 * s.lambda32d * w;
        let rhs = [
            pose.xdd + w * w * d[0] + e * d[1] + cor * g.e3[1],
            pose.ydd + w * w * d[1] - e * d[0] - cor * g.e3[0],
        ];
        let [a10, a32] = solve_leg(&leg_connectivity_matrix(params, pose, leg), rhs)?;
        s.lambda10dd = a10;
        s.lambda32dd = a32;
        s.phi21dd = e;
    }
    Ok(out)
}

/// Positions, rates and accelerations of all legs in one call.
pub fn solve_legs(params: &RobotParams, pose: &PlatformState) -> Result<[LegSolution; 3]> {
    let legs = inverse_geometry(params, pose)?;
    let legs = inverse_rates(params, pose, &legs)?;
    inverse_accels(params, pose, &legs)
}

/// Rotations and joint offset vectors of one leg at a solved position.
#[derive(Clone, Copy, Debug)]
pub struct LegFrames {
    pub rot: LegRotations,
    /// `A1` from the base origin, base frame.
    pub r10: Vec3,
    /// `A2` from `A1`, frame 1 (always zero).
    pub r21: Vec3,
    /// `A3` from `A2`, frame 2.
    pub r32: Vec3,
}

impl LegFrames {
    pub fn new(params: &RobotParams, leg: LegIndex, sol: &LegSolution) -> Self {
        let rot = leg_rotations(params, leg, sol.phi21);
        let r10 = params.base_anchors[leg.idx()] + rot.q10.tr_mul(&Vec3::U3) * (params.l0 / SQRT3 + sol.lambda10);
        let r32 = rot.q32.tr_mul(&Vec3::U3) * sol.lambda32;
        Self { rot, r10, r21: Vec3::ZERO, r32 }
    }

    /// Offset of link `k`'s origin from its parent's, in the parent frame.
    pub fn offset(&self, k: usize) -> Vec3 {
        match k {
            1 => self.r10,
            2 => self.r21,
            3 => self.r32,
            _ => panic!("link index {k} out of range"),
        }
    }
}

/// Base-frame residual of the vector loop
/// `r10 + q10ᵀ r21 + q20ᵀ r32 + q30ᵀ r3G - rG`.
pub fn loop_closure_residual(params: &RobotParams, pose: &PlatformState, leg: LegIndex, sol: &LegSolution) -> f64 {
    let f = LegFrames::new(params, leg, sol);
    let reach = f.r10 + f.rot.q10.tr_mul(&f.r21) + f.rot.q20.tr_mul(&f.r32) + f.rot.q30.tr_mul(&params.platform_offset);
    (reach - Vec3::new(pose.x, pose.y, 0.0)).max_abs()
}

/// Relative motion of one joint, in the child frame.
#[derive(Clone, Copy, Debug, Default)]
struct JointMotion {
    v_rel: Vec3,
    a_rel: Vec3,
    w_rel: f64,
    e_rel: f64,
}

fn propagate(frames: &LegFrames, joints: &[JointMotion; 3]) -> [LinkState; 3] {
    let mut out = [LinkState::default(); 3];
    let mut prev = LinkState::default();
    for k in 1..=3 {
        let a = frames.rot.relative(k);
        let r = frames.offset(k);
        let j = &joints[k - 1];
        let w_in = a * prev.omega;
        let omega = w_in + Vec3::U3 * j.w_rel;
        let epsilon = a * prev.epsilon + Vec3::U3 * j.e_rel + w_in.cross(&Vec3::U3) * j.w_rel;
        let vel = a * (prev.vel + prev.omega.cross(&r)) + j.v_rel;
        let tang = prev.omega.cross(&prev.omega.cross(&r)) + prev.epsilon.cross(&r);
        let acc = a * (prev.acc + tang) + w_in.cross(&j.v_rel) * 2.0 + j.a_rel;
        prev = LinkState { rotation: frames.rot.absolute(k), omega, epsilon, vel, acc };
        out[k - 1] = prev;
    }
    out
}

/// Link rotations, angular velocities/accelerations and joint-origin
/// velocities/accelerations of one leg, by forward recursion from the base.
pub fn link_states(params: &RobotParams, leg: LegIndex, sol: &LegSolution) -> [LinkState; 3] {
    let frames = LegFrames::new(params, leg, sol);
    let joints = [
        JointMotion { v_rel: Vec3::U3 * sol.lambda10d, a_rel: Vec3::U3 * sol.lambda10dd, ..Default::default() },
        JointMotion { w_rel: sol.phi21d, e_rel: sol.phi21dd, ..Default::default() },
        JointMotion { v_rel: Vec3::U3 * sol.lambda32d, a_rel: Vec3::U3 * sol.lambda32dd, ..Default::default() },
    ];
    propagate(&frames, &joints)
}

/// All three legs' link states.
pub fn all_link_states(params: &RobotParams, legs: &[LegSolution; 3]) -> [[LinkState; 3]; 3] {
    LegIndex::ALL.map(|leg| link_states(params, leg, &legs[leg.idx()]))
}

/// Joint rates of one leg under a (real or virtual) motion, including the
/// fictitious translations of the revolute joint along frame-1 `y` and `z`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct JointRates {
    pub v10: f64,
    pub w21: f64,
    pub v32: f64,
    pub v21y: f64,
    pub v21z: f64,
}

/// Link twists (velocities only) of a leg under `rates`, at the positions in
/// `sol`. Accelerations in the result are zero.
pub fn link_twists(params: &RobotParams, leg: LegIndex, sol: &LegSolution, rates: &JointRates) -> [LinkState; 3] {
    let frames = LegFrames::new(params, leg, sol);
    let slip = Vec3::U2 * rates.v21y + Vec3::U3 * rates.v21z;
    let joints = [
        JointMotion { v_rel: Vec3::U3 * rates.v10, ..Default::default() },
        JointMotion { v_rel: frames.rot.q21 * slip, w_rel: rates.w21, ..Default::default() },
        JointMotion { v_rel: Vec3::U3 * rates.v32, ..Default::default() },
    ];
    let mut out = propagate(&frames, &joints);
    for s in &mut out {
        s.epsilon = Vec3::ZERO;
        s.acc = Vec3::ZERO;
    }
    out
}

/// Which unknown force a unit virtual motion exposes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum VirtualLabel {
    /// Unit piston rate `v10` of the leg: actuator force.
    Actuator(LegIndex),
    /// Unit slip of the revolute joint along frame-1 `y`.
    JointY(LegIndex),
    /// Unit slip of the revolute joint along frame-1 `z` (the piston axis).
    JointZ(LegIndex),
}

impl VirtualLabel {
    pub const ALL: [VirtualLabel; 9] = [
        VirtualLabel::Actuator(LegIndex::A),
        VirtualLabel::Actuator(LegIndex::B),
        VirtualLabel::Actuator(LegIndex::C),
        VirtualLabel::JointY(LegIndex::A),
        VirtualLabel::JointY(LegIndex::B),
        VirtualLabel::JointY(LegIndex::C),
        VirtualLabel::JointZ(LegIndex::A),
        VirtualLabel::JointZ(LegIndex::B),
        VirtualLabel::JointZ(LegIndex::C),
    ];

    fn prescribed(self, leg: LegIndex) -> JointRates {
        let mut r = JointRates::default();
        match self {
            VirtualLabel::Actuator(l) if l == leg => r.v10 = 1.0,
            VirtualLabel::JointY(l) if l == leg => r.v21y = 1.0,
            VirtualLabel::JointZ(l) if l == leg => r.v21z = 1.0,
            _ => {}
        }
        r
    }
}

/// A kinematically admissible unit virtual motion.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct VirtualMotion {
    pub label: VirtualLabel,
    /// Virtual `(ẋ, ẏ, φ̇)` of the platform.
    pub platform_twist: [f64; 3],
    pub rates: [JointRates; 3],
}

impl VirtualMotion {
    /// Largest violation of the per-leg velocity connectivity
    /// `v10 e1 + v21y n1 + v21z e1 + ω ẑ×(G - A2) + v32 e3 = v_G`.
    pub fn connectivity_residual(&self, params: &RobotParams, pose: &PlatformState, legs: &[LegSolution; 3]) -> f64 {
        let [vx, vy, w] = self.platform_twist;
        let mut worst = 0.0_f64;
        for leg in LegIndex::ALL {
            let g = PlanarLeg::new(params, leg, pose.phi);
            let r = &self.rates[leg.idx()];
            let d = g.arm(legs[leg.idx()].lambda32);
            for j in 0..2 {
                let zxd = if j == 0 { -d[1] } else { d[0] };
                let lhs = (r.v10 + r.v21z) * g.e1[j] + r.v21y * g.n1[j] + r.w21 * zxd + r.v32 * g.e3[j];
                let rhs = if j == 0 { vx } else { vy };
                worst = worst.max((lhs - rhs).abs());
            }
            if r.w21 != w {
                worst = worst.max((r.w21 - w).abs());
            }
        }
        worst
    }
}

/// Assembled 6x6 virtual connectivity in the unknowns
/// `(ẋ, ẏ, φ̇, v32^A, v32^B, v32^C)`, with the right-hand side contributed
/// by unit rates of the prescribed joints.
pub fn virtual_system(params: &RobotParams, pose: &PlatformState, legs: &[LegSolution; 3]) -> ([[f64; 6]; 6], [[[f64; 2]; 2]; 3]) {
    let mut a = [[0.0; 6]; 6];
    // per leg: columns for unit v10 (= unit v21z) and unit v21y
    let mut drive = [[[0.0; 2]; 2]; 3];
    for leg in LegIndex::ALL {
        let i = leg.idx();
        let g = PlanarLeg::new(params, leg, pose.phi);
        let d = g.arm(legs[i].lambda32);
        a[2 * i] = [1.0, 0.0, d[1], 0.0, 0.0, 0.0];
        a[2 * i + 1] = [0.0, 1.0, -d[0], 0.0, 0.0, 0.0];
        a[2 * i][3 + i] = -g.e3[0];
        a[2 * i + 1][3 + i] = -g.e3[1];
        drive[i] = [g.e1, g.n1];
    }
    (a, drive)
}

/// The nine unit virtual motions: one per actuator, and two fictitious
/// slips of each revolute joint.
pub fn virtual_rate_sets(params: &RobotParams, pose: &PlatformState, legs: &[LegSolution; 3]) -> Result<[VirtualMotion; 9]> {
    check_orientation(params, pose.phi)?;
    let (a, drive) = virtual_system(params, pose, legs);
    let lu = DenseLu::factor(&a).ok_or_else(|| Error::singular("virtual connectivity system", 0.0))?;
    let cond = lu.condition_1(&a);
    if !(cond <= params.tolerances.max_condition) {
        return Err(Error::singular("virtual connectivity condition number", cond));
    }
    Ok(VirtualLabel::ALL.map(|label| {
        let prescribed = LegIndex::ALL.map(|leg| label.prescribed(leg));
        let mut b = [0.0; 6];
        for (i, p) in prescribed.iter().enumerate() {
            let [e1, n1] = drive[i];
            for j in 0..2 {
                b[2 * i + j] = (p.v10 + p.v21z) * e1[j] + p.v21y * n1[j];
            }
        }
        let u = lu.solve(&b);
        let mut rates = prescribed;
        for (i, r) in rates.iter_mut().enumerate() {
            r.w21 = u[2];
            r.v32 = u[3 + i];
        }
        VirtualMotion { label, platform_twist: [u[0], u[1], u[2]], rates }
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::standard_params;

    const INV_SQRT3: f64 = 0.577_350_269_189_625_8;

    #[test]
    fn central_pose_has_zero_strokes() {
        let p = standard_params();
        let legs = inverse_geometry(&p, &PlatformState::default()).unwrap();
        for s in legs {
            assert!(s.lambda10.abs() < 1e-15 && s.lambda32.abs() < 1e-15);
        }
    }

    #[test]
    fn vertical_offset_closed_form() {
        // φ = 0, x = 0: λ10^A = 2y/√3, λ32^A = -y/√3 and cyclic
        let p = standard_params();
        let y = 0.05;
        let legs = inverse_geometry(&p, &PlatformState::at_rest(0.0, y, 0.0)).unwrap();
        let l10 = [2.0 * y * INV_SQRT3, -y * INV_SQRT3, -y * INV_SQRT3];
        let l32 = [-y * INV_SQRT3, 2.0 * y * INV_SQRT3, -y * INV_SQRT3];
        for i in 0..3 {
            assert!((legs[i].lambda10 - l10[i]).abs() < 1e-15, "{i}");
            assert!((legs[i].lambda32 - l32[i]).abs() < 1e-15, "{i}");
        }
    }

    #[test]
    fn phi21_tracks_platform_orientation() {
        let p = standard_params();
        let pose = PlatformState::at_rest(0.01, -0.02, 0.3);
        for s in inverse_geometry(&p, &pose).unwrap() {
            assert_eq!(s.phi21, 0.3);
        }
    }

    #[test]
    fn connectivity_matrix_leg_a_at_zero() {
        let p = standard_params();
        let m = leg_connectivity_matrix(&p, &PlatformState::default(), LegIndex::A);
        assert!((m[0][0] - 0.5).abs() < 1e-15 && (m[1][0] - 3f64.sqrt() / 2.0).abs() < 1e-15);
        assert!((m[0][1] - 1.0).abs() < 1e-15 && m[1][1].abs() < 1e-15);
    }

    #[test]
    fn singular_at_sixty_degrees() {
        let p = standard_params();
        let pose = PlatformState::at_rest(0.0, 0.0, FRAC_PI_3);
        let m = leg_connectivity_matrix(&p, &pose, LegIndex::B);
        assert!((m[0][0] * m[1][1] - m[0][1] * m[1][0]).abs() < 1e-15);
        assert!(inverse_geometry(&p, &pose).unwrap_err().is_singular());
    }

    #[test]
    fn rates_for_pure_vertical_velocity() {
        let p = standard_params();
        let yd = 0.3;
        let pose = PlatformState { yd, ..Default::default() };
        let legs = inverse_rates(&p, &pose, &inverse_geometry(&p, &pose).unwrap()).unwrap();
        let r10 = [2.0 * yd * INV_SQRT3, -yd * INV_SQRT3, -yd * INV_SQRT3];
        let r32 = [-yd * INV_SQRT3, 2.0 * yd * INV_SQRT3, -yd * INV_SQRT3];
        for i in 0..3 {
            assert!((legs[i].lambda10d - r10[i]).abs() < 1e-15);
            assert!((legs[i].lambda32d - r32[i]).abs() < 1e-15);
        }
    }

    #[test]
    fn zero_twist_gives_zero_rates_and_accels() {
        let p = standard_params();
        let pose = PlatformState::at_rest(0.02, 0.01, 0.1);
        for s in solve_legs(&p, &pose).unwrap() {
            assert_eq!([s.lambda10d, s.lambda32d, s.lambda10dd, s.lambda32dd], [0.0; 4]);
        }
        // constant-rate translation: every correction term carries φ̇ or φ̈
        let pose = PlatformState { xd: 0.2, yd: -0.1, ..PlatformState::at_rest(0.02, 0.01, 0.1) };
        for s in solve_legs(&p, &pose).unwrap() {
            assert!(s.lambda10dd.abs() < 1e-15 && s.lambda32dd.abs() < 1e-15);
        }
    }

    #[test]
    fn link_states_at_rest_are_zero() {
        let p = standard_params();
        let legs = solve_legs(&p, &PlatformState::default()).unwrap();
        for chain in all_link_states(&p, &legs) {
            for s in chain {
                assert_eq!([s.omega, s.epsilon, s.vel, s.acc], [Vec3::ZERO; 4]);
            }
        }
    }

    #[test]
    fn link_two_spins_with_platform() {
        let p = standard_params();
        let pose = PlatformState { phid: 0.7, phidd: -0.2, ..PlatformState::at_rest(0.01, 0.02, 0.2) };
        let legs = solve_legs(&p, &pose).unwrap();
        for leg in LegIndex::ALL {
            let s = link_states(&p, leg, &legs[leg.idx()]);
            assert_eq!(s[0].omega, Vec3::ZERO);
            assert_eq!(s[1].omega, Vec3::U3 * 0.7);
            assert!((s[2].omega_base() - Vec3::U3 * 0.7).max_abs() < 1e-15);
            assert!((s[2].epsilon_base() - Vec3::U3 * -0.2).max_abs() < 1e-15);
        }
    }

    #[test]
    fn actuator_set_prescribes_single_unit_rate() {
        let p = standard_params();
        let pose = PlatformState::at_rest(0.01, 0.02, -0.1);
        let legs = inverse_geometry(&p, &pose).unwrap();
        let sets = virtual_rate_sets(&p, &pose, &legs).unwrap();
        let a = &sets[0];
        assert_eq!(a.label, VirtualLabel::Actuator(LegIndex::A));
        assert_eq!([a.rates[0].v10, a.rates[1].v10, a.rates[2].v10], [1.0, 0.0, 0.0]);
        for r in &a.rates {
            assert_eq!([r.v21y, r.v21z], [0.0, 0.0]);
        }
        for s in &sets {
            assert!(s.connectivity_residual(&p, &pose, &legs) < 1e-11);
        }
    }

}
