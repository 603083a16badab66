//! Independent checks: finite differences, energy bookkeeping, and a
//! Newton–Euler free-body solve of all seven bodies.
//!
//! Nothing here reads the virtual-work path. Body motions are rebuilt in the
//! base plane directly from the joint coordinates, and the constraint forces
//! come from one dense 21x21 solve.

use std::f64::consts::FRAC_PI_3;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kinematics::{inverse_rates, LegSolution, PlatformState};
use crate::model::{leg_rotations, LegIndex, RobotParams};
use crate::smallmat::{residual_inf, DenseLu};

/// Central difference `(f(t+h) - f(t-h)) / 2h`.
pub fn fd_derivative<F: Fn(f64) -> f64>(f: F, t: f64, h: f64) -> f64 {
    (f(t + h) - f(t - h)) / (2.0 * h)
}

type P2 = [f64; 2];

fn add(a: P2, b: P2) -> P2 {
    [a[0] + b[0], a[1] + b[1]]
}
fn sub(a: P2, b: P2) -> P2 {
    [a[0] - b[0], a[1] - b[1]]
}
fn mul(a: P2, s: f64) -> P2 {
    [a[0] * s, a[1] * s]
}
fn perp(a: P2) -> P2 {
    [-a[1], a[0]]
}
fn dot(a: P2, b: P2) -> f64 {
    a[0] * b[0] + a[1] * b[1]
}
fn cross(a: P2, b: P2) -> f64 {
    a[0] * b[1] - a[1] * b[0]
}
fn unit(angle: f64) -> P2 {
    let (s, c) = angle.sin_cos();
    [c, s]
}

/// Planar motion of one rigid body, base frame.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct BodyMotion {
    pub mass: f64,
    /// Centroidal moment of inertia about the plane normal.
    pub inertia: f64,
    pub com: P2,
    pub vel: P2,
    pub acc: P2,
    pub omega: f64,
    pub epsilon: f64,
}

/// Joint points and axes of one leg in the base plane.
#[derive(Clone, Copy, Debug)]
struct LegPoints {
    e1: P2,
    n1: P2,
    e3: P2,
    n3: P2,
    a1: P2,
    a3: P2,
}

fn leg_points(params: &RobotParams, pose: &PlatformState, leg: LegIndex, s: &LegSolution) -> LegPoints {
    let alpha = params.alpha[leg.idx()];
    let e1 = unit(alpha);
    let e3 = unit(pose.phi - FRAC_PI_3 + alpha);
    let anchor = params.base_anchors[leg.idx()];
    let a1 = add([anchor.x(), anchor.y()], mul(e1, params.l0 / 3f64.sqrt() + s.lambda10));
    LegPoints { e1, n1: perp(e1), e3, n3: perp(e3), a1, a3: add(a1, mul(e3, s.lambda32)) }
}

/// The seven bodies in order: pistons A, B, C; links 2 A, B, C; platform.
pub fn body_motions(params: &RobotParams, pose: &PlatformState, legs: &[LegSolution; 3]) -> [BodyMotion; 7] {
    let (w, e) = (pose.phid, pose.phidd);
    let mut out = [BodyMotion::default(); 7];
    // a point at in-plane offset d on a body turning with (w, e)
    let carried = |o: (P2, P2, P2), d: P2, w: f64, e: f64| -> (P2, P2, P2) {
        (add(o.0, d), add(o.1, mul(perp(d), w)), add(o.2, sub(mul(perp(d), e), mul(d, w * w))))
    };
    for leg in LegIndex::ALL {
        let i = leg.idx();
        let s = &legs[i];
        let pts = leg_points(params, pose, leg, s);
        let rot = leg_rotations(params, leg, pose.phi);
        let offset = |k: usize| {
            let c = rot.absolute(k).tr_mul(&params.link_com(leg, k));
            [c.x(), c.y()]
        };
        let origin1 = (pts.a1, mul(pts.e1, s.lambda10d), mul(pts.e1, s.lambda10dd));
        let (c, v, a) = carried(origin1, offset(1), 0.0, 0.0);
        out[i] = BodyMotion { mass: params.masses[0], inertia: 0.0, com: c, vel: v, acc: a, omega: 0.0, epsilon: 0.0 };
        let (c, v, a) = carried(origin1, offset(2), w, e);
        out[3 + i] = BodyMotion { mass: params.masses[1], inertia: params.planar_inertia(2), com: c, vel: v, acc: a, omega: w, epsilon: e };
        if leg == LegIndex::A {
            let l = s.lambda32;
            let v3 = add(origin1.1, add(mul(pts.e3, s.lambda32d), mul(pts.n3, l * w)));
            let a3 = add(
                origin1.2,
                add(
                    add(mul(pts.e3, s.lambda32dd), mul(pts.n3, 2.0 * s.lambda32d * w)),
                    sub(mul(pts.n3, l * e), mul(pts.e3, l * w * w)),
                ),
            );
            let (c, v, a) = carried((pts.a3, v3, a3), offset(3), w, e);
            out[6] = BodyMotion { mass: params.masses[2], inertia: params.planar_inertia(3), com: c, vel: v, acc: a, omega: w, epsilon: e };
        }
    }
    out
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct EnergyReport {
    /// Kinetic energy, J.
    pub kinetic: f64,
    /// Potential energy relative to the base origin, J.
    pub potential: f64,
    /// Analytic rate of change of `kinetic + potential`, W.
    pub d_edt: f64,
    /// Sum of the three actuator powers, W.
    pub sum_power: f64,
    /// Power of the external platform load, W.
    pub external_power: f64,
}

impl EnergyReport {
    pub fn total(&self) -> f64 {
        self.kinetic + self.potential
    }

    /// `Σp + P_ext - dE/dt`; zero for a consistent solution.
    pub fn balance_residual(&self) -> f64 {
        self.sum_power + self.external_power - self.d_edt
    }
}

/// Energy bookkeeping of the seven bodies. `sum_power` is carried through
/// for the balance check and takes no part in the energy terms.
pub fn energy_report(params: &RobotParams, pose: &PlatformState, legs: &[LegSolution; 3], sum_power: f64) -> EnergyReport {
    let g = [params.gravity.x(), params.gravity.y()];
    let mut r = EnergyReport { sum_power, ..Default::default() };
    let bodies = body_motions(params, pose, legs);
    for b in &bodies {
        r.kinetic += 0.5 * (b.mass * dot(b.vel, b.vel) + b.inertia * b.omega * b.omega);
        r.potential -= b.mass * dot(g, b.com);
        r.d_edt += b.mass * dot(b.vel, b.acc) + b.inertia * b.omega * b.epsilon - b.mass * dot(g, b.vel);
    }
    let platform = bodies[6];
    r.external_power = params.platform_force.x() * platform.vel[0] + params.platform_force.y() * platform.vel[1] + params.platform_moment * pose.phid;
    r
}

/// Constraint forces of one leg, base frame. Revolute force is exerted by the
/// piston on link 2; platform-side forces by link 2 on the platform.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct LegConstraint {
    /// Actuator force along the piston axis, N.
    pub actuator: f64,
    /// Base guide reaction normal to the piston axis, N, and its couple, N·m.
    pub base_normal: f64,
    pub base_moment: f64,
    /// In-plane revolute force `(x, y)`, N.
    pub revolute: [f64; 2],
    /// Platform guide reaction normal to axis 3, N, and its couple, N·m.
    pub platform_normal: f64,
    pub platform_moment: f64,
    /// Revolute force along frame-1 `y` and `z` (normal to, and along, the piston), N.
    pub revolute_y: f64,
    pub revolute_z: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConstraintSolution {
    pub legs: [LegConstraint; 3],
    /// `|A x - b|∞` of the assembled system.
    pub residual: f64,
    pub condition: f64,
}

pub const NE_UNKNOWNS: usize = 21;

/// Assembles the 21 planar free-body equations. Unknowns per leg `i` start at
/// `7i`: actuator, base normal, base couple, revolute x, revolute y,
/// platform normal, platform couple.
pub fn newton_euler_system(params: &RobotParams, pose: &PlatformState, legs: &[LegSolution; 3]) -> ([[f64; 21]; 21], [f64; 21]) {
    let mut a = [[0.0; 21]; 21];
    let mut b = [0.0; 21];
    let bodies = body_motions(params, pose, legs);
    let g = [params.gravity.x(), params.gravity.y()];
    let need = |body: &BodyMotion| sub(body.acc, g);
    let platform = bodies[6];
    for leg in LegIndex::ALL {
        let i = leg.idx();
        let u = 7 * i;
        let pts = leg_points(params, pose, leg, &legs[i]);
        // piston
        let p = &bodies[i];
        let r = sub(pts.a1, p.com);
        let row = 3 * i;
        for j in 0..2 {
            a[row + j][u] = pts.e1[j];
            a[row + j][u + 1] = pts.n1[j];
            a[row + j][u + 3 + j] = -1.0;
            b[row + j] = p.mass * need(p)[j];
        }
        a[row + 2][u] = cross(r, pts.e1);
        a[row + 2][u + 1] = cross(r, pts.n1);
        a[row + 2][u + 2] = 1.0;
        a[row + 2][u + 3] = r[1];
        a[row + 2][u + 4] = -r[0];
        b[row + 2] = p.inertia * p.epsilon;
        // link 2
        let l2 = &bodies[3 + i];
        let r2 = sub(pts.a1, l2.com);
        let r3 = sub(pts.a3, l2.com);
        let row = 9 + 3 * i;
        for j in 0..2 {
            a[row + j][u + 3 + j] = 1.0;
            a[row + j][u + 5] = -pts.n3[j];
            b[row + j] = l2.mass * need(l2)[j];
        }
        a[row + 2][u + 3] = -r2[1];
        a[row + 2][u + 4] = r2[0];
        a[row + 2][u + 5] = -cross(r3, pts.n3);
        a[row + 2][u + 6] = -1.0;
        b[row + 2] = l2.inertia * l2.epsilon;
        // platform
        let rp = sub(pts.a3, platform.com);
        for j in 0..2 {
            a[18 + j][u + 5] = pts.n3[j];
        }
        a[20][u + 5] = cross(rp, pts.n3);
        a[20][u + 6] = 1.0;
    }
    let ext = [params.platform_force.x(), params.platform_force.y()];
    for j in 0..2 {
        b[18 + j] = platform.mass * need(&platform)[j] - ext[j];
    }
    b[20] = platform.inertia * platform.epsilon - params.platform_moment;
    (a, b)
}

/// Solves the free-body system for all 21 joint reactions.
pub fn newton_euler_solve(params: &RobotParams, pose: &PlatformState, legs: &[LegSolution; 3]) -> Result<ConstraintSolution> {
    let (a, b) = newton_euler_system(params, pose, legs);
    let lu = DenseLu::factor(&a).ok_or_else(|| Error::singular("free-body system", 0.0))?;
    let condition = lu.condition_1(&a);
    if !(condition <= params.tolerances.max_condition) {
        return Err(Error::singular("free-body condition number", condition));
    }
    let x = lu.solve(&b);
    let residual = residual_inf(&a, &x, &b);
    let out = LegIndex::ALL.map(|leg| {
        let u = 7 * leg.idx();
        let e1 = unit(params.alpha[leg.idx()]);
        let revolute = [x[u + 3], x[u + 4]];
        LegConstraint {
            actuator: x[u],
            base_normal: x[u + 1],
            base_moment: x[u + 2],
            revolute,
            platform_normal: x[u + 5],
            platform_moment: x[u + 6],
            revolute_y: dot(revolute, perp(e1)),
            revolute_z: dot(revolute, e1),
        }
    });
    Ok(ConstraintSolution { legs: out, residual, condition })
}

/// Platform twist produced by a unit rate of one actuator with the other two
/// locked, from columns of the rate map `twist → λ̇10`.
pub fn actuator_twist_oracle(params: &RobotParams, pose: &PlatformState, legs: &[LegSolution; 3], leg: LegIndex) -> Result<[f64; 3]> {
    let mut jac = [[0.0; 3]; 3];
    for (col, twist) in [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]].iter().enumerate() {
        let p = PlatformState { xd: twist[0], yd: twist[1], phid: twist[2], ..*pose };
        let rates = inverse_rates(params, &p, legs)?;
        for (row, r) in rates.iter().enumerate() {
            jac[row][col] = r.lambda10d;
        }
    }
    let lu = DenseLu::factor(&jac).ok_or_else(|| Error::singular("rate map", 0.0))?;
    let mut e = [0.0; 3];
    e[leg.idx()] = 1.0;
    Ok(lu.solve(&e))
}
