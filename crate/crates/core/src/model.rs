//! Fixed robot parameters and the per-leg chain of frame rotations.
//!
//! Every leg `i` runs base → piston (frame 1, prismatic along its z axis) →
//! link 2 (frame 2, revolute about z, origin coincides with frame 1) → frame 3
//! (prismatic along its z axis). The moving platform is carried as link 3 of
//! leg A only; frames 3 of legs B and C are massless cut points on the same
//! platform.

use std::f64::consts::PI;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::smallmat::{rot_z, Mat3, Vec3};

const SQRT3: f64 = 1.732_050_807_568_877_2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum LegIndex {
    A,
    B,
    C,
}

impl LegIndex {
    pub const ALL: [LegIndex; 3] = [LegIndex::A, LegIndex::B, LegIndex::C];

    #[inline]
    pub fn idx(self) -> usize {
        self as usize
    }

    /// Leg reached by a +2π/3 turn about the base centre.
    pub fn next(self) -> LegIndex {
        match self {
            LegIndex::A => LegIndex::B,
            LegIndex::B => LegIndex::C,
            LegIndex::C => LegIndex::A,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            LegIndex::A => "A",
            LegIndex::B => "B",
            LegIndex::C => "C",
        }
    }
}

impl fmt::Display for LegIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Link number along a leg, 1 (piston) to 3 (platform side).
pub type Link = usize;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolverTolerances {
    /// Poses with `|sin(φ - π/3)|` below this are rejected as singular.
    pub singular_sin: f64,
    /// Largest acceptable 1-norm condition number of the assembled
    /// virtual-rate and Newton–Euler systems.
    pub max_condition: f64,
}

impl Default for SolverTolerances {
    fn default() -> Self {
        Self { singular_sin: 1e-9, max_condition: 1e12 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RobotParams {
    /// Base circumradius, m. The platform edge is `l0·√3`.
    pub l0: f64,
    /// Orientation of each base edge (legs A, B, C), rad.
    pub alpha: [f64; 3],
    /// Base anchor `A0, B0, C0` in the base frame, m.
    pub base_anchors: [Vec3; 3],
    /// Platform centre `G` seen from frame 3 of any leg, m.
    pub platform_offset: Vec3,
    /// Piston, link 2 and platform masses, kg.
    pub masses: [f64; 3],
    /// Centre of mass of links 1..3 in their own frames, m.
    pub com: [Vec3; 3],
    /// Centroidal inertia of link 2 in frame-2 axes, kg·m².
    pub j2: Mat3,
    /// Centroidal inertia of the platform in its central frame `G x_G y_G z_G`, kg·m².
    pub j3: Mat3,
    /// Gravitational acceleration in the base frame, m/s².
    pub gravity: Vec3,
    /// External force on the platform, applied at its centre of mass (base frame), N.
    #[serde(default)]
    pub platform_force: Vec3,
    /// External moment on the platform about the plane normal, N·m.
    #[serde(default)]
    pub platform_moment: f64,
    #[serde(default)]
    pub tolerances: SolverTolerances,
}

impl Default for RobotParams {
    fn default() -> Self {
        standard_params()
    }
}

/// Base anchors of the equilateral base with circumradius `l0`.
pub fn base_anchors_for(l0: f64) -> [Vec3; 3] {
    [
        Vec3::new(0.0, -l0, 0.0),
        Vec3::new(0.5 * l0 * SQRT3, 0.5 * l0, 0.0),
        Vec3::new(-0.5 * l0 * SQRT3, 0.5 * l0, 0.0),
    ]
}

/// Position of `G` in frame 3 for base parameter `l0`.
pub fn platform_offset_for(l0: f64) -> Vec3 {
    Vec3::new(0.0, 0.5 * l0, -0.5 * l0 / SQRT3)
}

/// The reference robot: `l0 = 0.3 m`, masses `(1, 0.75, 3) kg`, vertical plane.
pub fn standard_params() -> RobotParams {
    let l0 = 0.3;
    let m3 = 3.0;
    let edge = l0 * SQRT3;
    let offset = platform_offset_for(l0);
    RobotParams {
        l0,
        alpha: [PI / 3.0, PI, -PI / 3.0],
        base_anchors: base_anchors_for(l0),
        platform_offset: offset,
        masses: [1.0, 0.75, m3],
        com: [Vec3::ZERO, Vec3::ZERO, offset],
        j2: Mat3::ZERO,
        j3: Mat3::diag(0.0, 0.0, m3 * edge * edge / 12.0),
        gravity: Vec3::new(0.0, -9.81, 0.0),
        platform_force: Vec3::ZERO,
        platform_moment: 0.0,
        tolerances: SolverTolerances::default(),
    }
}

impl RobotParams {
    /// Platform edge length `l = l0·√3`.
    pub fn edge_length(&self) -> f64 {
        self.l0 * SQRT3
    }

    /// Mass of all seven moving bodies.
    pub fn total_mass(&self) -> f64 {
        3.0 * self.masses[0] + 3.0 * self.masses[1] + self.masses[2]
    }

    pub fn validate(&self) -> Result<()> {
        let fail = |m: String| Err(Error::Config(m));
        if !(self.l0 > 0.0 && self.l0.is_finite()) {
            return fail(format!("l0 must be positive, got {}", self.l0));
        }
        if self.masses.iter().any(|m| !(*m > 0.0 && m.is_finite())) {
            return fail(format!("masses must be positive, got {:?}", self.masses));
        }
        if !self.alpha.iter().all(|a| a.is_finite()) {
            return fail("leg angles must be finite".into());
        }
        let vecs = self.base_anchors.iter().chain(&self.com).chain([&self.platform_offset, &self.gravity, &self.platform_force]);
        if !vecs.into_iter().all(Vec3::is_finite) || !self.platform_moment.is_finite() {
            return fail("vector parameters must be finite".into());
        }
        for (name, j) in [("j2", &self.j2), ("j3", &self.j3)] {
            if !j.is_finite() || !j.is_symmetric(1e-12) {
                return fail(format!("{name} must be a finite symmetric matrix"));
            }
            if j[(0, 0)] < 0.0 || j[(1, 1)] < 0.0 || j[(2, 2)] < 0.0 {
                return fail(format!("{name} must be positive semidefinite"));
            }
        }
        let t = &self.tolerances;
        if !(t.singular_sin >= 0.0 && t.max_condition > 1.0) {
            return fail("invalid solver tolerances".into());
        }
        Ok(())
    }

    /// Mass carried by link `k` of `leg` in the virtual-work chains.
    pub fn link_mass(&self, leg: LegIndex, k: Link) -> f64 {
        match (leg, k) {
            (LegIndex::A, 3) => self.masses[2],
            (_, 3) => 0.0,
            (_, k) => self.masses[k - 1],
        }
    }

    /// Centre of mass of link `k` in its own frame.
    pub fn link_com(&self, leg: LegIndex, k: Link) -> Vec3 {
        match (leg, k) {
            (LegIndex::A, 3) => self.com[2],
            (_, 3) => Vec3::ZERO,
            (_, k) => self.com[k - 1],
        }
    }

    /// Inertia tensor of link `k` about its frame origin, in link-frame axes.
    ///
    /// The centroidal tensor is rotated into link axes and moved to the origin
    /// with the parallel-axis term `m(|c|²I - c cᵀ)`.
    pub fn link_inertia_origin(&self, leg: LegIndex, k: Link) -> Mat3 {
        let m = self.link_mass(leg, k);
        let c = self.link_com(leg, k);
        let centroidal = match (leg, k) {
            (_, 1) => Mat3::ZERO,
            (_, 2) => self.j2,
            (LegIndex::A, 3) => {
                let to_link = central_chain(self, leg);
                to_link * self.j3 * to_link.transpose()
            }
            _ => Mat3::ZERO,
        };
        centroidal + parallel_axis(m, &c)
    }

    /// Moment of inertia about the plane normal through the COM, for the
    /// bodies that rotate (link 2 and the platform).
    pub fn planar_inertia(&self, k: Link) -> f64 {
        match k {
            2 => self.j2[(2, 2)],
            3 => self.j3[(2, 2)],
            _ => 0.0,
        }
    }
}

fn parallel_axis(m: f64, c: &Vec3) -> Mat3 {
    let cc = c.dot(c);
    let mut r = [[0.0; 3]; 3];
    for (i, row) in r.iter_mut().enumerate() {
        for (j, v) in row.iter_mut().enumerate() {
            *v = m * (if i == j { cc } else { 0.0 } - c[i] * c[j]);
        }
    }
    Mat3(r)
}

/// `θ1`: swaps the base z axis into the in-plane prismatic direction.
pub const THETA1: Mat3 = Mat3([[0.0, 0.0, -1.0], [0.0, 1.0, 0.0], [1.0, 0.0, 0.0]]);

/// `θ2`: a -π/3 turn about z, written with exact half-integer entries.
pub const THETA2: Mat3 = Mat3([[0.5, -0.5 * SQRT3, 0.0], [0.5 * SQRT3, 0.5, 0.0], [0.0, 0.0, 1.0]]);

pub fn theta_alpha(alpha: f64) -> Mat3 {
    rot_z(alpha)
}

/// `θ1·θ2·θα`: the frame-3 rotation of `leg` at zero platform orientation.
pub fn central_chain(params: &RobotParams, leg: LegIndex) -> Mat3 {
    THETA1 * THETA2 * theta_alpha(params.alpha[leg.idx()])
}

/// Frame-chain rotations for one leg. `q_{k,k-1}` maps frame `k-1`
/// coordinates into frame `k`; `q_k0` maps base coordinates into frame `k`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LegRotations {
    pub q10: Mat3,
    pub q21: Mat3,
    pub q32: Mat3,
    pub q20: Mat3,
    pub q30: Mat3,
}

impl LegRotations {
    /// Relative rotation into link `k` from its parent.
    pub fn relative(&self, k: Link) -> Mat3 {
        match k {
            1 => self.q10,
            2 => self.q21,
            3 => self.q32,
            _ => panic!("link index {k} out of range"),
        }
    }

    /// Absolute rotation of link `k`.
    pub fn absolute(&self, k: Link) -> Mat3 {
        match k {
            1 => self.q10,
            2 => self.q20,
            3 => self.q30,
            _ => panic!("link index {k} out of range"),
        }
    }
}

pub fn leg_rotations(params: &RobotParams, leg: LegIndex, phi21: f64) -> LegRotations {
    let q10 = THETA1 * theta_alpha(params.alpha[leg.idx()]);
    let q21 = rot_z(phi21) * THETA1.transpose();
    let q32 = THETA1 * THETA2;
    let q20 = q21 * q10;
    let q30 = q32 * q20;
    LegRotations { q10, q21, q32, q20, q30 }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::smallmat::rot_z;

    #[test]
    fn standard_values() {
        let p = standard_params();
        assert_eq!(p.l0, 0.3);
        assert_eq!(p.masses, [1.0, 0.75, 3.0]);
        assert!((p.edge_length() - 0.3 * 3f64.sqrt()).abs() < 1e-12);
        assert!((p.total_mass() - 8.25).abs() < 1e-15);
        assert_eq!(p.base_anchors[0], Vec3::new(0.0, -0.3, 0.0));
        assert!((p.j3[(2, 2)] - 0.0675).abs() < 1e-15);
        p.validate().unwrap();
    }

    #[test]
    fn anchors_are_centroidal() {
        let p = standard_params();
        let s = p.base_anchors[0] + p.base_anchors[1] + p.base_anchors[2];
        assert!(s.max_abs() <= 1e-15);
    }

    #[test]
    fn central_orientation_constraint() {
        let p = standard_params();
        for leg in LegIndex::ALL {
            let r = leg_rotations(&p, leg, 0.0);
            assert!((central_chain(&p, leg).transpose() * r.q30).max_abs_diff(&Mat3::IDENTITY) < 1e-12);
            for k in 1..=3 {
                assert!(r.absolute(k).is_rotation(1e-12));
            }
            assert!((r.q32 * r.q21 * r.q10).max_abs_diff(&r.q30) < 1e-15);
        }
    }

    #[test]
    fn piston_axis_points_along_alpha() {
        let p = standard_params();
        for leg in LegIndex::ALL {
            let a = p.alpha[leg.idx()];
            let axis = leg_rotations(&p, leg, 0.7).q10.tr_mul(&Vec3::U3);
            assert!((axis - Vec3::new(a.cos(), a.sin(), 0.0)).max_abs() < 1e-15);
        }
    }

    #[test]
    fn orientation_constraint_for_rotated_platform() {
        let p = standard_params();
        let phi = 0.37;
        let r = leg_rotations(&p, LegIndex::A, phi);
        let lhs = central_chain(&p, LegIndex::A).transpose() * r.q30;
        assert!(lhs.max_abs_diff(&rot_z(phi)) < 1e-12);
    }

    #[test]
    fn platform_inertia_about_frame_origin() {
        let p = standard_params();
        let j = p.link_inertia_origin(LegIndex::A, 3);
        // base z, in frame-3 axes
        let n = central_chain(&p, LegIndex::A) * Vec3::U3;
        let jz = n.dot(&(j * n));
        let r2 = (0.5 * 0.3f64).powi(2) * (1.0 + 1.0 / 3.0);
        assert!((jz - (0.0675 + 3.0 * r2)).abs() < 1e-12);
        assert_eq!(p.link_inertia_origin(LegIndex::B, 3), Mat3::ZERO);
    }

    #[test]
    fn validate_rejects_bad_mass() {
        let mut p = standard_params();
        p.masses[1] = 0.0;
        assert!(p.validate().is_err());
    }
}
