//! Fixed-size 3-vectors and 3x3 matrices, plus small dense solves.
//!
//! Rotation matrices follow the frame-transformation convention: `rot_z(a) * v`
//! maps the coordinates of `v` in frame `k-1` to its coordinates in frame `k`,
//! where frame `k` is frame `k-1` turned by `a` about their common z axis.

use std::ops::{Add, AddAssign, Index, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::opcount;

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Vec3(pub [f64; 3]);

impl Vec3 {
    pub const ZERO: Vec3 = Vec3([0.0; 3]);
    pub const U1: Vec3 = Vec3([1.0, 0.0, 0.0]);
    pub const U2: Vec3 = Vec3([0.0, 1.0, 0.0]);
    pub const U3: Vec3 = Vec3([0.0, 0.0, 1.0]);

    #[inline]
    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Vec3([x, y, z])
    }

    #[inline]
    pub fn x(&self) -> f64 {
        self.0[0]
    }
    #[inline]
    pub fn y(&self) -> f64 {
        self.0[1]
    }
    #[inline]
    pub fn z(&self) -> f64 {
        self.0[2]
    }

    #[inline]
    pub fn dot(&self, o: &Vec3) -> f64 {
        opcount::add(5);
        self.0[0] * o.0[0] + self.0[1] * o.0[1] + self.0[2] * o.0[2]
    }

    #[inline]
    pub fn cross(&self, o: &Vec3) -> Vec3 {
        opcount::add(9);
        let [a, b, c] = self.0;
        let [x, y, z] = o.0;
        Vec3([b * z - c * y, c * x - a * z, a * y - b * x])
    }

    #[inline]
    pub fn scale(&self, s: f64) -> Vec3 {
        opcount::add(3);
        Vec3([self.0[0] * s, self.0[1] * s, self.0[2] * s])
    }

    pub fn norm(&self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().fold(0.0_f64, |m, v| m.max(v.abs()))
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|v| v.is_finite())
    }

    /// Skew-symmetric matrix `[v]x` such that `[v]x * w = v x w`.
    pub fn skew(&self) -> Mat3 {
        let [x, y, z] = self.0;
        Mat3([[0.0, -z, y], [z, 0.0, -x], [-y, x, 0.0]])
    }
}

impl Index<usize> for Vec3 {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

impl Add for Vec3 {
    type Output = Vec3;
    #[inline]
    fn add(self, o: Vec3) -> Vec3 {
        opcount::add(3);
        Vec3([self.0[0] + o.0[0], self.0[1] + o.0[1], self.0[2] + o.0[2]])
    }
}

impl AddAssign for Vec3 {
    #[inline]
    fn add_assign(&mut self, o: Vec3) {
        *self = *self + o;
    }
}

impl Sub for Vec3 {
    type Output = Vec3;
    #[inline]
    fn sub(self, o: Vec3) -> Vec3 {
        opcount::add(3);
        Vec3([self.0[0] - o.0[0], self.0[1] - o.0[1], self.0[2] - o.0[2]])
    }
}

impl Neg for Vec3 {
    type Output = Vec3;
    #[inline]
    fn neg(self) -> Vec3 {
        Vec3([-self.0[0], -self.0[1], -self.0[2]])
    }
}

impl Mul<f64> for Vec3 {
    type Output = Vec3;
    #[inline]
    fn mul(self, s: f64) -> Vec3 {
        self.scale(s)
    }
}

impl Mul<Vec3> for f64 {
    type Output = Vec3;
    #[inline]
    fn mul(self, v: Vec3) -> Vec3 {
        v.scale(self)
    }
}

/// Row-major 3x3 matrix.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Mat3(pub [[f64; 3]; 3]);

impl Mat3 {
    pub const ZERO: Mat3 = Mat3([[0.0; 3]; 3]);
    pub const IDENTITY: Mat3 = Mat3([[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]]);

    pub const fn diag(a: f64, b: f64, c: f64) -> Mat3 {
        Mat3([[a, 0.0, 0.0], [0.0, b, 0.0], [0.0, 0.0, c]])
    }

    #[inline]
    pub fn transpose(&self) -> Mat3 {
        let m = &self.0;
        Mat3([
            [m[0][0], m[1][0], m[2][0]],
            [m[0][1], m[1][1], m[2][1]],
            [m[0][2], m[1][2], m[2][2]],
        ])
    }

    /// `selfᵀ * v` without materialising the transpose.
    #[inline]
    pub fn tr_mul(&self, v: &Vec3) -> Vec3 {
        opcount::add(15);
        let m = &self.0;
        let [x, y, z] = v.0;
        Vec3([
            m[0][0] * x + m[1][0] * y + m[2][0] * z,
            m[0][1] * x + m[1][1] * y + m[2][1] * z,
            m[0][2] * x + m[1][2] * y + m[2][2] * z,
        ])
    }

    pub fn col(&self, j: usize) -> Vec3 {
        Vec3([self.0[0][j], self.0[1][j], self.0[2][j]])
    }

    pub fn row(&self, i: usize) -> Vec3 {
        Vec3(self.0[i])
    }

    pub fn det(&self) -> f64 {
        let m = &self.0;
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    }

    pub fn max_abs_diff(&self, o: &Mat3) -> f64 {
        let mut d = 0.0_f64;
        for i in 0..3 {
            for j in 0..3 {
                d = d.max((self.0[i][j] - o.0[i][j]).abs());
            }
        }
        d
    }

    pub fn is_symmetric(&self, tol: f64) -> bool {
        self.max_abs_diff(&self.transpose()) <= tol
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().flatten().all(|v| v.is_finite())
    }

    /// Orthogonal with determinant +1, within `tol`.
    pub fn is_rotation(&self, tol: f64) -> bool {
        (self.transpose() * *self).max_abs_diff(&Mat3::IDENTITY) <= tol && (self.det() - 1.0).abs() <= tol
    }
}

impl Index<(usize, usize)> for Mat3 {
    type Output = f64;
    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.0[i][j]
    }
}

impl Mul<Vec3> for Mat3 {
    type Output = Vec3;
    #[inline]
    fn mul(self, v: Vec3) -> Vec3 {
        opcount::add(15);
        let m = &self.0;
        let [x, y, z] = v.0;
        Vec3([
            m[0][0] * x + m[0][1] * y + m[0][2] * z,
            m[1][0] * x + m[1][1] * y + m[1][2] * z,
            m[2][0] * x + m[2][1] * y + m[2][2] * z,
        ])
    }
}

impl Mul for Mat3 {
    type Output = Mat3;
    #[inline]
    fn mul(self, o: Mat3) -> Mat3 {
        opcount::add(45);
        let mut r = [[0.0; 3]; 3];
        for (i, row) in r.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = self.0[i][0] * o.0[0][j] + self.0[i][1] * o.0[1][j] + self.0[i][2] * o.0[2][j];
            }
        }
        Mat3(r)
    }
}

impl Mul<f64> for Mat3 {
    type Output = Mat3;
    fn mul(self, s: f64) -> Mat3 {
        opcount::add(9);
        Mat3(self.0.map(|row| row.map(|v| v * s)))
    }
}

impl Add for Mat3 {
    type Output = Mat3;
    fn add(self, o: Mat3) -> Mat3 {
        opcount::add(9);
        let mut r = self.0;
        for (i, row) in r.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell += o.0[i][j];
            }
        }
        Mat3(r)
    }
}

impl Sub for Mat3 {
    type Output = Mat3;
    fn sub(self, o: Mat3) -> Mat3 {
        self + o * -1.0
    }
}

/// Frame rotation about z: first row `(cos, sin, 0)`, second `(-sin, cos, 0)`.
pub fn rot_z(angle: f64) -> Mat3 {
    let (s, c) = angle.sin_cos();
    Mat3([[c, s, 0.0], [-s, c, 0.0], [0.0, 0.0, 1.0]])
}

/// `d/dθ rot_z(θ) = -ũ3 · rot_z(θ)`.
pub fn rot_z_derivative(angle: f64) -> Mat3 {
    (skew_u3() * rot_z(angle)) * -1.0
}

/// The constant skew matrix of the unit z axis.
pub const fn skew_u3() -> Mat3 {
    Mat3([[0.0, -1.0, 0.0], [1.0, 0.0, 0.0], [0.0, 0.0, 0.0]])
}

/// Solves the 2x2 system `[c1 c2] * x = rhs` by Cramer's rule.
///
/// Returns `None` when `|det| <= min_det`.
pub fn solve2(c1: [f64; 2], c2: [f64; 2], rhs: [f64; 2], min_det: f64) -> Option<[f64; 2]> {
    let det = c1[0] * c2[1] - c1[1] * c2[0];
    if !(det.abs() > min_det) {
        return None;
    }
    opcount::add(9);
    Some([
        (rhs[0] * c2[1] - rhs[1] * c2[0]) / det,
        (c1[0] * rhs[1] - c1[1] * rhs[0]) / det,
    ])
}

/// LU factorisation with partial pivoting of a small dense matrix.
#[derive(Clone, Debug)]
pub struct DenseLu<const N: usize> {
    lu: [[f64; N]; N],
    perm: [usize; N],
}

impl<const N: usize> DenseLu<N> {
    /// Factors `a`; `None` if a pivot is exactly zero or non-finite.
    pub fn factor(a: &[[f64; N]; N]) -> Option<Self> {
        let mut lu = *a;
        let mut perm = [0usize; N];
        for (i, p) in perm.iter_mut().enumerate() {
            *p = i;
        }
        for k in 0..N {
            let mut piv = k;
            let mut best = lu[k][k].abs();
            for (i, row) in lu.iter().enumerate().skip(k + 1) {
                if row[k].abs() > best {
                    best = row[k].abs();
                    piv = i;
                }
            }
            if !(best > 0.0) || !best.is_finite() {
                return None;
            }
            lu.swap(k, piv);
            perm.swap(k, piv);
            let pivot = lu[k][k];
            for i in (k + 1)..N {
                let f = lu[i][k] / pivot;
                lu[i][k] = f;
                for j in (k + 1)..N {
                    lu[i][j] -= f * lu[k][j];
                }
                opcount::add(1 + 2 * (N - k - 1) as u64);
            }
        }
        Some(Self { lu, perm })
    }

    pub fn solve(&self, b: &[f64; N]) -> [f64; N] {
        let mut x = [0.0; N];
        for i in 0..N {
            let mut s = b[self.perm[i]];
            for j in 0..i {
                s -= self.lu[i][j] * x[j];
            }
            x[i] = s;
        }
        for i in (0..N).rev() {
            let mut s = x[i];
            for j in (i + 1)..N {
                s -= self.lu[i][j] * x[j];
            }
            x[i] = s / self.lu[i][i];
        }
        opcount::add((2 * N * N) as u64);
        x
    }

    /// 1-norm condition number `‖A‖₁ ‖A⁻¹‖₁` of the original matrix.
    pub fn condition_1(&self, a: &[[f64; N]; N]) -> f64 {
        let mut inv_norm = 0.0_f64;
        for j in 0..N {
            let mut e = [0.0; N];
            e[j] = 1.0;
            let col = self.solve(&e);
            inv_norm = inv_norm.max(col.iter().map(|v| v.abs()).sum());
        }
        let a_norm = (0..N).map(|j| a.iter().map(|row| row[j].abs()).sum::<f64>()).fold(0.0, f64::max);
        a_norm * inv_norm
    }
}

/// Largest row residual `|A x - b|∞`.
pub fn residual_inf<const N: usize>(a: &[[f64; N]; N], x: &[f64; N], b: &[f64; N]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(row, bi)| (row.iter().zip(x).map(|(aij, xj)| aij * xj).sum::<f64>() - bi).abs())
        .fold(0.0, f64::max)
}
