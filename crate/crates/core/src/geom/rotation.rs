use nalgebra::{Matrix3, UnitQuaternion};
use rand::Rng;

use super::Vec3;
use crate::error::{Error, Result};

/// Entry-wise tolerance for `RᵀR = I` and `det R = 1`.
pub const ROTATION_TOL: f64 = 1e-12;

/// Proper rotation of ℝ³ stored as a 3×3 matrix.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Rotation(Matrix3<f64>);

impl Rotation {
    pub fn identity() -> Self {
        Rotation(Matrix3::identity())
    }

    /// Checks orthogonality and orientation entry-wise.
    pub fn new(m: Matrix3<f64>) -> Result<Self> {
        if m.iter().any(|v| !v.is_finite()) {
            return Err(Error::NotARotation {
                defect: f64::INFINITY,
                det: f64::NAN,
            });
        }
        let defect = (m.transpose() * m - Matrix3::identity()).amax();
        let det = m.determinant();
        if defect > ROTATION_TOL || (det - 1.0).abs() > ROTATION_TOL {
            return Err(Error::NotARotation { defect, det });
        }
        Ok(Rotation(m))
    }

    /// Rotation whose rows are the given right-handed orthonormal frame, i.e.
    /// it maps `rows[a]` onto coordinate axis `a`.
    pub fn from_frame_rows(rows: [Vec3; 3]) -> Result<Self> {
        Self::new(Matrix3::from_rows(&[
            rows[0].transpose(),
            rows[1].transpose(),
            rows[2].transpose(),
        ]))
    }

    pub fn about_axis(axis: &Vec3, angle: f64) -> Self {
        let q = UnitQuaternion::from_axis_angle(&nalgebra::Unit::new_normalize(*axis), angle);
        Rotation(*q.to_rotation_matrix().matrix())
    }

    /// Extrinsic X, then Y, then Z rotation, angles in degrees.
    pub fn from_euler_xyz_deg(ax: f64, ay: f64, az: f64) -> Self {
        let r = |a: usize, deg: f64| Self::about_axis(&super::axis(a), deg.to_radians()).0;
        Rotation(r(2, az) * r(1, ay) * r(0, ax))
    }

    /// Uniformly distributed rotation (Haar measure on SO(3)).
    pub fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        let u1: f64 = rng.gen();
        let u2: f64 = rng.gen::<f64>() * std::f64::consts::TAU;
        let u3: f64 = rng.gen::<f64>() * std::f64::consts::TAU;
        let (a, b) = ((1.0 - u1).sqrt(), u1.sqrt());
        let q = nalgebra::Quaternion::new(b * u3.cos(), a * u2.sin(), a * u2.cos(), b * u3.sin());
        let q = UnitQuaternion::from_quaternion(q);
        Rotation(*q.to_rotation_matrix().matrix())
    }

    pub fn matrix(&self) -> &Matrix3<f64> {
        &self.0
    }

    pub fn apply(&self, v: &Vec3) -> Vec3 {
        self.0 * v
    }

    pub fn inverse(&self) -> Self {
        Rotation(self.0.transpose())
    }

    pub fn compose(&self, then: &Rotation) -> Self {
        Rotation(then.0 * self.0)
    }
}

/// All 48 signed permutation matrices (24 proper, 24 improper).
pub fn signed_permutations() -> Vec<Matrix3<f64>> {
    const PERMS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    let mut out = Vec::with_capacity(48);
    for p in PERMS {
        for signs in 0..8u32 {
            let mut m = Matrix3::zeros();
            for (row, &col) in p.iter().enumerate() {
                m[(row, col)] = if signs & (1 << row) != 0 { -1.0 } else { 1.0 };
            }
            out.push(m);
        }
    }
    out
}
