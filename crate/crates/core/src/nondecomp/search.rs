//! Numeric search for a rotation giving every face a mark.
//!
//! Minimizes `f(R) = max_F min_a |(R n_F)·e_a|` over SO(3): a 15° Euler grid,
//! then Levenberg–Marquardt steps on the active components and a pattern
//! search, followed by random restarts while the evaluation budget lasts.
//! A residual near zero exhibits a rotation; a residual bounded away from
//! zero is only evidence that none exists.

use nalgebra::{Matrix3, UnitQuaternion};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::geom::{Polytope, Rotation, Vec3};

const GRID_STEP_DEG: f64 = 15.0;
const REFINED_CANDIDATES: usize = 16;
const SEED: u64 = 0x5eed;

#[derive(Clone, Debug)]
pub struct RotationSearch {
    pub rotation: Rotation,
    pub residual: f64,
    pub evaluations: u64,
}

struct Objective {
    normals: Vec<Vec3>,
    evals: u64,
    budget: u64,
}

impl Objective {
    fn exhausted(&self) -> bool {
        self.evals >= self.budget
    }

    fn eval(&mut self, q: &UnitQuaternion<f64>) -> f64 {
        self.evals += 1;
        self.normals
            .iter()
            .map(|n| {
                let m = q * n;
                m.x.abs().min(m.y.abs()).min(m.z.abs())
            })
            .fold(0.0, f64::max)
    }

    /// Damped Gauss–Newton on the smallest component of every normal.
    fn gauss_newton(&mut self, mut q: UnitQuaternion<f64>, mut fq: f64) -> (UnitQuaternion<f64>, f64) {
        let mut lambda = 1e-6;
        for _ in 0..60 {
            if fq < 1e-15 || lambda > 1e8 || self.exhausted() {
                break;
            }
            let mut jtj = Matrix3::zeros();
            let mut jtr = Vec3::zeros();
            for n in &self.normals {
                let m = q * n;
                let a = (0..3).min_by(|&i, &j| m[i].abs().total_cmp(&m[j].abs())).unwrap();
                let row = m.cross(&Vec3::ith(a, 1.0));
                jtj += row * row.transpose();
                jtr += row * m[a];
            }
            let Some(inv) = (jtj + Matrix3::identity() * lambda).try_inverse() else {
                break;
            };
            let step = -(inv * jtr);
            let cand = UnitQuaternion::from_scaled_axis(step) * q;
            let fc = self.eval(&cand);
            if fc < fq {
                q = cand;
                fq = fc;
                lambda = (lambda / 4.0).max(1e-12);
            } else {
                lambda *= 10.0;
            }
        }
        (q, fq)
    }

    fn pattern(&mut self, mut q: UnitQuaternion<f64>, mut fq: f64) -> (UnitQuaternion<f64>, f64) {
        let mut h = 0.05;
        while h > 1e-13 && fq > 1e-15 && !self.exhausted() {
            let mut improved = false;
            for i in 0..6 {
                let dir = Vec3::ith(i % 3, if i < 3 { h } else { -h });
                let cand = UnitQuaternion::from_scaled_axis(dir) * q;
                let fc = self.eval(&cand);
                if fc < fq {
                    q = cand;
                    fq = fc;
                    improved = true;
                    break;
                }
            }
            if !improved {
                h *= 0.5;
            }
        }
        (q, fq)
    }

    fn refine(&mut self, q: UnitQuaternion<f64>, fq: f64) -> (UnitQuaternion<f64>, f64) {
        let (q, fq) = self.gauss_newton(q, fq);
        let (q, fq) = self.pattern(q, fq);
        self.gauss_newton(q, fq)
    }
}

fn to_rotation(q: &UnitQuaternion<f64>) -> Rotation {
    Rotation::new(q.to_rotation_matrix().into_inner()).expect("unit quaternions give rotations")
}

pub fn rotation_search(p: &Polytope, budget: u64) -> RotationSearch {
    let budget = budget.max(1);
    let mut normals: Vec<Vec3> = Vec::new();
    for f in 0..p.num_faces() {
        let n = p.face_plane(f).normal;
        if normals.iter().all(|m| m.dot(&n).abs() < 1.0 - 1e-12) {
            normals.push(n);
        }
    }
    let mut obj = Objective {
        normals,
        evals: 0,
        budget,
    };

    let mut grid: Vec<(f64, UnitQuaternion<f64>)> = Vec::new();
    let steps = (360.0 / GRID_STEP_DEG) as usize;
    'grid: for i in 0..steps {
        for j in 0..=steps / 2 {
            for k in 0..steps {
                if obj.exhausted() {
                    break 'grid;
                }
                let r = Rotation::from_euler_xyz_deg(
                    i as f64 * GRID_STEP_DEG,
                    j as f64 * GRID_STEP_DEG - 90.0,
                    k as f64 * GRID_STEP_DEG,
                );
                let q = UnitQuaternion::from_matrix(r.matrix());
                grid.push((obj.eval(&q), q));
            }
        }
    }
    grid.sort_by(|a, b| a.0.total_cmp(&b.0));
    let (mut best_f, mut best_q) = grid[0];

    for &(f, q) in grid.iter().take(REFINED_CANDIDATES) {
        if best_f < 1e-15 || obj.exhausted() {
            break;
        }
        let (q, f) = obj.refine(q, f);
        if f < best_f {
            best_f = f;
            best_q = q;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    while best_f > 1e-15 && !obj.exhausted() {
        let r = Rotation::random(&mut rng);
        let q = UnitQuaternion::from_matrix(r.matrix());
        let f = obj.eval(&q);
        let (q, f) = obj.refine(q, f);
        if f < best_f {
            best_f = f;
            best_q = q;
        }
    }
    RotationSearch {
        rotation: to_rotation(&best_q),
        residual: best_f,
        evaluations: obj.evals,
    }
}
