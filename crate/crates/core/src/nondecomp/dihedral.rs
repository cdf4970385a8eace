use std::f64::consts::FRAC_PI_4;

use crate::geom::Polytope;

/// Angles within this many radians of 3π/4 do not count as larger.
pub const DIHEDRAL_MARGIN: f64 = 1e-9;

/// Right-angle tolerance for the rectangle test (cosine of the corner).
const RIGHT_ANGLE_TOL: f64 = 1e-9;

/// A non-rectangular face all of whose dihedral angles exceed 3π/4.
#[derive(Clone, Debug, PartialEq)]
pub struct DihedralWitness {
    pub face: usize,
    /// `(neighbour face, dihedral angle in radians)` for every edge of the face.
    pub angles: Vec<(usize, f64)>,
    pub is_rectangle: bool,
}

pub fn is_rectangle(p: &Polytope, f: usize) -> bool {
    let pts = p.face_points(f);
    if pts.len() != 4 {
        return false;
    }
    (0..4).all(|i| {
        let a = (pts[(i + 3) % 4] - pts[i]).normalize();
        let b = (pts[(i + 1) % 4] - pts[i]).normalize();
        a.dot(&b).abs() <= RIGHT_ANGLE_TOL
    })
}

/// Dihedral angles of face `f` with each neighbour, in edge order.
pub fn face_angles(p: &Polytope, f: usize) -> Vec<(usize, f64)> {
    p.face_edges(f)
        .iter()
        .map(|&e| {
            let [g, h] = p.edge_faces(e);
            (if g == f { h } else { g }, p.dihedral_angle(e))
        })
        .collect()
}

/// First face that is not a rectangle and meets every neighbour at an angle
/// larger than 3π/4. Such a face rules out any decomposition into pieces with
/// orthogonally connected boundaries.
pub fn dihedral_criterion(p: &Polytope) -> Option<DihedralWitness> {
    let bound = 3.0 * FRAC_PI_4 + DIHEDRAL_MARGIN;
    (0..p.num_faces()).find_map(|f| {
        if is_rectangle(p, f) {
            return None;
        }
        let angles = face_angles(p, f);
        angles.iter().all(|&(_, a)| a > bound).then_some(DihedralWitness {
            face: f,
            angles,
            is_rectangle: false,
        })
    })
}
