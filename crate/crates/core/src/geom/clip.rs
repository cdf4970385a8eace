use super::{build_polytope, Plane, Polytope, Vec3};
use crate::error::Error;
use crate::tol::Tolerances;

/// Part of `p` on the non-positive side of `plane`, or `None` when that part
/// has no interior.
pub fn clip_halfspace(p: &Polytope, plane: &Plane, tol: &Tolerances) -> Option<Polytope> {
    let eps = p.eps();
    let d: Vec<f64> = p.vertices().iter().map(|v| plane.signed_distance(v)).collect();
    if d.iter().all(|&s| s >= -eps) {
        return None;
    }
    if d.iter().all(|&s| s <= eps) {
        return Some(p.clone());
    }
    let mut pts: Vec<Vec3> = Vec::new();
    let mut labels: Vec<String> = Vec::new();
    for (i, v) in p.vertices().iter().enumerate() {
        if d[i] <= eps {
            pts.push(*v);
            labels.push(p.label(i).to_string());
        }
    }
    for &[a, b] in p.edges() {
        if (d[a] < -eps && d[b] > eps) || (d[a] > eps && d[b] < -eps) {
            let t = d[a] / (d[a] - d[b]);
            pts.push(p.vertex(a) + (p.vertex(b) - p.vertex(a)) * t);
            labels.push(format!("{}{}", p.label(a), p.label(b)));
        }
    }
    match build_polytope(p.name.clone(), &pts, Some(labels), tol) {
        Ok(q) => Some(q),
        Err(Error::DegenerateInput(_)) => None,
        Err(e) => panic!("clipping a valid polytope failed: {e}"),
    }
}

/// Both sides of `plane`: `(below, above)`.
pub fn split_by_plane(
    p: &Polytope,
    plane: &Plane,
    tol: &Tolerances,
) -> (Option<Polytope>, Option<Polytope>) {
    (
        clip_halfspace(p, plane, tol),
        clip_halfspace(p, &plane.flipped(), tol),
    )
}

/// Volume of `a ∩ b`.
pub fn intersection_volume(a: &Polytope, b: &Polytope, tol: &Tolerances) -> f64 {
    let mut cur = a.clone();
    for f in 0..b.num_faces() {
        match clip_halfspace(&cur, &b.face_plane(f), tol) {
            Some(q) => cur = q,
            None => return 0.0,
        }
    }
    cur.volume()
}
