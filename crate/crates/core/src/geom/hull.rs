use super::polytope::{bbox_diagonal, default_labels};
use super::{Polytope, Vec3};
use crate::error::{Error, Result};
use crate::tol::Tolerances;

/// 2D convex hull by monotone chain, counterclockwise, collinear points dropped.
fn hull_2d(pts: &[(f64, f64, usize)], eps: f64) -> Vec<usize> {
    let mut p = pts.to_vec();
    p.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));
    if p.len() < 3 {
        return p.iter().map(|q| q.2).collect();
    }
    let cross = |o: &(f64, f64, usize), a: &(f64, f64, usize), b: &(f64, f64, usize)| {
        let (ax, ay, bx, by) = (a.0 - o.0, a.1 - o.1, b.0 - o.0, b.1 - o.1);
        let len = (bx * bx + by * by).sqrt().max((ax * ax + ay * ay).sqrt());
        (ax * by - ay * bx) > eps * len
    };
    let mut lower: Vec<(f64, f64, usize)> = Vec::new();
    for q in &p {
        while lower.len() >= 2 && !cross(&lower[lower.len() - 2], &lower[lower.len() - 1], q) {
            lower.pop();
        }
        lower.push(*q);
    }
    let mut upper: Vec<(f64, f64, usize)> = Vec::new();
    for q in p.iter().rev() {
        while upper.len() >= 2 && !cross(&upper[upper.len() - 2], &upper[upper.len() - 1], q) {
            upper.pop();
        }
        upper.push(*q);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower.into_iter().map(|q| q.2).collect()
}

/// Convex hull of `points`, keeping surviving points in input order.
///
/// Labels follow their points; points that are not hull vertices are
/// dropped along with their labels. Near-coincident points are merged into
/// the first occurrence.
pub fn build_polytope(
    name: impl Into<String>,
    points: &[Vec3],
    labels: Option<Vec<String>>,
    tol: &Tolerances,
) -> Result<Polytope> {
    let name = name.into();
    let labels = labels.unwrap_or_else(|| default_labels(points.len()));
    if labels.len() != points.len() {
        return Err(Error::DegenerateInput("label count differs from point count".into()));
    }
    if points.iter().any(|p| !p.iter().all(|c| c.is_finite())) {
        return Err(Error::DegenerateInput("non-finite coordinate".into()));
    }
    let diag = bbox_diagonal(points);
    if points.len() < 4 || diag <= 0.0 {
        return Err(Error::DegenerateInput("fewer than 4 distinct points".into()));
    }
    let eps = tol.eps_geom * diag;

    let mut pts: Vec<Vec3> = Vec::new();
    let mut labs: Vec<String> = Vec::new();
    for (p, l) in points.iter().zip(labels) {
        if pts.iter().all(|q| (q - p).norm() > eps) {
            pts.push(*p);
            labs.push(l);
        }
    }
    let n = pts.len();

    let mut planes: Vec<(Vec3, f64, Vec<usize>)> = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                if planes
                    .iter()
                    .any(|(_, _, on)| on.contains(&i) && on.contains(&j) && on.contains(&k))
                {
                    continue;
                }
                let raw = (pts[j] - pts[i]).cross(&(pts[k] - pts[i]));
                let scale = (pts[j] - pts[i]).norm() * (pts[k] - pts[i]).norm();
                if raw.norm() <= eps * scale.sqrt().max(eps) {
                    continue;
                }
                let mut nrm = raw.normalize();
                let (mut above, mut below) = (false, false);
                for p in &pts {
                    let s = nrm.dot(&(p - pts[i]));
                    above |= s > eps;
                    below |= s < -eps;
                    if above && below {
                        break;
                    }
                }
                if above && below {
                    continue;
                }
                if above {
                    nrm = -nrm;
                }
                let off = nrm.dot(&pts[i]);
                let on: Vec<usize> = (0..n)
                    .filter(|&m| (nrm.dot(&pts[m]) - off).abs() <= eps)
                    .collect();
                planes.push((nrm, off, on));
            }
        }
    }
    if planes.len() < 4 {
        return Err(Error::DegenerateInput("points are coplanar".into()));
    }

    let mut faces: Vec<Vec<usize>> = Vec::new();
    for (nrm, _, on) in &planes {
        let u = (pts[on[1]] - pts[on[0]]).normalize();
        let v = nrm.cross(&u);
        let p0 = pts[on[0]];
        let flat: Vec<(f64, f64, usize)> = on
            .iter()
            .map(|&m| {
                let d = pts[m] - p0;
                (d.dot(&u), d.dot(&v), m)
            })
            .collect();
        let cyc = hull_2d(&flat, eps);
        if cyc.len() >= 3 {
            faces.push(cyc);
        }
    }

    let mut used = vec![false; n];
    for f in &faces {
        for &v in f {
            used[v] = true;
        }
    }
    let mut remap = vec![usize::MAX; n];
    let mut verts = Vec::new();
    let mut vlabels = Vec::new();
    for m in 0..n {
        if used[m] {
            remap[m] = verts.len();
            verts.push(pts[m]);
            vlabels.push(labs[m].clone());
        }
    }
    let faces = faces
        .into_iter()
        .map(|f| f.into_iter().map(|v| remap[v]).collect())
        .collect();
    Polytope::from_faces(name, verts, Some(vlabels), faces, tol)
}
