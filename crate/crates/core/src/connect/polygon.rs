use std::f64::consts::TAU;

use crate::error::{Error, Result};
use crate::geom::polytope::{bbox_diagonal, newell_normal};
use crate::geom::Vec3;

/// Orthogonal connectedness of a closed planar polygon for the given in-plane
/// axis directions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolygonVerdict {
    pub connected: bool,
    /// Indices of vertices whose angle contains no axis direction, so that
    /// no axis-parallel segment leaves them into the polygon.
    pub failing_vertices: Vec<usize>,
}

const ANGLE_TOL: f64 = 1e-9;

fn ccw_angle(from: (f64, f64), to: (f64, f64)) -> f64 {
    let a = (from.0 * to.1 - from.1 * to.0).atan2(from.0 * to.0 + from.1 * to.1);
    if a < 0.0 {
        a + TAU
    } else {
        a
    }
}

fn segments_intersect(p: (f64, f64), q: (f64, f64), r: (f64, f64), s: (f64, f64), eps: f64) -> bool {
    let orient = |a: (f64, f64), b: (f64, f64), c: (f64, f64)| {
        (b.0 - a.0) * (c.1 - a.1) - (b.1 - a.1) * (c.0 - a.0)
    };
    let on = |a: (f64, f64), b: (f64, f64), c: (f64, f64)| {
        c.0 >= a.0.min(b.0) - eps
            && c.0 <= a.0.max(b.0) + eps
            && c.1 >= a.1.min(b.1) - eps
            && c.1 <= a.1.max(b.1) + eps
    };
    let d1 = orient(r, s, p);
    let d2 = orient(r, s, q);
    let d3 = orient(p, q, r);
    let d4 = orient(p, q, s);
    if ((d1 > eps && d2 < -eps) || (d1 < -eps && d2 > eps))
        && ((d3 > eps && d4 < -eps) || (d3 < -eps && d4 > eps))
    {
        return true;
    }
    (d1.abs() <= eps && on(r, s, p))
        || (d2.abs() <= eps && on(r, s, q))
        || (d3.abs() <= eps && on(p, q, r))
        || (d4.abs() <= eps && on(p, q, s))
}

/// Decides orthogonal connectedness of a simple planar polygon.
///
/// With two in-plane axes the interior is orthogonally connected, so the
/// polygon is connected iff every vertex admits an axis-parallel segment into
/// the polygon. Only acute vertices can fail. With fewer axes the polygon is
/// never connected.
pub fn polygon_ortho_connected(polygon: &[Vec3], axes: &[Vec3]) -> Result<PolygonVerdict> {
    let n = polygon.len();
    if n < 3 {
        return Err(Error::DegenerateInput("polygon needs 3 vertices".into()));
    }
    if axes.len() > 2 {
        return Err(Error::DegenerateInput("at most 2 in-plane axes".into()));
    }
    let diag = bbox_diagonal(polygon);
    let eps = 1e-9 * diag;
    let Some(normal) = newell_normal(polygon).try_normalize(1e-300) else {
        return Err(Error::DegenerateInput("polygon has zero area".into()));
    };
    let origin = polygon[0];
    let dev = polygon
        .iter()
        .map(|p| normal.dot(&(p - origin)).abs())
        .fold(0.0, f64::max);
    if dev > eps {
        return Err(Error::NonPlanar(dev));
    }
    let u = (0..n)
        .map(|i| polygon[(i + 1) % n] - polygon[i])
        .find(|d| d.norm() > eps)
        .ok_or_else(|| Error::DegenerateInput("polygon collapses to a point".into()))?
        .normalize();
    // Newell normal makes the cycle counterclockwise in the (u, v) frame.
    let v = normal.cross(&u);
    let flat: Vec<(f64, f64)> = polygon
        .iter()
        .map(|p| ((p - origin).dot(&u), (p - origin).dot(&v)))
        .collect();
    for i in 0..n {
        for j in i + 1..n {
            if j == i + 1 || (i == 0 && j == n - 1) {
                continue;
            }
            if segments_intersect(flat[i], flat[(i + 1) % n], flat[j], flat[(j + 1) % n], eps * diag)
            {
                return Err(Error::SelfIntersecting);
            }
        }
    }
    let mut dirs = Vec::new();
    for a in axes {
        if a.dot(&normal).abs() > 1e-9 * a.norm() {
            return Err(Error::DegenerateInput("axis is not parallel to the polygon".into()));
        }
        let d = (a.dot(&u), a.dot(&v));
        dirs.push(d);
        dirs.push((-d.0, -d.1));
    }
    let failing = (0..n)
        .filter(|&i| {
            let p = flat[i];
            let prev = flat[(i + n - 1) % n];
            let next = flat[(i + 1) % n];
            let out = (next.0 - p.0, next.1 - p.1);
            let back = (prev.0 - p.0, prev.1 - p.1);
            let span = ccw_angle(out, back);
            !dirs.iter().any(|&d| {
                let a = ccw_angle(out, d);
                a <= span + ANGLE_TOL || a >= TAU - ANGLE_TOL
            })
        })
        .collect::<Vec<_>>();
    Ok(PolygonVerdict {
        connected: axes.len() == 2 && failing.is_empty(),
        failing_vertices: failing,
    })
}
