//! Geometric kernel: vectors, planes, rotations, convex polytopes.
//!
//! Coordinates are plain `f64`. Every predicate is gated by a tolerance from
//! [`Tolerances`](crate::Tolerances); irrational catalog coordinates (√2, the
//! golden ratio) are stored in floating point.

pub mod clip;
pub mod hull;
pub mod polytope;
pub mod rotation;

use nalgebra::Vector3;

pub use clip::{clip_halfspace, intersection_volume, split_by_plane};
pub use hull::build_polytope;
pub use polytope::Polytope;
pub use rotation::Rotation;

pub type Vec3 = Vector3<f64>;

/// Unit vector of coordinate axis `a` (0 = x, 1 = y, 2 = z).
pub fn axis(a: usize) -> Vec3 {
    let mut v = Vec3::zeros();
    v[a] = 1.0;
    v
}

/// Oriented plane `normal·x = offset` with unit normal.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Plane {
    pub normal: Vec3,
    pub offset: f64,
}

impl Plane {
    /// Plane through `point` with the given (not necessarily unit) normal.
    pub fn through(point: &Vec3, normal: &Vec3) -> Option<Self> {
        let n = normal.try_normalize(1e-300)?;
        Some(Self {
            normal: n,
            offset: n.dot(point),
        })
    }

    /// Plane through three points, oriented by the right-hand rule.
    pub fn from_points(a: &Vec3, b: &Vec3, c: &Vec3) -> Option<Self> {
        Self::through(a, &(b - a).cross(&(c - a)))
    }

    pub fn signed_distance(&self, p: &Vec3) -> f64 {
        self.normal.dot(p) - self.offset
    }

    pub fn flipped(&self) -> Self {
        Self {
            normal: -self.normal,
            offset: -self.offset,
        }
    }

    /// Intersection of the closed segment `a`–`b` with the plane, if the
    /// segment crosses or touches it at a single point.
    pub fn intersect_segment(&self, a: &Vec3, b: &Vec3) -> Option<Vec3> {
        let da = self.signed_distance(a);
        let db = self.signed_distance(b);
        let denom = da - db;
        if denom.abs() < 1e-300 {
            return None;
        }
        let t = da / denom;
        if !(-1e-12..=1.0 + 1e-12).contains(&t) {
            return None;
        }
        Some(a + (b - a) * t.clamp(0.0, 1.0))
    }
}

/// Affine line or plane used as a projection target.
#[derive(Clone, Copy, Debug)]
pub enum Affine {
    Line { point: Vec3, direction: Vec3 },
    Plane { point: Vec3, u: Vec3, v: Vec3 },
}

impl Affine {
    pub fn line(point: Vec3, direction: Vec3) -> Self {
        Affine::Line { point, direction }
    }

    pub fn plane(point: Vec3, u: Vec3, v: Vec3) -> Self {
        Affine::Plane { point, u, v }
    }
}

/// Orthogonal projection of `x` onto an affine line or plane.
pub fn project_point(x: &Vec3, target: &Affine) -> Vec3 {
    match *target {
        Affine::Line { point, direction } => {
            let d = direction.normalize();
            point + d * d.dot(&(x - point))
        }
        Affine::Plane { point, u, v } => {
            // Gram-Schmidt so the two spanning directions need not be orthogonal.
            let e1 = u.normalize();
            let e2 = (v - e1 * e1.dot(&v)).normalize();
            let r = x - point;
            point + e1 * e1.dot(&r) + e2 * e2.dot(&r)
        }
    }
}

/// Closed segment between two points.
#[derive(Clone, Copy, Debug)]
pub struct Segment {
    pub a: Vec3,
    pub b: Vec3,
}

impl Segment {
    pub fn new(a: Vec3, b: Vec3) -> Self {
        Self { a, b }
    }

    pub fn at(&self, s: f64) -> Vec3 {
        self.a + (self.b - self.a) * s
    }

    pub fn direction(&self) -> Vec3 {
        self.b - self.a
    }
}

#[derive(Clone, Copy, Debug)]
pub struct ClosestPair {
    pub on_a: Vec3,
    pub on_b: Vec3,
    pub distance: f64,
    /// Whether the closest points of the two supporting lines lie in both segments.
    pub facing: bool,
}

/// Closest points between the supporting lines of two segments.
///
/// `facing` is true iff the common-perpendicular feet have parameters in
/// `[0, 1]` on both segments. For parallel lines every perpendicular is a
/// minimizer; `facing` then reports whether the projections overlap.
pub fn closest_edge_pair(a: &Segment, b: &Segment) -> ClosestPair {
    const PTOL: f64 = 1e-12;
    let d1 = a.direction();
    let d2 = b.direction();
    let r = a.a - b.a;
    let aa = d1.dot(&d1);
    let bb = d1.dot(&d2);
    let cc = d2.dot(&d2);
    let dd = d1.dot(&r);
    let ee = d2.dot(&r);
    let denom = aa * cc - bb * bb;
    if denom <= 1e-14 * aa * cc {
        // Parallel: project b's endpoints onto a's parameter line.
        let s0 = -dd / aa;
        let s1 = s0 + bb / aa;
        let (lo, hi) = if s0 <= s1 { (s0, s1) } else { (s1, s0) };
        let overlap_lo = lo.max(0.0);
        let overlap_hi = hi.min(1.0);
        let facing = overlap_lo <= overlap_hi + PTOL;
        let s = if facing { 0.5 * (overlap_lo + overlap_hi) } else { 0.0 };
        let on_a = a.at(s);
        let t = d2.dot(&(on_a - b.a)) / cc;
        let on_b = b.at(t);
        return ClosestPair {
            on_a,
            on_b,
            distance: (on_a - on_b).norm(),
            facing,
        };
    }
    let s = (bb * ee - cc * dd) / denom;
    let t = (aa * ee - bb * dd) / denom;
    let on_a = a.at(s);
    let on_b = b.at(t);
    let inside = |p: f64| (-PTOL..=1.0 + PTOL).contains(&p);
    ClosestPair {
        on_a,
        on_b,
        distance: (on_a - on_b).norm(),
        facing: inside(s) && inside(t),
    }
}
