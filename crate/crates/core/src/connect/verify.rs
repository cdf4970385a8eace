use crate::geom::Polytope;
use crate::marks::MarkedPolytope;
use crate::tol::Tolerances;

use super::reach::{FaceKind, ReachSet, Surface, SurfacePoint};

/// Round cap for the witness closure when the verdict is already known.
const WITNESS_ITERS: usize = 200;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Connected,
    NotConnected,
    Inconclusive,
}

impl Outcome {
    pub fn name(self) -> &'static str {
        match self {
            Outcome::Connected => "Connected",
            Outcome::NotConnected => "NotConnected",
            Outcome::Inconclusive => "Inconclusive",
        }
    }
}

/// Why the verdict was reached.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Basis {
    /// A face without marks: no orthogonal path starts inside it.
    UnmarkedFace(usize),
    /// No two-mark face: every closure is a union of chords and misses most
    /// of each face.
    NoTwoMarkFace,
    /// Decided from reach closures.
    Closure,
}

#[derive(Clone, Debug)]
pub struct SurfaceVerdict {
    pub outcome: Outcome,
    pub basis: Basis,
    /// Full closure for `Connected`, a non-full closure otherwise.
    pub witness: ReachSet,
    /// Total fixpoint rounds spent.
    pub iterations: usize,
}

/// Every vertex plus the centroid of every face.
pub fn canonical_seeds(p: &Polytope) -> Vec<SurfacePoint> {
    let mut out: Vec<SurfacePoint> = (0..p.num_vertices()).map(SurfacePoint::Vertex).collect();
    out.extend((0..p.num_faces()).map(|f| SurfacePoint::Face {
        face: f,
        point: p.face_centroid(f),
    }));
    out
}

pub fn verify_surface_connected(mp: &MarkedPolytope, tol: &Tolerances) -> SurfaceVerdict {
    let surface = Surface::new(mp).expect("faces of a valid polytope are simple polygons");
    let p = &mp.polytope;
    let centroid = |f: usize| SurfacePoint::Face {
        face: f,
        point: p.face_centroid(f),
    };

    if let Some(f) = surface.kinds.iter().position(|k| *k == FaceKind::Blind) {
        let witness = surface.reach(centroid(f), WITNESS_ITERS);
        return SurfaceVerdict {
            outcome: Outcome::NotConnected,
            basis: Basis::UnmarkedFace(f),
            iterations: witness.iterations,
            witness,
        };
    }
    let Some(open) = surface
        .kinds
        .iter()
        .position(|k| matches!(k, FaceKind::Open { .. }))
    else {
        let witness = surface.reach(centroid(0), WITNESS_ITERS);
        return SurfaceVerdict {
            outcome: Outcome::NotConnected,
            basis: Basis::NoTwoMarkFace,
            iterations: witness.iterations,
            witness,
        };
    };

    let first = surface.reach(centroid(open), tol.max_fixpoint_iters);
    let mut iterations = first.iterations;
    if surface.is_full(&first) {
        return SurfaceVerdict {
            outcome: Outcome::Connected,
            basis: Basis::Closure,
            witness: first,
            iterations,
        };
    }
    if !first.converged {
        return SurfaceVerdict {
            outcome: Outcome::Inconclusive,
            basis: Basis::Closure,
            witness: first,
            iterations,
        };
    }
    let mut best = first;
    let mut best_extent = surface.extent(&best);
    for seed in canonical_seeds(p) {
        if surface.contains(&best, &seed) {
            continue;
        }
        let rs = surface.reach(seed, tol.max_fixpoint_iters);
        iterations += rs.iterations;
        if !rs.converged || surface.is_full(&rs) {
            continue;
        }
        let ext = surface.extent(&rs);
        if ext < best_extent {
            best_extent = ext;
            best = rs;
        }
    }
    SurfaceVerdict {
        outcome: Outcome::NotConnected,
        basis: Basis::Closure,
        witness: best,
        iterations,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::connect::reach::locate;
    use crate::geom::Vec3;
    use crate::marks::annotate;
    use crate::solids::{make_solid, Solid, SolidSpec};

    fn verdict(spec: SolidSpec) -> SurfaceVerdict {
        let tol = Tolerances::default();
        verify_surface_connected(&annotate(&make_solid(&spec).unwrap(), &tol), &tol)
    }

    #[test]
    fn basic_verdicts() {
        assert_eq!(verdict(SolidSpec::canonical(Solid::Cube)).outcome, Outcome::Connected);
        for s in [SolidSpec::canonical(Solid::Octahedron), SolidSpec::aligned(Solid::Octahedron)] {
            assert_eq!(verdict(s).outcome, Outcome::NotConnected);
        }
        assert_eq!(
            verdict(SolidSpec::canonical(Solid::HalfCuboctahedron)).outcome,
            Outcome::Connected
        );
        assert_eq!(
            verdict(SolidSpec::canonical(Solid::SkewTetrahedron)).outcome,
            Outcome::NotConnected
        );
        assert_eq!(
            verdict(SolidSpec::canonical(Solid::SimpleHeptahedron)).outcome,
            Outcome::NotConnected
        );
    }

    #[test]
    fn heptahedron_closure_of_v2() {
        let tol = Tolerances::default();
        let p = make_solid(&SolidSpec::canonical(Solid::SimpleHeptahedron)).unwrap();
        let mp = annotate(&p, &tol);
        let s = Surface::new(&mp).unwrap();
        let rs = s.reach(SurfacePoint::Vertex(1), 100);
        assert!(rs.converged);
        let mut got: Vec<usize> = rs.reached_vertices().iter().map(|v| v + 1).collect();
        got.sort_unstable();
        assert_eq!(got, vec![2, 5, 7, 10]);
        assert!(rs.regions(&s).is_empty());
        let path = [p.vertex(1), p.vertex(6), p.vertex(9), p.vertex(4)];
        let on_path = |x: &Vec3| {
            path.windows(2).any(|w| {
                let d = w[1] - w[0];
                let t = ((x - w[0]).dot(&d) / d.norm_squared()).clamp(0.0, 1.0);
                (w[0] + d * t - x).norm() < 1e-9
            })
        };
        let segs = s.segments(&rs);
        assert!(!segs.is_empty());
        for (a, b) in segs {
            assert!(on_path(&a) && on_path(&b) && on_path(&((a + b) / 2.0)));
        }
        for w in path.windows(2) {
            for k in 0..=10 {
                let x = w[0] + (w[1] - w[0]) * (k as f64 / 10.0);
                assert!(s.contains(&rs, &locate(&p, &x).unwrap()), "{x:?}");
            }
        }
    }
}
