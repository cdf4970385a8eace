//! Catalog of Platonic and Archimedean solids and a few counterexample
//! polytopes.
//!
//! Every solid has a `canonical` position (standard symmetric coordinates
//! scaled to unit edge). Several solids also have an `aligned` position in
//! which the edges named by the decomposition constructions are parallel to
//! coordinate axes; those positions keep labels `v1`, `v2`, … matching the
//! constructions in [`crate::decomp`].

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::geom::polytope::newell_normal;
use crate::geom::{build_polytope, Polytope, Vec3};
use crate::tol::Tolerances;

const SQRT2: f64 = std::f64::consts::SQRT_2;
const PHI: f64 = 1.618_033_988_749_895;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Solid {
    Tetrahedron,
    Cube,
    Octahedron,
    Dodecahedron,
    Icosahedron,
    TruncatedTetrahedron,
    Cuboctahedron,
    TruncatedCube,
    TruncatedOctahedron,
    Rhombicuboctahedron,
    TruncatedCuboctahedron,
    SnubCube,
    Icosidodecahedron,
    TruncatedDodecahedron,
    TruncatedIcosahedron,
    Rhombicosidodecahedron,
    TruncatedIcosidodecahedron,
    SnubDodecahedron,
    /// Tetrahedron with two perpendicular facing edges; not rich.
    SkewTetrahedron,
    /// Upper half of the aligned cuboctahedron; rich with disconnected face graph.
    HalfCuboctahedron,
    /// Simple rich heptahedron whose surface is not orthogonally connected.
    SimpleHeptahedron,
}

impl Solid {
    pub const ALL: [Solid; 21] = [
        Solid::Tetrahedron,
        Solid::Cube,
        Solid::Octahedron,
        Solid::Dodecahedron,
        Solid::Icosahedron,
        Solid::TruncatedTetrahedron,
        Solid::Cuboctahedron,
        Solid::TruncatedCube,
        Solid::TruncatedOctahedron,
        Solid::Rhombicuboctahedron,
        Solid::TruncatedCuboctahedron,
        Solid::SnubCube,
        Solid::Icosidodecahedron,
        Solid::TruncatedDodecahedron,
        Solid::TruncatedIcosahedron,
        Solid::Rhombicosidodecahedron,
        Solid::TruncatedIcosidodecahedron,
        Solid::SnubDodecahedron,
        Solid::SkewTetrahedron,
        Solid::HalfCuboctahedron,
        Solid::SimpleHeptahedron,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Solid::Tetrahedron => "tetrahedron",
            Solid::Cube => "cube",
            Solid::Octahedron => "octahedron",
            Solid::Dodecahedron => "dodecahedron",
            Solid::Icosahedron => "icosahedron",
            Solid::TruncatedTetrahedron => "truncated-tetrahedron",
            Solid::Cuboctahedron => "cuboctahedron",
            Solid::TruncatedCube => "truncated-cube",
            Solid::TruncatedOctahedron => "truncated-octahedron",
            Solid::Rhombicuboctahedron => "rhombicuboctahedron",
            Solid::TruncatedCuboctahedron => "truncated-cuboctahedron",
            Solid::SnubCube => "snub-cube",
            Solid::Icosidodecahedron => "icosidodecahedron",
            Solid::TruncatedDodecahedron => "truncated-dodecahedron",
            Solid::TruncatedIcosahedron => "truncated-icosahedron",
            Solid::Rhombicosidodecahedron => "rhombicosidodecahedron",
            Solid::TruncatedIcosidodecahedron => "truncated-icosidodecahedron",
            Solid::SnubDodecahedron => "snub-dodecahedron",
            Solid::SkewTetrahedron => "skew-tetrahedron",
            Solid::HalfCuboctahedron => "half-cuboctahedron",
            Solid::SimpleHeptahedron => "simple-heptahedron",
        }
    }

    pub fn is_platonic(self) -> bool {
        (self as usize) < 5
    }

    pub fn is_archimedean(self) -> bool {
        (5..18).contains(&(self as usize))
    }

    pub fn is_counterexample(self) -> bool {
        (self as usize) >= 18
    }

    /// The 18 Platonic and Archimedean solids.
    pub fn regular() -> impl Iterator<Item = Solid> {
        Self::ALL.into_iter().filter(|s| !s.is_counterexample())
    }

    /// Positions this solid can be built in.
    pub fn positions(self) -> &'static [Position] {
        use Position::*;
        match self {
            Solid::Octahedron => &[Canonical, Aligned, AlignedAlt],
            Solid::Tetrahedron
            | Solid::Cube
            | Solid::Cuboctahedron
            | Solid::TruncatedTetrahedron
            | Solid::TruncatedCube
            | Solid::TruncatedOctahedron => &[Canonical, Aligned],
            _ => &[Canonical],
        }
    }
}

impl fmt::Display for Solid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Solid {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Solid::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::UnknownSolid(s.to_string()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum Position {
    /// Standard symmetric coordinates, unit edge.
    #[default]
    Canonical,
    /// Axis-aligned labeled position used by the decompositions.
    Aligned,
    /// Octahedron only: the aligned position with `v5` and `v6` exchanged,
    /// centred at the origin with `v1 = (1,-1,0)`.
    AlignedAlt,
}

impl Position {
    pub fn name(self) -> &'static str {
        match self {
            Position::Canonical => "canonical",
            Position::Aligned => "aligned",
            Position::AlignedAlt => "aligned-alt",
        }
    }
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Position {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "canonical" => Ok(Position::Canonical),
            "aligned" => Ok(Position::Aligned),
            "aligned-alt" => Ok(Position::AlignedAlt),
            _ => Err(Error::Parse(format!("unknown position {s:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SolidSpec {
    pub solid: Solid,
    pub position: Position,
    pub scale: f64,
}

impl SolidSpec {
    pub fn new(solid: Solid, position: Position) -> Self {
        Self {
            solid,
            position,
            scale: 1.0,
        }
    }

    pub fn canonical(solid: Solid) -> Self {
        Self::new(solid, Position::Canonical)
    }

    pub fn aligned(solid: Solid) -> Self {
        Self::new(solid, Position::Aligned)
    }
}

fn v(x: f64, y: f64, z: f64) -> Vec3 {
    Vec3::new(x, y, z)
}

fn cyclic(p: [f64; 3]) -> Vec<[f64; 3]> {
    vec![p, [p[1], p[2], p[0]], [p[2], p[0], p[1]]]
}

fn all_perms(p: [f64; 3]) -> Vec<[f64; 3]> {
    let mut out = cyclic(p);
    out.extend(cyclic([p[1], p[0], p[2]]));
    out
}

/// All sign changes of every point, with near-duplicates removed.
fn with_signs(pts: Vec<[f64; 3]>, parity: Option<usize>) -> Vec<Vec3> {
    let mut out: Vec<Vec3> = Vec::new();
    for p in pts {
        for mask in 0..8usize {
            if let Some(par) = parity {
                if (3 - mask.count_ones() as usize) % 2 != par {
                    continue;
                }
            }
            let q = v(
                if mask & 1 != 0 { -p[0] } else { p[0] },
                if mask & 2 != 0 { -p[1] } else { p[1] },
                if mask & 4 != 0 { -p[2] } else { p[2] },
            );
            if out.iter().all(|r| (r - q).norm() > 1e-9) {
                out.push(q);
            }
        }
    }
    out
}

fn canonical_points(s: Solid) -> Vec<Vec3> {
    let f = PHI;
    let many = |seeds: &[[f64; 3]], perm: fn([f64; 3]) -> Vec<[f64; 3]>| {
        with_signs(seeds.iter().flat_map(|&p| perm(p)).collect(), None)
    };
    match s {
        Solid::Tetrahedron => vec![
            v(1.0, 1.0, 1.0),
            v(1.0, -1.0, -1.0),
            v(-1.0, 1.0, -1.0),
            v(-1.0, -1.0, 1.0),
        ],
        Solid::Cube => many(&[[1.0, 1.0, 1.0]], cyclic),
        Solid::Octahedron => many(&[[1.0, 0.0, 0.0]], cyclic),
        Solid::Dodecahedron => many(&[[1.0, 1.0, 1.0], [0.0, 1.0 / f, f]], cyclic),
        Solid::Icosahedron => many(&[[0.0, 1.0, f]], cyclic),
        Solid::TruncatedTetrahedron => {
            // Permutations of (3,1,1) with an even number of minus signs.
            let mut out = Vec::new();
            for p in all_perms([3.0, 1.0, 1.0]) {
                for q in with_signs(vec![p], None) {
                    let neg = q.iter().filter(|c| **c < 0.0).count();
                    if neg % 2 == 0 && out.iter().all(|r: &Vec3| (r - q).norm() > 1e-9) {
                        out.push(q);
                    }
                }
            }
            out
        }
        Solid::Cuboctahedron => many(&[[1.0, 1.0, 0.0]], all_perms),
        Solid::TruncatedCube => many(&[[SQRT2 - 1.0, 1.0, 1.0]], all_perms),
        Solid::TruncatedOctahedron => many(&[[0.0, 1.0, 2.0]], all_perms),
        Solid::Rhombicuboctahedron => many(&[[1.0, 1.0, 1.0 + SQRT2]], all_perms),
        Solid::TruncatedCuboctahedron => {
            many(&[[1.0, 1.0 + SQRT2, 1.0 + 2.0 * SQRT2]], all_perms)
        }
        Solid::SnubCube => {
            // Tribonacci constant: real root of t³ = t² + t + 1.
            let t = 1.839_286_755_214_161;
            let mut out = Vec::new();
            for m in crate::geom::rotation::signed_permutations() {
                if m.determinant() > 0.0 {
                    let q = m * v(1.0, 1.0 / t, t);
                    if out.iter().all(|r: &Vec3| (r - q).norm() > 1e-9) {
                        out.push(q);
                    }
                }
            }
            out
        }
        Solid::Icosidodecahedron => many(
            &[[0.0, 0.0, f], [0.5, f / 2.0, f * f / 2.0]],
            cyclic,
        ),
        Solid::TruncatedDodecahedron => many(
            &[
                [0.0, 1.0 / f, 2.0 + f],
                [1.0 / f, f, 2.0 * f],
                [f, 2.0, f * f],
            ],
            cyclic,
        ),
        Solid::TruncatedIcosahedron => many(
            &[
                [0.0, 1.0, 3.0 * f],
                [1.0, 2.0 + f, 2.0 * f],
                [f, 2.0, f * f * f],
            ],
            cyclic,
        ),
        Solid::Rhombicosidodecahedron => many(
            &[
                [1.0, 1.0, f * f * f],
                [f * f, f, 2.0 * f],
                [2.0 + f, 0.0, f * f],
            ],
            cyclic,
        ),
        Solid::TruncatedIcosidodecahedron => many(
            &[
                [1.0 / f, 1.0 / f, 3.0 + f],
                [2.0 / f, f, 1.0 + 2.0 * f],
                [1.0 / f, f * f, 3.0 * f - 1.0],
                [2.0 * f - 1.0, 2.0, 2.0 + f],
                [f, 3.0, 2.0 * f],
            ],
            cyclic,
        ),
        Solid::SnubDodecahedron => snub_dodecahedron_points(),
        _ => unreachable!("counterexamples have fixed coordinates"),
    }
}

fn snub_dodecahedron_points() -> Vec<Vec3> {
    let f = PHI;
    // Real root of ξ³ − 2ξ = φ, by Newton from a point right of the root.
    let mut xi: f64 = 2.0;
    for _ in 0..60 {
        xi -= (xi * xi * xi - 2.0 * xi - f) / (3.0 * xi * xi - 2.0);
    }
    let a = xi - 1.0 / xi;
    let b = xi * f + f * f + f / xi;
    let base = [
        [2.0 * a, 2.0, 2.0 * b],
        [a + b / f + f, -a * f + b + 1.0 / f, a / f + b * f - 1.0],
        [-a / f + b * f + 1.0, -a + b / f - f, a * f + b - 1.0 / f],
        [-a / f + b * f - 1.0, a - b / f - f, a * f + b + 1.0 / f],
        [a + b / f - f, a * f - b + 1.0 / f, a / f + b * f + 1.0],
    ];
    // Even permutations, sign patterns with an even number of plus signs.
    with_signs(base.iter().flat_map(|&p| cyclic(p)).collect(), Some(0))
}

fn labels(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("v{i}")).collect()
}

fn octahedron_aligned(alt: bool) -> Vec<Vec3> {
    let (v5, v6) = if alt {
        (v(1.0, 1.0, 0.0), v(-1.0, -1.0, 0.0))
    } else {
        (v(-1.0, -1.0, 0.0), v(1.0, 1.0, 0.0))
    };
    vec![
        v(1.0, -1.0, 0.0),
        v(0.0, 0.0, SQRT2),
        v(-1.0, 1.0, 0.0),
        v(0.0, 0.0, -SQRT2),
        v5,
        v6,
    ]
}

pub(crate) fn cuboctahedron_aligned() -> Vec<Vec3> {
    let s = SQRT2 / 2.0;
    let top = [v(s, -s, 1.0), v(s, s, 1.0), v(-s, s, 1.0), v(-s, -s, 1.0)];
    let mut out = top.to_vec();
    out.extend([
        v(SQRT2, 0.0, 0.0),
        v(0.0, SQRT2, 0.0),
        v(-SQRT2, 0.0, 0.0),
        v(0.0, -SQRT2, 0.0),
    ]);
    out.extend(top.iter().map(|p| p - v(0.0, 0.0, 2.0)));
    out
}

fn truncated_octahedron_aligned() -> Vec<Vec3> {
    let s = SQRT2 / 2.0;
    vec![
        v(s, -s, 2.0),
        v(s, s, 2.0),
        v(-s, s, 2.0),
        v(-s, -s, 2.0),
        v(2.0 * s, -2.0 * s, 1.0),
        v(2.0 * s, 2.0 * s, 1.0),
        v(-2.0 * s, 2.0 * s, 1.0),
        v(-2.0 * s, -2.0 * s, 1.0),
        v(3.0 * s, -s, 0.0),
        v(3.0 * s, s, 0.0),
        v(s, 3.0 * s, 0.0),
        v(-s, 3.0 * s, 0.0),
        v(-3.0 * s, s, 0.0),
        v(-3.0 * s, -s, 0.0),
        v(-s, -3.0 * s, 0.0),
        v(s, -3.0 * s, 0.0),
        v(2.0 * s, -2.0 * s, -1.0),
        v(2.0 * s, 2.0 * s, -1.0),
        v(-2.0 * s, 2.0 * s, -1.0),
        v(-2.0 * s, -2.0 * s, -1.0),
        v(s, -s, -2.0),
        v(s, s, -2.0),
        v(-s, s, -2.0),
        v(-s, -s, -2.0),
    ]
}

/// Standard truncated cube turned 45° about z: the diagonal edges of the
/// top octagon become axis-parallel.
fn truncated_cube_aligned() -> Vec<Vec3> {
    let x = SQRT2 - 1.0;
    let rot = |a: f64, b: f64, z: f64| v((a - b) / SQRT2, (a + b) / SQRT2, z);
    let ring = [
        (1.0, x),
        (x, 1.0),
        (-x, 1.0),
        (-1.0, x),
        (-1.0, -x),
        (-x, -1.0),
        (x, -1.0),
        (1.0, -x),
    ];
    let corners = [(1.0, 1.0), (-1.0, 1.0), (-1.0, -1.0), (1.0, -1.0)];
    let mut out: Vec<Vec3> = ring.iter().map(|&(a, b)| rot(a, b, 1.0)).collect();
    out.extend(corners.iter().map(|&(a, b)| rot(a, b, x)));
    out.extend(corners.iter().map(|&(a, b)| rot(a, b, -x)));
    out.extend(ring.iter().map(|&(a, b)| rot(a, b, -1.0)));
    out
}

/// Regular tetrahedron ABCD truncated at thirds of its edges; `p_Q` is the
/// truncation point on edge PQ next to P.
fn truncated_tetrahedron_aligned() -> Vec<Vec3> {
    let s = SQRT2 / 2.0;
    let a = v(0.0, s, 1.0);
    let b = v(0.0, s, -1.0);
    let c = v(1.0, -s, 0.0);
    let d = v(-1.0, -s, 0.0);
    let t = |p: Vec3, q: Vec3| 2.0 * p + q;
    vec![
        t(a, b),
        t(a, c),
        t(a, d),
        t(d, a),
        t(d, c),
        t(d, b),
        t(b, d),
        t(b, c),
        t(b, a),
        t(c, a),
        t(c, b),
        t(c, d),
    ]
}

fn tetrahedron_aligned() -> Vec<Vec3> {
    vec![
        v(0.0, -1.0, 0.0),
        v(0.0, 1.0, 0.0),
        v(-1.0, 0.0, SQRT2),
        v(1.0, 0.0, SQRT2),
    ]
}

fn heptahedron_points() -> Vec<Vec3> {
    vec![
        v(0.0, 0.0, 2.0),
        v(2.0, 2.0, 1.0),
        v(1.0, 1.0, 0.0),
        v(-1.0, -1.0, 0.0),
        v(-2.0, -2.0, 1.0),
        v(0.0, 7.0, 2.0),
        v(2.0, 6.0, 1.0),
        v(1.0, 5.0, 0.0),
        v(-1.0, 5.0, 0.0),
        v(-2.0, 6.0, 1.0),
    ]
}

fn fixed_points(spec: &SolidSpec) -> Result<Option<Vec<Vec3>>> {
    use Position::*;
    let pts = match (spec.solid, spec.position) {
        (Solid::SkewTetrahedron, _) => vec![
            v(0.0, -1.0, 0.0),
            v(0.0, 1.0, 0.0),
            v(-1.0, 0.0, 1.0),
            v(1.0, 0.0, 1.0),
        ],
        (Solid::HalfCuboctahedron, _) => cuboctahedron_aligned()[..8].to_vec(),
        (Solid::SimpleHeptahedron, _) => heptahedron_points(),
        (Solid::Octahedron, Aligned) => octahedron_aligned(false),
        (Solid::Octahedron, AlignedAlt) => octahedron_aligned(true),
        (Solid::Tetrahedron, Aligned) => tetrahedron_aligned(),
        (Solid::Cube, Aligned) => canonical_points(Solid::Cube),
        (Solid::Cuboctahedron, Aligned) => cuboctahedron_aligned(),
        (Solid::TruncatedOctahedron, Aligned) => truncated_octahedron_aligned(),
        (Solid::TruncatedCube, Aligned) => truncated_cube_aligned(),
        (Solid::TruncatedTetrahedron, Aligned) => truncated_tetrahedron_aligned(),
        (_, Canonical) => return Ok(None),
        (s, p) => {
            return Err(Error::UnknownSolid(format!("{s} has no {p} position")));
        }
    };
    Ok(Some(pts))
}

/// Builds a catalog solid.
pub fn make_solid(spec: &SolidSpec) -> Result<Polytope> {
    if !(spec.scale.is_finite() && spec.scale > 0.0) {
        return Err(Error::DegenerateInput(format!("scale {} is not positive", spec.scale)));
    }
    let tol = Tolerances::default();
    let name = spec.solid.name();
    let p = match fixed_points(spec)? {
        Some(pts) => build_polytope(name, &pts, Some(labels(pts.len())), &tol)?,
        None => {
            let pts = canonical_points(spec.solid);
            let p = build_polytope(name, &pts, Some(labels(pts.len())), &tol)?;
            let e = (0..p.num_edges())
                .map(|e| p.edge_length(e))
                .fold(f64::INFINITY, f64::min);
            p.scale(1.0 / e)
        }
    };
    Ok(if spec.scale == 1.0 { p } else { p.scale(spec.scale) })
}

/// Right prism over a planar polygon, extruded along the polygon normal.
/// Labels are `v1..vk` on the base and `v(k+1)..v(2k)` on the top copy.
pub fn make_right_prism(base: &[Vec3], axis_length: f64, tol: &Tolerances) -> Result<Polytope> {
    if base.len() < 3 {
        return Err(Error::DegenerateBase("fewer than 3 base points".into()));
    }
    if !(axis_length.is_finite() && axis_length > 0.0) {
        return Err(Error::DegenerateBase(format!("axis length {axis_length}")));
    }
    let Some(n) = newell_normal(base).try_normalize(1e-300) else {
        return Err(Error::DegenerateBase("base has zero area".into()));
    };
    let c = base.iter().sum::<Vec3>() / base.len() as f64;
    let diag = crate::geom::polytope::bbox_diagonal(base);
    if base.iter().any(|p| n.dot(&(p - c)).abs() > tol.eps_geom * diag) {
        return Err(Error::DegenerateBase("base is not planar".into()));
    }
    let mut pts = base.to_vec();
    pts.extend(base.iter().map(|p| p + n * axis_length));
    let p = build_polytope("prism", &pts, Some(labels(pts.len())), tol)
        .map_err(|e| Error::DegenerateBase(e.to_string()))?;
    if p.num_vertices() != pts.len() {
        return Err(Error::DegenerateBase("base polygon is not strictly convex".into()));
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeMap;

    fn sig(pairs: &[(usize, usize)]) -> BTreeMap<usize, usize> {
        pairs.iter().copied().collect()
    }

    #[test]
    fn face_signatures() {
        let expect = [
            (Solid::Tetrahedron, sig(&[(3, 4)])),
            (Solid::Cube, sig(&[(4, 6)])),
            (Solid::Octahedron, sig(&[(3, 8)])),
            (Solid::Dodecahedron, sig(&[(5, 12)])),
            (Solid::Icosahedron, sig(&[(3, 20)])),
            (Solid::TruncatedTetrahedron, sig(&[(3, 4), (6, 4)])),
            (Solid::Cuboctahedron, sig(&[(3, 8), (4, 6)])),
            (Solid::TruncatedCube, sig(&[(3, 8), (8, 6)])),
            (Solid::TruncatedOctahedron, sig(&[(4, 6), (6, 8)])),
            (Solid::Rhombicuboctahedron, sig(&[(3, 8), (4, 18)])),
            (Solid::TruncatedCuboctahedron, sig(&[(4, 12), (6, 8), (8, 6)])),
            (Solid::SnubCube, sig(&[(3, 32), (4, 6)])),
            (Solid::Icosidodecahedron, sig(&[(3, 20), (5, 12)])),
            (Solid::TruncatedDodecahedron, sig(&[(3, 20), (10, 12)])),
            (Solid::TruncatedIcosahedron, sig(&[(5, 12), (6, 20)])),
            (Solid::Rhombicosidodecahedron, sig(&[(3, 20), (4, 30), (5, 12)])),
            (Solid::TruncatedIcosidodecahedron, sig(&[(4, 30), (6, 20), (10, 12)])),
            (Solid::SnubDodecahedron, sig(&[(3, 80), (5, 12)])),
        ];
        for (s, want) in expect {
            for &pos in s.positions() {
                let p = make_solid(&SolidSpec::new(s, pos)).unwrap();
                assert_eq!(p.face_signature(), want, "{s} {pos}");
            }
        }
    }

    #[test]
    fn equal_edges() {
        for s in Solid::regular() {
            for &pos in s.positions() {
                let p = make_solid(&SolidSpec::new(s, pos)).unwrap();
                let lens: Vec<f64> = (0..p.num_edges()).map(|e| p.edge_length(e)).collect();
                let lo = lens.iter().cloned().fold(f64::INFINITY, f64::min);
                let hi = lens.iter().cloned().fold(0.0, f64::max);
                assert!((hi - lo) / lo < 1e-9, "{s} {pos}: {lo} {hi}");
                if pos == Position::Canonical {
                    assert!((lo - 1.0).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn heptahedron_is_simple() {
        let p = make_solid(&SolidSpec::canonical(Solid::SimpleHeptahedron)).unwrap();
        assert_eq!(p.num_faces(), 7);
        assert_eq!(p.num_vertices(), 10);
        assert!(p.is_simple());
    }

    #[test]
    fn octahedron_alt_position() {
        let p = make_solid(&SolidSpec::new(Solid::Octahedron, Position::AlignedAlt)).unwrap();
        let at = |l: &str| p.vertex(p.vertex_by_label(l).unwrap());
        assert_eq!(at("v1"), v(1.0, -1.0, 0.0));
        assert_eq!(at("v6"), v(-1.0, -1.0, 0.0));
        assert_eq!(at("v3"), v(-1.0, 1.0, 0.0));
        assert_eq!(at("v5"), v(1.0, 1.0, 0.0));
        let q = make_solid(&SolidSpec::aligned(Solid::Octahedron)).unwrap();
        let at = |l: &str| q.vertex(q.vertex_by_label(l).unwrap());
        let x = (at("v5") - at("v1")).normalize();
        let y = (at("v6") - at("v1")).normalize();
        assert!(x.y.abs() < 1e-12 && x.z.abs() < 1e-12);
        assert!(y.x.abs() < 1e-12 && y.z.abs() < 1e-12);
    }

    #[test]
    fn prisms() {
        let tol = Tolerances::default();
        let tri = [v(0.0, 0.0, 0.0), v(1.0, 0.0, 0.0), v(0.0, 1.0, 0.0)];
        let p = make_right_prism(&tri, 2.0, &tol).unwrap();
        assert_eq!(p.num_faces(), 5);
        assert!((p.volume() - 1.0).abs() < 1e-12);
        let sq = [v(0.0, 0.0, 0.0), v(1.0, 0.0, 0.0), v(1.0, 1.0, 0.0), v(0.0, 1.0, 0.0)];
        let c = make_right_prism(&sq, 1.0, &tol).unwrap();
        assert_eq!(c.face_signature(), sig(&[(4, 6)]));
        let line = [v(0.0, 0.0, 0.0), v(1.0, 0.0, 0.0), v(2.0, 0.0, 0.0)];
        assert!(matches!(make_right_prism(&line, 1.0, &tol), Err(Error::DegenerateBase(_))));
    }

    #[test]
    fn unknown_names_and_positions() {
        assert!(matches!("rhombus".parse::<Solid>(), Err(Error::UnknownSolid(_))));
        assert!(make_solid(&SolidSpec::aligned(Solid::Dodecahedron)).is_err());
        for s in Solid::ALL {
            assert_eq!(s.name().parse::<Solid>().unwrap(), s);
        }
    }
}
