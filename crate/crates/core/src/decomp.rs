//! Decompositions of solids into pieces with orthogonally connected
//! boundaries, and their certification.

use std::fmt;
use std::str::FromStr;

use crate::connect::{verify_surface_connected, Outcome, SurfaceVerdict};
use crate::error::{Error, Result};
use crate::geom::{
    build_polytope, closest_edge_pair, intersection_volume, Plane, Polytope, Rotation, Segment, Vec3,
};
use crate::marks::annotate;
use crate::solids::{make_solid, Position, Solid, SolidSpec};
use crate::tol::Tolerances;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    /// Octahedron into four tetrahedra around the diagonal v5v6.
    Octa4Tet,
    /// Octahedron cut by the plane through v2, v4 parallel to v3v5.
    Octa2Hepta,
    /// Tetrahedron with perpendicular facing edges, cut through one of them.
    Tet2Tet,
    /// Cuboctahedron into two square prisms and eight pentahedra.
    Cubocta10Penta,
    /// Cuboctahedron cut by its middle square.
    Cubocta2Deca,
    /// Truncated octahedron cut by its middle hexagon plane and a vertical plane.
    TruncOcta4Octa,
    /// Truncated cube cut by the plane of the square v9v10v11v12.
    TruncCube2Deca,
    /// Truncated tetrahedron cut by a plane through v1 and v9.
    TruncTet2Hepta,
}

impl Method {
    pub const ALL: [Method; 8] = [
        Method::Octa4Tet,
        Method::Octa2Hepta,
        Method::Tet2Tet,
        Method::Cubocta10Penta,
        Method::Cubocta2Deca,
        Method::TruncOcta4Octa,
        Method::TruncCube2Deca,
        Method::TruncTet2Hepta,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Method::Octa4Tet => "octa-4tet",
            Method::Octa2Hepta => "octa-2hepta",
            Method::Tet2Tet => "tet-2tet",
            Method::Cubocta10Penta => "cubocta-10penta",
            Method::Cubocta2Deca => "cubocta-2deca",
            Method::TruncOcta4Octa => "truncocta-4octa",
            Method::TruncCube2Deca => "trunccube-2deca",
            Method::TruncTet2Hepta => "trunctet-2hepta",
        }
    }

    pub fn solid(self) -> Solid {
        match self {
            Method::Octa4Tet | Method::Octa2Hepta => Solid::Octahedron,
            Method::Tet2Tet => Solid::Tetrahedron,
            Method::Cubocta10Penta | Method::Cubocta2Deca => Solid::Cuboctahedron,
            Method::TruncOcta4Octa => Solid::TruncatedOctahedron,
            Method::TruncCube2Deca => Solid::TruncatedCube,
            Method::TruncTet2Hepta => Solid::TruncatedTetrahedron,
        }
    }

    /// Position the construction is stated for; `None` when any works.
    pub fn required_position(self) -> Option<Position> {
        match self {
            Method::Tet2Tet => None,
            Method::Octa2Hepta => Some(Position::AlignedAlt),
            _ => Some(Position::Aligned),
        }
    }

    /// Default position used when none is given.
    pub fn default_position(self) -> Position {
        self.required_position().unwrap_or(Position::Canonical)
    }

    /// Face count of every piece.
    pub fn piece_faces(self) -> &'static [usize] {
        match self {
            Method::Octa4Tet => &[4, 4, 4, 4],
            Method::Octa2Hepta | Method::TruncTet2Hepta => &[7, 7],
            Method::Tet2Tet => &[4, 4],
            Method::Cubocta10Penta => &[5; 10],
            Method::Cubocta2Deca | Method::TruncCube2Deca => &[10, 10],
            Method::TruncOcta4Octa => &[8, 8, 8, 8],
        }
    }

    /// Methods stated for `solid`.
    pub fn for_solid(solid: Solid) -> Vec<Method> {
        Self::ALL.into_iter().filter(|m| m.accepts(solid)).collect()
    }

    fn accepts(self, solid: Solid) -> bool {
        match self {
            Method::Tet2Tet => matches!(solid, Solid::Tetrahedron | Solid::SkewTetrahedron),
            m => m.solid() == solid,
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Method::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown method {s:?}")))
    }
}

#[derive(Clone, Debug)]
pub struct Decomposition {
    pub parent: Polytope,
    pub pieces: Vec<Polytope>,
    pub method: Method,
    /// Cut planes used by the construction.
    pub cut_planes: Vec<Plane>,
    /// Auxiliary points, by label.
    pub aux_points: Vec<(String, Vec3)>,
    /// Rigid motion `x ↦ R x + t` applied to the input before cutting.
    pub normalization: Option<(Rotation, Vec3)>,
}

impl Decomposition {
    pub fn aux(&self, label: &str) -> Option<Vec3> {
        self.aux_points.iter().find(|(l, _)| l == label).map(|(_, p)| *p)
    }
}

/// Labeled point source: parent vertices plus auxiliary points.
struct Points<'a> {
    parent: &'a Polytope,
    aux: Vec<(String, Vec3)>,
}

impl Points<'_> {
    fn get(&self, label: &str) -> Result<Vec3> {
        if let Some(v) = self.parent.vertex_by_label(label) {
            return Ok(self.parent.vertex(v));
        }
        self.aux
            .iter()
            .find(|(l, _)| l == label)
            .map(|(_, p)| *p)
            .ok_or_else(|| Error::MethodMismatch(format!("no vertex labeled {label}")))
    }

    /// Intersection of `plane` with the segment between two labeled points.
    fn cut(&mut self, label: &str, plane: &Plane, a: &str, b: &str) -> Result<Vec3> {
        let (pa, pb) = (self.get(a)?, self.get(b)?);
        let x = plane.intersect_segment(&pa, &pb).ok_or_else(|| {
            Error::MethodMismatch(format!("cut plane misses segment {a}{b}"))
        })?;
        self.aux.push((label.to_string(), x));
        Ok(x)
    }

    fn piece(&self, name: String, labels: &[&str], tol: &Tolerances) -> Result<Polytope> {
        let pts = labels.iter().map(|l| self.get(l)).collect::<Result<Vec<_>>>()?;
        let names = labels.iter().map(|l| l.to_string()).collect();
        build_polytope(name, &pts, Some(names), tol)
    }
}

fn plane_through(p: &Vec3, n: &Vec3) -> Result<Plane> {
    Plane::through(p, n).ok_or_else(|| Error::MethodMismatch("degenerate cut plane".into()))
}

/// Builds the decomposition of a catalog solid. The solid must be in the
/// position the method is stated for.
pub fn decompose(spec: &SolidSpec, method: Method) -> Result<Decomposition> {
    if !method.accepts(spec.solid) {
        return Err(Error::MethodMismatch(format!(
            "{method} does not apply to {}",
            spec.solid
        )));
    }
    if let Some(pos) = method.required_position() {
        if spec.position != pos {
            return Err(Error::MethodMismatch(format!(
                "{method} needs {} in position {pos}, got {}",
                spec.solid, spec.position
            )));
        }
    }
    let parent = make_solid(spec)?;
    decompose_polytope(&parent, method, &Tolerances::default())
}

/// Applies a construction to a labeled polytope as given, without checking
/// its position. Cut planes are defined from the labeled vertices.
pub fn decompose_polytope(parent: &Polytope, method: Method, tol: &Tolerances) -> Result<Decomposition> {
    if method == Method::Tet2Tet {
        return split_tetrahedron(parent, tol);
    }
    let mut pts = Points {
        parent,
        aux: Vec::new(),
    };
    let name = |i: usize| format!("{method}-P{}", i + 1);
    let mut cut_planes = Vec::new();
    let groups: Vec<Vec<String>> = match method {
        Method::Octa4Tet => ["v1v5v6v2", "v3v5v6v2", "v1v5v6v4", "v3v5v6v4"]
            .iter()
            .map(|s| split_labels(s))
            .collect(),
        Method::Octa2Hepta => {
            let (v2, v4) = (pts.get("v2")?, pts.get("v4")?);
            let dir = pts.get("v5")? - pts.get("v3")?;
            let h = plane_through(&v2, &(v4 - v2).cross(&dir))?;
            pts.cut("v7", &h, "v5", "v1")?;
            pts.cut("v8", &h, "v3", "v6")?;
            cut_planes.push(h);
            vec![split_labels("v3v5v2v4v7v8"), split_labels("v1v6v2v4v7v8")]
        }
        Method::Cubocta2Deca => vec![
            split_labels("v1v2v3v4v5v6v7v8"),
            split_labels("v5v6v7v8v9v10v11v12"),
        ],
        Method::Cubocta10Penta => {
            let top = (pts.get("v2")? - pts.get("v1")?).cross(&(pts.get("v4")? - pts.get("v1")?));
            let mut groups = vec![
                split_labels("v1v2v3v9v10v11"),
                split_labels("v1v3v4v9v11v12"),
            ];
            for (i, (a, b, m)) in [(1, 2, 5), (2, 3, 6), (3, 4, 7), (4, 1, 8)].into_iter().enumerate() {
                let h = plane_through(&pts.get(&format!("v{m}"))?, &top)?;
                let (u, u2) = (format!("u{}", i + 1), format!("u{}'", i + 1));
                pts.cut(&u, &h, &format!("v{a}"), &format!("v{}", a + 8))?;
                pts.cut(&u2, &h, &format!("v{b}"), &format!("v{}", b + 8))?;
                cut_planes.push(h);
                let m = format!("v{m}");
                groups.push(vec![
                    u.clone(),
                    m.clone(),
                    u2.clone(),
                    format!("v{}", a + 8),
                    format!("v{}", b + 8),
                ]);
                groups.push(vec![u, m, u2, format!("v{a}"), format!("v{b}")]);
            }
            groups
        }
        Method::TruncOcta4Octa => {
            let (v1, v2, v3, v4) = (pts.get("v1")?, pts.get("v2")?, pts.get("v3")?, pts.get("v4")?);
            let top = (v2 - v1).cross(&(v4 - v1));
            let h = plane_through(&v1, &(v3 - v1).cross(&top))?;
            let mid = plane_through(&pts.get("v9")?, &top)?;
            pts.cut("u", &h, "v9", "v16")?;
            pts.cut("u'", &h, "v12", "v13")?;
            cut_planes.push(h);
            cut_planes.push(mid);
            [
                "v1 v2 v3 v7 u' u v5 v9 v10 v6 v11 v12",
                "v4 v3 v1 v5 u u' v7 v13 v14 v8 v15 v16",
                "v21 v22 v23 v19 u' u v17 v9 v10 v18 v11 v12",
                "v24 v23 v21 v17 u u' v19 v13 v14 v20 v15 v16",
            ]
            .iter()
            .map(|s| s.split_whitespace().map(String::from).collect())
            .collect()
        }
        Method::TruncCube2Deca => {
            let h = Plane::from_points(&pts.get("v9")?, &pts.get("v10")?, &pts.get("v11")?)
                .ok_or_else(|| Error::MethodMismatch("degenerate cut plane".into()))?;
            cut_planes.push(h);
            vec![
                (1..=12).map(|i| format!("v{i}")).collect(),
                (9..=24).map(|i| format!("v{i}")).collect(),
            ]
        }
        Method::TruncTet2Hepta => {
            let n = pts.get("v3")? - pts.get("v2")?;
            let h = plane_through(&pts.get("v1")?, &n)?;
            pts.cut("u1", &h, "v2", "v3")?;
            pts.cut("u2", &h, "v5", "v12")?;
            pts.cut("u3", &h, "v7", "v8")?;
            cut_planes.push(h);
            [
                "v1 v3 v4 v5 v6 v7 v9 u3 u2 u1",
                "v1 v2 v10 v12 v11 v8 v9 u3 u2 u1",
            ]
            .iter()
            .map(|s| s.split_whitespace().map(String::from).collect())
            .collect()
        }
        Method::Tet2Tet => unreachable!(),
    };
    let pieces = groups
        .iter()
        .enumerate()
        .map(|(i, g)| {
            let refs: Vec<&str> = g.iter().map(String::as_str).collect();
            pts.piece(name(i), &refs, tol)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Decomposition {
        parent: parent.clone(),
        pieces,
        method,
        cut_planes,
        aux_points: pts.aux,
        normalization: None,
    })
}

/// Splits `"v1v5v6v2"` into `["v1", "v5", "v6", "v2"]`.
fn split_labels(s: &str) -> Vec<String> {
    s.split('v')
        .filter(|t| !t.is_empty())
        .map(|t| format!("v{t}"))
        .collect()
}

/// One pair of opposite tetrahedron edges.
#[derive(Clone, Debug, PartialEq)]
pub struct OppositePair {
    pub first: [usize; 2],
    pub second: [usize; 2],
    /// Angle between the edge lines, in degrees.
    pub angle_deg: f64,
    pub facing: bool,
}

/// All three opposite-edge pairs of a tetrahedron.
pub fn opposite_pairs(t: &Polytope) -> Vec<OppositePair> {
    [([0, 1], [2, 3]), ([0, 2], [1, 3]), ([0, 3], [1, 2])]
        .into_iter()
        .map(|(a, b)| {
            let sa = Segment::new(t.vertex(a[0]), t.vertex(a[1]));
            let sb = Segment::new(t.vertex(b[0]), t.vertex(b[1]));
            let c = sa.direction().normalize().dot(&sb.direction().normalize()).abs();
            OppositePair {
                first: a,
                second: b,
                angle_deg: c.min(1.0).acos().to_degrees(),
                facing: closest_edge_pair(&sa, &sb).facing,
            }
        })
        .collect()
}

/// Moves a tetrahedron with two perpendicular facing opposite edges so that
/// v1v2 lies on the y-axis through the origin and v3v4 is parallel to the
/// x-axis, crossing the positive z-axis at v0; then cuts it by the plane
/// through v1, v2, v0.
pub fn split_tetrahedron(t: &Polytope, tol: &Tolerances) -> Result<Decomposition> {
    if t.num_vertices() != 4 {
        return Err(Error::MethodMismatch(format!(
            "{} has {} vertices, not 4",
            t.name,
            t.num_vertices()
        )));
    }
    let pairs = opposite_pairs(t);
    let perpendicular = |p: &OppositePair| {
        let d1 = (t.vertex(p.first[1]) - t.vertex(p.first[0])).normalize();
        let d2 = (t.vertex(p.second[1]) - t.vertex(p.second[0])).normalize();
        d1.dot(&d2).abs() <= tol.eps_parallel
    };
    let Some(pair) = pairs.iter().find(|p| p.facing && perpendicular(p)) else {
        let listing = pairs
            .iter()
            .map(|p| {
                format!(
                    "v{}v{}/v{}v{}: angle {:.6}°, facing {}",
                    p.first[0] + 1,
                    p.first[1] + 1,
                    p.second[0] + 1,
                    p.second[1] + 1,
                    p.angle_deg,
                    p.facing
                )
            })
            .collect::<Vec<_>>()
            .join("; ");
        return Err(Error::NoPerpendicularFacingPair(listing));
    };
    let [i1, i2] = pair.first;
    let [i3, i4] = pair.second;
    let (p1, p2, p3, p4) = (t.vertex(i1), t.vertex(i2), t.vertex(i3), t.vertex(i4));
    let y = (p2 - p1).normalize();
    let x0 = p4 - p3;
    let x = (x0 - y * x0.dot(&y)).normalize();
    let z = x.cross(&y);
    let mut rot = Rotation::from_frame_rows([x, y, z])?;
    let feet = closest_edge_pair(&Segment::new(p1, p2), &Segment::new(p3, p4));
    let mut shift = -rot.apply(&feet.on_a);
    let foot_b = rot.apply(&feet.on_b) + shift;
    if foot_b.z < 0.0 {
        let flip = Rotation::about_axis(&Vec3::y(), std::f64::consts::PI);
        rot = rot.compose(&flip);
        shift = flip.apply(&shift);
    }
    let order = [i1, i2, i3, i4];
    let labels: Vec<String> = (1..=4).map(|i| format!("v{i}")).collect();
    let moved: Vec<Vec3> = order.iter().map(|&i| rot.apply(&t.vertex(i)) + shift).collect();
    let parent = build_polytope(t.name.clone(), &moved, Some(labels), tol)?;
    let v0 = Plane::through(&Vec3::zeros(), &Vec3::x())
        .unwrap()
        .intersect_segment(&moved[2], &moved[3])
        .ok_or_else(|| Error::MethodMismatch("v3v4 misses the z-axis".into()))?;
    let pts = Points {
        parent: &parent,
        aux: vec![("v0".to_string(), v0)],
    };
    let method = Method::Tet2Tet;
    let pieces = vec![
        pts.piece(format!("{method}-P1"), &["v1", "v2", "v3", "v0"], tol)?,
        pts.piece(format!("{method}-P2"), &["v1", "v2", "v4", "v0"], tol)?,
    ];
    let aux_points = pts.aux;
    let cut = Plane::through(&Vec3::zeros(), &Vec3::x()).unwrap();
    Ok(Decomposition {
        parent,
        pieces,
        method,
        cut_planes: vec![cut],
        aux_points,
        normalization: Some((rot, shift)),
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct PartitionReport {
    pub parent_volume: f64,
    pub piece_volumes: Vec<f64>,
    /// |Σ piece volumes − parent volume| / parent volume.
    pub volume_defect: f64,
    /// Largest pairwise intersection volume over parent volume.
    pub max_overlap: f64,
    /// `(piece, vertex label, distance outside the parent)`.
    pub containment_violations: Vec<(usize, String, f64)>,
    pub pass: bool,
}

pub fn validate_partition(d: &Decomposition, tol: &Tolerances) -> PartitionReport {
    let parent_volume = d.parent.volume();
    let piece_volumes: Vec<f64> = d.pieces.iter().map(Polytope::volume).collect();
    let volume_defect = (piece_volumes.iter().sum::<f64>() - parent_volume).abs() / parent_volume;
    let mut max_overlap: f64 = 0.0;
    for i in 0..d.pieces.len() {
        for j in i + 1..d.pieces.len() {
            let o = intersection_volume(&d.pieces[i], &d.pieces[j], tol) / parent_volume;
            max_overlap = max_overlap.max(o);
        }
    }
    let mut containment_violations = Vec::new();
    for (i, piece) in d.pieces.iter().enumerate() {
        for v in 0..piece.num_vertices() {
            let x = piece.vertex(v);
            let out = (0..d.parent.num_faces())
                .map(|f| d.parent.face_plane(f).signed_distance(&x))
                .fold(f64::NEG_INFINITY, f64::max);
            if out > d.parent.eps() {
                containment_violations.push((i, piece.label(v).to_string(), out));
            }
        }
    }
    let pass = !d.pieces.is_empty()
        && volume_defect <= tol.eps_volume
        && max_overlap <= tol.eps_volume
        && containment_violations.is_empty();
    PartitionReport {
        parent_volume,
        piece_volumes,
        volume_defect,
        max_overlap,
        containment_violations,
        pass,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CertificateVerdict {
    OrthogonallyDecomposable,
    Failed(String),
}

#[derive(Clone, Debug)]
pub struct Certificate {
    pub partition: PartitionReport,
    pub piece_verdicts: Vec<SurfaceVerdict>,
    pub verdict: CertificateVerdict,
}

/// Checks the partition and the surface of every piece.
pub fn certify(d: &Decomposition, tol: &Tolerances) -> Certificate {
    let partition = validate_partition(d, tol);
    let piece_verdicts: Vec<SurfaceVerdict> = d
        .pieces
        .iter()
        .map(|p| verify_surface_connected(&annotate(p, tol), tol))
        .collect();
    let mut reasons = Vec::new();
    if !partition.pass {
        reasons.push(format!(
            "partition invalid (volume defect {:.3e}, overlap {:.3e}, {} containment violations)",
            partition.volume_defect,
            partition.max_overlap,
            partition.containment_violations.len()
        ));
    }
    for (i, v) in piece_verdicts.iter().enumerate() {
        if v.outcome != Outcome::Connected {
            reasons.push(format!("{}: {}", d.pieces[i].name, v.outcome.name()));
        }
    }
    let verdict = if reasons.is_empty() {
        CertificateVerdict::OrthogonallyDecomposable
    } else {
        CertificateVerdict::Failed(reasons.join("; "))
    };
    Certificate {
        partition,
        piece_verdicts,
        verdict,
    }
}
