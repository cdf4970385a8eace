use std::collections::{BTreeMap, HashMap};

use nalgebra::Matrix3;

use super::{Plane, Rotation, Vec3};
use crate::error::{Error, Result};
use crate::tol::Tolerances;

/// Convex polytope with an oriented face lattice.
///
/// Face cycles run counterclockwise seen from outside. Edge `face_edges[f][i]`
/// joins `faces[f][i]` and `faces[f][i + 1]` (cyclically). Every vertex keeps
/// a label (`v1`, `v2`, … unless the constructor supplied names) so that
/// decompositions can refer to vertices by name.
#[derive(Clone, Debug)]
pub struct Polytope {
    pub name: String,
    vertices: Vec<Vec3>,
    labels: Vec<String>,
    faces: Vec<Vec<usize>>,
    edges: Vec<[usize; 2]>,
    face_edges: Vec<Vec<usize>>,
    edge_faces: Vec<[usize; 2]>,
    planes: Vec<Plane>,
    eps: f64,
}

pub(crate) fn bbox_diagonal(points: &[Vec3]) -> f64 {
    let mut lo = Vec3::repeat(f64::INFINITY);
    let mut hi = Vec3::repeat(f64::NEG_INFINITY);
    for p in points {
        lo = lo.inf(p);
        hi = hi.sup(p);
    }
    (hi - lo).norm()
}

/// Newell normal of a polygon (unnormalized; length = twice the area).
pub(crate) fn newell_normal(pts: &[Vec3]) -> Vec3 {
    let mut n = Vec3::zeros();
    for i in 0..pts.len() {
        let a = pts[i];
        let b = pts[(i + 1) % pts.len()];
        n.x += (a.y - b.y) * (a.z + b.z);
        n.y += (a.z - b.z) * (a.x + b.x);
        n.z += (a.x - b.x) * (a.y + b.y);
    }
    n
}

pub(crate) fn default_labels(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("v{i}")).collect()
}

impl Polytope {
    /// Builds a polytope from explicit face cycles, validating convexity,
    /// planarity and the edge/face incidences. Cycles with inward orientation
    /// are reversed.
    pub fn from_faces(
        name: impl Into<String>,
        vertices: Vec<Vec3>,
        labels: Option<Vec<String>>,
        faces: Vec<Vec<usize>>,
        tol: &Tolerances,
    ) -> Result<Self> {
        let name = name.into();
        let invalid = |msg: String| Error::InvalidPolytope(format!("{name}: {msg}"));
        if vertices.len() < 4 || faces.len() < 4 {
            return Err(invalid("needs at least 4 vertices and 4 faces".into()));
        }
        if vertices.iter().any(|v| !v.iter().all(|c| c.is_finite())) {
            return Err(invalid("non-finite coordinate".into()));
        }
        let labels = labels.unwrap_or_else(|| default_labels(vertices.len()));
        if labels.len() != vertices.len() {
            return Err(invalid("label count differs from vertex count".into()));
        }
        let diag = bbox_diagonal(&vertices);
        let eps = tol.eps_geom * diag.max(f64::MIN_POSITIVE);
        let centroid = vertices.iter().sum::<Vec3>() / vertices.len() as f64;

        let mut faces = faces;
        let mut planes = Vec::with_capacity(faces.len());
        for (fi, face) in faces.iter_mut().enumerate() {
            if face.len() < 3 {
                return Err(invalid(format!("face {fi} has fewer than 3 vertices")));
            }
            if face.iter().any(|&v| v >= vertices.len()) {
                return Err(invalid(format!("face {fi} has an out-of-range index")));
            }
            let mut sorted = face.clone();
            sorted.sort_unstable();
            sorted.dedup();
            if sorted.len() != face.len() {
                return Err(invalid(format!("face {fi} repeats a vertex")));
            }
            let pts: Vec<Vec3> = face.iter().map(|&v| vertices[v]).collect();
            let raw = newell_normal(&pts);
            let Some(mut n) = raw.try_normalize(1e-300) else {
                return Err(invalid(format!("face {fi} has zero area")));
            };
            let fc = pts.iter().sum::<Vec3>() / pts.len() as f64;
            if n.dot(&(centroid - fc)) > 0.0 {
                face.reverse();
                n = -n;
            }
            let plane = Plane {
                normal: n,
                offset: n.dot(&fc),
            };
            let dev = pts
                .iter()
                .map(|p| plane.signed_distance(p).abs())
                .fold(0.0, f64::max);
            if dev > eps {
                return Err(Error::NonPlanar(dev));
            }
            planes.push(plane);
        }

        // Strictly convex face polygons: no collinear or reflex corners.
        for (fi, face) in faces.iter().enumerate() {
            let n = planes[fi].normal;
            let k = face.len();
            for i in 0..k {
                let a = vertices[face[(i + k - 1) % k]];
                let b = vertices[face[i]];
                let c = vertices[face[(i + 1) % k]];
                let turn = (b - a).cross(&(c - b)).dot(&n);
                if turn <= eps * (b - a).norm().max((c - b).norm()) {
                    return Err(invalid(format!(
                        "face {fi} is not strictly convex at vertex {}",
                        face[i]
                    )));
                }
            }
        }

        let mut edge_index: HashMap<(usize, usize), usize> = HashMap::new();
        let mut edges = Vec::new();
        let mut edge_faces_raw: Vec<Vec<(usize, bool)>> = Vec::new();
        let mut face_edges = Vec::with_capacity(faces.len());
        for (fi, face) in faces.iter().enumerate() {
            let k = face.len();
            let mut fe = Vec::with_capacity(k);
            for i in 0..k {
                let (a, b) = (face[i], face[(i + 1) % k]);
                let key = (a.min(b), a.max(b));
                let ei = *edge_index.entry(key).or_insert_with(|| {
                    edges.push([key.0, key.1]);
                    edge_faces_raw.push(Vec::new());
                    edges.len() - 1
                });
                edge_faces_raw[ei].push((fi, a < b));
                fe.push(ei);
            }
            face_edges.push(fe);
        }
        let mut edge_faces = Vec::with_capacity(edges.len());
        for (ei, inc) in edge_faces_raw.iter().enumerate() {
            if inc.len() != 2 {
                return Err(invalid(format!(
                    "edge {:?} belongs to {} faces",
                    edges[ei],
                    inc.len()
                )));
            }
            if inc[0].1 == inc[1].1 {
                return Err(invalid(format!(
                    "edge {:?} is traversed twice in the same direction",
                    edges[ei]
                )));
            }
            edge_faces.push([inc[0].0, inc[1].0]);
        }

        for (vi, v) in vertices.iter().enumerate() {
            for (fi, pl) in planes.iter().enumerate() {
                if pl.signed_distance(v) > eps {
                    return Err(invalid(format!("vertex {vi} lies outside face {fi}")));
                }
            }
        }
        let mut incidence = vec![0usize; vertices.len()];
        for f in &faces {
            for &v in f {
                incidence[v] += 1;
            }
        }
        if let Some(v) = incidence.iter().position(|&c| c < 3) {
            return Err(invalid(format!("vertex {v} lies on fewer than 3 faces")));
        }
        let euler = vertices.len() as i64 - edges.len() as i64 + faces.len() as i64;
        if euler != 2 {
            return Err(invalid(format!("Euler characteristic {euler} != 2")));
        }

        Ok(Self {
            name,
            vertices,
            labels,
            faces,
            edges,
            face_edges,
            edge_faces,
            planes,
            eps,
        })
    }

    pub fn vertices(&self) -> &[Vec3] {
        &self.vertices
    }

    pub fn vertex(&self, v: usize) -> Vec3 {
        self.vertices[v]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    pub fn vertex_by_label(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn faces(&self) -> &[Vec<usize>] {
        &self.faces
    }

    pub fn face(&self, f: usize) -> &[usize] {
        &self.faces[f]
    }

    pub fn edges(&self) -> &[[usize; 2]] {
        &self.edges
    }

    pub fn edge(&self, e: usize) -> [usize; 2] {
        self.edges[e]
    }

    pub fn face_edges(&self, f: usize) -> &[usize] {
        &self.face_edges[f]
    }

    pub fn edge_faces(&self, e: usize) -> [usize; 2] {
        self.edge_faces[e]
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn num_faces(&self) -> usize {
        self.faces.len()
    }

    /// Absolute geometric tolerance (relative `eps_geom` times bbox diagonal).
    pub fn eps(&self) -> f64 {
        self.eps
    }

    pub fn bbox_diagonal(&self) -> f64 {
        bbox_diagonal(&self.vertices)
    }

    /// Outward unit-normal plane of face `f`.
    pub fn face_plane(&self, f: usize) -> Plane {
        self.planes[f]
    }

    pub fn face_points(&self, f: usize) -> Vec<Vec3> {
        self.faces[f].iter().map(|&v| self.vertices[v]).collect()
    }

    pub fn face_centroid(&self, f: usize) -> Vec3 {
        let pts = self.face_points(f);
        // Area-weighted centroid of the fan triangulation.
        let p0 = pts[0];
        let mut acc = Vec3::zeros();
        let mut area = 0.0;
        for i in 1..pts.len() - 1 {
            let a = (pts[i] - p0).cross(&(pts[i + 1] - p0)).norm();
            acc += (p0 + pts[i] + pts[i + 1]) * (a / 3.0);
            area += a;
        }
        acc / area
    }

    pub fn face_area(&self, f: usize) -> f64 {
        0.5 * newell_normal(&self.face_points(f)).norm()
    }

    /// In-plane orthonormal basis `(u, v)` of face `f` with `u × v = n`.
    pub fn face_basis(&self, f: usize) -> (Vec3, Vec3) {
        let n = self.planes[f].normal;
        let [a, b] = [self.faces[f][0], self.faces[f][1]];
        let u = (self.vertices[b] - self.vertices[a]).normalize();
        (u, n.cross(&u))
    }

    /// Whether `p` lies on the closed face `f` within `eps`.
    pub fn face_contains(&self, f: usize, p: &Vec3, eps: f64) -> bool {
        let pl = self.planes[f];
        if pl.signed_distance(p).abs() > eps {
            return false;
        }
        let face = &self.faces[f];
        let k = face.len();
        (0..k).all(|i| {
            let a = self.vertices[face[i]];
            let b = self.vertices[face[(i + 1) % k]];
            let d = b - a;
            d.cross(&(p - a)).dot(&pl.normal) >= -eps * d.norm()
        })
    }

    pub fn edge_points(&self, e: usize) -> (Vec3, Vec3) {
        let [a, b] = self.edges[e];
        (self.vertices[a], self.vertices[b])
    }

    pub fn edge_length(&self, e: usize) -> f64 {
        let (a, b) = self.edge_points(e);
        (b - a).norm()
    }

    pub fn mean_edge_length(&self) -> f64 {
        (0..self.num_edges()).map(|e| self.edge_length(e)).sum::<f64>() / self.num_edges() as f64
    }

    pub fn centroid(&self) -> Vec3 {
        self.vertices.iter().sum::<Vec3>() / self.vertices.len() as f64
    }

    /// Faces incident to each vertex.
    pub fn vertex_faces(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.vertices.len()];
        for (f, face) in self.faces.iter().enumerate() {
            for &v in face {
                out[v].push(f);
            }
        }
        out
    }

    /// Edges incident to each vertex.
    pub fn vertex_edges(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.vertices.len()];
        for (e, [a, b]) in self.edges.iter().enumerate() {
            out[*a].push(e);
            out[*b].push(e);
        }
        out
    }

    /// Every vertex lies on exactly three faces.
    pub fn is_simple(&self) -> bool {
        self.vertex_faces().iter().all(|f| f.len() == 3)
    }

    /// Interior dihedral angle at edge `e`, in radians.
    pub fn dihedral_angle(&self, e: usize) -> f64 {
        let [f, g] = self.edge_faces[e];
        let c = self.planes[f]
            .normal
            .dot(&self.planes[g].normal)
            .clamp(-1.0, 1.0);
        std::f64::consts::PI - c.acos()
    }

    /// Volume by the divergence theorem over fan-triangulated faces.
    pub fn volume(&self) -> f64 {
        let mut six_v = 0.0;
        for face in &self.faces {
            let p0 = self.vertices[face[0]];
            for i in 1..face.len() - 1 {
                let a = self.vertices[face[i]];
                let b = self.vertices[face[i + 1]];
                six_v += p0.dot(&(a - p0).cross(&(b - p0)));
            }
        }
        six_v / 6.0
    }

    /// Whether `p` satisfies every face inequality within `eps`.
    pub fn contains_point(&self, p: &Vec3, eps: f64) -> bool {
        self.planes.iter().all(|pl| pl.signed_distance(p) <= eps)
    }

    /// Number of faces by vertex count, e.g. `{3: 8, 4: 6}` for the cuboctahedron.
    pub fn face_signature(&self) -> BTreeMap<usize, usize> {
        let mut sig = BTreeMap::new();
        for f in &self.faces {
            *sig.entry(f.len()).or_insert(0) += 1;
        }
        sig
    }

    /// Applies `x ↦ m·x + t` to the coordinates, keeping the combinatorics.
    /// Improper maps reverse every face cycle to keep outward orientation.
    pub fn map_affine(&self, m: &Matrix3<f64>, t: &Vec3) -> Polytope {
        let vertices: Vec<Vec3> = self.vertices.iter().map(|v| m * v + t).collect();
        let flip = m.determinant() < 0.0;
        let faces: Vec<Vec<usize>> = self
            .faces
            .iter()
            .map(|f| {
                let mut f = f.clone();
                if flip {
                    f.reverse();
                }
                f
            })
            .collect();
        let mut out = self.clone();
        out.planes = faces
            .iter()
            .map(|f| {
                let pts: Vec<Vec3> = f.iter().map(|&v| vertices[v]).collect();
                let n = newell_normal(&pts).normalize();
                let c = pts.iter().sum::<Vec3>() / pts.len() as f64;
                Plane {
                    normal: n,
                    offset: n.dot(&c),
                }
            })
            .collect();
        if flip {
            // Cycles were reversed, so edge slot i now sits elsewhere.
            out.face_edges = faces
                .iter()
                .map(|f| {
                    let k = f.len();
                    (0..k)
                        .map(|i| {
                            let (a, b) = (f[i], f[(i + 1) % k]);
                            self.edges
                                .iter()
                                .position(|e| *e == [a.min(b), a.max(b)])
                                .expect("edge exists")
                        })
                        .collect()
                })
                .collect();
        }
        out.eps = self.eps / self.bbox_diagonal().max(f64::MIN_POSITIVE)
            * bbox_diagonal(&vertices).max(f64::MIN_POSITIVE);
        out.vertices = vertices;
        out.faces = faces;
        out
    }

    pub fn rotate(&self, r: &Rotation) -> Polytope {
        self.map_affine(r.matrix(), &Vec3::zeros())
    }

    pub fn translate(&self, t: &Vec3) -> Polytope {
        self.map_affine(&Matrix3::identity(), t)
    }

    pub fn scale(&self, s: f64) -> Polytope {
        self.map_affine(&(Matrix3::identity() * s), &Vec3::zeros())
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.vertices.len());
        self.labels = labels;
        self
    }
}
