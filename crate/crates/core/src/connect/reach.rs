use crate::error::{Error, Result};
use crate::geom::{axis, Polytope, Vec3};
use crate::marks::MarkedPolytope;

use super::intervals::IntervalSet;
use super::polygon::polygon_ortho_connected;

/// Where a surface point sits in the face lattice.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum SurfacePoint {
    Vertex(usize),
    /// Point `a + s (b - a)` of edge `[a, b]`, with `0 < s < 1`.
    Edge { edge: usize, s: f64 },
    /// Relative interior point of a face.
    Face { face: usize, point: Vec3 },
}

impl SurfacePoint {
    pub fn position(&self, p: &Polytope) -> Vec3 {
        match *self {
            SurfacePoint::Vertex(v) => p.vertex(v),
            SurfacePoint::Edge { edge, s } => {
                let (a, b) = p.edge_points(edge);
                a + (b - a) * s
            }
            SurfacePoint::Face { point, .. } => point,
        }
    }
}

/// Classifies `x` as a vertex, edge or face point of `p` within the
/// polytope's absolute tolerance.
pub fn locate(p: &Polytope, x: &Vec3) -> Result<SurfacePoint> {
    let eps = p.eps();
    if let Some(v) = (0..p.num_vertices()).find(|&v| (p.vertex(v) - x).norm() <= eps) {
        return Ok(SurfacePoint::Vertex(v));
    }
    for e in 0..p.num_edges() {
        let (a, b) = p.edge_points(e);
        let d = b - a;
        let s = (x - a).dot(&d) / d.norm_squared();
        if (0.0..=1.0).contains(&s) && (a + d * s - x).norm() <= eps {
            return Ok(SurfacePoint::Edge { edge: e, s });
        }
    }
    if let Some(f) = (0..p.num_faces()).find(|&f| p.face_contains(f, x, eps)) {
        return Ok(SurfacePoint::Face { face: f, point: *x });
    }
    let dists: Vec<f64> = (0..p.num_faces())
        .map(|f| p.face_plane(f).signed_distance(x))
        .collect();
    let outside = dists.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let depth = if outside > 0.0 { outside } else { -outside };
    Err(Error::SeedOffSurface(depth))
}

/// How a face carries orthogonal paths.
#[derive(Clone, Debug, PartialEq)]
pub enum FaceKind {
    /// No mark: no orthogonal segment enters the relative interior.
    Blind,
    /// One mark: only chords parallel to `axis`. `w` is the in-plane unit
    /// vector orthogonal to the axis; chords are indexed by `t = w·p`.
    Chord {
        axis: usize,
        w: Vec3,
        tmin: f64,
        tmax: f64,
    },
    /// Two marks: reached as a whole, except `failing` vertices whose angle
    /// contains no in-plane axis direction.
    Open { failing: Vec<usize> },
}

/// Precomputed transport data for one marked polytope.
#[derive(Clone, Debug)]
pub struct Surface<'a> {
    pub mp: &'a MarkedPolytope,
    pub kinds: Vec<FaceKind>,
    eps: f64,
    vertex_faces: Vec<Vec<usize>>,
    vertex_edges: Vec<Vec<usize>>,
}

impl<'a> Surface<'a> {
    pub fn new(mp: &'a MarkedPolytope) -> Result<Self> {
        let p = &mp.polytope;
        let mut kinds = Vec::with_capacity(p.num_faces());
        for f in 0..p.num_faces() {
            let m = mp.face_marks[f];
            let kind = match m.len() {
                0 => FaceKind::Blind,
                1 => {
                    let a = m.single_axis().unwrap();
                    let n = p.face_plane(f).normal;
                    let w = n.cross(&axis(a)).normalize();
                    let ts: Vec<f64> = p.face(f).iter().map(|&v| w.dot(&p.vertex(v))).collect();
                    FaceKind::Chord {
                        axis: a,
                        w,
                        tmin: ts.iter().cloned().fold(f64::INFINITY, f64::min),
                        tmax: ts.iter().cloned().fold(f64::NEG_INFINITY, f64::max),
                    }
                }
                _ => {
                    // Under a loose parallel tolerance the marked axes are only
                    // nearly in the face plane; use their projections.
                    let n = p.face_plane(f).normal;
                    let axes: Vec<Vec3> = m
                        .axes()
                        .map(|a| (axis(a) - n * n[a]).normalize())
                        .collect();
                    let verdict = polygon_ortho_connected(&p.face_points(f), &axes)?;
                    FaceKind::Open {
                        failing: verdict
                            .failing_vertices
                            .iter()
                            .map(|&i| p.face(f)[i])
                            .collect(),
                    }
                }
            };
            kinds.push(kind);
        }
        Ok(Self {
            mp,
            kinds,
            eps: p.eps(),
            vertex_faces: p.vertex_faces(),
            vertex_edges: p.vertex_edges(),
        })
    }

    pub fn polytope(&self) -> &Polytope {
        &self.mp.polytope
    }

    pub fn eps(&self) -> f64 {
        self.eps
    }

    fn edge_tol(&self, e: usize) -> f64 {
        self.eps / self.polytope().edge_length(e)
    }

    /// Chord of face `f` at transversal value `t`, if `f` is a chord face.
    pub fn chord_at(&self, f: usize, t: f64) -> Option<(Vec3, Vec3)> {
        let FaceKind::Chord { w, axis: a, .. } = &self.kinds[f] else {
            return None;
        };
        let p = self.polytope();
        let pts = p.face_points(f);
        let k = pts.len();
        let mut hits: Vec<Vec3> = Vec::new();
        for i in 0..k {
            let (x, y) = (pts[i], pts[(i + 1) % k]);
            let (tx, ty) = (w.dot(&x), w.dot(&y));
            if (tx - t).abs() <= self.eps {
                hits.push(x);
            }
            if (tx - t) * (ty - t) < 0.0 && (tx - t).abs() > self.eps && (ty - t).abs() > self.eps {
                hits.push(x + (y - x) * ((t - tx) / (ty - tx)));
            }
        }
        let lo = hits.iter().min_by(|p, q| p[*a].total_cmp(&q[*a]))?;
        let hi = hits.iter().max_by(|p, q| p[*a].total_cmp(&q[*a]))?;
        Some((*lo, *hi))
    }

    /// Orthogonal-reachability closure of `seed`, iterated to a fixpoint or
    /// until `max_iters` rounds have run.
    pub fn reach(&self, seed: SurfacePoint, max_iters: usize) -> ReachSet {
        let p = self.polytope();
        let mut rs = ReachSet {
            seed,
            face_full: vec![false; p.num_faces()],
            chords: vec![IntervalSet::new(); p.num_faces()],
            edges: vec![IntervalSet::new(); p.num_edges()],
            vertices: vec![false; p.num_vertices()],
            iterations: 0,
            converged: false,
        };
        match seed {
            SurfacePoint::Vertex(v) => rs.vertices[v] = true,
            SurfacePoint::Edge { edge, s } => {
                self.insert_edge(&mut rs, edge, s, s);
            }
            SurfacePoint::Face { face, point } => match &self.kinds[face] {
                FaceKind::Blind => {}
                FaceKind::Chord { w, .. } => {
                    let t = w.dot(&point);
                    rs.chords[face].insert(t, t, self.eps);
                }
                FaceKind::Open { .. } => rs.face_full[face] = true,
            },
        }
        loop {
            if rs.iterations >= max_iters {
                return rs;
            }
            rs.iterations += 1;
            if !self.round(&mut rs) {
                rs.converged = true;
                return rs;
            }
        }
    }

    fn insert_edge(&self, rs: &mut ReachSet, e: usize, lo: f64, hi: f64) -> bool {
        let tol = self.edge_tol(e);
        let (lo, hi) = (lo.clamp(0.0, 1.0), hi.clamp(0.0, 1.0));
        if hi - lo <= tol && (hi <= tol || lo >= 1.0 - tol) {
            // A vertex; vertex flags carry it.
            return false;
        }
        rs.edges[e].insert(lo, hi, tol)
    }

    fn set_vertex(rs: &mut ReachSet, v: usize) -> bool {
        !std::mem::replace(&mut rs.vertices[v], true)
    }

    fn round(&self, rs: &mut ReachSet) -> bool {
        let p = self.polytope();
        let mp = self.mp;
        let mut changed = false;

        for v in 0..p.num_vertices() {
            if !rs.vertices[v] {
                continue;
            }
            for &e in &self.vertex_edges[v] {
                if !mp.edge_marks[e].is_empty() {
                    changed |= self.insert_edge(rs, e, 0.0, 1.0);
                }
            }
            for &f in &self.vertex_faces[v] {
                match &self.kinds[f] {
                    FaceKind::Open { failing } if !failing.contains(&v) && !rs.face_full[f] => {
                        rs.face_full[f] = true;
                        changed = true;
                    }
                    FaceKind::Chord { w, .. } => {
                        let t = w.dot(&p.vertex(v));
                        changed |= rs.chords[f].insert(t, t, self.eps);
                    }
                    _ => {}
                }
            }
        }

        for e in 0..p.num_edges() {
            if rs.edges[e].is_empty() {
                continue;
            }
            if !mp.edge_marks[e].is_empty() {
                changed |= self.insert_edge(rs, e, 0.0, 1.0);
                for v in p.edge(e) {
                    changed |= Self::set_vertex(rs, v);
                }
            }
            for f in p.edge_faces(e) {
                if matches!(self.kinds[f], FaceKind::Open { .. }) && !rs.face_full[f] {
                    rs.face_full[f] = true;
                    changed = true;
                }
            }
        }

        for f in 0..p.num_faces() {
            match &self.kinds[f] {
                FaceKind::Open { failing } if rs.face_full[f] => {
                    for &e in p.face_edges(f) {
                        changed |= self.insert_edge(rs, e, 0.0, 1.0);
                    }
                    for &v in p.face(f) {
                        if !failing.contains(&v) {
                            changed |= Self::set_vertex(rs, v);
                        }
                    }
                }
                FaceKind::Chord { w, .. } => {
                    changed |= self.transport_chords(rs, f, w);
                }
                _ => {}
            }
        }
        changed
    }

    fn transport_chords(&self, rs: &mut ReachSet, f: usize, w: &Vec3) -> bool {
        let p = self.polytope();
        let mut changed = false;
        for &e in p.face_edges(f) {
            let [a, b] = p.edge(e);
            let (ta, tb) = (w.dot(&p.vertex(a)), w.dot(&p.vertex(b)));
            let ivs: Vec<(f64, f64)> = rs.edges[e].iter().collect();
            for (lo, hi) in ivs {
                changed |= rs.chords[f].insert(ta + lo * (tb - ta), ta + hi * (tb - ta), self.eps);
            }
        }
        if rs.chords[f].is_empty() {
            return changed;
        }
        for &e in p.face_edges(f) {
            let [a, b] = p.edge(e);
            let (ta, tb) = (w.dot(&p.vertex(a)), w.dot(&p.vertex(b)));
            if (tb - ta).abs() <= self.eps {
                if rs.chords[f].contains(ta, self.eps) {
                    changed |= self.insert_edge(rs, e, 0.0, 1.0);
                }
                continue;
            }
            for (c, d) in rs.chords[f].clipped(ta.min(tb) - self.eps, ta.max(tb) + self.eps) {
                let s1 = (c - ta) / (tb - ta);
                let s2 = (d - ta) / (tb - ta);
                changed |= self.insert_edge(rs, e, s1.min(s2), s1.max(s2));
            }
        }
        for &v in p.face(f) {
            if !rs.vertices[v] && rs.chords[f].contains(w.dot(&p.vertex(v)), self.eps) {
                rs.vertices[v] = true;
                changed = true;
            }
        }
        changed
    }

    /// Whether the closure is the whole surface.
    pub fn is_full(&self, rs: &ReachSet) -> bool {
        let p = self.polytope();
        rs.vertices.iter().all(|&r| r)
            && (0..p.num_edges()).all(|e| rs.edges[e].covers(0.0, 1.0, self.edge_tol(e)))
            && self.kinds.iter().enumerate().all(|(f, k)| match k {
                FaceKind::Blind => false,
                FaceKind::Chord { tmin, tmax, .. } => rs.chords[f].covers(*tmin, *tmax, self.eps),
                FaceKind::Open { .. } => rs.face_full[f],
            })
    }

    /// Whether the surface point `x` lies in the closure.
    pub fn contains(&self, rs: &ReachSet, x: &SurfacePoint) -> bool {
        let p = self.polytope();
        let chord_hit = |f: usize, pt: &Vec3| match &self.kinds[f] {
            FaceKind::Chord { w, .. } => rs.chords[f].contains(w.dot(pt), self.eps),
            FaceKind::Open { .. } => rs.face_full[f],
            FaceKind::Blind => false,
        };
        match x {
            SurfacePoint::Vertex(v) => rs.vertices[*v],
            SurfacePoint::Edge { edge, s } => {
                let pt = x.position(p);
                rs.edges[*edge].contains(*s, self.edge_tol(*edge))
                    || p.edge_faces(*edge).iter().any(|&f| chord_hit(f, &pt))
            }
            SurfacePoint::Face { face, point } => {
                chord_hit(*face, point)
                    || (rs.seed.position(p) - point).norm() <= self.eps
            }
        }
    }

    /// Rough size of a closure: reached face area plus small contributions
    /// from edges and vertices. Used to rank witnesses.
    pub fn extent(&self, rs: &ReachSet) -> f64 {
        let p = self.polytope();
        let mut total = 0.0;
        for (f, k) in self.kinds.iter().enumerate() {
            total += match k {
                FaceKind::Open { .. } if rs.face_full[f] => p.face_area(f),
                FaceKind::Chord { tmin, tmax, .. } if tmax > tmin => {
                    p.face_area(f) * rs.chords[f].measure() / (tmax - tmin)
                }
                _ => 0.0,
            };
        }
        for e in 0..p.num_edges() {
            total += 1e-3 * rs.edges[e].measure() * p.edge_length(e);
        }
        total + 1e-6 * rs.vertices.iter().filter(|&&r| r).count() as f64
    }

    /// One-dimensional pieces of the closure: reached edge intervals and
    /// single chords. Two-dimensional parts (full faces, chord bands) are
    /// listed by [`ReachSet::regions`].
    pub fn segments(&self, rs: &ReachSet) -> Vec<(Vec3, Vec3)> {
        let p = self.polytope();
        let mut out = Vec::new();
        for e in 0..p.num_edges() {
            let (a, b) = p.edge_points(e);
            for (lo, hi) in rs.edges[e].iter() {
                out.push((a + (b - a) * lo, a + (b - a) * hi));
            }
        }
        for f in 0..p.num_faces() {
            for (lo, hi) in rs.chords[f].iter() {
                if hi - lo <= self.eps {
                    if let Some(seg) = self.chord_at(f, 0.5 * (lo + hi)) {
                        out.push(seg);
                    }
                }
            }
        }
        out
    }
}

/// Orthogonal-reachability closure of a seed point.
#[derive(Clone, Debug, PartialEq)]
pub struct ReachSet {
    pub seed: SurfacePoint,
    /// Two-mark faces reached as a whole.
    pub face_full: Vec<bool>,
    /// Reached chord parameters of one-mark faces.
    pub chords: Vec<IntervalSet>,
    /// Reached parameter intervals of each edge, within `[0, 1]`.
    pub edges: Vec<IntervalSet>,
    pub vertices: Vec<bool>,
    pub iterations: usize,
    pub converged: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FaceStatus {
    Untouched,
    Partial,
    Full,
}

impl ReachSet {
    pub fn reached_vertices(&self) -> Vec<usize> {
        (0..self.vertices.len()).filter(|&v| self.vertices[v]).collect()
    }

    pub fn face_status(&self, surface: &Surface, f: usize) -> FaceStatus {
        match &surface.kinds[f] {
            FaceKind::Open { .. } if self.face_full[f] => FaceStatus::Full,
            FaceKind::Chord { tmin, tmax, .. }
                if self.chords[f].covers(*tmin, *tmax, surface.eps) =>
            {
                FaceStatus::Full
            }
            FaceKind::Chord { .. } if !self.chords[f].is_empty() => FaceStatus::Partial,
            _ => {
                let p = surface.polytope();
                let touched = p.face(f).iter().any(|&v| self.vertices[v])
                    || p.face_edges(f).iter().any(|&e| !self.edges[e].is_empty());
                if touched {
                    FaceStatus::Partial
                } else {
                    FaceStatus::Untouched
                }
            }
        }
    }

    /// Faces whose closure part is two-dimensional: full faces and chord
    /// bands of positive width.
    pub fn regions(&self, surface: &Surface) -> Vec<usize> {
        (0..self.face_full.len())
            .filter(|&f| {
                self.face_full[f]
                    || self.chords[f].iter().any(|(lo, hi)| hi - lo > surface.eps)
            })
            .collect()
    }
}

/// Reach closure of a point given by coordinates.
pub fn surface_reach(
    mp: &MarkedPolytope,
    seed: &Vec3,
    tol: &crate::tol::Tolerances,
) -> Result<ReachSet> {
    let surface = Surface::new(mp)?;
    let at = locate(&mp.polytope, seed)?;
    Ok(surface.reach(at, tol.max_fixpoint_iters))
}
