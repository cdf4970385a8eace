//! Brute-force surface tracer used as an oracle for the interval engine.
//!
//! Works from raw vertex and face lists only. Starting at a seed, it walks
//! axis-parallel chords of faces, samples each chord at a quarter of the grid
//! pitch and launches new chords from every sample in every face through it.
//! Coverage is then counted on a square grid laid over each face.

use std::collections::{HashMap, HashSet, VecDeque};

use nalgebra::Vector3;

type V = Vector3<f64>;

pub struct RasterResult {
    pub connected: bool,
    /// Smallest per-face fraction of interior cells reached.
    pub min_coverage: f64,
}

struct Face {
    pts: Vec<V>,
    n: V,
    d: f64,
    /// Inward normals of the sides, with offsets.
    sides: Vec<(V, f64)>,
    u: V,
    v: V,
}

pub struct Raster {
    faces: Vec<Face>,
    h: f64,
    q: f64,
    tol: f64,
}

const AXES: [V; 3] = [V::new(1.0, 0.0, 0.0), V::new(0.0, 1.0, 0.0), V::new(0.0, 0.0, 1.0)];
const PARALLEL: f64 = 1e-9;

impl Raster {
    /// `pitch_per_edge`: grid cells per mean edge length.
    pub fn new(vertices: &[V], faces: &[Vec<usize>], pitch_per_edge: f64) -> Self {
        let mut edge_sum = 0.0;
        let mut edge_count = 0.0;
        let mut out = Vec::new();
        let centre = vertices.iter().sum::<V>() / vertices.len() as f64;
        for f in faces {
            let pts: Vec<V> = f.iter().map(|&i| vertices[i]).collect();
            let c = pts.iter().sum::<V>() / pts.len() as f64;
            let mut n = (pts[1] - pts[0]).cross(&(pts[2] - pts[0])).normalize();
            if n.dot(&(c - centre)) < 0.0 {
                n = -n;
            }
            let mut sides = Vec::new();
            for i in 0..pts.len() {
                let a = pts[i];
                let b = pts[(i + 1) % pts.len()];
                edge_sum += (b - a).norm();
                edge_count += 1.0;
                let mut m = n.cross(&(b - a)).normalize();
                if m.dot(&(c - a)) < 0.0 {
                    m = -m;
                }
                sides.push((m, m.dot(&a)));
            }
            let u = (pts[1] - pts[0]).normalize();
            let v = n.cross(&u);
            out.push(Face {
                d: n.dot(&pts[0]),
                pts,
                n,
                sides,
                u,
                v,
            });
        }
        let h = edge_sum / edge_count / pitch_per_edge;
        Raster {
            faces: out,
            h,
            q: h / 4.0,
            tol: 1e-9 * (edge_sum / edge_count).max(1.0),
        }
    }

    fn faces_at(&self, x: &V) -> Vec<usize> {
        (0..self.faces.len())
            .filter(|&f| (self.faces[f].n.dot(x) - self.faces[f].d).abs() <= 1e3 * self.tol)
            .collect()
    }

    fn axes_in(&self, f: usize) -> impl Iterator<Item = usize> + '_ {
        (0..3).filter(move |&a| self.faces[f].n[a].abs() <= PARALLEL)
    }

    fn chord_key(&self, f: usize, a: usize, x: &V) -> (usize, usize, i64) {
        let w = self.faces[f].n.cross(&AXES[a]).normalize();
        (f, a, (w.dot(x) / (self.q / 2.0)).round() as i64)
    }

    /// Segment of the line `x + s e_a` inside face `f`.
    fn chord(&self, f: usize, a: usize, x: &V) -> Option<(V, V)> {
        let e = AXES[a];
        let (mut lo, mut hi) = (f64::NEG_INFINITY, f64::INFINITY);
        for (m, c) in &self.faces[f].sides {
            let rate = m.dot(&e);
            let slack = m.dot(x) - c;
            if rate.abs() < 1e-15 {
                if slack < -1e3 * self.tol {
                    return None;
                }
                continue;
            }
            let s = -slack / rate;
            if rate > 0.0 {
                lo = lo.max(s);
            } else {
                hi = hi.min(s);
            }
        }
        (hi - lo > 1e3 * self.tol).then(|| (x + lo * e, x + hi * e))
    }

    fn cell(&self, f: usize, x: &V) -> (i64, i64) {
        let fc = &self.faces[f];
        let r = x - fc.pts[0];
        ((r.dot(&fc.u) / self.h).floor() as i64, (r.dot(&fc.v) / self.h).floor() as i64)
    }

    /// Cells whose centre lies at least one pitch inside the face.
    fn interior_cells(&self, f: usize) -> HashSet<(i64, i64)> {
        let fc = &self.faces[f];
        let coords: Vec<(f64, f64)> = fc
            .pts
            .iter()
            .map(|p| ((p - fc.pts[0]).dot(&fc.u), (p - fc.pts[0]).dot(&fc.v)))
            .collect();
        let (mut u0, mut u1, mut v0, mut v1) = (f64::MAX, f64::MIN, f64::MAX, f64::MIN);
        for &(a, b) in &coords {
            u0 = u0.min(a);
            u1 = u1.max(a);
            v0 = v0.min(b);
            v1 = v1.max(b);
        }
        let mut out = HashSet::new();
        for i in (u0 / self.h).floor() as i64..=(u1 / self.h).ceil() as i64 {
            for j in (v0 / self.h).floor() as i64..=(v1 / self.h).ceil() as i64 {
                let c = fc.pts[0] + fc.u * ((i as f64 + 0.5) * self.h) + fc.v * ((j as f64 + 0.5) * self.h);
                if fc.sides.iter().all(|(m, d)| m.dot(&c) - d >= self.h) {
                    out.insert((i, j));
                }
            }
        }
        out
    }

    pub fn trace(&self) -> RasterResult {
        let seed = (0..self.faces.len())
            .find(|&f| self.axes_in(f).count() == 2)
            .map(|f| self.faces[f].pts.iter().sum::<V>() / self.faces[f].pts.len() as f64)
            .unwrap_or(self.faces[0].pts[0]);
        let mut seen: HashSet<(usize, usize, i64)> = HashSet::new();
        let mut queue: VecDeque<(usize, usize, V, V)> = VecDeque::new();
        let mut reached: HashMap<usize, HashSet<(i64, i64)>> = HashMap::new();
        let launch = |x: &V,
                      seen: &mut HashSet<(usize, usize, i64)>,
                      queue: &mut VecDeque<(usize, usize, V, V)>,
                      reached: &mut HashMap<usize, HashSet<(i64, i64)>>| {
            for f in self.faces_at(x) {
                reached.entry(f).or_default().insert(self.cell(f, x));
                for a in self.axes_in(f) {
                    let key = self.chord_key(f, a, x);
                    if seen.contains(&key) {
                        continue;
                    }
                    if let Some((p, q)) = self.chord(f, a, x) {
                        seen.insert(key);
                        queue.push_back((f, a, p, q));
                    }
                }
            }
        };
        launch(&seed, &mut seen, &mut queue, &mut reached);
        while let Some((_, _, p, q)) = queue.pop_front() {
            let n = ((q - p).norm() / self.q).ceil().max(1.0) as usize;
            for k in 0..=n {
                let x = p + (q - p) * (k as f64 / n as f64);
                launch(&x, &mut seen, &mut queue, &mut reached);
            }
        }
        let mut min_coverage: f64 = 1.0;
        for f in 0..self.faces.len() {
            let cells = self.interior_cells(f);
            if cells.is_empty() {
                continue;
            }
            let hit = reached
                .get(&f)
                .map_or(0, |r| cells.iter().filter(|c| r.contains(c)).count());
            min_coverage = min_coverage.min(hit as f64 / cells.len() as f64);
        }
        RasterResult {
            connected: min_coverage >= 0.9,
            min_coverage,
        }
    }
}
