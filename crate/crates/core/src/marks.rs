//! Axis marks of faces and edges, richness and the face graph.

use std::collections::VecDeque;
use std::fmt;

use nalgebra::Matrix3;

use crate::geom::{axis, Polytope, Vec3};
use crate::tol::Tolerances;

/// Subset of the coordinate axes {x, y, z}, as a bit mask.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MarkSet(u8);

impl MarkSet {
    pub const EMPTY: MarkSet = MarkSet(0);
    pub const X: MarkSet = MarkSet(1);
    pub const Y: MarkSet = MarkSet(2);
    pub const Z: MarkSet = MarkSet(4);

    pub fn single(a: usize) -> Self {
        MarkSet(1 << a)
    }

    pub fn from_axes(axes: &[usize]) -> Self {
        MarkSet(axes.iter().fold(0, |m, &a| m | (1 << a)))
    }

    pub fn contains(self, a: usize) -> bool {
        self.0 & (1 << a) != 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(self, other: MarkSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn axes(self) -> impl Iterator<Item = usize> {
        (0..3).filter(move |&a| self.contains(a))
    }

    /// The only axis of a one-element set.
    pub fn single_axis(self) -> Option<usize> {
        (self.len() == 1).then(|| self.0.trailing_zeros() as usize)
    }

    /// The axis missing from a two-element set.
    pub fn complement_axis(self) -> Option<usize> {
        (self.len() == 2).then(|| (0..3).find(|&a| !self.contains(a)).unwrap())
    }

    /// Image of the set under a signed permutation matrix `m` (axis `a`
    /// goes to the axis `b` with `m[(b, a)] ≠ 0`).
    pub fn permuted(self, m: &Matrix3<f64>) -> Self {
        let mut out = 0u8;
        for a in self.axes() {
            let b = (0..3).find(|&b| m[(b, a)].abs() > 0.5).unwrap();
            out |= 1 << b;
        }
        MarkSet(out)
    }

    pub fn to_letters(self) -> String {
        self.axes().map(|a| ['x', 'y', 'z'][a]).collect()
    }
}

impl fmt::Display for MarkSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, a) in self.axes().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", ['x', 'y', 'z'][a])?;
        }
        write!(f, "}}")
    }
}

/// Marks of a plane with unit normal `n`.
pub fn plane_marks(n: &Vec3, eps_parallel: f64) -> MarkSet {
    MarkSet((0..3).fold(0, |m, a| {
        if n.dot(&axis(a)).abs() <= eps_parallel * n.norm() {
            m | (1 << a)
        } else {
            m
        }
    }))
}

/// Marks of a line with direction `d`.
pub fn line_marks(d: &Vec3, eps_parallel: f64) -> MarkSet {
    let d = d.normalize();
    for a in 0..3 {
        let off: f64 = (0..3).filter(|&b| b != a).map(|b| d[b] * d[b]).sum();
        if off.sqrt() <= eps_parallel {
            return MarkSet::single(a);
        }
    }
    MarkSet::EMPTY
}

#[derive(Clone, Debug)]
pub struct MarkedPolytope {
    pub polytope: Polytope,
    pub face_marks: Vec<MarkSet>,
    pub edge_marks: Vec<MarkSet>,
    pub eps_parallel: f64,
}

pub fn annotate(p: &Polytope, tol: &Tolerances) -> MarkedPolytope {
    let face_marks = (0..p.num_faces())
        .map(|f| plane_marks(&p.face_plane(f).normal, tol.eps_parallel))
        .collect();
    let edge_marks = (0..p.num_edges())
        .map(|e| {
            let (a, b) = p.edge_points(e);
            line_marks(&(b - a), tol.eps_parallel)
        })
        .collect();
    MarkedPolytope {
        polytope: p.clone(),
        face_marks,
        edge_marks,
        eps_parallel: tol.eps_parallel,
    }
}

impl MarkedPolytope {
    pub fn face_mark(&self, f: usize) -> MarkSet {
        self.face_marks[f]
    }

    pub fn edge_mark(&self, e: usize) -> MarkSet {
        self.edge_marks[e]
    }
}

/// Every face has a mark and some face has two.
pub fn is_rich(mp: &MarkedPolytope) -> bool {
    mp.face_marks.iter().all(|m| !m.is_empty()) && mp.face_marks.iter().any(|m| m.len() == 2)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceGraph {
    pub adjacency: Vec<Vec<usize>>,
    pub edges: Vec<(usize, usize)>,
}

impl FaceGraph {
    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Connected components, each sorted, ordered by smallest face.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.adjacency.len();
        let mut comp = vec![usize::MAX; n];
        let mut out = Vec::new();
        for s in 0..n {
            if comp[s] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut members = vec![s];
            comp[s] = id;
            let mut queue = VecDeque::from([s]);
            while let Some(f) = queue.pop_front() {
                for &g in &self.adjacency[f] {
                    if comp[g] == usize::MAX {
                        comp[g] = id;
                        members.push(g);
                        queue.push_back(g);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }
}

/// Faces are adjacent when they share an edge whose mark set differs from
/// the mark sets of both faces.
pub fn face_graph(mp: &MarkedPolytope) -> FaceGraph {
    let p = &mp.polytope;
    let mut adjacency = vec![Vec::new(); p.num_faces()];
    let mut edges = Vec::new();
    for e in 0..p.num_edges() {
        let [f, g] = p.edge_faces(e);
        let me = mp.edge_marks[e];
        if me != mp.face_marks[f] && me != mp.face_marks[g] && !adjacency[f].contains(&g) {
            adjacency[f].push(g);
            adjacency[g].push(f);
            edges.push((f.min(g), f.max(g)));
        }
    }
    for a in &mut adjacency {
        a.sort_unstable();
    }
    edges.sort_unstable();
    FaceGraph { adjacency, edges }
}

/// Necessary condition for an orthogonally connected surface of a simple
/// polytope: rich with a connected face graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NecessaryConditionReport {
    pub simple: bool,
    pub rich: bool,
    pub graph_connected: bool,
    /// The condition only constrains simple polytopes.
    pub applicable: bool,
    pub pass: bool,
}

pub fn necessary_condition_report(mp: &MarkedPolytope) -> NecessaryConditionReport {
    let simple = mp.polytope.is_simple();
    let rich = is_rich(mp);
    let graph_connected = face_graph(mp).is_connected();
    NecessaryConditionReport {
        simple,
        rich,
        graph_connected,
        applicable: simple,
        pass: rich && graph_connected,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::rotation::signed_permutations;
    use crate::solids::{make_solid, Solid, SolidSpec};

    fn marked(s: Solid, aligned: bool) -> MarkedPolytope {
        let spec = if aligned {
            SolidSpec::aligned(s)
        } else {
            SolidSpec::canonical(s)
        };
        annotate(&make_solid(&spec).unwrap(), &Tolerances::default())
    }

    #[test]
    fn cube_marks() {
        let mp = marked(Solid::Cube, false);
        assert!(mp.face_marks.iter().all(|m| m.len() == 2));
        assert!(mp.edge_marks.iter().all(|m| m.len() == 1));
        assert!(is_rich(&mp));
        let r = necessary_condition_report(&mp);
        assert!(r.simple && r.rich && r.graph_connected && r.pass);
    }

    #[test]
    fn counterexamples() {
        let t = necessary_condition_report(&marked(Solid::SkewTetrahedron, false));
        assert!(t.simple && !t.rich && !t.pass);
        let h = marked(Solid::SimpleHeptahedron, false);
        let r = necessary_condition_report(&h);
        assert!(r.simple && r.rich && r.graph_connected && r.pass);
        let half = marked(Solid::HalfCuboctahedron, false);
        assert!(is_rich(&half));
        assert!(!face_graph(&half).is_connected());
    }

    #[test]
    fn heptahedron_mark_table() {
        let mp = marked(Solid::SimpleHeptahedron, false);
        let p = &mp.polytope;
        let expect: [(&[usize], MarkSet); 7] = [
            (&[1, 5, 6, 10], MarkSet::Y),
            (&[1, 2, 3, 4, 5], MarkSet::Z),
            (&[4, 5, 9, 10], MarkSet::Y),
            (&[3, 4, 8, 9], MarkSet::from_axes(&[0, 1])),
            (&[6, 7, 8, 9, 10], MarkSet::X),
            (&[1, 2, 6, 7], MarkSet::Y),
            (&[2, 3, 7, 8], MarkSet::Y),
        ];
        for (verts, m) in expect {
            let f = (0..p.num_faces())
                .find(|&f| {
                    let mut s: Vec<usize> = p.face(f).iter().map(|v| v + 1).collect();
                    s.sort_unstable();
                    s == verts
                })
                .unwrap();
            assert_eq!(mp.face_marks[f], m, "{verts:?}");
        }
    }

    #[test]
    fn edge_marks_within_face_marks() {
        for s in Solid::ALL {
            for &pos in s.positions() {
                let mp = annotate(
                    &make_solid(&SolidSpec::new(s, pos)).unwrap(),
                    &Tolerances::default(),
                );
                let p = &mp.polytope;
                for f in 0..p.num_faces() {
                    for &e in p.face_edges(f) {
                        assert!(mp.edge_marks[e].is_subset(mp.face_marks[f]), "{s} {pos}");
                    }
                }
            }
        }
    }

    #[test]
    fn equivariance_under_axis_permutations() {
        let tol = Tolerances::default();
        let p = make_solid(&SolidSpec::aligned(Solid::TruncatedOctahedron)).unwrap();
        let base = annotate(&p, &tol);
        for m in signed_permutations() {
            let q = p.map_affine(&m, &Vec3::zeros());
            let mq = annotate(&q, &tol);
            for f in 0..p.num_faces() {
                assert_eq!(mq.face_marks[f], base.face_marks[f].permuted(&m));
            }
            for e in 0..p.num_edges() {
                assert_eq!(mq.edge_marks[e], base.edge_marks[e].permuted(&m));
            }
        }
    }

    #[test]
    fn markset_helpers() {
        let xy = MarkSet::from_axes(&[0, 1]);
        assert_eq!(xy.to_string(), "{x,y}");
        assert_eq!(xy.complement_axis(), Some(2));
        assert_eq!(MarkSet::Z.single_axis(), Some(2));
        assert!(MarkSet::EMPTY.is_subset(xy));
        assert_eq!(line_marks(&Vec3::new(0.0, -3.0, 0.0), 1e-9), MarkSet::Y);
    }
}
