//! Rotation-invariant test for whether some rotation gives every face in a
//! set a non-empty mark set.
//!
//! A face `F` carries mark `a` after rotation `R` iff the `a`-th row `r_a` of
//! `R` is orthogonal to the normal `n_F`. So the question is whether an
//! orthonormal frame `(r_x, r_y, r_z)` exists with `r_{a(F)} ⊥ n_F` for some
//! axis assignment `a`. Two-mark sets contain a one-mark set, so only single
//! marks are searched. For a fixed assignment the frame question is decided
//! exactly (up to the parallelism tolerance) from the rank of each axis'
//! normal set.

use nalgebra::{Matrix2, Matrix3xX, SymmetricEigen};

use crate::error::{Error, Result};
use crate::geom::{Polytope, Rotation, Vec3};
use crate::marks::MarkSet;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SearchLimits {
    /// Largest face set searched.
    pub max_faces: usize,
    /// Search-tree node budget; exceeding it gives `Inconclusive`.
    pub max_nodes: u64,
}

impl Default for SearchLimits {
    fn default() -> Self {
        Self {
            max_faces: 16,
            max_nodes: 20_000_000,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum FeasibilityOutcome {
    /// Search exhausted without a realizable assignment. `min_margin` is the
    /// smallest amount by which any pruned branch missed feasibility; the
    /// verdict is robust when it is well above the tolerance.
    Infeasible { nodes: u64, min_margin: f64 },
    /// A realizable assignment and a rotation realizing it.
    Feasible {
        assignment: Vec<(usize, MarkSet)>,
        rotation: Rotation,
        nodes: u64,
    },
    Inconclusive { nodes: u64 },
}

#[derive(Clone, Debug, PartialEq)]
pub struct FeasibilityVerdict {
    pub face_set: Vec<usize>,
    pub outcome: FeasibilityOutcome,
}

impl FeasibilityVerdict {
    pub fn is_infeasible(&self) -> bool {
        matches!(self.outcome, FeasibilityOutcome::Infeasible { .. })
    }

    pub fn is_feasible(&self) -> bool {
        matches!(self.outcome, FeasibilityOutcome::Feasible { .. })
    }
}

/// Face `f` followed by its edge neighbours in cycle order.
pub fn face_star(p: &Polytope, f: usize) -> Vec<usize> {
    let mut out = vec![f];
    for &e in p.face_edges(f) {
        let [g, h] = p.edge_faces(e);
        let n = if g == f { h } else { g };
        if !out.contains(&n) {
            out.push(n);
        }
    }
    out
}

/// Span and orthogonal complement of a set of unit vectors.
struct Split {
    null: Vec<Vec3>,
    range: Vec<Vec3>,
    /// Distance of the rank decision from the threshold.
    margin: f64,
}

fn split(vs: &[Vec3], eps: f64) -> Split {
    // SVD of the normals as columns keeps singular values accurate to
    // rounding; square roots of Gram eigenvalues would not.
    let mut cols = vs.to_vec();
    while cols.len() < 3 {
        cols.push(Vec3::zeros());
    }
    let svd = Matrix3xX::from_columns(&cols).svd(true, false);
    let u = svd.u.expect("left singular vectors requested");
    let mut null = Vec::new();
    let mut range = Vec::new();
    let mut margin = f64::INFINITY;
    let mut idx: Vec<usize> = (0..3).collect();
    idx.sort_by(|&i, &j| svd.singular_values[j].total_cmp(&svd.singular_values[i]));
    for i in idx {
        let s = svd.singular_values[i];
        let v: Vec3 = u.column(i).into();
        if s <= eps {
            null.push(v);
        } else {
            range.push(v);
        }
        margin = margin.min((s - eps).abs());
    }
    Split {
        null,
        range,
        margin,
    }
}

fn any_perp(v: &Vec3) -> Vec3 {
    let t = if v.x.abs() < 0.9 { Vec3::x() } else { Vec3::y() };
    v.cross(&t).normalize()
}

/// Result of the frame test for one (partial) assignment.
#[derive(Clone, Debug, PartialEq)]
pub enum FrameCheck {
    /// Rows `r_x, r_y, r_z` of a realizing frame.
    Feasible([Vec3; 3]),
    /// Infeasible; the value says by how much.
    Infeasible(f64),
}

/// Whether an orthonormal frame exists with `r_a ⊥ n` for every `n` in
/// `groups[a]`.
pub fn frame_exists(groups: &[Vec<Vec3>; 3], eps: f64) -> FrameCheck {
    let splits: Vec<Split> = groups.iter().map(|g| split(g, eps)).collect();
    if let Some(s) = splits.iter().find(|s| s.null.is_empty()) {
        return FrameCheck::Infeasible(s.margin);
    }
    let mut frame = [Vec3::zeros(); 3];
    if let Some(a) = (0..3).find(|&a| splits[a].null.len() == 1) {
        let u = splits[a].null[0];
        let (b, c) = ((a + 1) % 3, (a + 2) % 3);
        let with_u = |k: usize| {
            let mut vs = groups[k].clone();
            vs.push(u);
            split(&vs, eps)
        };
        let (sb, sc) = (with_u(b), with_u(c));
        for s in [&sb, &sc] {
            if s.null.is_empty() {
                return FrameCheck::Infeasible(s.margin);
            }
        }
        let (rb, rc) = match (sb.null.len(), sc.null.len()) {
            (1, 1) => {
                let d = sb.null[0].dot(&sc.null[0]).abs();
                if d > eps {
                    return FrameCheck::Infeasible(d);
                }
                (sb.null[0], u.cross(&sb.null[0]))
            }
            (1, _) => (sb.null[0], u.cross(&sb.null[0])),
            _ => (sc.null[0].cross(&u), sc.null[0]),
        };
        frame[a] = u;
        frame[b] = rb.normalize();
        frame[c] = rc.normalize();
        return FrameCheck::Feasible(frame);
    }
    // Every axis is free or confined to a plane.
    let normal = |k: usize| splits[k].range.first().copied();
    if let Some(a) = (0..3).find(|&a| splits[a].range.is_empty()) {
        let (b, c) = ((a + 1) % 3, (a + 2) % 3);
        let (rb, rc) = match (normal(b), normal(c)) {
            (Some(mb), Some(mc)) => {
                let x = mb.cross(&mc);
                if x.norm() > 1e-12 {
                    let rb = x.normalize();
                    (rb, mc.cross(&rb).normalize())
                } else {
                    let rb = any_perp(&mb);
                    (rb, mb.cross(&rb).normalize())
                }
            }
            (Some(mb), None) => {
                let rb = any_perp(&mb);
                (rb, mb.cross(&rb).normalize())
            }
            (None, Some(mc)) => {
                let rc = any_perp(&mc);
                (mc.cross(&rc).normalize(), rc)
            }
            (None, None) => (Vec3::y(), Vec3::z()),
        };
        frame[a] = rb.cross(&rc).normalize();
        frame[b] = rb;
        frame[c] = rc;
        return FrameCheck::Feasible(frame);
    }
    // r_x on the circle ⊥ m_x; r_y = r_x × m_y (normalized) is forced, and
    // (r_x × r_y)·m_z vanishes iff (r_x·m_y)(r_x·m_z) = m_y·m_z. The left side
    // is a quadratic form on the circle, so it hits k iff k lies between the
    // form's eigenvalues.
    let (my, mz) = (normal(1).unwrap(), normal(2).unwrap());
    let (p, q) = (splits[0].null[0], splits[0].null[1]);
    let (a1, b1, c1, d1) = (p.dot(&my), q.dot(&my), p.dot(&mz), q.dot(&mz));
    let off = 0.5 * (a1 * d1 + b1 * c1);
    let form = Matrix2::new(a1 * c1, off, off, b1 * d1);
    let k = my.dot(&mz);
    let eig = SymmetricEigen::new(form);
    let (lo_i, hi_i) = if eig.eigenvalues[0] <= eig.eigenvalues[1] {
        (0, 1)
    } else {
        (1, 0)
    };
    let (lo, hi) = (eig.eigenvalues[lo_i], eig.eigenvalues[hi_i]);
    if k < lo - eps {
        return FrameCheck::Infeasible(lo - k);
    }
    if k > hi + eps {
        return FrameCheck::Infeasible(k - hi);
    }
    let t = if hi - lo > 1e-300 {
        ((k - lo) / (hi - lo)).clamp(0.0, 1.0)
    } else {
        0.0
    };
    let e_lo = eig.eigenvectors.column(lo_i);
    let e_hi = eig.eigenvectors.column(hi_i);
    let (cphi, sphi) = ((1.0 - t).sqrt(), t.sqrt());
    let cs = e_lo * cphi + e_hi * sphi;
    let rx = (p * cs[0] + q * cs[1]).normalize();
    let v = rx.cross(&my);
    let (ry, rz) = if v.norm() > 1e-12 {
        let ry = v.normalize();
        (ry, rx.cross(&ry))
    } else {
        let w = rx.cross(&mz);
        let rz = if w.norm() > 1e-12 { w.normalize() } else { any_perp(&rx) };
        (rz.cross(&rx), rz)
    };
    FrameCheck::Feasible([rx, ry, rz])
}

struct Search<'a> {
    normals: Vec<Vec3>,
    eps: f64,
    limits: &'a SearchLimits,
    nodes: u64,
    min_margin: f64,
    assign: Vec<usize>,
}

enum Step {
    Found([Vec3; 3]),
    Exhausted,
    OutOfBudget,
}

impl Search<'_> {
    fn groups(&self) -> [Vec<Vec3>; 3] {
        let mut g: [Vec<Vec3>; 3] = Default::default();
        for (i, &a) in self.assign.iter().enumerate() {
            g[a].push(self.normals[i]);
        }
        g
    }

    fn run(&mut self, max_used: usize) -> Step {
        let i = self.assign.len();
        if i == self.normals.len() {
            return match frame_exists(&self.groups(), self.eps) {
                FrameCheck::Feasible(f) => Step::Found(f),
                FrameCheck::Infeasible(_) => Step::Exhausted,
            };
        }
        // Axis labels are interchangeable: open at most one new label per level.
        let top = if i == 0 { 0 } else { (max_used + 1).min(2) };
        for a in 0..=top {
            self.nodes += 1;
            if self.nodes > self.limits.max_nodes {
                return Step::OutOfBudget;
            }
            self.assign.push(a);
            match frame_exists(&self.groups(), self.eps) {
                FrameCheck::Infeasible(m) => {
                    self.min_margin = self.min_margin.min(m);
                }
                FrameCheck::Feasible(_) => match self.run(max_used.max(a)) {
                    Step::Exhausted => {}
                    other => return other,
                },
            }
            self.assign.pop();
        }
        Step::Exhausted
    }
}

/// Backtracking search for an axis assignment on `face_set` that some
/// rotation realizes.
pub fn mark_feasibility(
    p: &Polytope,
    face_set: &[usize],
    limits: &SearchLimits,
    eps_parallel: f64,
) -> Result<FeasibilityVerdict> {
    if face_set.len() > limits.max_faces {
        return Err(Error::FaceSetTooLarge {
            size: face_set.len(),
            bound: limits.max_faces,
        });
    }
    let mut search = Search {
        normals: face_set.iter().map(|&f| p.face_plane(f).normal).collect(),
        eps: eps_parallel,
        limits,
        nodes: 0,
        min_margin: f64::INFINITY,
        assign: Vec::new(),
    };
    let outcome = match search.run(0) {
        Step::Found(mut frame) => {
            if frame[0].cross(&frame[1]).dot(&frame[2]) < 0.0 {
                frame[2] = -frame[2];
            }
            let rotation = Rotation::from_frame_rows(frame)?;
            let assignment = face_set
                .iter()
                .zip(&search.assign)
                .map(|(&f, &a)| (f, MarkSet::single(a)))
                .collect();
            FeasibilityOutcome::Feasible {
                assignment,
                rotation,
                nodes: search.nodes,
            }
        }
        Step::Exhausted => FeasibilityOutcome::Infeasible {
            nodes: search.nodes,
            min_margin: search.min_margin,
        },
        Step::OutOfBudget => FeasibilityOutcome::Inconclusive {
            nodes: search.nodes,
        },
    };
    Ok(FeasibilityVerdict {
        face_set: face_set.to_vec(),
        outcome,
    })
}

/// Tries the star of every face, largest faces first, and returns the first
/// infeasible one, or the last verdict when none is.
pub fn star_feasibility(
    p: &Polytope,
    limits: &SearchLimits,
    eps_parallel: f64,
) -> Result<FeasibilityVerdict> {
    let mut order: Vec<usize> = (0..p.num_faces()).collect();
    order.sort_by_key(|&f| std::cmp::Reverse(p.face(f).len()));
    let mut last = None;
    for f in order {
        let v = mark_feasibility(p, &face_star(p, f), limits, eps_parallel)?;
        if v.is_infeasible() {
            return Ok(v);
        }
        last = Some(v);
    }
    Ok(last.expect("a polytope has faces"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::marks::annotate;
    use crate::solids::{make_solid, Solid, SolidSpec};
    use crate::tol::Tolerances;

    fn solid(s: Solid) -> Polytope {
        make_solid(&SolidSpec::canonical(s)).unwrap()
    }

    #[test]
    fn frame_cases() {
        let (x, y, z) = (Vec3::x(), Vec3::y(), Vec3::z());
        assert!(matches!(
            frame_exists(&[vec![x, y, z], vec![], vec![]], 1e-9),
            FrameCheck::Infeasible(_)
        ));
        assert!(matches!(
            frame_exists(&[vec![y, z], vec![x, z], vec![x, y]], 1e-9),
            FrameCheck::Feasible(_)
        ));
        // Three orthonormal rows cannot all be orthogonal to one vector.
        let d = Vec3::new(1.0, 1.0, 1.0).normalize();
        assert!(matches!(
            frame_exists(&[vec![d], vec![d], vec![d]], 1e-9),
            FrameCheck::Infeasible(_)
        ));
        let e = Vec3::new(1.0, -1.0, 1.0).normalize();
        let FrameCheck::Feasible(f) = frame_exists(&[vec![d], vec![e], vec![]], 1e-9) else {
            panic!();
        };
        assert!(f[0].dot(&d).abs() < 1e-12 && f[1].dot(&e).abs() < 1e-12);
        assert!((f[0].cross(&f[1]).norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn full_sets_feasible_and_realized() {
        let tol = Tolerances::default();
        for s in [Solid::Cube, Solid::Octahedron, Solid::TruncatedOctahedron] {
            let p = solid(s);
            let all: Vec<usize> = (0..p.num_faces()).collect();
            let v = mark_feasibility(&p, &all, &SearchLimits::default(), 1e-9).unwrap();
            let FeasibilityOutcome::Feasible { rotation, .. } = v.outcome else {
                panic!("{s}: {:?}", v.outcome);
            };
            let loose = tol.with_parallel(1e-7);
            let mp = annotate(&p.rotate(&rotation), &loose);
            assert!(mp.face_marks.iter().all(|m| !m.is_empty()), "{s}");
        }
    }

    #[test]
    fn dodecahedron_faces_are_all_markable() {
        // Standard face normals are cyclic permutations of (0, ±1, ±φ), so
        // the identity already marks every face.
        let p = solid(Solid::Dodecahedron);
        let mp = annotate(&p, &Tolerances::default());
        assert!(mp.face_marks.iter().all(|m| m.len() == 1));
        let v = mark_feasibility(&p, &face_star(&p, 0), &SearchLimits::default(), 1e-9).unwrap();
        assert!(v.is_feasible());
    }

    #[test]
    fn truncated_cuboctahedron_octagon_star_infeasible() {
        let p = solid(Solid::TruncatedCuboctahedron);
        let oct = (0..p.num_faces()).find(|&f| p.face(f).len() == 8).unwrap();
        let v = mark_feasibility(&p, &face_star(&p, oct), &SearchLimits::default(), 1e-9).unwrap();
        let FeasibilityOutcome::Infeasible { min_margin, .. } = v.outcome else {
            panic!("{:?}", v.outcome);
        };
        assert!(min_margin > 1e-6, "{min_margin}");
    }

    #[test]
    fn too_large() {
        let p = solid(Solid::TruncatedIcosahedron);
        let all: Vec<usize> = (0..p.num_faces()).collect();
        assert!(matches!(
            mark_feasibility(&p, &all, &SearchLimits::default(), 1e-9),
            Err(Error::FaceSetTooLarge { size: 32, bound: 16 })
        ));
    }
}
