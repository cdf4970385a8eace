//! Acceptance criteria, one test per criterion. Each test prints a single
//! `criterion N: PASS|FAIL` line with the measured values.

mod common;

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::raster::Raster;
use ortho_core::connect::{
    locate, verify_surface_connected, Outcome, ReachSet, Surface, SurfacePoint,
};
use ortho_core::decomp::{certify, decompose, CertificateVerdict, Decomposition, Method};
use ortho_core::geom::clip::split_by_plane;
use ortho_core::geom::rotation::signed_permutations;
use ortho_core::marks::{annotate, face_graph, is_rich, MarkSet, MarkedPolytope};
use ortho_core::nondecomp::{
    dihedral_criterion, face_star, mark_feasibility, FeasibilityOutcome, rotation_search, SearchLimits,
};
use ortho_core::solids::{make_solid, Position, Solid, SolidSpec};
use ortho_core::{Plane, Polytope, Rotation, Tolerances, Vec3};

fn report(n: u32, ok: bool, detail: String) {
    println!("criterion {n}: {} ({detail})", if ok { "PASS" } else { "FAIL" });
    assert!(ok, "criterion {n} failed: {detail}");
}

fn solid(s: Solid, pos: Position) -> Polytope {
    make_solid(&SolidSpec::new(s, pos)).unwrap()
}

fn marked(p: &Polytope) -> MarkedPolytope {
    annotate(p, &Tolerances::default())
}

fn outcome(p: &Polytope) -> Outcome {
    let tol = Tolerances::default();
    verify_surface_connected(&annotate(p, &tol), &tol).outcome
}

const METHODS: [(Method, Solid, usize, &[usize]); 8] = [
    (Method::Octa4Tet, Solid::Octahedron, 4, &[4, 4, 4, 4]),
    (Method::Octa2Hepta, Solid::Octahedron, 2, &[7, 7]),
    (Method::Tet2Tet, Solid::Tetrahedron, 2, &[4, 4]),
    (Method::Cubocta10Penta, Solid::Cuboctahedron, 10, &[5; 10]),
    (Method::Cubocta2Deca, Solid::Cuboctahedron, 2, &[10, 10]),
    (Method::TruncOcta4Octa, Solid::TruncatedOctahedron, 4, &[8, 8, 8, 8]),
    (Method::TruncCube2Deca, Solid::TruncatedCube, 2, &[10, 10]),
    (Method::TruncTet2Hepta, Solid::TruncatedTetrahedron, 2, &[7, 7]),
];

fn decomposition(m: Method) -> Decomposition {
    let s = m.solid();
    decompose(&SolidSpec::new(s, m.default_position()), m).unwrap()
}

fn all_pieces() -> Vec<Polytope> {
    METHODS.iter().flat_map(|(m, ..)| decomposition(*m).pieces).collect()
}

fn catalog() -> Vec<Polytope> {
    Solid::ALL
        .iter()
        .flat_map(|&s| s.positions().iter().map(move |&pos| solid(s, pos)))
        .collect()
}

#[test]
fn criterion_01_cube_and_octahedron_surfaces() {
    let start = Instant::now();
    let cube = outcome(&solid(Solid::Cube, Position::Canonical));
    let octa = solid(Solid::Octahedron, Position::Canonical);
    let mut ok = cube == Outcome::Connected && outcome(&octa) == Outcome::NotConnected;
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut bad = 0;
    for _ in 0..50 {
        if outcome(&octa.rotate(&Rotation::random(&mut rng))) != Outcome::NotConnected {
            bad += 1;
        }
    }
    ok &= bad == 0;
    let secs = start.elapsed().as_secs_f64();
    ok &= secs < 10.0;
    report(1, ok, format!("cube {cube:?}, octahedron rotations not NotConnected: {bad}/50, {secs:.2} s"));
}

#[test]
fn criterion_02_counterexamples() {
    let tol = Tolerances::default();
    let mut fails = Vec::new();

    let t = marked(&solid(Solid::SkewTetrahedron, Position::Canonical));
    if !(t.polytope.is_simple() && !is_rich(&t) && outcome(&t.polytope) == Outcome::NotConnected) {
        fails.push("skew tetrahedron");
    }

    let h = marked(&solid(Solid::HalfCuboctahedron, Position::Canonical));
    if !(is_rich(&h) && outcome(&h.polytope) == Outcome::Connected && !face_graph(&h).is_connected()) {
        fails.push("half cuboctahedron");
    }

    let s = marked(&solid(Solid::SimpleHeptahedron, Position::Canonical));
    let p = &s.polytope;
    if !(p.is_simple() && is_rich(&s) && face_graph(&s).is_connected() && outcome(p) == Outcome::NotConnected) {
        fails.push("heptahedron flags");
    }
    // Closure of v2 against the polyline v2 v7 v10 v5.
    let surface = Surface::new(&s).unwrap();
    let v = |l: &str| p.vertex_by_label(l).unwrap();
    let rs = surface.reach(SurfacePoint::Vertex(v("v2")), tol.max_fixpoint_iters);
    let path: Vec<Vec3> = ["v2", "v7", "v10", "v5"].iter().map(|l| p.vertex(v(l))).collect();
    let dist = |x: &Vec3| {
        path.windows(2)
            .map(|w| {
                let d = w[1] - w[0];
                let t = ((x - w[0]).dot(&d) / d.norm_squared()).clamp(0.0, 1.0);
                (w[0] + d * t - x).norm()
            })
            .fold(f64::INFINITY, f64::min)
    };
    let segs = surface.segments(&rs);
    let mut off: f64 = 0.0;
    for (a, b) in &segs {
        for k in 0..=8 {
            off = off.max(dist(&(a + (b - a) * (k as f64 / 8.0))));
        }
    }
    let mut missing = 0;
    for w in path.windows(2) {
        for k in 0..=20 {
            let x = w[0] + (w[1] - w[0]) * (k as f64 / 20.0);
            if !surface.contains(&rs, &locate(p, &x).unwrap()) {
                missing += 1;
            }
        }
    }
    let exact = rs.converged && rs.regions(&surface).is_empty() && !segs.is_empty() && off <= tol.eps_geom && missing == 0;
    if !exact {
        fails.push("heptahedron closure");
    }
    report(
        2,
        fails.is_empty(),
        format!("failures {fails:?}; closure off-path {off:.1e}, path samples missing {missing}"),
    );
}

#[test]
fn criterion_03_necessary_condition() {
    let mut checked = 0;
    let mut exceptions = Vec::new();
    for p in catalog().into_iter().chain(all_pieces()) {
        if !p.is_simple() || outcome(&p) != Outcome::Connected {
            continue;
        }
        checked += 1;
        let mp = marked(&p);
        if !(is_rich(&mp) && face_graph(&mp).is_connected()) {
            exceptions.push(p.name.clone());
        }
    }
    report(3, checked > 0 && exceptions.is_empty(), format!("{checked} simple connected surfaces, exceptions {exceptions:?}"));
}

#[test]
fn criterion_04_decompositions_certify() {
    let tol = Tolerances::default();
    let mut lines = Vec::new();
    let mut ok = true;
    for (m, s, count, faces) in METHODS {
        let d = decomposition(m);
        let c = certify(&d, &tol);
        let got: Vec<usize> = d.pieces.iter().map(Polytope::num_faces).collect();
        let good = m.solid() == s
            && c.verdict == CertificateVerdict::OrthogonallyDecomposable
            && d.pieces.len() == count
            && got == faces
            && c.partition.volume_defect < 1e-9
            && c.partition.max_overlap < 1e-9;
        ok &= good;
        lines.push(format!(
            "{m}: {} pieces, defect {:.1e}, overlap {:.1e}{}",
            d.pieces.len(),
            c.partition.volume_defect,
            c.partition.max_overlap,
            if good { "" } else { " BAD" }
        ));
    }
    report(4, ok, lines.join("; "));
}

fn face_by_labels(p: &Polytope, labels: &[&str]) -> usize {
    let mut want: Vec<&str> = labels.to_vec();
    want.sort_unstable();
    (0..p.num_faces())
        .find(|&f| {
            let mut have: Vec<&str> = p.face(f).iter().map(|&v| p.label(v)).collect();
            have.sort_unstable();
            have == want
        })
        .unwrap_or_else(|| panic!("{} has no face {labels:?}", p.name))
}

#[test]
fn criterion_05_mark_tables() {
    let mut fails = Vec::new();
    let xz = MarkSet::from_axes(&[0, 2]);
    let xy = MarkSet::from_axes(&[0, 1]);

    let hepta = &decomposition(Method::Octa2Hepta).pieces[0];
    let mp = marked(hepta);
    let table: [(&[&str], MarkSet); 7] = [
        (&["v2", "v7", "v4", "v8"], xz),
        (&["v2", "v5", "v7"], MarkSet::Y),
        (&["v4", "v5", "v7"], MarkSet::Y),
        (&["v2", "v3", "v5"], MarkSet::X),
        (&["v3", "v4", "v5"], MarkSet::X),
        (&["v2", "v3", "v8"], MarkSet::Y),
        (&["v3", "v4", "v8"], MarkSet::Y),
    ];
    for (i, (labels, m)) in table.iter().enumerate() {
        let got = mp.face_marks[face_by_labels(hepta, labels)];
        if got != *m {
            fails.push(format!("heptahedron F{i} {got}"));
        }
    }

    let deca = &decomposition(Method::Cubocta2Deca).pieces[0];
    let got = marked(deca).face_marks[face_by_labels(deca, &["v5", "v6", "v7", "v8"])];
    if got != xy {
        fails.push(format!("decahedron v5v6v7v8 {got}"));
    }

    let tc = &decomposition(Method::TruncCube2Deca).pieces[0];
    let mp = marked(tc);
    let square = face_by_labels(tc, &["v9", "v10", "v11", "v12"]);
    for f in 0..tc.num_faces() {
        let m = mp.face_marks[f];
        let good = match tc.face(f).len() {
            3 => m == MarkSet::X || m == MarkSet::Y,
            4 if f == square => m == xy,
            4 => m == MarkSet::Z,
            8 => m == xy,
            _ => false,
        };
        if !good {
            fails.push(format!("truncated-cube piece face {f} ({}-gon) {m}", tc.face(f).len()));
        }
    }
    report(5, fails.is_empty(), format!("mismatches {fails:?}"));
}

/// Dihedral angle in degrees across an edge between a `a`-gon and a `b`-gon.
fn dihedral_between(p: &Polytope, a: usize, b: usize) -> Vec<f64> {
    let mut out: Vec<f64> = (0..p.num_edges())
        .filter(|&e| {
            let [f, g] = p.edge_faces(e);
            let mut k = [p.face(f).len(), p.face(g).len()];
            k.sort_unstable();
            k == { let mut w = [a, b]; w.sort_unstable(); w }
        })
        .map(|e| p.dihedral_angle(e).to_degrees())
        .collect();
    out.sort_by(f64::total_cmp);
    out.dedup_by(|x, y| (*x - *y).abs() < 1e-6);
    out
}

#[test]
fn criterion_06_dihedral_angles() {
    let acos = |x: f64| x.acos().to_degrees();
    let a1 = acos(-(5f64.sqrt()) / 3.0);
    let a2 = acos(-(2.0f64 / 3.0).sqrt());
    let a3 = acos(-((5.0 + 2.0 * 5f64.sqrt()) / 15.0).sqrt());
    let a4 = acos(-((5.0 + 5f64.sqrt()) / 10.0).sqrt());
    let mut fails = Vec::new();
    for (closed, quoted) in [(a1, 138.19), (a2, 144.74), (a3, 142.62), (a4, 148.28)] {
        if (closed - quoted).abs() > 0.01 {
            fails.push(format!("closed form {closed:.4} vs {quoted}"));
        }
    }
    let cases: [(Solid, usize, usize, f64); 10] = [
        (Solid::Icosahedron, 3, 3, a1),
        (Solid::Rhombicuboctahedron, 3, 4, a2),
        (Solid::Icosidodecahedron, 3, 5, a3),
        (Solid::TruncatedDodecahedron, 3, 10, a3),
        (Solid::TruncatedIcosahedron, 5, 6, a3),
        (Solid::TruncatedIcosidodecahedron, 10, 6, a3),
        (Solid::TruncatedIcosidodecahedron, 10, 4, a4),
        (Solid::Rhombicosidodecahedron, 5, 4, a4),
        (Solid::SnubCube, 3, 4, 142.98),
        (Solid::SnubDodecahedron, 5, 3, 152.93),
    ];
    for (s, a, b, want) in cases {
        let got = dihedral_between(&solid(s, Position::Canonical), a, b);
        if got.len() != 1 || (got[0] - want).abs() > 0.01 {
            fails.push(format!("{s} {a}|{b}: {got:?} vs {want:.2}"));
        }
    }
    let snub_tt = dihedral_between(&solid(Solid::SnubCube, Position::Canonical), 3, 3);
    if snub_tt.len() != 1 || (snub_tt[0] - 153.23).abs() > 0.01 {
        fails.push(format!("snub cube 3|3: {snub_tt:?}"));
    }
    let expected = [
        Solid::Icosahedron,
        Solid::Rhombicuboctahedron,
        Solid::Icosidodecahedron,
        Solid::TruncatedDodecahedron,
        Solid::TruncatedIcosahedron,
        Solid::TruncatedIcosidodecahedron,
        Solid::Rhombicosidodecahedron,
        Solid::SnubCube,
        Solid::SnubDodecahedron,
    ];
    for s in Solid::ALL {
        for &pos in s.positions() {
            let fires = dihedral_criterion(&solid(s, pos)).is_some();
            if fires != expected.contains(&s) {
                fails.push(format!("criterion on {s} {pos}: {fires}"));
            }
        }
    }
    report(6, fails.is_empty(), format!("mismatches {fails:?}"));
}

#[test]
fn criterion_07_mark_feasibility() {
    let limits = SearchLimits::default();
    let eps = Tolerances::default().eps_parallel;
    let mut lines = Vec::new();
    let mut ok = true;

    let dodeca = solid(Solid::Dodecahedron, Position::Canonical);
    let t = Instant::now();
    let v = mark_feasibility(&dodeca, &face_star(&dodeca, 0), &limits, eps).unwrap();
    let good = v.is_infeasible() && t.elapsed().as_secs() < 60;
    ok &= good;
    let found = match &v.outcome {
        FeasibilityOutcome::Feasible { assignment, .. } => assignment
            .iter()
            .map(|(f, m)| format!("F{f}{m}"))
            .collect::<Vec<_>>()
            .join(" "),
        other => format!("{other:?}"),
    };
    let identity_marks_all = marked(&dodeca).face_marks.iter().all(|m| !m.is_empty());
    lines.push(format!(
        "dodecahedron star infeasible: {} [{found}], identity marks every face: {identity_marks_all}",
        v.is_infeasible()
    ));

    let tco = solid(Solid::TruncatedCuboctahedron, Position::Canonical);
    let oct = (0..tco.num_faces()).find(|&f| tco.face(f).len() == 8).unwrap();
    let t = Instant::now();
    let v = mark_feasibility(&tco, &face_star(&tco, oct), &limits, eps).unwrap();
    let good = v.is_infeasible() && t.elapsed().as_secs() < 60;
    ok &= good;
    lines.push(format!("truncated cuboctahedron octagon star infeasible: {good}"));

    for s in [Solid::Cube, Solid::Octahedron, Solid::TruncatedOctahedron] {
        let p = solid(s, Position::Canonical);
        let all: Vec<usize> = (0..p.num_faces()).collect();
        let f = mark_feasibility(&p, &all, &limits, eps).unwrap().is_feasible();
        ok &= f;
        lines.push(format!("{s} full set feasible: {f}"));
    }
    report(7, ok, lines.join("; "));
}

#[test]
fn criterion_08_rotation_search() {
    let mut lines = Vec::new();
    let mut ok = true;
    for s in [
        Solid::Cube,
        Solid::Octahedron,
        Solid::Cuboctahedron,
        Solid::TruncatedOctahedron,
        Solid::TruncatedCube,
        Solid::TruncatedTetrahedron,
    ] {
        let r = rotation_search(&solid(s, Position::Canonical), 1_000_000);
        ok &= r.residual < 1e-9;
        lines.push(format!("{s} {:.1e}", r.residual));
    }
    let r = rotation_search(&solid(Solid::Dodecahedron, Position::Canonical), 1_000_000);
    ok &= r.residual > 0.01;
    lines.push(format!("dodecahedron {:.1e} after {} evaluations", r.residual, r.evaluations));
    report(8, ok, lines.join("; "));
}

#[test]
fn criterion_09_raster_oracle() {
    let mut checked = 0;
    let mut disagree = Vec::new();
    for p in catalog().into_iter().chain(all_pieces()) {
        let raster = Raster::new(p.vertices(), p.faces(), 64.0).trace();
        let engine = outcome(&p);
        checked += 1;
        let agree = match engine {
            Outcome::Connected => raster.connected,
            Outcome::NotConnected => !raster.connected,
            Outcome::Inconclusive => false,
        };
        if !agree {
            disagree.push(format!("{} engine {engine:?} raster coverage {:.3}", p.name, raster.min_coverage));
        }
    }
    report(9, disagree.is_empty(), format!("{checked} surfaces, disagreements {disagree:?}"));
}

fn random_surface_point(p: &Polytope, rng: &mut ChaCha8Rng) -> Vec3 {
    let f = rng.gen_range(0..p.num_faces());
    let pts = p.face_points(f);
    match rng.gen_range(0..4) {
        0 => pts[rng.gen_range(0..pts.len())],
        1 => {
            let i = rng.gen_range(0..pts.len());
            let t: f64 = rng.gen();
            pts[i] + (pts[(i + 1) % pts.len()] - pts[i]) * t
        }
        _ => {
            let w: Vec<f64> = (0..pts.len()).map(|_| rng.gen::<f64>() + 0.05).collect();
            let s: f64 = w.iter().sum();
            pts.iter().zip(&w).map(|(x, k)| x * (k / s)).sum()
        }
    }
}

/// A point of the closure, chosen from its reached vertices, full faces or
/// segments.
fn point_in_closure(surface: &Surface, rs: &ReachSet, rng: &mut ChaCha8Rng) -> Option<Vec3> {
    let p = surface.polytope();
    let segs = surface.segments(rs);
    let full: Vec<usize> = (0..p.num_faces()).filter(|&f| rs.face_full[f]).collect();
    match rng.gen_range(0..3) {
        0 if !full.is_empty() => {
            let f = full[rng.gen_range(0..full.len())];
            let pts = p.face_points(f);
            let w: Vec<f64> = (0..pts.len()).map(|_| rng.gen::<f64>() + 0.05).collect();
            let s: f64 = w.iter().sum();
            Some(pts.iter().zip(&w).map(|(x, k)| x * (k / s)).sum())
        }
        1 if !segs.is_empty() => {
            let (a, b) = segs[rng.gen_range(0..segs.len())];
            Some(a + (b - a) * rng.gen::<f64>())
        }
        _ => {
            let vs = rs.reached_vertices();
            (!vs.is_empty()).then(|| p.vertex(vs[rng.gen_range(0..vs.len())]))
        }
    }
}

fn closure_subset(surface: &Surface, a: &ReachSet, b: &ReachSet) -> bool {
    let eps = surface.eps();
    let p = surface.polytope();
    (0..p.num_vertices()).all(|v| !a.vertices[v] || b.vertices[v])
        && (0..p.num_faces()).all(|f| !a.face_full[f] || b.face_full[f])
        && (0..p.num_faces()).all(|f| a.chords[f].iter().all(|(lo, hi)| b.chords[f].covers(lo, hi, eps)))
        && (0..p.num_edges()).all(|e| a.edges[e].iter().all(|(lo, hi)| b.edges[e].covers(lo, hi, eps)))
}

#[test]
fn criterion_10_property_suites() {
    let tol = Tolerances::default();
    let mut fails = Vec::new();

    // Mark equivariance under signed permutations.
    let perms = signed_permutations();
    let mut equi_bad = 0;
    for p in catalog() {
        let base = marked(&p);
        for m in &perms {
            let q = marked(&p.map_affine(m, &Vec3::zeros()));
            let faces_ok = (0..p.num_faces()).all(|f| q.face_marks[f] == base.face_marks[f].permuted(m));
            let edges_ok = (0..p.num_edges()).all(|e| q.edge_marks[e] == base.edge_marks[e].permuted(m));
            if !(faces_ok && edges_ok) {
                equi_bad += 1;
            }
        }
    }
    if equi_bad > 0 {
        fails.push(format!("equivariance failures {equi_bad}"));
    }

    // Volume conservation under random plane splits.
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let solids: Vec<Polytope> = catalog();
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let p = &solids[rng.gen_range(0..solids.len())];
        let p = p.rotate(&Rotation::random(&mut rng));
        let c = p.centroid();
        let n = Vec3::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5).normalize();
        let x = c + Vec3::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5) * 0.5;
        let (a, b) = split_by_plane(&p, &Plane::through(&x, &n).unwrap(), &tol);
        let v = a.map_or(0.0, |q| q.volume()) + b.map_or(0.0, |q| q.volume());
        worst = worst.max((v - p.volume()).abs() / p.volume());
    }
    if worst >= 1e-9 {
        fails.push(format!("split volume defect {worst:.1e}"));
    }

    // Reach symmetry and monotonicity.
    let mut subjects = vec![
        solid(Solid::SimpleHeptahedron, Position::Canonical),
        solid(Solid::HalfCuboctahedron, Position::Canonical),
        solid(Solid::Octahedron, Position::Aligned),
        solid(Solid::SkewTetrahedron, Position::Canonical),
        solid(Solid::Dodecahedron, Position::Canonical),
        solid(Solid::TruncatedCube, Position::Aligned),
    ];
    subjects.extend(decomposition(Method::Cubocta10Penta).pieces.into_iter().take(2));
    subjects.extend(decomposition(Method::TruncCube2Deca).pieces);
    let mut pairs = 0;
    let mut related = 0;
    let mut reach_bad = Vec::new();
    while pairs < 200 {
        let p = &subjects[pairs % subjects.len()];
        let mp = marked(p);
        let surface = Surface::new(&mp).unwrap();
        let x = locate(p, &random_surface_point(p, &mut rng)).unwrap();
        let cx = surface.reach(x, tol.max_fixpoint_iters);
        let yv = if rng.gen_bool(0.5) {
            point_in_closure(&surface, &cx, &mut rng)
        } else {
            None
        }
        .unwrap_or_else(|| random_surface_point(p, &mut rng));
        let y = locate(p, &yv).unwrap();
        let cy = surface.reach(y, tol.max_fixpoint_iters);
        pairs += 1;
        let y_in_x = surface.contains(&cx, &y);
        let x_in_y = surface.contains(&cy, &x);
        if y_in_x != x_in_y {
            reach_bad.push(format!("{} asymmetric", p.name));
        }
        if y_in_x {
            related += 1;
            if !(closure_subset(&surface, &cy, &cx) && closure_subset(&surface, &cx, &cy)) {
                reach_bad.push(format!("{} closures differ", p.name));
            }
        }
    }
    if !reach_bad.is_empty() {
        fails.push(format!("reach {reach_bad:?}"));
    }
    report(
        10,
        fails.is_empty(),
        format!(
            "{} rotations x {} solids, split defect {worst:.1e}, {pairs} seed pairs ({related} related), failures {fails:?}",
            perms.len(),
            solids.len()
        ),
    );
}
