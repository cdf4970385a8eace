//! Polytope files, OBJ meshes and JSON reports.
//!
//! Polytope JSON: `{"name": str, "vertices": [[x, y, z], ...],
//! "labels"?: [str, ...], "faces"?: [[i, j, k, ...], ...]}`. Without
//! `faces` the polytope is the convex hull of the vertices.
//!
//! Floats are written with at most 12 significant digits and object keys are
//! sorted, so equal inputs give byte-identical output.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use serde::Deserialize;
use serde_json::{json, Map, Value};

use crate::connect::{
    Basis, FaceKind, FaceStatus, ReachSet, Surface, SurfacePoint, SurfaceVerdict,
};
use crate::decomp::{Certificate, CertificateVerdict, Decomposition, PartitionReport};
use crate::error::{Error, Result};
use crate::geom::hull::build_polytope;
use crate::geom::{Polytope, Rotation, Vec3};
use crate::marks::{FaceGraph, MarkedPolytope, NecessaryConditionReport};
use crate::nondecomp::{DihedralWitness, FeasibilityOutcome, FeasibilityVerdict, RotationSearch};
use crate::tol::Tolerances;

const SIG_DIGITS: usize = 12;

/// Rounds to 12 significant digits; `-0` becomes `0`.
pub fn round_sig(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return if x == 0.0 { 0.0 } else { x };
    }
    let r: f64 = format!("{:.*e}", SIG_DIGITS - 1, x).parse().unwrap_or(x);
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

pub fn num(x: f64) -> Value {
    if x.is_finite() {
        json!(round_sig(x))
    } else {
        Value::String(x.to_string())
    }
}

pub fn vec3(v: &Vec3) -> Value {
    json!([num(v.x), num(v.y), num(v.z)])
}

fn rotation_json(r: &Rotation) -> Value {
    let m = r.matrix();
    Value::Array((0..3).map(|i| json!([num(m[(i, 0)]), num(m[(i, 1)]), num(m[(i, 2)])])).collect())
}

/// Pretty JSON with a trailing newline.
pub fn to_pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PolytopeFile {
    name: Option<String>,
    vertices: Vec<[f64; 3]>,
    labels: Option<Vec<String>>,
    faces: Option<Vec<Vec<usize>>>,
}

pub fn polytope_to_json(p: &Polytope) -> Value {
    json!({
        "name": p.name,
        "vertices": p.vertices().iter().map(vec3).collect::<Vec<_>>(),
        "labels": p.labels(),
        "faces": p.faces(),
    })
}

pub fn polytope_from_json(text: &str, tol: &Tolerances) -> Result<Polytope> {
    let file: PolytopeFile =
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("polytope JSON: {e}")))?;
    let name = file.name.unwrap_or_else(|| "polytope".to_string());
    let vertices: Vec<Vec3> = file.vertices.iter().map(|v| Vec3::new(v[0], v[1], v[2])).collect();
    if vertices.iter().any(|v| !v.iter().all(|c| c.is_finite())) {
        return Err(Error::Parse("non-finite vertex coordinate".into()));
    }
    if let Some(l) = &file.labels {
        if l.len() != vertices.len() {
            return Err(Error::Parse(format!(
                "{} labels for {} vertices",
                l.len(),
                vertices.len()
            )));
        }
    }
    match file.faces {
        Some(faces) => {
            if let Some(&bad) = faces.iter().flatten().find(|&&i| i >= vertices.len()) {
                return Err(Error::Parse(format!("face index {bad} out of range")));
            }
            Polytope::from_faces(name, vertices, file.labels, faces, tol)
        }
        None => build_polytope(name, &vertices, file.labels, tol),
    }
}

/// Wavefront text with one named object per polytope and global 1-based
/// vertex indices.
pub fn to_obj(objects: &[&Polytope]) -> String {
    let mut out = String::new();
    let mut base = 1;
    for p in objects {
        let _ = writeln!(out, "o {}", p.name.replace(char::is_whitespace, "_"));
        for v in p.vertices() {
            let _ = writeln!(out, "v {} {} {}", round_sig(v.x), round_sig(v.y), round_sig(v.z));
        }
        for f in p.faces() {
            let idx: Vec<String> = f.iter().map(|i| (i + base).to_string()).collect();
            let _ = writeln!(out, "f {}", idx.join(" "));
        }
        base += p.num_vertices();
    }
    out
}

/// Reads every object of a Wavefront file. Faces may use `i/t/n` syntax and
/// negative indices; texture and normal data are ignored.
pub fn polytopes_from_obj(text: &str, tol: &Tolerances) -> Result<Vec<Polytope>> {
    let mut verts: Vec<Vec3> = Vec::new();
    let mut objects: Vec<(String, Vec<Vec<usize>>)> = Vec::new();
    for (ln, line) in text.lines().enumerate() {
        let bad = |msg: &str| Error::Parse(format!("OBJ line {}: {msg}", ln + 1));
        let mut it = line.split_whitespace();
        match it.next() {
            Some("o") | Some("g") => {
                let name = it.collect::<Vec<_>>().join(" ");
                objects.push((name, Vec::new()));
            }
            Some("v") => {
                let c: Vec<f64> = it
                    .take(3)
                    .map(|s| s.parse::<f64>().map_err(|_| bad("bad coordinate")))
                    .collect::<Result<_>>()?;
                if c.len() != 3 {
                    return Err(bad("vertex needs three coordinates"));
                }
                verts.push(Vec3::new(c[0], c[1], c[2]));
            }
            Some("f") => {
                let mut face = Vec::new();
                for tok in it {
                    let i: i64 = tok
                        .split('/')
                        .next()
                        .and_then(|s| s.parse().ok())
                        .ok_or_else(|| bad("bad face index"))?;
                    let idx = if i < 0 { verts.len() as i64 + i } else { i - 1 };
                    if idx < 0 || idx as usize >= verts.len() {
                        return Err(bad("face index out of range"));
                    }
                    face.push(idx as usize);
                }
                if objects.is_empty() {
                    objects.push(("polytope".into(), Vec::new()));
                }
                objects.last_mut().unwrap().1.push(face);
            }
            _ => {}
        }
    }
    let mut out = Vec::new();
    for (name, faces) in objects.into_iter().filter(|(_, f)| !f.is_empty()) {
        // Keep the used vertices in file order.
        let mut used: Vec<usize> = faces.iter().flatten().copied().collect();
        used.sort_unstable();
        used.dedup();
        let mut map = vec![usize::MAX; verts.len()];
        for (k, &i) in used.iter().enumerate() {
            map[i] = k;
        }
        let vs: Vec<Vec3> = used.iter().map(|&i| verts[i]).collect();
        let faces: Vec<Vec<usize>> =
            faces.into_iter().map(|f| f.into_iter().map(|i| map[i]).collect()).collect();
        out.push(Polytope::from_faces(name, vs, None, faces, tol)?);
    }
    if out.is_empty() {
        return Err(Error::Parse("OBJ file has no faces".into()));
    }
    Ok(out)
}

/// Loads a polytope from `.json` or `.obj` (first object).
pub fn read_polytope(path: &Path, tol: &Tolerances) -> Result<Polytope> {
    let text = fs::read_to_string(path)?;
    match path.extension().and_then(|e| e.to_str()) {
        Some("obj") => Ok(polytopes_from_obj(&text, tol)?.remove(0)),
        _ => polytope_from_json(&text, tol),
    }
}

fn seed_json(p: &Polytope, s: &SurfacePoint) -> Value {
    match s {
        SurfacePoint::Vertex(v) => json!({"vertex": v, "label": p.label(*v), "position": vec3(&p.vertex(*v))}),
        SurfacePoint::Edge { edge, s: t } => {
            json!({"edge": edge, "s": num(*t), "position": vec3(&s.position(p))})
        }
        SurfacePoint::Face { face, point } => json!({"face": face, "position": vec3(point)}),
    }
}

fn face_status_name(s: FaceStatus) -> &'static str {
    match s {
        FaceStatus::Untouched => "untouched",
        FaceStatus::Partial => "partial",
        FaceStatus::Full => "full",
    }
}

pub fn reach_json(surface: &Surface, rs: &ReachSet) -> Value {
    let p = surface.polytope();
    let faces: Vec<Value> = (0..p.num_faces())
        .map(|f| {
            let mut m = Map::new();
            m.insert("face".into(), json!(f));
            m.insert("status".into(), json!(face_status_name(rs.face_status(surface, f))));
            if let FaceKind::Chord { .. } = surface.kinds[f] {
                let iv: Vec<Value> = rs.chords[f].iter().map(|(a, b)| json!([num(a), num(b)])).collect();
                m.insert("chords".into(), Value::Array(iv));
            }
            Value::Object(m)
        })
        .collect();
    let edges: Vec<Value> = (0..p.num_edges())
        .filter(|&e| !rs.edges[e].is_empty())
        .map(|e| {
            let iv: Vec<Value> = rs.edges[e].iter().map(|(a, b)| json!([num(a), num(b)])).collect();
            json!({"edge": e, "intervals": iv})
        })
        .collect();
    let segments: Vec<Value> = surface
        .segments(rs)
        .iter()
        .map(|(a, b)| json!([vec3(a), vec3(b)]))
        .collect();
    json!({
        "seed": seed_json(p, &rs.seed),
        "full": surface.is_full(rs),
        "converged": rs.converged,
        "iterations": rs.iterations,
        "extent": num(surface.extent(rs)),
        "vertices": rs.reached_vertices().iter().map(|&v| p.label(v)).collect::<Vec<_>>(),
        "faces": faces,
        "edges": edges,
        "regions": rs.regions(surface),
        "segments": segments,
    })
}

fn basis_json(b: &Basis) -> Value {
    match b {
        Basis::UnmarkedFace(f) => json!({"unmarked_face": f}),
        Basis::NoTwoMarkFace => json!("no_two_mark_face"),
        Basis::Closure => json!("closure"),
    }
}

pub fn surface_verdict_json(mp: &MarkedPolytope, v: &SurfaceVerdict) -> Result<Value> {
    let surface = Surface::new(mp)?;
    Ok(json!({
        "outcome": v.outcome.name(),
        "basis": basis_json(&v.basis),
        "iterations": v.iterations,
        "witness": reach_json(&surface, &v.witness),
    }))
}

pub fn analysis_json(
    mp: &MarkedPolytope,
    report: &NecessaryConditionReport,
    graph: &FaceGraph,
    verdict: &SurfaceVerdict,
) -> Result<Value> {
    let p = &mp.polytope;
    let faces: Vec<Value> = (0..p.num_faces())
        .map(|f| {
            json!({
                "face": f,
                "vertices": p.face(f).iter().map(|&v| p.label(v)).collect::<Vec<_>>(),
                "normal": vec3(&p.face_plane(f).normal),
                "marks": mp.face_mark(f).to_letters(),
            })
        })
        .collect();
    let edges: Vec<Value> = (0..p.num_edges())
        .filter(|&e| !mp.edge_mark(e).is_empty())
        .map(|e| {
            let [a, b] = p.edge(e);
            json!({"edge": [p.label(a), p.label(b)], "marks": mp.edge_mark(e).to_letters()})
        })
        .collect();
    Ok(json!({
        "name": p.name,
        "counts": {"vertices": p.num_vertices(), "edges": p.num_edges(), "faces": p.num_faces()},
        "simple": report.simple,
        "rich": report.rich,
        "graph_connected": report.graph_connected,
        "graph_components": graph.components(),
        "necessary_condition": {"applicable": report.applicable, "pass": report.pass},
        "faces": faces,
        "marked_edges": edges,
        "surface": surface_verdict_json(mp, verdict)?,
    }))
}

pub fn partition_json(r: &PartitionReport) -> Value {
    json!({
        "parent_volume": num(r.parent_volume),
        "piece_volumes": r.piece_volumes.iter().map(|&v| num(v)).collect::<Vec<_>>(),
        "volume_defect": num(r.volume_defect),
        "max_overlap": num(r.max_overlap),
        "containment_violations": r.containment_violations.iter()
            .map(|(i, l, d)| json!({"piece": i, "vertex": l, "distance": num(*d)}))
            .collect::<Vec<_>>(),
        "pass": r.pass,
    })
}

pub fn certificate_json(d: &Decomposition, c: &Certificate) -> Value {
    let (verdict, reason) = match &c.verdict {
        CertificateVerdict::OrthogonallyDecomposable => ("OrthogonallyDecomposable", Value::Null),
        CertificateVerdict::Failed(r) => ("Failed", json!(r)),
    };
    let pieces: Vec<Value> = d
        .pieces
        .iter()
        .zip(&c.piece_verdicts)
        .map(|(p, v)| {
            json!({
                "name": p.name,
                "faces": p.num_faces(),
                "outcome": v.outcome.name(),
                "basis": basis_json(&v.basis),
            })
        })
        .collect();
    json!({
        "parent": d.parent.name,
        "method": d.method.name(),
        "verdict": verdict,
        "reason": reason,
        "partition": partition_json(&c.partition),
        "pieces": pieces,
    })
}

pub fn manifest_json(d: &Decomposition, files: &[String]) -> Value {
    json!({
        "parent": d.parent.name,
        "method": d.method.name(),
        "pieces": d.pieces.iter().zip(files)
            .map(|(p, f)| json!({"name": p.name, "file": f, "faces": p.num_faces(), "volume": num(p.volume())}))
            .collect::<Vec<_>>(),
        "cut_planes": d.cut_planes.iter()
            .map(|pl| json!({"normal": vec3(&pl.normal), "offset": num(pl.offset)}))
            .collect::<Vec<_>>(),
        "aux_points": d.aux_points.iter().map(|(l, p)| json!({"label": l, "position": vec3(p)})).collect::<Vec<_>>(),
        "normalization": d.normalization.as_ref()
            .map(|(r, t)| json!({"rotation": rotation_json(r), "translation": vec3(t)})),
    })
}

/// Writes one file per piece plus `manifest.json` into `dir`.
pub fn write_decomposition(d: &Decomposition, dir: &Path, obj: bool) -> Result<Vec<String>> {
    fs::create_dir_all(dir)?;
    let mut files = Vec::new();
    for (i, p) in d.pieces.iter().enumerate() {
        let file = if obj {
            format!("piece-{i:02}.obj")
        } else {
            format!("piece-{i:02}.json")
        };
        let body = if obj {
            to_obj(&[p])
        } else {
            to_pretty(&polytope_to_json(p))
        };
        fs::write(dir.join(&file), body)?;
        files.push(file);
    }
    fs::write(dir.join("manifest.json"), to_pretty(&manifest_json(d, &files)))?;
    Ok(files)
}

pub fn feasibility_json(p: &Polytope, v: &FeasibilityVerdict) -> Value {
    let outcome = match &v.outcome {
        FeasibilityOutcome::Infeasible { nodes, min_margin } => {
            json!({"result": "Infeasible", "nodes": nodes, "min_margin": num(*min_margin)})
        }
        FeasibilityOutcome::Feasible { assignment, rotation, nodes } => json!({
            "result": "Feasible",
            "nodes": nodes,
            "assignment": assignment.iter().map(|(f, m)| json!({"face": f, "marks": m.to_letters()})).collect::<Vec<_>>(),
            "rotation": rotation_json(rotation),
        }),
        FeasibilityOutcome::Inconclusive { nodes } => json!({"result": "Inconclusive", "nodes": nodes}),
    };
    json!({"name": p.name, "face_set": v.face_set, "outcome": outcome})
}

pub fn dihedral_json(w: &Option<DihedralWitness>) -> Value {
    match w {
        None => Value::Null,
        Some(w) => json!({
            "face": w.face,
            "is_rectangle": w.is_rectangle,
            "angles_deg": w.angles.iter().map(|(g, a)| json!({"neighbour": g, "angle": num(a.to_degrees())})).collect::<Vec<_>>(),
        }),
    }
}

pub fn rotation_search_json(p: &Polytope, r: &RotationSearch) -> Value {
    json!({
        "name": p.name,
        "residual": num(r.residual),
        "evaluations": r.evaluations,
        "rotation": rotation_json(&r.rotation),
    })
}
