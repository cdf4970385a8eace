//! `ortho` command-line tool.
//!
//! Exit status: 0 on success, 1 on a negative verdict, 2 on input errors.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use ortho_core::connect::{verify_surface_connected, Outcome, Surface, SurfacePoint};
use ortho_core::decomp::{certify, decompose, decompose_polytope, CertificateVerdict, Decomposition, Method};
use ortho_core::geom::Rotation;
use ortho_core::io;
use ortho_core::marks::{annotate, face_graph, necessary_condition_report};
use ortho_core::nondecomp::{dihedral_criterion, rotation_search, star_feasibility, SearchLimits};
use ortho_core::solids::{make_solid, Position, Solid, SolidSpec};
use ortho_core::{Error, Polytope, Result, Tolerances};

#[derive(Parser)]
#[command(name = "ortho", version, about = "Orthogonal connectedness and decomposability of convex polytopes")]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Subcommand)]
enum Verb {
    /// List catalog solids, their positions and decomposition methods.
    ListSolids(Common),
    /// Marks, richness, face graph and surface verdict.
    Analyze(Target),
    /// Build a decomposition and write its pieces.
    Decompose(Target),
    /// Build a decomposition and certify it.
    Certify(Target),
    /// Dihedral criterion and mark feasibility of face stars.
    CheckNondecomp(Target),
    /// Search for a rotation marking every face.
    SearchRotation(Target),
    /// Write the polytope (or decomposition pieces) as JSON or OBJ.
    Export(Target),
    /// Orthogonal reach closure of a seed point.
    Reach(Target),
}

#[derive(Args)]
struct Common {
    /// Override the parallelism tolerance (also ORTHO_TOL_PARALLEL).
    #[arg(long, global = true)]
    tol_parallel: Option<f64>,
    /// Output file or directory; stdout when absent.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
}

#[derive(Args)]
struct Target {
    /// Catalog solid name, or a path to a `.json` / `.obj` polytope.
    input: String,
    /// canonical, aligned or aligned-alt.
    #[arg(long)]
    position: Option<String>,
    #[arg(long)]
    method: Option<String>,
    /// Vertex label, or its 1-based number.
    #[arg(long, conflicts_with = "seed_face")]
    seed_vertex: Option<String>,
    /// Face index; the seed is the face centroid.
    #[arg(long)]
    seed_face: Option<usize>,
    /// Euler XYZ angles in degrees, "ax,ay,az", applied after positioning.
    #[arg(long, allow_hyphen_values = true)]
    rotate: Option<String>,
    /// Objective evaluations for search-rotation.
    #[arg(long, default_value_t = 100_000)]
    budget: u64,
    /// With reach: also write the closure segments as an OBJ line overlay.
    #[arg(long)]
    overlay: Option<PathBuf>,
    #[command(flatten)]
    common: Common,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Obj,
}

enum Status {
    Ok,
    Negative,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.verb) {
        Ok(Status::Ok) => ExitCode::SUCCESS,
        Ok(Status::Negative) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn tolerances(c: &Common) -> Result<Tolerances> {
    let t = Tolerances::from_env()?;
    let t = match c.tol_parallel {
        Some(eps) => t.with_parallel(eps),
        None => t,
    };
    t.validate()?;
    Ok(t)
}

fn emit(c: &Common, text: &str) -> Result<()> {
    match &c.out {
        Some(p) => fs::write(p, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn parse_rotation(s: &str) -> Result<Rotation> {
    let a: Vec<f64> = s
        .split(',')
        .map(|x| x.trim().parse::<f64>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| Error::Parse(format!("--rotate expects \"ax,ay,az\", got {s:?}")))?;
    if a.len() != 3 {
        return Err(Error::Parse(format!("--rotate expects three angles, got {s:?}")));
    }
    Ok(Rotation::from_euler_xyz_deg(a[0], a[1], a[2]))
}

fn is_file_input(s: &str) -> bool {
    s.ends_with(".json") || s.ends_with(".obj") || Path::new(s).is_file()
}

fn method_for(t: &Target, solid: Option<Solid>) -> Result<Method> {
    match (&t.method, solid) {
        (Some(m), _) => m.parse(),
        (None, Some(s)) => Method::for_solid(s)
            .first()
            .copied()
            .ok_or_else(|| Error::MethodMismatch(format!("no decomposition method for {s}"))),
        (None, None) => Err(Error::MethodMismatch("--method is required for file input".into())),
    }
}

fn position_for(t: &Target, default: Position) -> Result<Position> {
    t.position.as_deref().map_or(Ok(default), str::parse)
}

fn load(t: &Target, tol: &Tolerances) -> Result<Polytope> {
    let p = if is_file_input(&t.input) {
        if t.position.is_some() {
            return Err(Error::Parse("--position applies to catalog solids only".into()));
        }
        io::read_polytope(Path::new(&t.input), tol)?
    } else {
        let solid: Solid = t.input.parse()?;
        make_solid(&SolidSpec::new(solid, position_for(t, Position::Canonical)?))?
    };
    Ok(match &t.rotate {
        Some(r) => p.rotate(&parse_rotation(r)?),
        None => p,
    })
}

fn load_decomposition(t: &Target, tol: &Tolerances) -> Result<Decomposition> {
    if is_file_input(&t.input) {
        let p = load(t, tol)?;
        return decompose_polytope(&p, method_for(t, None)?, tol);
    }
    let solid: Solid = t.input.parse()?;
    let method = method_for(t, Some(solid))?;
    let spec = SolidSpec::new(solid, position_for(t, method.default_position())?);
    match &t.rotate {
        None => decompose(&spec, method),
        Some(r) => {
            let p = make_solid(&spec)?.rotate(&parse_rotation(r)?);
            decompose_polytope(&p, method, tol)
        }
    }
}

fn resolve_seed(p: &Polytope, t: &Target) -> Result<SurfacePoint> {
    if let Some(f) = t.seed_face {
        if f >= p.num_faces() {
            return Err(Error::Parse(format!("face {f} out of range")));
        }
        return Ok(SurfacePoint::Face {
            face: f,
            point: p.face_centroid(f),
        });
    }
    let Some(s) = &t.seed_vertex else {
        return Ok(SurfacePoint::Vertex(0));
    };
    if let Some(v) = p.vertex_by_label(s).or_else(|| p.vertex_by_label(&format!("v{s}"))) {
        return Ok(SurfacePoint::Vertex(v));
    }
    match s.parse::<usize>() {
        Ok(n) if (1..=p.num_vertices()).contains(&n) => Ok(SurfacePoint::Vertex(n - 1)),
        _ => Err(Error::Parse(format!("no vertex {s:?}"))),
    }
}

fn overlay_obj(p: &Polytope, segs: &[(ortho_core::Vec3, ortho_core::Vec3)]) -> String {
    let mut out = io::to_obj(&[p]);
    out.push_str("o closure\n");
    for (a, b) in segs {
        for v in [a, b] {
            out.push_str(&format!(
                "v {} {} {}\n",
                io::round_sig(v.x),
                io::round_sig(v.y),
                io::round_sig(v.z)
            ));
        }
        out.push_str("l -2 -1\n");
    }
    out
}

fn run(verb: Verb) -> Result<Status> {
    match verb {
        Verb::ListSolids(c) => {
            let list: Vec<Value> = Solid::ALL
                .iter()
                .map(|s| {
                    json!({
                        "name": s.name(),
                        "positions": s.positions().iter().map(|p| p.name()).collect::<Vec<_>>(),
                        "methods": Method::for_solid(*s).iter().map(|m| m.name()).collect::<Vec<_>>(),
                    })
                })
                .collect();
            emit(&c, &io::to_pretty(&Value::Array(list)))?;
            Ok(Status::Ok)
        }
        Verb::Analyze(t) => {
            let tol = tolerances(&t.common)?;
            let p = load(&t, &tol)?;
            let mp = annotate(&p, &tol);
            let report = necessary_condition_report(&mp);
            let graph = face_graph(&mp);
            let verdict = verify_surface_connected(&mp, &tol);
            emit(&t.common, &io::to_pretty(&io::analysis_json(&mp, &report, &graph, &verdict)?))?;
            Ok(if verdict.outcome == Outcome::Connected {
                Status::Ok
            } else {
                Status::Negative
            })
        }
        Verb::Decompose(t) => {
            let tol = tolerances(&t.common)?;
            let d = load_decomposition(&t, &tol)?;
            let obj = t.common.format == Format::Obj;
            match &t.common.out {
                Some(dir) => {
                    io::write_decomposition(&d, dir, obj)?;
                }
                None if obj => print!("{}", io::to_obj(&d.pieces.iter().collect::<Vec<_>>())),
                None => {
                    let names: Vec<String> = d.pieces.iter().map(|p| p.name.clone()).collect();
                    print!("{}", io::to_pretty(&io::manifest_json(&d, &names)));
                }
            }
            Ok(Status::Ok)
        }
        Verb::Certify(t) => {
            let tol = tolerances(&t.common)?;
            let d = load_decomposition(&t, &tol)?;
            let c = certify(&d, &tol);
            emit(&t.common, &io::to_pretty(&io::certificate_json(&d, &c)))?;
            Ok(match c.verdict {
                CertificateVerdict::OrthogonallyDecomposable => Status::Ok,
                CertificateVerdict::Failed(_) => Status::Negative,
            })
        }
        Verb::CheckNondecomp(t) => {
            let tol = tolerances(&t.common)?;
            let p = load(&t, &tol)?;
            let dihedral = dihedral_criterion(&p);
            let feas = star_feasibility(&p, &SearchLimits::default(), tol.eps_parallel)?;
            let obstructed = dihedral.is_some() || feas.is_infeasible();
            let v = json!({
                "name": p.name,
                "dihedral_witness": io::dihedral_json(&dihedral),
                "star_feasibility": io::feasibility_json(&p, &feas),
                "obstruction_found": obstructed,
            });
            emit(&t.common, &io::to_pretty(&v))?;
            Ok(if obstructed { Status::Negative } else { Status::Ok })
        }
        Verb::SearchRotation(t) => {
            let tol = tolerances(&t.common)?;
            let p = load(&t, &tol)?;
            let r = rotation_search(&p, t.budget);
            emit(&t.common, &io::to_pretty(&io::rotation_search_json(&p, &r)))?;
            Ok(Status::Ok)
        }
        Verb::Export(t) => {
            let tol = tolerances(&t.common)?;
            let obj = t.common.format == Format::Obj;
            let text = if t.method.is_some() {
                let d = load_decomposition(&t, &tol)?;
                if obj {
                    io::to_obj(&d.pieces.iter().collect::<Vec<_>>())
                } else {
                    io::to_pretty(&Value::Array(d.pieces.iter().map(io::polytope_to_json).collect()))
                }
            } else {
                let p = load(&t, &tol)?;
                if obj {
                    io::to_obj(&[&p])
                } else {
                    io::to_pretty(&io::polytope_to_json(&p))
                }
            };
            emit(&t.common, &text)?;
            Ok(Status::Ok)
        }
        Verb::Reach(t) => {
            let tol = tolerances(&t.common)?;
            let p = load(&t, &tol)?;
            let mp = annotate(&p, &tol);
            let surface = Surface::new(&mp)?;
            let rs = surface.reach(resolve_seed(&p, &t)?, tol.max_fixpoint_iters);
            if let Some(path) = &t.overlay {
                fs::write(path, overlay_obj(&p, &surface.segments(&rs)))?;
            }
            emit(&t.common, &io::to_pretty(&io::reach_json(&surface, &rs)))?;
            Ok(if surface.is_full(&rs) {
                Status::Ok
            } else {
                Status::Negative
            })
        }
    }
}
