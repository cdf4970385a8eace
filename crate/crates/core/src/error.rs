use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("degenerate input: {0}")]
    DegenerateInput(String),
    #[error("invalid polytope: {0}")]
    InvalidPolytope(String),
    #[error("matrix is not a rotation (orthogonality defect {defect:.3e}, det {det:.6})")]
    NotARotation { defect: f64, det: f64 },
    #[error("unknown solid `{0}`")]
    UnknownSolid(String),
    #[error("degenerate prism base: {0}")]
    DegenerateBase(String),
    #[error("polygon is not planar (max deviation {0:.3e})")]
    NonPlanar(f64),
    #[error("polygon is self-intersecting")]
    SelfIntersecting,
    #[error("seed point is not on the surface (distance {0:.3e})")]
    SeedOffSurface(f64),
    #[error("method mismatch: {0}")]
    MethodMismatch(String),
    #[error("no pair of perpendicular facing opposite edges: {0}")]
    NoPerpendicularFacingPair(String),
    #[error("face set of size {size} exceeds the configured bound {bound}")]
    FaceSetTooLarge { size: usize, bound: usize },
    #[error("invalid tolerances: {0}")]
    InvalidTolerances(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
