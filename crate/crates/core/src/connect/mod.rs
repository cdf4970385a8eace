//! Orthogonal reachability on planar polygons and polytope surfaces.
//!
//! A segment of an orthogonal path on a convex surface lies in one closed
//! face, so reachability is carried by three kinds of moves: across a face
//! with two marks, along chords of a face with one mark, and along marked
//! edges. The closure of a seed is computed as per-face chord intervals and
//! per-edge parameter intervals iterated to a fixpoint.

pub mod intervals;
pub mod polygon;
pub mod reach;
pub mod verify;

pub use intervals::IntervalSet;
pub use polygon::{polygon_ortho_connected, PolygonVerdict};
pub use reach::{locate, surface_reach, FaceKind, FaceStatus, ReachSet, Surface, SurfacePoint};
pub use verify::{canonical_seeds, verify_surface_connected, Basis, Outcome, SurfaceVerdict};
