//! Orthogonal connectedness of polyhedral surfaces and orthogonal
//! decomposability of convex polytopes.
//!
//! A polygonal path is *orthogonal* when each of its segments is parallel to
//! a coordinate axis. A set is orthogonally connected when any two of its
//! points are joined by an orthogonal path inside the set. This crate decides
//! that property for boundaries of convex polytopes, builds and certifies
//! partitions of Platonic and Archimedean solids into pieces with orthogonally
//! connected boundaries, and checks the obstructions that rule such
//! partitions out.
//!
//! Module map:
//! - [`geom`]: polytope kernel (hull, planes, volumes, dihedral angles, rotations).
//! - [`solids`]: catalog of Platonic/Archimedean solids and counterexample polytopes.
//! - [`marks`]: axis marks of faces and edges, richness, the face graph.
//! - [`connect`]: orthogonal reachability on polygons and polytope surfaces.
//! - [`decomp`]: decomposition constructions and their certification.
//! - [`nondecomp`]: dihedral criterion, mark-feasibility search, rotation search.
//! - [`io`]: JSON polytope schema, OBJ export, report formatting.

pub mod connect;
pub mod decomp;
pub mod error;
pub mod geom;
pub mod io;
pub mod marks;
pub mod nondecomp;
pub mod solids;
pub mod tol;

pub use error::{Error, Result};
pub use geom::{Plane, Polytope, Rotation, Vec3};
pub use tol::Tolerances;
