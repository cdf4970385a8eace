//! Obstructions to orthogonal decomposability: the dihedral criterion, the
//! mark-feasibility search, and a numeric rotation search.

pub mod dihedral;
pub mod feasibility;
pub mod search;

pub use dihedral::{dihedral_criterion, face_angles, is_rectangle, DihedralWitness};
pub use feasibility::{
    face_star, frame_exists, mark_feasibility, star_feasibility, FeasibilityOutcome,
    FeasibilityVerdict, FrameCheck, SearchLimits,
};
pub use search::{rotation_search, RotationSearch};
