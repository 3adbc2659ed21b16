//! Finite-dimensional dual bodies: polytopes given by vertices and Euclidean
//! balls, support functions, hull membership, boundaries and (I)-generation.

mod body;
mod checks;
mod hull;
mod lp;

pub use body::{support_value, Cap, DualBody, GeneratingSet, SphereSample, SUBSET_TOL};
pub(crate) use checks::probe_directions;
pub use checks::{
    i_generates, is_boundary, BoundaryVerdict, Certainty, GenerationVerdict, ATTAIN_TOL,
    GENERATION_PROBES,
};
pub use hull::{extreme_points, EXTREME_TOL};
pub use lp::{conv_contains, hull_phase_one, HullSolution};

impl DualBody {
    /// The body with its vertex list reduced to extreme points; balls are returned unchanged.
    pub fn reduced(&self) -> crate::Result<DualBody> {
        match self {
            DualBody::VPolytope(vs) => Ok(DualBody::VPolytope(extreme_points(vs)?)),
            DualBody::Ball { .. } => Ok(self.clone()),
        }
    }
}
