//! Exact rational polyhedron kernel.

pub mod affine;
pub mod bitset;
pub mod bruteforce;
pub mod dd;
pub mod face_lattice;
pub mod hrep;
pub mod lattice;
pub mod linalg;
pub mod lp;

pub use affine::{apply_affine, AffineMap};
pub use bruteforce::vertices_bruteforce;
pub use dd::vertices;
pub use face_lattice::{Face, FaceLattice};
pub use hrep::{Constraint, ConstraintKind, HRep, VRep};
pub use lattice::{
    count_lattice_points, ehrhart, is_integrally_closed, lattice_points, EhrhartData,
};
pub use lp::{Lp, LpResult};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GeometryError {
    #[error("polyhedron is empty")]
    EmptyPolyhedron,
    #[error("polyhedron contains a line")]
    NotPointed,
    #[error("polyhedron is unbounded")]
    Unbounded,
    #[error("operation requires a bounded polytope")]
    UnsupportedUnbounded,
    #[error("polytope has non-integral vertices")]
    NonLatticeVertices,
    #[error("affine map is singular")]
    SingularMap,
    #[error("lattice-point scan would visit {0} boxes")]
    TooManyPoints(u128),
    #[error("integer overflow in lattice-point scan")]
    Overflow,
    #[error("need at least {dim} dilations, got {max_dilation}")]
    InsufficientDilations { dim: i64, max_dilation: u32 },
    #[error("instance too large: {0}")]
    TooLarge(String),
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
}

/// A bounded polytope with both descriptions and its face lattice.
#[derive(Debug, Clone)]
pub struct Polytope {
    pub hrep: HRep,
    pub vrep: VRep,
    pub lattice: FaceLattice,
}

impl Polytope {
    pub fn new(hrep: HRep) -> Result<Polytope, GeometryError> {
        let vrep = vertices(&hrep)?;
        let lattice = FaceLattice::build(&hrep, &vrep)?;
        Ok(Polytope {
            hrep,
            vrep,
            lattice,
        })
    }

    pub fn dim(&self) -> i64 {
        self.lattice.dim()
    }

    pub fn f_vector(&self) -> Vec<usize> {
        self.lattice.f_vector()
    }
}
