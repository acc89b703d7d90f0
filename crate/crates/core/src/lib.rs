//! Exact stray and demagnetization field of uniformly magnetized triangular
//! faces and tetrahedra.
//!
//! The field of a uniformly magnetized body equals that of the surface charge
//! `σ = n̂ · M` on its boundary. Each triangular face is split into two right
//! triangles whose tensor components have closed forms ([`kernel`]); a change
//! of basis places an arbitrary face in that canonical frame ([`geometry`]),
//! and the four outward faces of a tetrahedron sum to its tensor
//! ([`assembly`]). [`oracle`] integrates the same charge numerically and is
//! used to check everything else.
//!
//! Conventions: `H = N · M`, lengths in meters, `M` and `H` in A/m, `B` in
//! tesla with `μ₀ = 4π × 10⁻⁷`. Inside a body `trace N = −1`.

pub mod assembly;
pub mod error;
pub mod fixtures;
pub mod geometry;
pub mod kernel;
pub mod linalg;
pub mod mesh;
pub mod oracle;
pub mod records;

pub use assembly::{
    b_field, tet_field, tet_tensor, triangle_field, triangle_tensor, MagnetizedTetrahedron,
    PreparedFace, PreparedTetrahedron, MU0,
};
pub use error::{GeometryError, OracleError, ParameterError};
pub use geometry::{
    contains, face_basis, order_largest_angle, orient_outward, right_triangle_params, Containment,
    FacePose, OrderedTriangle, RightTriangleParams, Tetrahedron,
};
pub use kernel::{local_tensor, LocalPoint, PartialTensor};
pub use linalg::{Mat3, Vec3};
pub use mesh::{evaluate, load_mesh, parse_mesh, Axis, EvalSet, FieldRecord, LengthUnit, TetMesh};
pub use oracle::{dipole_field, field_quadrature, potential_quadrature, QuadratureSpec};
