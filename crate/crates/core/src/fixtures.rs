//! The reference tetrahedron used for verification and benchmarking.

use crate::assembly::MagnetizedTetrahedron;
use crate::geometry::Tetrahedron;
use crate::linalg::Vec3;

/// Vertices in millimeters.
pub const REFERENCE_VERTICES_MM: [[f64; 3]; 4] = [
    [2.5, 3.0, 1.0],
    [2.0, 1.0, 4.0],
    [1.5, 4.0, 3.0],
    [4.5, 5.0, 2.0],
];

/// Magnetization, A/m.
pub const REFERENCE_MAGNETIZATION: Vec3 = Vec3::new(0.32, 0.74, 0.89);

/// Interior point the line scans pass through, in meters.
pub const REFERENCE_POINT: Vec3 = Vec3::new(3e-3, 3e-3, 2.5e-3);

/// Axis range of the line scans, in meters.
pub const REFERENCE_SCAN_RANGE: (f64, f64) = (0.0, 6e-3);

pub fn reference_tetrahedron() -> Tetrahedron {
    Tetrahedron::from_array(REFERENCE_VERTICES_MM.map(|v| Vec3::from(v) * 1e-3))
        .expect("reference tetrahedron is valid")
}

pub fn reference_body() -> MagnetizedTetrahedron {
    MagnetizedTetrahedron::new(reference_tetrahedron(), REFERENCE_MAGNETIZATION)
}
