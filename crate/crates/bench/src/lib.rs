//! Shared inputs for the criterion benchmarks.

use tetfield::fixtures::reference_tetrahedron;
use tetfield::Vec3;

/// Deterministic points spread over twice the bounding box of the reference
/// tetrahedron, generated with a fixed linear congruential sequence so the
/// benchmark inputs do not depend on an RNG crate version.
pub fn sample_points(n: usize) -> Vec<Vec3> {
    let verts = reference_tetrahedron().vertices();
    let centre = reference_tetrahedron().centroid();
    let half = verts
        .iter()
        .map(|v| (*v - centre).max_abs())
        .fold(0.0f64, f64::max)
        * 2.0;
    let mut state: u64 = 0x9E37_79B9_7F4A_7C15;
    let mut next = move || {
        state = state
            .wrapping_mul(6_364_136_223_846_793_005)
            .wrapping_add(1_442_695_040_888_963_407);
        (state >> 11) as f64 / (1u64 << 53) as f64 * 2.0 - 1.0
    };
    (0..n)
        .map(|_| centre + Vec3::new(next(), next(), next()) * half)
        .collect()
}
