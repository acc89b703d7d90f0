#![allow(dead_code)]

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use tetfield::{Tetrahedron, Vec3};

pub fn rng(seed: u64) -> ChaCha8Rng {
    rand::SeedableRng::seed_from_u64(seed)
}

pub fn vec_in(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> Vec3 {
    Vec3::new(
        rng.gen_range(lo..hi),
        rng.gen_range(lo..hi),
        rng.gen_range(lo..hi),
    )
}

pub fn unit_vector(rng: &mut ChaCha8Rng) -> Vec3 {
    loop {
        let v = vec_in(rng, -1.0, 1.0);
        let n = v.norm();
        if n > 0.1 && n <= 1.0 {
            return v * (1.0 / n);
        }
    }
}

/// Random tetrahedron of reasonable shape: volume at least 1% of the cube of
/// its longest edge.
pub fn random_tet(rng: &mut ChaCha8Rng) -> Tetrahedron {
    let scale = 10f64.powf(rng.gen_range(-3.0..1.0));
    let offset = vec_in(rng, -5.0, 5.0) * scale;
    loop {
        let v = [0; 4].map(|_| vec_in(rng, -1.0, 1.0) * scale + offset);
        if let Ok(t) = Tetrahedron::from_array(v) {
            if t.volume() >= 0.01 * t.longest_edge().powi(3) {
                return t;
            }
        }
    }
}

/// Outward unit normals and a point on each face plane.
pub fn face_planes(tet: &Tetrahedron) -> Vec<(Vec3, Vec3)> {
    tet.outward_faces()
        .iter()
        .map(|[a, b, c]| ((*a - *c).cross(*b - *c).normalized(), *c))
        .collect()
}

/// Largest signed distance to the face planes; a lower bound on the distance
/// to the body for exterior points, minus the distance to the surface for
/// interior ones.
pub fn plane_distance(tet: &Tetrahedron, r: Vec3) -> f64 {
    face_planes(tet)
        .iter()
        .map(|(n, p)| n.dot(r - *p))
        .fold(f64::NEG_INFINITY, f64::max)
}

/// Interior point at least `margin × longest edge` from every face plane.
pub fn inside_point(rng: &mut ChaCha8Rng, tet: &Tetrahedron, margin: f64) -> Vec3 {
    let v = tet.vertices();
    loop {
        let w = [0; 4].map(|_| -rng.gen_range(1e-12..1.0f64).ln());
        let s: f64 = w.iter().sum();
        let p = (0..4).fold(Vec3::ZERO, |acc, i| acc + v[i] * (w[i] / s));
        if plane_distance(tet, p) < -margin * tet.longest_edge() {
            return p;
        }
    }
}

/// Exterior point within `reach × longest edge` of the centroid and at least
/// `margin × longest edge` away from the body.
pub fn outside_point(rng: &mut ChaCha8Rng, tet: &Tetrahedron, margin: f64, reach: f64) -> Vec3 {
    let l = tet.longest_edge();
    let c = tet.centroid();
    loop {
        let p = c + vec_in(rng, -reach, reach) * l;
        if plane_distance(tet, p) > margin * l {
            return p;
        }
    }
}

/// Random rotation matrix from a random unit quaternion.
pub fn random_rotation(rng: &mut ChaCha8Rng) -> tetfield::Mat3 {
    let (w, x, y, z) = loop {
        let q: [f64; 4] = [0; 4].map(|_| rng.gen_range(-1.0..1.0));
        let n = q.iter().map(|v| v * v).sum::<f64>().sqrt();
        if n > 0.1 && n <= 1.0 {
            break (q[0] / n, q[1] / n, q[2] / n, q[3] / n);
        }
    };
    tetfield::Mat3::from_rows([
        [
            1.0 - 2.0 * (y * y + z * z),
            2.0 * (x * y - w * z),
            2.0 * (x * z + w * y),
        ],
        [
            2.0 * (x * y + w * z),
            1.0 - 2.0 * (x * x + z * z),
            2.0 * (y * z - w * x),
        ],
        [
            2.0 * (x * z - w * y),
            2.0 * (y * z + w * x),
            1.0 - 2.0 * (x * x + y * y),
        ],
    ])
}
