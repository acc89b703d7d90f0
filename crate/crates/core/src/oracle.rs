//! Brute-force references for the closed-form kernels.
//!
//! The surface-charge integrals are evaluated directly by globally adaptive
//! quadrature on triangles: each leaf carries a 7-point degree-5 rule value
//! and the value of the same rule on its four midpoint children, and the leaf
//! with the largest disagreement is split next. Leaves that are large compared
//! to their distance from the evaluation point are split unconditionally, so a
//! narrow near-field peak cannot slip between sample points.
//!
//! Nothing here shares code with [`crate::kernel`] or [`crate::assembly`]; face
//! normals are oriented with their own centroid test.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::f64::consts::PI;

use crate::error::{GeometryError, OracleError};
use crate::linalg::Vec3;

const INV_4PI: f64 = 1.0 / (4.0 * PI);

/// Convergence controls for the adaptive surface quadrature.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadratureSpec {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_subdivisions: usize,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            rel_tol: 1e-10,
            abs_tol: 1e-15,
            max_subdivisions: 200_000,
        }
    }
}

impl QuadratureSpec {
    pub fn validate(&self) -> Result<(), OracleError> {
        if !(self.rel_tol > 0.0 && self.rel_tol.is_finite()) {
            return Err(OracleError::InvalidSpec("rel_tol must be positive"));
        }
        if !(self.abs_tol > 0.0 && self.abs_tol.is_finite()) {
            return Err(OracleError::InvalidSpec("abs_tol must be positive"));
        }
        if self.max_subdivisions < 1 {
            return Err(OracleError::InvalidSpec(
                "max_subdivisions must be at least 1",
            ));
        }
        Ok(())
    }

    pub fn with_rel_tol(self, rel_tol: f64) -> Self {
        Self { rel_tol, ..self }
    }
}

/// Magnetic scalar potential in amperes.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MagneticScalarPotential {
    pub value: f64,
}

/// A charged triangle. Its normal is the normalized `(a − c) × (b − c)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OracleFace {
    pub a: Vec3,
    pub b: Vec3,
    pub c: Vec3,
}

impl OracleFace {
    pub fn new(a: Vec3, b: Vec3, c: Vec3) -> Result<Self, GeometryError> {
        let n = (a - c).cross(b - c);
        let diam = a.distance(b).max(b.distance(c)).max(c.distance(a));
        if !(n.is_finite() && diam > 0.0) || n.norm() <= 1e-12 * diam * diam {
            return Err(GeometryError::CollinearTriangle {
                altitude: n.norm() / diam.max(f64::MIN_POSITIVE),
                edge: diam,
            });
        }
        Ok(Self { a, b, c })
    }

    pub fn normal(&self) -> Vec3 {
        (self.a - self.c).cross(self.b - self.c).normalized()
    }

    pub fn diameter(&self) -> f64 {
        self.a
            .distance(self.b)
            .max(self.b.distance(self.c))
            .max(self.c.distance(self.a))
    }

    /// Euclidean distance from `r` to the closed triangle.
    pub fn distance_to(&self, r: Vec3) -> f64 {
        let n = self.normal();
        let height = (r - self.a).dot(n);
        let proj = r - n * height;
        let inside = [(self.a, self.b), (self.b, self.c), (self.c, self.a)]
            .iter()
            .all(|&(p, q)| (q - p).cross(proj - p).dot(n) >= 0.0)
            || [(self.a, self.b), (self.b, self.c), (self.c, self.a)]
                .iter()
                .all(|&(p, q)| (q - p).cross(proj - p).dot(n) <= 0.0);
        if inside {
            return height.abs();
        }
        [(self.a, self.b), (self.b, self.c), (self.c, self.a)]
            .iter()
            .map(|&(p, q)| segment_distance(r, p, q))
            .fold(f64::INFINITY, f64::min)
    }
}

fn segment_distance(r: Vec3, p: Vec3, q: Vec3) -> f64 {
    let d = q - p;
    let t = ((r - p).dot(d) / d.norm_squared()).clamp(0.0, 1.0);
    r.distance(p + d * t)
}

// 7-point degree-5 rule on the triangle, barycentric coordinates.
const SQRT15: f64 = 3.872_983_346_207_417;
const RULE_A1: f64 = (6.0 - SQRT15) / 21.0;
const RULE_A2: f64 = (6.0 + SQRT15) / 21.0;
const RULE_W0: f64 = 9.0 / 40.0;
const RULE_W1: f64 = (155.0 - SQRT15) / 1200.0;
const RULE_W2: f64 = (155.0 + SQRT15) / 1200.0;

#[derive(Clone, Copy)]
struct Tri([Vec3; 3]);

impl Tri {
    fn area(&self) -> f64 {
        0.5 * (self.0[1] - self.0[0]).cross(self.0[2] - self.0[0]).norm()
    }

    fn centroid(&self) -> Vec3 {
        (self.0[0] + self.0[1] + self.0[2]) * (1.0 / 3.0)
    }

    fn diameter(&self) -> f64 {
        let [a, b, c] = self.0;
        a.distance(b).max(b.distance(c)).max(c.distance(a))
    }

    fn children(&self) -> [Tri; 4] {
        let [a, b, c] = self.0;
        let ab = (a + b) * 0.5;
        let bc = (b + c) * 0.5;
        let ca = (c + a) * 0.5;
        [
            Tri([a, ab, ca]),
            Tri([ab, b, bc]),
            Tri([ca, bc, c]),
            Tri([ab, bc, ca]),
        ]
    }

    fn rule<const N: usize>(&self, f: &impl Fn(Vec3) -> [f64; N]) -> [f64; N] {
        let [a, b, c] = self.0;
        let at = |u: f64, v: f64, w: f64| a * u + b * v + c * w;
        let mut acc = [0.0; N];
        let mut add = |p: Vec3, w: f64| {
            let v = f(p);
            for i in 0..N {
                acc[i] += w * v[i];
            }
        };
        add(self.centroid(), RULE_W0);
        for (alpha, w) in [(RULE_A1, RULE_W1), (RULE_A2, RULE_W2)] {
            let beta = 1.0 - 2.0 * alpha;
            add(at(beta, alpha, alpha), w);
            add(at(alpha, beta, alpha), w);
            add(at(alpha, alpha, beta), w);
        }
        let area = self.area();
        acc.map(|v| v * area)
    }
}

struct Leaf<const N: usize> {
    tri: Tri,
    children: [[f64; N]; 4],
    fine: [f64; N],
    err: f64,
    forced: bool,
}

#[derive(PartialEq)]
struct Key {
    forced: bool,
    err: f64,
    id: usize,
}

impl Eq for Key {}

impl Ord for Key {
    fn cmp(&self, o: &Self) -> Ordering {
        self.forced
            .cmp(&o.forced)
            .then(self.err.total_cmp(&o.err))
            .then(o.id.cmp(&self.id))
    }
}

impl PartialOrd for Key {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

fn max_abs<const N: usize>(v: &[f64; N]) -> f64 {
    v.iter().fold(0.0f64, |a, x| a.max(x.abs()))
}

fn make_leaf<const N: usize>(
    tri: Tri,
    coarse: [f64; N],
    r: Vec3,
    f: &impl Fn(Vec3) -> [f64; N],
) -> Leaf<N> {
    let kids = tri.children();
    let children = [
        kids[0].rule(f),
        kids[1].rule(f),
        kids[2].rule(f),
        kids[3].rule(f),
    ];
    let mut fine = [0.0; N];
    let mut err = 0.0f64;
    for i in 0..N {
        fine[i] = children.iter().map(|c| c[i]).sum();
        err = err.max((fine[i] - coarse[i]).abs());
    }
    let forced = tri.diameter() >= tri.centroid().distance(r);
    Leaf {
        tri,
        children,
        fine,
        err,
        forced,
    }
}

/// Globally adaptive integral of `f` over `face`; `r` is the evaluation point
/// the integrand is singular at, used for the near-field refinement rule.
fn integrate<const N: usize>(
    face: &OracleFace,
    r: Vec3,
    spec: &QuadratureSpec,
    f: impl Fn(Vec3) -> [f64; N],
) -> Result<[f64; N], OracleError> {
    spec.validate()?;
    let distance = face.distance_to(r);
    if distance <= 1e-12 * face.diameter() {
        return Err(OracleError::OnSurface { distance });
    }
    let root = Tri([face.a, face.b, face.c]);
    let mut leaves: Vec<Option<Leaf<N>>> = Vec::new();
    let mut heap = BinaryHeap::new();
    let push = |leaf: Leaf<N>, leaves: &mut Vec<Option<Leaf<N>>>, heap: &mut BinaryHeap<Key>| {
        let id = leaves.len();
        heap.push(Key {
            forced: leaf.forced,
            err: leaf.err,
            id,
        });
        leaves.push(Some(leaf));
    };
    let coarse = root.rule(&f);
    push(make_leaf(root, coarse, r, &f), &mut leaves, &mut heap);

    let mut subdivisions = 0;
    loop {
        let live = leaves.iter().flatten();
        let mut total = [0.0; N];
        let mut err_sum = 0.0;
        let mut any_forced = false;
        for leaf in live {
            for (t, f) in total.iter_mut().zip(leaf.fine) {
                *t += f;
            }
            err_sum += leaf.err;
            any_forced |= leaf.forced;
        }
        let target = spec.abs_tol.max(spec.rel_tol * max_abs(&total));
        if !any_forced && err_sum <= target {
            return Ok(total);
        }
        if subdivisions >= spec.max_subdivisions {
            return Err(OracleError::NotConverged {
                subdivisions,
                estimate: if any_forced { f64::INFINITY } else { err_sum },
                target,
            });
        }
        // split a batch of the worst leaves before re-summing
        let batch = (leaves.len() / 8).max(1);
        for _ in 0..batch {
            let Some(key) = heap.pop() else { break };
            let leaf = leaves[key.id].take().expect("heap refers to live leaves");
            for (child, value) in leaf.tri.children().into_iter().zip(leaf.children) {
                push(make_leaf(child, value, r, &f), &mut leaves, &mut heap);
            }
            subdivisions += 1;
        }
    }
}

/// Single-layer potential `(1/4π) ∫ (n̂·M) / ‖r − r'‖ dS'` of one face.
pub fn potential_quadrature(
    face: &OracleFace,
    m: Vec3,
    r: Vec3,
    spec: &QuadratureSpec,
) -> Result<MagneticScalarPotential, OracleError> {
    let sigma = face.normal().dot(m);
    if sigma == 0.0 {
        return Ok(MagneticScalarPotential { value: 0.0 });
    }
    let [value] = integrate(face, r, spec, |rp| [1.0 / r.distance(rp)])?;
    Ok(MagneticScalarPotential {
        value: sigma * INV_4PI * value,
    })
}

/// `H = (1/4π) ∫ (n̂·M) (r − r') / ‖r − r'‖³ dS'`, the kernel differentiated
/// analytically under the integral.
pub fn field_quadrature(
    face: &OracleFace,
    m: Vec3,
    r: Vec3,
    spec: &QuadratureSpec,
) -> Result<Vec3, OracleError> {
    let sigma = face.normal().dot(m);
    if sigma == 0.0 {
        return Ok(Vec3::ZERO);
    }
    let v = integrate(face, r, spec, |rp| {
        let d = r - rp;
        let inv = 1.0 / d.norm().powi(3);
        [d.x * inv, d.y * inv, d.z * inv]
    })?;
    Ok(Vec3::from(v) * (sigma * INV_4PI))
}

/// The four faces of a tetrahedron with normals pointing away from its
/// centroid.
pub fn outward_faces(v: [Vec3; 4]) -> Result<[OracleFace; 4], GeometryError> {
    let centroid = (v[0] + v[1] + v[2] + v[3]) * 0.25;
    let mut faces = Vec::with_capacity(4);
    for skip in 0..4 {
        let tri: Vec<Vec3> = (0..4).filter(|&i| i != skip).map(|i| v[i]).collect();
        let mut face = OracleFace::new(tri[0], tri[1], tri[2])?;
        let face_centre = (tri[0] + tri[1] + tri[2]) * (1.0 / 3.0);
        if face.normal().dot(face_centre - centroid) < 0.0 {
            face = OracleFace::new(tri[1], tri[0], tri[2])?;
        }
        faces.push(face);
    }
    Ok([faces[0], faces[1], faces[2], faces[3]])
}

/// Field of a uniformly magnetized tetrahedron by quadrature over its faces.
pub fn tet_field_quadrature(
    v: [Vec3; 4],
    m: Vec3,
    r: Vec3,
    spec: &QuadratureSpec,
) -> Result<Vec3, OracleError> {
    let mut h = Vec3::ZERO;
    for face in outward_faces(v)? {
        h += field_quadrature(&face, m, r, spec)?;
    }
    Ok(h)
}

/// Tensor of one face by three quadratures with `M` along each axis. Column
/// `j` is the field for `M = ê_j`.
pub fn triangle_tensor_quadrature(
    face: &OracleFace,
    r: Vec3,
    spec: &QuadratureSpec,
) -> Result<crate::linalg::Mat3, OracleError> {
    let cols = [Vec3::X, Vec3::Y, Vec3::Z].map(|m| field_quadrature(face, m, r, spec));
    let [c0, c1, c2] = cols;
    Ok(crate::linalg::Mat3::from_columns(c0?, c1?, c2?))
}

/// Point-dipole `H` of moment `moment` (A·m²) located at `center`.
pub fn dipole_field(moment: Vec3, center: Vec3, r: Vec3) -> Vec3 {
    let d = r - center;
    let dist = d.norm();
    let u = d * (1.0 / dist);
    (u * (3.0 * u.dot(moment)) - moment) * (INV_4PI / dist.powi(3))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit_face() -> OracleFace {
        OracleFace::new(Vec3::X, Vec3::Y, Vec3::ZERO).unwrap()
    }

    #[test]
    fn rule_integrates_quintics_exactly() {
        let tri = Tri([Vec3::ZERO, Vec3::X, Vec3::Y]);
        // ∫ x^a y^b over the unit right triangle = a! b! / (a + b + 2)!
        let fact = |n: u32| (1..=n).product::<u32>() as f64;
        for a in 0..=5u32 {
            for b in 0..=(5 - a) {
                let [v] = tri.rule(&|p: Vec3| [p.x.powi(a as i32) * p.y.powi(b as i32)]);
                let exact = fact(a) * fact(b) / fact(a + b + 2);
                assert!((v - exact).abs() < 1e-15, "x^{a} y^{b}: {v} vs {exact}");
            }
        }
    }

    #[test]
    fn in_plane_magnetization_has_no_potential() {
        let spec = QuadratureSpec::default();
        let phi = potential_quadrature(&unit_face(), Vec3::X, Vec3::new(0.2, 0.2, 0.5), &spec);
        assert_eq!(phi.unwrap().value, 0.0);
    }

    #[test]
    fn potential_scales_linearly_with_size() {
        let spec = QuadratureSpec::default();
        let r = Vec3::new(0.2, 0.3, 0.5);
        let s = 3.0;
        let big = OracleFace::new(Vec3::X * s, Vec3::Y * s, Vec3::ZERO).unwrap();
        let a = potential_quadrature(&unit_face(), Vec3::Z, r, &spec)
            .unwrap()
            .value;
        let b = potential_quadrature(&big, Vec3::Z, r * s, &spec)
            .unwrap()
            .value;
        assert!((b - s * a).abs() < 1e-9 * b.abs());
    }

    #[test]
    fn field_is_minus_gradient_of_potential() {
        let spec = QuadratureSpec::default().with_rel_tol(1e-12);
        let face = OracleFace::new(
            Vec3::new(0.1, 0.0, 0.2),
            Vec3::new(1.0, 0.3, -0.1),
            Vec3::new(0.2, 0.9, 0.0),
        )
        .unwrap();
        let m = Vec3::new(0.3, -0.4, 1.1);
        let r = Vec3::new(0.6, 0.5, 0.9);
        let h = field_quadrature(&face, m, r, &spec).unwrap();
        let step = 1e-4;
        let phi = |p: Vec3| potential_quadrature(&face, m, p, &spec).unwrap().value;
        let grad = Vec3::new(
            (phi(r + Vec3::X * step) - phi(r - Vec3::X * step)) / (2.0 * step),
            (phi(r + Vec3::Y * step) - phi(r - Vec3::Y * step)) / (2.0 * step),
            (phi(r + Vec3::Z * step) - phi(r - Vec3::Z * step)) / (2.0 * step),
        );
        assert!((h + grad).norm() < 1e-5 * h.norm(), "{h:?} vs {grad:?}");
    }

    #[test]
    fn flipping_magnetization_flips_field() {
        let spec = QuadratureSpec::default();
        let r = Vec3::new(0.7, -0.2, 0.3);
        let m = Vec3::new(0.1, 0.2, 0.9);
        let a = field_quadrature(&unit_face(), m, r, &spec).unwrap();
        let b = field_quadrature(&unit_face(), -m, r, &spec).unwrap();
        assert_eq!(a, -b);
    }

    #[test]
    fn halving_tolerance_is_self_consistent() {
        let r = Vec3::new(0.2, 0.2, 0.05);
        let mut previous: Option<Vec3> = None;
        for rel in [1e-6, 5e-7, 2.5e-7, 1.25e-7] {
            let spec = QuadratureSpec::default().with_rel_tol(rel);
            let h = field_quadrature(&unit_face(), Vec3::Z, r, &spec).unwrap();
            if let Some(prev) = previous {
                assert!((h - prev).max_abs() < 2.0 * rel * h.max_abs());
            }
            previous = Some(h);
        }
    }

    #[test]
    fn points_on_the_face_are_refused() {
        let spec = QuadratureSpec::default();
        let err = field_quadrature(&unit_face(), Vec3::Z, Vec3::new(0.2, 0.2, 0.0), &spec);
        assert!(matches!(err, Err(OracleError::OnSurface { .. })));
    }

    #[test]
    fn subdivision_budget_is_enforced() {
        let spec = QuadratureSpec {
            max_subdivisions: 3,
            ..QuadratureSpec::default()
        };
        let err = field_quadrature(&unit_face(), Vec3::Z, Vec3::new(0.2, 0.2, 1e-4), &spec);
        assert!(matches!(err, Err(OracleError::NotConverged { .. })));
        let bad = QuadratureSpec {
            rel_tol: 0.0,
            ..QuadratureSpec::default()
        };
        assert!(bad.validate().is_err());
    }

    #[test]
    fn axial_dipole() {
        let p = Vec3::new(0.0, 0.0, 2.0);
        let d = 3.0;
        let h = dipole_field(p, Vec3::ZERO, Vec3::Z * d);
        let expected = 2.0 * 2.0 / (4.0 * PI * d.powi(3));
        assert!((h.z - expected).abs() < 1e-15);
        assert!(h.x.abs() < 1e-18 && h.y.abs() < 1e-18);
        assert_eq!(dipole_field(Vec3::ZERO, Vec3::ZERO, Vec3::X), Vec3::ZERO);
    }

    #[test]
    fn distance_to_triangle() {
        let f = unit_face();
        assert!((f.distance_to(Vec3::new(0.2, 0.2, 0.5)) - 0.5).abs() < 1e-15);
        assert!((f.distance_to(Vec3::new(-1.0, 0.0, 0.0)) - 1.0).abs() < 1e-15);
        assert!((f.distance_to(Vec3::new(1.0, 1.0, 0.0)) - 0.5f64.sqrt()).abs() < 1e-15);
    }
}
