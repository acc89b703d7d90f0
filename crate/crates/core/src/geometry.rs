//! Vertex ordering, orientation and canonical-frame construction for triangles
//! and tetrahedra.
//!
//! Every triangular face is mapped onto a local frame in which it lies in the
//! `z = 0` plane with vertices `A' = (l, 0, 0)`, `B' = (0, h, 0)` and
//! `C' = (-k, 0, 0)`. The vertex at the largest interior angle is placed at `B`,
//! which keeps the foot of the altitude from `B` strictly between `C` and `A`,
//! so `h`, `k` and `l` are all positive.

use serde::{Deserialize, Serialize};

use crate::error::{GeometryError, ParameterError};
use crate::linalg::{Mat3, Vec3};

/// Relative tolerance used for all degeneracy and tie decisions.
pub const GEOMETRY_RTOL: f64 = 1e-12;

/// Three vertices labelled so that the interior angle at `b` is maximal.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OrderedTriangle {
    pub a: Vec3,
    pub b: Vec3,
    pub c: Vec3,
}

impl OrderedTriangle {
    pub fn vertices(&self) -> [Vec3; 3] {
        [self.a, self.b, self.c]
    }

    pub fn area(&self) -> f64 {
        0.5 * (self.a - self.c).cross(self.b - self.c).norm()
    }
}

/// Placement of a triangle's canonical local frame in global coordinates.
///
/// `p` maps local to global directions (its columns are the local unit axes),
/// `d` is the global position of the local origin.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FacePose {
    pub p: Mat3,
    pub d: Vec3,
}

impl FacePose {
    /// Global point to local coordinates, `Pᵀ (r − D)`.
    #[inline]
    pub fn to_local(&self, r: Vec3) -> Vec3 {
        self.p.transpose_mul_vec(r - self.d)
    }

    /// Local point to global coordinates, `P r' + D`.
    #[inline]
    pub fn to_global(&self, local: Vec3) -> Vec3 {
        self.p * local + self.d
    }

    /// Unit normal of the face, the local `z` axis.
    #[inline]
    pub fn normal(&self) -> Vec3 {
        self.p.column(2)
    }
}

/// Extents of the two right triangles a face splits into.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RightTriangleParams {
    pub h: f64,
    pub k: f64,
    pub l: f64,
}

impl RightTriangleParams {
    pub fn new(h: f64, k: f64, l: f64) -> Result<Self, ParameterError> {
        for (name, value) in [("h", h), ("k", k), ("l", l)] {
            if !(value.is_finite() && value > 0.0) {
                return Err(ParameterError::NonPositive { name, value });
            }
        }
        Ok(Self { h, k, l })
    }

    pub fn max_extent(&self) -> f64 {
        self.h.max(self.k).max(self.l)
    }

    pub fn scaled(&self, s: f64) -> Self {
        Self {
            h: self.h * s,
            k: self.k * s,
            l: self.l * s,
        }
    }
}

/// Four non-coplanar vertices.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tetrahedron {
    v: [Vec3; 4],
}

/// Result of a point-in-tetrahedron test.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Containment {
    Inside,
    Outside,
    Boundary,
}

impl Containment {
    pub fn as_str(self) -> &'static str {
        match self {
            Containment::Inside => "inside",
            Containment::Outside => "outside",
            Containment::Boundary => "boundary",
        }
    }
}

impl std::str::FromStr for Containment {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "inside" => Ok(Containment::Inside),
            "outside" => Ok(Containment::Outside),
            "boundary" => Ok(Containment::Boundary),
            other => Err(format!("unknown containment `{other}`")),
        }
    }
}

fn longest_edge(points: &[Vec3]) -> f64 {
    let mut longest = 0.0f64;
    for (i, p) in points.iter().enumerate() {
        for q in &points[i + 1..] {
            longest = longest.max(p.distance(*q));
        }
    }
    longest
}

fn check_triangle(a: Vec3, b: Vec3, c: Vec3) -> Result<(), GeometryError> {
    if !(a.is_finite() && b.is_finite() && c.is_finite()) {
        return Err(GeometryError::NonFinite);
    }
    let edge = longest_edge(&[a, b, c]);
    let twice_area = (a - c).cross(b - c).norm();
    // min altitude = 2·area / longest edge
    let altitude = if edge > 0.0 { twice_area / edge } else { 0.0 };
    if edge == 0.0 || altitude < GEOMETRY_RTOL * edge {
        return Err(GeometryError::CollinearTriangle { altitude, edge });
    }
    Ok(())
}

fn interior_angle(at: Vec3, p: Vec3, q: Vec3) -> f64 {
    let u = p - at;
    let v = q - at;
    u.cross(v).norm().atan2(u.dot(v))
}

/// Relabels `a, b, c` so the vertex at the largest interior angle sits in the
/// middle slot.
///
/// The relabelling is a cyclic rotation, so the orientation of the triple (the
/// direction of `(A − C) × (B − C)`) is preserved. Angles equal to within
/// `1e-12` rad resolve to the lowest input index.
pub fn order_largest_angle(a: Vec3, b: Vec3, c: Vec3) -> Result<OrderedTriangle, GeometryError> {
    check_triangle(a, b, c)?;
    let angles = [
        interior_angle(a, b, c),
        interior_angle(b, c, a),
        interior_angle(c, a, b),
    ];
    let mut best = 0;
    for i in 1..3 {
        if angles[i] > angles[best] + GEOMETRY_RTOL {
            best = i;
        }
    }
    Ok(match best {
        0 => OrderedTriangle { a: c, b: a, c: b },
        1 => OrderedTriangle { a, b, c },
        _ => OrderedTriangle { a: b, b: c, c: a },
    })
}

/// Builds the change of basis placing `t` in its canonical local frame.
///
/// Columns of `P` are `ê_x = (A − C)/‖A − C‖`, `ê_z` the normalized
/// `(A − C) × (B − C)` and `ê_y = ê_z × ê_x`. The origin `D` is the foot of the
/// altitude from `B`, computed from edge lengths (law of cosines) rather than
/// from the angle at `C`.
pub fn face_basis(t: &OrderedTriangle) -> Result<FacePose, GeometryError> {
    check_triangle(t.a, t.b, t.c)?;
    let ac = t.a - t.c;
    let bc = t.b - t.c;
    let ab = t.b - t.a;
    let ac2 = ac.norm_squared();
    let ex = ac * (1.0 / ac2.sqrt());
    let ez = ac.cross(bc).normalized();
    let ey = ez.cross(ex);
    let d = t.c + ac * ((ac2 + bc.norm_squared() - ab.norm_squared()) / (2.0 * ac2));
    Ok(FacePose {
        p: Mat3::from_columns(ex, ey, ez),
        d,
    })
}

/// Reads `h`, `k`, `l` off the local images of the vertices.
pub fn right_triangle_params(
    pose: &FacePose,
    t: &OrderedTriangle,
) -> Result<RightTriangleParams, GeometryError> {
    let l = pose.to_local(t.a).x;
    let k = -pose.to_local(t.c).x;
    let h = pose.to_local(t.b).y;
    let tol = GEOMETRY_RTOL * longest_edge(&t.vertices());
    if !(h > tol && k > tol && l > tol) {
        return Err(GeometryError::DegenerateFace { h, k, l });
    }
    Ok(RightTriangleParams { h, k, l })
}

/// Orders and places a face in one step.
pub fn place_face(
    a: Vec3,
    b: Vec3,
    c: Vec3,
) -> Result<(OrderedTriangle, FacePose, RightTriangleParams), GeometryError> {
    let t = order_largest_angle(a, b, c)?;
    let pose = face_basis(&t)?;
    let params = right_triangle_params(&pose, &t)?;
    Ok((t, pose, params))
}

/// Returns the face triple with its normal pointing away from `opposite`,
/// swapping the first and last vertex when the triple-product test is positive.
pub fn orient_outward(face: [Vec3; 3], opposite: Vec3) -> Result<[Vec3; 3], GeometryError> {
    let [va, vb, vc] = face;
    if !(va.is_finite() && vb.is_finite() && vc.is_finite() && opposite.is_finite()) {
        return Err(GeometryError::NonFinite);
    }
    let test = (va - vc).cross(vb - vc).dot(opposite - vc);
    let edge = longest_edge(&[va, vb, vc, opposite]);
    let volume = test.abs() / 6.0;
    if edge == 0.0 || volume < GEOMETRY_RTOL * edge.powi(3) {
        return Err(GeometryError::CoplanarTetrahedron { volume, edge });
    }
    Ok(if test > 0.0 { [vc, vb, va] } else { face })
}

impl Tetrahedron {
    pub fn new(v1: Vec3, v2: Vec3, v3: Vec3, v4: Vec3) -> Result<Self, GeometryError> {
        let v = [v1, v2, v3, v4];
        if !v.iter().all(|p| p.is_finite()) {
            return Err(GeometryError::NonFinite);
        }
        let edge = longest_edge(&v);
        let volume = signed_volume(v1, v2, v3, v4).abs();
        if edge == 0.0 || volume < GEOMETRY_RTOL * edge.powi(3) {
            return Err(GeometryError::CoplanarTetrahedron { volume, edge });
        }
        Ok(Self { v })
    }

    pub fn from_array(v: [Vec3; 4]) -> Result<Self, GeometryError> {
        Self::new(v[0], v[1], v[2], v[3])
    }

    pub fn vertices(&self) -> [Vec3; 4] {
        self.v
    }

    pub fn centroid(&self) -> Vec3 {
        (self.v[0] + self.v[1] + self.v[2] + self.v[3]) * 0.25
    }

    pub fn volume(&self) -> f64 {
        signed_volume(self.v[0], self.v[1], self.v[2], self.v[3]).abs()
    }

    pub fn longest_edge(&self) -> f64 {
        longest_edge(&self.v)
    }

    pub fn circumcenter(&self) -> Vec3 {
        let o = self.v[0];
        let a = self.v[1] - o;
        let b = self.v[2] - o;
        let c = self.v[3] - o;
        let num = b.cross(c) * a.norm_squared()
            + c.cross(a) * b.norm_squared()
            + a.cross(b) * c.norm_squared();
        o + num * (1.0 / (2.0 * a.dot(b.cross(c))))
    }

    pub fn circumradius(&self) -> f64 {
        self.circumcenter().distance(self.v[0])
    }

    /// The four faces with their opposite vertex, enumerated cyclically:
    /// `(v1 v2 v3 | v4)`, `(v4 v1 v2 | v3)`, `(v3 v4 v1 | v2)`, `(v2 v3 v4 | v1)`.
    pub fn faces(&self) -> [([Vec3; 3], Vec3); 4] {
        let [v1, v2, v3, v4] = self.v;
        [
            ([v1, v2, v3], v4),
            ([v4, v1, v2], v3),
            ([v3, v4, v1], v2),
            ([v2, v3, v4], v1),
        ]
    }

    /// Outward-oriented faces, in the order of [`Tetrahedron::faces`].
    pub fn outward_faces(&self) -> [[Vec3; 3]; 4] {
        self.faces().map(|(face, opposite)| {
            orient_outward(face, opposite).expect("validated tetrahedron has no coplanar face")
        })
    }

    pub fn scaled(&self, s: f64) -> Result<Self, GeometryError> {
        Self::from_array(self.v.map(|p| p * s))
    }

    pub fn mapped(&self, f: impl Fn(Vec3) -> Vec3) -> Result<Self, GeometryError> {
        Self::from_array(self.v.map(f))
    }
}

/// `((v1 − v4) × (v2 − v4)) · (v3 − v4) / 6`.
pub fn signed_volume(v1: Vec3, v2: Vec3, v3: Vec3, v4: Vec3) -> f64 {
    (v1 - v4).cross(v2 - v4).dot(v3 - v4) / 6.0
}

/// Classifies `r` from its signed distances to the four outward face planes.
pub fn contains(tet: &Tetrahedron, r: Vec3) -> Containment {
    let tol = GEOMETRY_RTOL * tet.longest_edge();
    let mut on_boundary = false;
    for [va, vb, vc] in tet.outward_faces() {
        let n = (va - vc).cross(vb - vc).normalized();
        let dist = n.dot(r - vc);
        if dist > tol {
            return Containment::Outside;
        }
        if dist >= -tol {
            on_boundary = true;
        }
    }
    if on_boundary {
        Containment::Boundary
    } else {
        Containment::Inside
    }
}
