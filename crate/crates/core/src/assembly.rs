//! Demagnetization tensor and field of arbitrarily placed triangular faces and
//! of whole tetrahedra.
//!
//! A face contributes `N = P N' Pᵀ`, where the local tensor `N'` only has a
//! third column. That collapses to the outer product `(P n') ⊗ ê_z`, which is
//! what is evaluated here. The tensor depends on geometry alone, so
//! [`PreparedFace`] and [`PreparedTetrahedron`] keep the pose and extents
//! around for repeated evaluation.

use std::f64::consts::PI;

use crate::error::GeometryError;
use crate::geometry::{
    contains, place_face, Containment, FacePose, RightTriangleParams, Tetrahedron,
};
use crate::kernel::{local_tensor, LocalPoint};
use crate::linalg::{Mat3, Vec3};

/// Vacuum permeability, T·m/A.
pub const MU0: f64 = 4.0e-7 * PI;

/// A face with its canonical pose and local extents computed once.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PreparedFace {
    pub pose: FacePose,
    pub params: RightTriangleParams,
}

impl PreparedFace {
    /// The face normal is `(a − c) × (b − c)`, whatever vertex ends up at the
    /// largest angle.
    pub fn new(a: Vec3, b: Vec3, c: Vec3) -> Result<Self, GeometryError> {
        let (_, pose, params) = place_face(a, b, c)?;
        Ok(Self { pose, params })
    }

    /// Global field per unit normal magnetization, `P n'(Pᵀ (r − D))`.
    #[inline]
    pub fn column(&self, r: Vec3) -> Vec3 {
        let local = LocalPoint::from(self.pose.to_local(r));
        self.pose.p * local_tensor(local, &self.params).as_vec3()
    }

    #[inline]
    pub fn normal(&self) -> Vec3 {
        self.pose.normal()
    }

    pub fn tensor(&self, r: Vec3) -> Mat3 {
        self.column(r).outer(self.normal())
    }

    #[inline]
    pub fn field(&self, m: Vec3, r: Vec3) -> Vec3 {
        self.column(r) * self.normal().dot(m)
    }
}

/// Tensor contribution of the face `a, b, c` at `r`, so that
/// `H_face(r) = N · M`.
pub fn triangle_tensor(a: Vec3, b: Vec3, c: Vec3, r: Vec3) -> Result<Mat3, GeometryError> {
    Ok(PreparedFace::new(a, b, c)?.tensor(r))
}

/// `H` of the face `a, b, c` carrying magnetization `m`, in the units of `m`.
pub fn triangle_field(a: Vec3, b: Vec3, c: Vec3, m: Vec3, r: Vec3) -> Result<Vec3, GeometryError> {
    Ok(PreparedFace::new(a, b, c)?.field(m, r))
}

/// The four outward faces of a tetrahedron, ready for evaluation.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PreparedTetrahedron {
    pub tet: Tetrahedron,
    pub faces: [PreparedFace; 4],
}

impl PreparedTetrahedron {
    pub fn new(tet: &Tetrahedron) -> Result<Self, GeometryError> {
        let [f0, f1, f2, f3] = tet.outward_faces();
        let prep = |[a, b, c]: [Vec3; 3]| PreparedFace::new(a, b, c);
        Ok(Self {
            tet: *tet,
            faces: [prep(f0)?, prep(f1)?, prep(f2)?, prep(f3)?],
        })
    }

    pub fn tensor(&self, r: Vec3) -> Mat3 {
        let mut n = Mat3::ZERO;
        for face in &self.faces {
            n += face.tensor(r);
        }
        n
    }

    #[inline]
    pub fn field(&self, m: Vec3, r: Vec3) -> Vec3 {
        let mut h = Vec3::ZERO;
        for face in &self.faces {
            h += face.field(m, r);
        }
        h
    }
}

/// Total demagnetization tensor of a tetrahedron at `r`.
pub fn tet_tensor(tet: &Tetrahedron, r: Vec3) -> Result<Mat3, GeometryError> {
    Ok(PreparedTetrahedron::new(tet)?.tensor(r))
}

/// A tetrahedron carrying a uniform magnetization (A/m).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MagnetizedTetrahedron {
    pub tet: Tetrahedron,
    pub m: Vec3,
}

impl MagnetizedTetrahedron {
    pub fn new(tet: Tetrahedron, m: Vec3) -> Self {
        Self { tet, m }
    }

    /// Magnetic moment `M · V`.
    pub fn moment(&self) -> Vec3 {
        self.m * self.tet.volume()
    }
}

/// `H` (A/m) of a magnetized tetrahedron at `r`.
pub fn tet_field(mt: &MagnetizedTetrahedron, r: Vec3) -> Result<Vec3, GeometryError> {
    Ok(PreparedTetrahedron::new(&mt.tet)?.field(mt.m, r))
}

/// `B = μ₀ (H + M)` inside (and on the boundary of) the body, `μ₀ H` outside.
pub fn b_field(mt: &MagnetizedTetrahedron, r: Vec3) -> Result<Vec3, GeometryError> {
    let h = tet_field(mt, r)?;
    Ok(b_from_h(h, mt.m, contains(&mt.tet, r)))
}

/// Flux density from `H` given where the point sits relative to the body.
pub fn b_from_h(h: Vec3, m: Vec3, containment: Containment) -> Vec3 {
    match containment {
        Containment::Outside => h * MU0,
        Containment::Inside | Containment::Boundary => (h + m) * MU0,
    }
}
