//! Closed-form tensor components of a uniformly charged right triangle in its
//! local frame.
//!
//! The reference triangle (the "l-triangle") has vertices `(0, 0, 0)`,
//! `(l, 0, 0)` and `(0, h, 0)` and carries unit surface charge with normal
//! `+z`. A face in canonical position also contains the mirrored "k-triangle"
//! `(0, 0, 0)`, `(-k, 0, 0)`, `(0, h, 0)`. The partial tensor returned here is
//! the third column of the local demagnetization tensor: with `H = N M` and
//! only `M_z` carrying charge, `H = (n_xz, n_yz, n_zz) · M_z`.
//!
//! The antiderivatives are expressed through inverse hyperbolic tangents of
//! ratios `num / den` with `den ≥ |num|`. Near edges that ratio approaches one
//! and `atanh` loses all precision, so every such ratio is evaluated together
//! with the exact gap `den² − num²`, which each kernel knows in closed form.

use std::f64::consts::PI;

use crate::error::ParameterError;
use crate::geometry::RightTriangleParams;
use crate::linalg::Vec3;

const INV_4PI: f64 = 1.0 / (4.0 * PI);

/// Relative offset applied to evaluation points lying in (or numerically on)
/// the face plane.
pub const Z_GUARD_RTOL: f64 = 1e-9;

/// Largest ratio magnitude passed to `atanh` when the exact gap vanishes.
const ATANH_CLAMP: f64 = 1.0 - 1e-15;

/// Evaluation point in a face's local frame.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LocalPoint {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl LocalPoint {
    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }

    pub fn mirrored(self) -> Self {
        Self::new(-self.x, self.y, self.z)
    }

    pub fn scaled(self, s: f64) -> Self {
        Self::new(self.x * s, self.y * s, self.z * s)
    }
}

impl From<Vec3> for LocalPoint {
    fn from(v: Vec3) -> Self {
        Self::new(v.x, v.y, v.z)
    }
}

/// Non-zero column of the local tensor of one face.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct PartialTensor {
    pub n_xz: f64,
    pub n_yz: f64,
    pub n_zz: f64,
}

impl PartialTensor {
    pub fn as_vec3(&self) -> Vec3 {
        Vec3::new(self.n_xz, self.n_yz, self.n_zz)
    }
}

impl std::ops::Add for PartialTensor {
    type Output = PartialTensor;
    fn add(self, o: PartialTensor) -> PartialTensor {
        PartialTensor {
            n_xz: self.n_xz + o.n_xz,
            n_yz: self.n_yz + o.n_yz,
            n_zz: self.n_zz + o.n_zz,
        }
    }
}

/// `atanh(num / den)` given `gap = den² − num²`, computed independently.
#[inline]
fn atanh_ratio(num: f64, den: f64, gap: f64) -> f64 {
    let a = num.abs();
    if a <= 0.5 * den {
        return (num / den).atanh();
    }
    if gap > 0.0 {
        ((den + a) / gap.sqrt()).ln().copysign(num)
    } else {
        ATANH_CLAMP.atanh().copysign(num)
    }
}

// --- the six antiderivative kernels, transcribed term by term -------------

/// Hypotenuse term of `n_xz` at integration limit `yp` (the `F` function).
pub fn xz_hypotenuse_term(x: f64, y: f64, z: f64, yp: f64, h: f64, l: f64) -> f64 {
    let s2 = h * h + l * l;
    let s = s2.sqrt();
    let stretch = 1.0 + l * l / (h * h);
    let c = l * l - l * x + h * y;
    let num = c - h * yp * stretch;
    let den = s * ((x - l).powi(2) + y * y - 2.0 * c * yp / h + yp * yp * stretch + z * z).sqrt();
    let gap = (h * (l - x) - l * y).powi(2) + s2 * z * z;
    h / s * atanh_ratio(num, den, gap)
}

/// Leg term of `n_xz` at integration limit `yp` (the `G` function).
pub fn xz_leg_term(x: f64, y: f64, z: f64, yp: f64) -> f64 {
    let dy = y - yp;
    let gap = x * x + z * z;
    atanh_ratio(dy, (gap + dy * dy).sqrt(), gap)
}

/// Hypotenuse term of `n_yz` at integration limit `xp` (the `K` function).
pub fn yz_hypotenuse_term(x: f64, y: f64, z: f64, xp: f64, h: f64, l: f64) -> f64 {
    let s2 = h * h + l * l;
    let s = s2.sqrt();
    let stretch = 1.0 + h * h / (l * l);
    let c = h * h + l * x - h * y;
    let num = c - l * xp * stretch;
    let den = s * ((y - h).powi(2) + x * x - 2.0 * xp * c / l + xp * xp * stretch + z * z).sqrt();
    let gap = (l * (h - y) - h * x).powi(2) + s2 * z * z;
    l / s * atanh_ratio(num, den, gap)
}

/// Leg term of `n_yz` at integration limit `xp` (the `L` function).
pub fn yz_leg_term(x: f64, y: f64, z: f64, xp: f64) -> f64 {
    let dx = x - xp;
    let gap = y * y + z * z;
    atanh_ratio(dx, (gap + dx * dx).sqrt(), gap)
}

/// Hypotenuse term of `n_zz` at integration limit `xp` (the `P` function).
///
/// At `z = 0` the ratio is `±∞` and the term is `±π/2`.
pub fn zz_hypotenuse_term(x: f64, y: f64, z: f64, xp: f64, h: f64, l: f64) -> f64 {
    let num = x * (h - y) - xp * (h * (1.0 - x / l) - y) - h * (x * x + z * z) / l;
    let den = z
        * ((y - h).powi(2) + x * x + xp * xp * (1.0 + h * h / (l * l))
            - 2.0 * xp * (h * h + l * x - h * y) / l
            + z * z)
            .sqrt();
    (num / den).atan()
}

/// Leg term of `n_zz` at integration limit `xp` (the `Q` function).
pub fn zz_leg_term(x: f64, y: f64, z: f64, xp: f64) -> f64 {
    let dx = x - xp;
    -((dx * y) / (z * (dx * dx + y * y + z * z).sqrt())).atan()
}

// --- right-triangle components ---------------------------------------------

fn check(name: &'static str, value: f64) -> Result<(), ParameterError> {
    if value.is_finite() && value > 0.0 {
        Ok(())
    } else {
        Err(ParameterError::NonPositive { name, value })
    }
}

/// `n_xz` of the l-triangle. No singularity guard is applied.
pub fn n_xz_l(p: LocalPoint, h: f64, l: f64) -> Result<f64, ParameterError> {
    check("h", h)?;
    check("l", l)?;
    let LocalPoint { x, y, z } = p;
    let hyp = xz_hypotenuse_term(x, y, z, h, h, l) - xz_hypotenuse_term(x, y, z, 0.0, h, l);
    let leg = xz_leg_term(x, y, z, h) - xz_leg_term(x, y, z, 0.0);
    Ok(-INV_4PI * (hyp - leg))
}

/// `n_yz` of the l-triangle. No singularity guard is applied.
pub fn n_yz_l(p: LocalPoint, h: f64, l: f64) -> Result<f64, ParameterError> {
    check("h", h)?;
    check("l", l)?;
    let LocalPoint { x, y, z } = p;
    let hyp = yz_hypotenuse_term(x, y, z, l, h, l) - yz_hypotenuse_term(x, y, z, 0.0, h, l);
    let leg = yz_leg_term(x, y, z, l) - yz_leg_term(x, y, z, 0.0);
    Ok(-INV_4PI * (hyp - leg))
}

/// `n_zz` of the l-triangle. No singularity guard is applied.
///
/// At `z = +0` this is the one-sided limit from `z > 0`; it vanishes for
/// in-plane points outside the triangle.
pub fn n_zz_l(p: LocalPoint, h: f64, l: f64) -> Result<f64, ParameterError> {
    check("h", h)?;
    check("l", l)?;
    let LocalPoint { x, y, z } = p;
    let hyp = zz_hypotenuse_term(x, y, z, l, h, l) - zz_hypotenuse_term(x, y, z, 0.0, h, l);
    let leg = zz_leg_term(x, y, z, l) - zz_leg_term(x, y, z, 0.0);
    Ok(-INV_4PI * (hyp - leg))
}

// Reflecting x → −x maps the k-triangle onto an l-triangle with extent k. The
// x-component of the field flips sign, y and z are unchanged.

pub fn n_xz_k(p: LocalPoint, h: f64, k: f64) -> Result<f64, ParameterError> {
    Ok(-n_xz_l(p.mirrored(), h, k)?)
}

pub fn n_yz_k(p: LocalPoint, h: f64, k: f64) -> Result<f64, ParameterError> {
    n_yz_l(p.mirrored(), h, k)
}

pub fn n_zz_k(p: LocalPoint, h: f64, k: f64) -> Result<f64, ParameterError> {
    n_zz_l(p.mirrored(), h, k)
}

/// `n_xz` of the k-triangle written out directly with the leg and hypotenuse
/// differences in swapped order. The hypotenuse term takes the reflected
/// abscissa `-x`, the frame in which the k-triangle has its hypotenuse at
/// positive `x'`. Kept as an independent cross-check of [`n_xz_k`].
pub fn n_xz_k_explicit(p: LocalPoint, h: f64, k: f64) -> Result<f64, ParameterError> {
    check("h", h)?;
    check("k", k)?;
    let LocalPoint { x, y, z } = p;
    let leg = xz_leg_term(x, y, z, h) - xz_leg_term(x, y, z, 0.0);
    let hyp = xz_hypotenuse_term(-x, y, z, h, h, k) - xz_hypotenuse_term(-x, y, z, 0.0, h, k);
    Ok(-INV_4PI * (leg - hyp))
}

// --- fused evaluation ------------------------------------------------------

/// All three l-triangle components at once, sharing the distances from the
/// point to the triangle's vertices. Same terms as [`n_xz_l`] and friends with
/// each kernel's radicand replaced by the equivalent squared vertex distance.
#[inline]
fn l_triangle(x: f64, y: f64, z: f64, h: f64, l: f64) -> [f64; 3] {
    let z2 = z * z;
    let s2 = h * h + l * l;
    let s = s2.sqrt();
    // distances to (l,0,0), (0,h,0) and the origin
    let ra = ((x - l) * (x - l) + y * y + z2).sqrt();
    let rb = (x * x + (y - h) * (y - h) + z2).sqrt();
    let rd = (x * x + y * y + z2).sqrt();

    let gap_f = (h * (l - x) - l * y).powi(2) + s2 * z2;
    let f_h = atanh_ratio(h * (y - h) - l * x, s * rb, gap_f);
    let f_0 = atanh_ratio(l * (l - x) + h * y, s * ra, gap_f);
    let gap_g = x * x + z2;
    let g_h = atanh_ratio(y - h, rb, gap_g);
    let g_0 = atanh_ratio(y, rd, gap_g);
    let n_xz = -INV_4PI * (h / s * (f_h - f_0) - (g_h - g_0));

    let gap_k = (l * (h - y) - h * x).powi(2) + s2 * z2;
    let k_l = atanh_ratio(l * (x - l) - h * y, s * ra, gap_k);
    let k_0 = atanh_ratio(h * (h - y) + l * x, s * rb, gap_k);
    let gap_l = y * y + z2;
    let l_l = atanh_ratio(x - l, ra, gap_l);
    let l_0 = atanh_ratio(x, rd, gap_l);
    let n_yz = -INV_4PI * (l / s * (k_l - k_0) - (l_l - l_0));

    let pn_0 = x * (h - y) - h * (x * x + z2) / l;
    let pn_l = pn_0 - l * (h * (1.0 - x / l) - y);
    let p_l = (pn_l / (z * ra)).atan();
    let p_0 = (pn_0 / (z * rb)).atan();
    let q_l = -(((x - l) * y) / (z * ra)).atan();
    let q_0 = -((x * y) / (z * rd)).atan();
    let n_zz = -INV_4PI * ((p_l - p_0) - (q_l - q_0));

    [n_xz, n_yz, n_zz]
}

/// Moves a point off the face plane: `|z| < ε` becomes `±ε` (with `+` for
/// `z = 0`), where `ε = 1e-9 · max(h, k, l)`.
#[inline]
pub fn guard_z(z: f64, params: &RightTriangleParams) -> f64 {
    let eps = Z_GUARD_RTOL * params.max_extent();
    if z.abs() < eps {
        if z < 0.0 {
            -eps
        } else {
            eps
        }
    } else {
        z
    }
}

/// Full-face partial tensor: l-triangle plus mirrored k-triangle, evaluated at
/// the guarded point.
///
/// Points on the face plane evaluate as the one-sided limit from the `+z`
/// (normal) side.
#[inline]
pub fn local_tensor(p: LocalPoint, params: &RightTriangleParams) -> PartialTensor {
    let z = guard_z(p.z, params);
    let [lx, ly, lz] = l_triangle(p.x, p.y, z, params.h, params.l);
    let [kx, ky, kz] = l_triangle(-p.x, p.y, z, params.h, params.k);
    PartialTensor {
        n_xz: lx - kx,
        n_yz: ly + ky,
        n_zz: lz + kz,
    }
}

/// Unguarded sum of the six component functions, for cross-checking
/// [`local_tensor`].
pub fn local_tensor_reference(
    p: LocalPoint,
    params: &RightTriangleParams,
) -> Result<PartialTensor, ParameterError> {
    let RightTriangleParams { h, k, l } = *params;
    Ok(PartialTensor {
        n_xz: n_xz_l(p, h, l)? + n_xz_k(p, h, k)?,
        n_yz: n_yz_l(p, h, l)? + n_yz_k(p, h, k)?,
        n_zz: n_zz_l(p, h, l)? + n_zz_k(p, h, k)?,
    })
}
