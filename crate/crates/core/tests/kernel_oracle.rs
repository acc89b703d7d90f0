//! Closed-form local kernels against direct surface quadrature.

mod common;

use rand::Rng;
use tetfield::kernel::{local_tensor, n_xz_k, n_xz_l, n_yz_k, n_yz_l, n_zz_k, n_zz_l, LocalPoint};
use tetfield::oracle::{field_quadrature, OracleFace, QuadratureSpec};
use tetfield::{RightTriangleParams, Vec3};

fn random_params(rng: &mut rand_chacha::ChaCha8Rng) -> RightTriangleParams {
    RightTriangleParams::new(
        rng.gen_range(0.05..2.0),
        rng.gen_range(0.05..2.0),
        rng.gen_range(0.05..2.0),
    )
    .unwrap()
}

fn close(got: f64, want: f64) -> bool {
    (got - want).abs() <= 1e-8f64.max(1e-6 * want.abs())
}

#[test]
fn full_face_matches_quadrature() {
    let mut rng = common::rng(100);
    let spec = QuadratureSpec::default();
    let mut checked = 0;
    while checked < 10_000 {
        let p = random_params(&mut rng);
        let scale = p.max_extent();
        let r = Vec3::new(
            rng.gen_range(-1.5..1.5) * scale,
            rng.gen_range(-0.5..1.5) * scale,
            rng.gen_range(-1.0..1.0) * scale,
        );
        if r.z.abs() <= 1e-3 * scale {
            continue;
        }
        let face = OracleFace::new(
            Vec3::new(p.l, 0.0, 0.0),
            Vec3::new(0.0, p.h, 0.0),
            Vec3::new(-p.k, 0.0, 0.0),
        )
        .unwrap();
        let want = field_quadrature(&face, Vec3::Z, r, &spec).unwrap();
        let got = local_tensor(LocalPoint::new(r.x, r.y, r.z), &p).as_vec3();
        for i in 0..3 {
            assert!(
                close(got[i], want[i]),
                "{p:?} at {r:?}: component {i} {} vs {}",
                got[i],
                want[i]
            );
        }
        checked += 1;
    }
}

#[test]
fn mirrored_components_match_quadrature_of_k_triangle() {
    let mut rng = common::rng(101);
    let spec = QuadratureSpec::default();
    for _ in 0..500 {
        let (h, k) = (rng.gen_range(0.1..2.0), rng.gen_range(0.1..2.0));
        let r = Vec3::new(
            rng.gen_range(-3.0..2.0),
            rng.gen_range(-1.0..3.0),
            rng.gen_range(0.05..2.0),
        ) * if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
        // the k-triangle alone: (0,0,0), (0,h,0), (−k,0,0) with normal +z
        let face =
            OracleFace::new(Vec3::ZERO, Vec3::new(0.0, h, 0.0), Vec3::new(-k, 0.0, 0.0)).unwrap();
        assert!(face.normal().z > 0.0);
        let want = field_quadrature(&face, Vec3::Z, r, &spec).unwrap();
        let p = LocalPoint::new(r.x, r.y, r.z);
        let got = [
            n_xz_k(p, h, k).unwrap(),
            n_yz_k(p, h, k).unwrap(),
            n_zz_k(p, h, k).unwrap(),
        ];
        for i in 0..3 {
            assert!(
                close(got[i], want[i]),
                "h={h} k={k} {r:?}: {i} {} vs {}",
                got[i],
                want[i]
            );
        }
    }
}

#[test]
fn far_field_matches_point_source() {
    let mut rng = common::rng(102);
    for _ in 0..1000 {
        let (h, l): (f64, f64) = (rng.gen_range(0.1..2.0), rng.gen_range(0.1..2.0));
        let r = common::unit_vector(&mut rng) * (100.0 * h.max(l));
        let centroid = Vec3::new(l / 3.0, h / 3.0, 0.0);
        let area = h * l / 2.0;
        let d = r - centroid;
        // −(1/4π) A ∂ᵢ(1/|r − c|) = (1/4π) A dᵢ/|d|³
        let want = d * (area / (4.0 * std::f64::consts::PI * d.norm().powi(3)));
        let p = LocalPoint::new(r.x, r.y, r.z);
        let got = Vec3::new(
            n_xz_l(p, h, l).unwrap(),
            n_yz_l(p, h, l).unwrap(),
            n_zz_l(p, h, l).unwrap(),
        );
        assert!(
            (got - want).norm() <= 0.02 * want.norm(),
            "{got:?} vs {want:?}"
        );
        for i in 0..3 {
            if want[i].abs() > 0.1 * want.norm() {
                assert!((got[i] - want[i]).abs() <= 0.02 * want[i].abs());
            }
        }
    }
}

#[test]
fn local_tensor_is_scale_invariant() {
    let mut rng = common::rng(103);
    for _ in 0..10_000 {
        let p = random_params(&mut rng);
        let r = LocalPoint::new(
            rng.gen_range(-3.0..3.0),
            rng.gen_range(-3.0..3.0),
            rng.gen_range(-3.0..3.0),
        );
        let s = 10f64.powf(rng.gen_range(-4.0..4.0));
        let a = local_tensor(r, &p).as_vec3();
        let b = local_tensor(r.scaled(s), &p.scaled(s)).as_vec3();
        assert!(
            (a - b).max_abs() <= 1e-12,
            "{p:?} {r:?} s={s}: {:e}",
            (a - b).max_abs()
        );
    }
}

#[test]
fn guard_limits_are_continuous_off_singular_lines() {
    let p = RightTriangleParams::new(1.0, 0.5, 1.5).unwrap();
    for &(x, y) in &[
        (0.3, 0.2),
        (-0.2, 0.4),
        (2.0, 0.3),
        (0.4, 1.5),
        (-1.0, -1.0),
    ] {
        let mut prev = local_tensor(LocalPoint::new(x, y, 1e-4), &p).as_vec3();
        let mut delta: f64 = 1e-4;
        let mut last_gap = f64::INFINITY;
        while delta > 1e-10 {
            delta /= 10.0;
            let cur = local_tensor(LocalPoint::new(x, y, delta), &p).as_vec3();
            let gap = (cur - prev).max_abs();
            assert!(
                gap <= last_gap * 1.01 + 1e-15,
                "({x},{y}) δ={delta}: {gap:e} after {last_gap:e}"
            );
            last_gap = gap;
            prev = cur;
        }
        assert!(last_gap < 1e-8);
    }
}
