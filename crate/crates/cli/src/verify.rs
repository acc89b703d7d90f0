//! Analytic field versus the quadrature oracle on the reference tetrahedron
//! and on seeded random bodies.

use std::fmt::Write as _;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use tetfield::fixtures::{reference_body, REFERENCE_POINT, REFERENCE_SCAN_RANGE};
use tetfield::oracle::{outward_faces, tet_field_quadrature};
use tetfield::{
    Axis, EvalSet, MagnetizedTetrahedron, PreparedTetrahedron, QuadratureSpec, Tetrahedron, Vec3,
};

use crate::error::CliError;

pub const DEFAULT_TOL: f64 = 1e-6;
pub const DEFAULT_SEED: u64 = 1;
pub const SCAN_POINTS: usize = 200;
/// Points closer than this to a face (m) are skipped on the reference scans.
pub const FACE_EXCLUSION: f64 = 1e-6;
pub const RANDOM_BODIES: usize = 12;
pub const POINTS_PER_BODY: usize = 10;

#[derive(Clone, Debug, PartialEq)]
pub struct CaseReport {
    pub name: String,
    pub evaluated: usize,
    pub skipped: usize,
    pub max_rel_error: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct VerifyReport {
    pub tol: f64,
    pub seed: u64,
    pub cases: Vec<CaseReport>,
}

impl VerifyReport {
    pub fn max_rel_error(&self) -> f64 {
        self.cases
            .iter()
            .map(|c| c.max_rel_error)
            .fold(0.0, f64::max)
    }

    pub fn passed(&self) -> bool {
        self.cases.iter().all(|c| c.max_rel_error <= self.tol)
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        let verdict = |ok: bool| if ok { "pass" } else { "FAIL" };
        for c in &self.cases {
            let _ = writeln!(
                out,
                "{:<22} {:>4} points {:>3} skipped  max rel err {:.3e}  {}",
                c.name,
                c.evaluated,
                c.skipped,
                c.max_rel_error,
                verdict(c.max_rel_error <= self.tol)
            );
        }
        let _ = writeln!(
            out,
            "overall (seed {}, tol {:.1e}): max rel err {:.3e}  {}",
            self.seed,
            self.tol,
            self.max_rel_error(),
            verdict(self.passed())
        );
        out
    }
}

/// Relative deviation of the analytic field from quadrature at each point.
/// `None` marks points too close to a face to be compared.
pub fn compare(
    body: &MagnetizedTetrahedron,
    points: &[Vec3],
    exclusion: f64,
    spec: &QuadratureSpec,
) -> Result<Vec<Option<f64>>, CliError> {
    let prepared = PreparedTetrahedron::new(&body.tet)?;
    let faces = outward_faces(body.tet.vertices())?;
    points
        .par_iter()
        .map(|&r| {
            if faces.iter().any(|f| f.distance_to(r) < exclusion) {
                return Ok(None);
            }
            let analytic = prepared.field(body.m, r);
            let reference = tet_field_quadrature(body.tet.vertices(), body.m, r, spec)?;
            Ok(Some((analytic - reference).norm() / reference.norm()))
        })
        .collect()
}

fn summarize(name: String, errors: &[Option<f64>]) -> CaseReport {
    let evaluated: Vec<f64> = errors.iter().flatten().copied().collect();
    CaseReport {
        name,
        evaluated: evaluated.len(),
        skipped: errors.len() - evaluated.len(),
        max_rel_error: evaluated.iter().copied().fold(0.0, f64::max),
    }
}

/// Random non-flat tetrahedron about the origin with edges of order `scale`.
pub fn random_tetrahedron(rng: &mut impl Rng, scale: f64) -> Tetrahedron {
    loop {
        let mut v = [Vec3::ZERO; 4];
        for p in &mut v {
            *p = Vec3::new(
                rng.gen_range(-1.0..1.0),
                rng.gen_range(-1.0..1.0),
                rng.gen_range(-1.0..1.0),
            ) * scale;
        }
        if let Ok(tet) = Tetrahedron::from_array(v) {
            if tet.volume() >= 0.01 * tet.longest_edge().powi(3) {
                return tet;
            }
        }
    }
}

fn random_unit(rng: &mut impl Rng) -> Vec3 {
    loop {
        let v = Vec3::new(
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
        );
        let n = v.norm();
        if n > 1e-3 && n <= 1.0 {
            return v * (1.0 / n);
        }
    }
}

/// Interior point via random barycentric weights bounded away from the faces.
pub fn random_interior_point(rng: &mut impl Rng, tet: &Tetrahedron) -> Vec3 {
    let w: [f64; 4] = std::array::from_fn(|_| rng.gen_range(0.1..1.0));
    let total: f64 = w.iter().sum();
    let v = tet.vertices();
    (0..4).fold(Vec3::ZERO, |acc, i| acc + v[i] * (w[i] / total))
}

/// Exterior point between 1.5 and 4 circumradii from the circumcenter.
pub fn random_exterior_point(rng: &mut impl Rng, tet: &Tetrahedron) -> Vec3 {
    let radius = tet.circumradius() * rng.gen_range(1.5..4.0);
    tet.circumcenter() + random_unit(rng) * radius
}

pub fn random_bodies(seed: u64, count: usize) -> Vec<(MagnetizedTetrahedron, Vec<Vec3>)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let scale = 10f64.powf(rng.gen_range(-3.0..0.0));
            let tet = random_tetrahedron(&mut rng, scale);
            let m = random_unit(&mut rng) * 10f64.powf(rng.gen_range(0.0..6.0));
            let points = (0..POINTS_PER_BODY)
                .map(|i| {
                    if i % 2 == 0 {
                        random_interior_point(&mut rng, &tet)
                    } else {
                        random_exterior_point(&mut rng, &tet)
                    }
                })
                .collect();
            (MagnetizedTetrahedron::new(tet, m), points)
        })
        .collect()
}

/// The reference scans along each axis through the reference point.
pub fn reference_scans(count: usize) -> Vec<(Axis, EvalSet)> {
    let (start, end) = REFERENCE_SCAN_RANGE;
    [Axis::X, Axis::Y, Axis::Z]
        .into_iter()
        .map(|axis| {
            let set =
                EvalSet::line(axis, REFERENCE_POINT, start, end, count).expect("non-empty scan");
            (axis, set)
        })
        .collect()
}

pub fn run(seed: u64, tol: f64) -> Result<VerifyReport, CliError> {
    if !(tol.is_finite() && tol > 0.0) {
        return Err(CliError::Argument(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    let spec = QuadratureSpec::default();
    let mut cases = Vec::new();
    let body = reference_body();
    for (axis, set) in reference_scans(SCAN_POINTS) {
        let errors = compare(&body, &set.points, FACE_EXCLUSION, &spec)?;
        cases.push(summarize(format!("reference {axis}-scan"), &errors));
    }
    let mut random = Vec::new();
    for (body, points) in random_bodies(seed, RANDOM_BODIES) {
        let scale = body.tet.longest_edge();
        random.extend(compare(&body, &points, 1e-6 * scale, &spec)?);
    }
    cases.push(summarize(
        format!("random bodies ({RANDOM_BODIES})"),
        &random,
    ));
    Ok(VerifyReport { tol, seed, cases })
}
