//! Timing of tensor plus field evaluation for one tetrahedron.

use std::hint::black_box;
use std::time::Instant;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use tetfield::fixtures::reference_body;
use tetfield::{PreparedTetrahedron, Vec3};

use crate::error::CliError;

pub const DEFAULT_EVALUATIONS: usize = 1_000_000;
/// Per-evaluation figure the timings are compared with, in microseconds.
pub const TARGET_US: f64 = 3.0;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BenchReport {
    pub evaluations: usize,
    pub uncached_us: f64,
    pub cached_us: Option<f64>,
}

impl BenchReport {
    pub fn render(&self) -> String {
        let mut out = format!(
            "{} evaluations of the reference tetrahedron\n{:<28}{:>10.3} us/eval\n",
            self.evaluations, "geometry set up per point:", self.uncached_us
        );
        if let Some(c) = self.cached_us {
            out += &format!("{:<28}{:>10.3} us/eval\n", "geometry cached:", c);
        }
        let headline = self.cached_us.unwrap_or(self.uncached_us);
        let verdict = if headline <= TARGET_US {
            "within"
        } else {
            "above"
        };
        out += &format!("{verdict} the {TARGET_US} us target (informational)\n");
        out
    }
}

/// Points spread over twice the bounding box of the reference body.
pub fn sample_points(n: usize, seed: u64) -> Vec<Vec3> {
    let body = reference_body();
    let v = body.tet.vertices();
    let lo = v
        .iter()
        .fold(Vec3::new(f64::MAX, f64::MAX, f64::MAX), |a, p| {
            Vec3::new(a.x.min(p.x), a.y.min(p.y), a.z.min(p.z))
        });
    let hi = v
        .iter()
        .fold(Vec3::new(f64::MIN, f64::MIN, f64::MIN), |a, p| {
            Vec3::new(a.x.max(p.x), a.y.max(p.y), a.z.max(p.z))
        });
    let centre = (lo + hi) * 0.5;
    let half = hi - lo;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| {
            centre
                + Vec3::new(
                    half.x * rng.gen_range(-1.0..1.0),
                    half.y * rng.gen_range(-1.0..1.0),
                    half.z * rng.gen_range(-1.0..1.0),
                )
        })
        .collect()
}

fn per_eval_us(n: usize, mut f: impl FnMut() -> Vec3) -> f64 {
    let start = Instant::now();
    let mut acc = Vec3::ZERO;
    for _ in 0..n {
        acc += f();
    }
    black_box(acc);
    start.elapsed().as_secs_f64() * 1e6 / n as f64
}

pub fn run(n: usize, cache_pose: bool) -> Result<BenchReport, CliError> {
    if n == 0 {
        return Err(CliError::Argument("--n must be at least 1".into()));
    }
    let body = reference_body();
    let points = sample_points(n, 0);
    let m = body.m;

    let mut it = points.iter();
    let uncached_us = per_eval_us(n, || {
        let r = *it.next().unwrap();
        let prepared =
            PreparedTetrahedron::new(black_box(&body.tet)).expect("reference body is valid");
        prepared.tensor(r) * m
    });

    let cached_us = if cache_pose {
        let prepared = PreparedTetrahedron::new(&body.tet)?;
        let mut it = points.iter();
        Some(per_eval_us(n, || prepared.tensor(*it.next().unwrap()) * m))
    } else {
        None
    };

    Ok(BenchReport {
        evaluations: n,
        uncached_us,
        cached_us,
    })
}
