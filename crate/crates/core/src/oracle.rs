//! Independent brute-force verification machinery: derivative-free
//! minimization over the disk, finite-difference derivatives, and
//! reproducible random polygon generation.
//!
//! The minimizer shares no code path with the analytic gradients it is used
//! to validate: a coarse polar grid over the disk followed by a
//! Nelder-Mead-style simplex contraction, fully deterministic for fixed
//! inputs.

use crate::batch::map_indexed;
use crate::error::{Error, Result};
use crate::klein::PlanePoint;
use crate::polygon::IdealPolygon;
use crate::projective::Mobius;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use std::f64::consts::TAU;

/// A real-valued function of the plane with a declared domain predicate.
/// Evaluations outside the domain are reported, never clamped.
pub struct ScalarField<F, D>
where
    F: Fn(&PlanePoint) -> f64 + Sync,
    D: Fn(&PlanePoint) -> bool + Sync,
{
    pub eval: F,
    pub domain: D,
}

impl<F> ScalarField<F, fn(&PlanePoint) -> bool>
where
    F: Fn(&PlanePoint) -> f64 + Sync,
{
    /// Field defined on the whole open disk (minus the boundary collar the
    /// grid already excludes).
    pub fn on_disk(eval: F) -> Self {
        ScalarField {
            eval,
            domain: |p: &PlanePoint| p.is_hyperbolic(),
        }
    }
}

const GRID_STEPS: usize = 200;
const BOUNDARY_COLLAR: f64 = 1e-3;

/// Two-stage derivative-free minimization over the open unit disk: a polar
/// grid of ≥ 200×200 samples (excluding a boundary collar where the sinh
/// objectives diverge), then simplex contraction from the best grid point
/// until the simplex diameter drops below `tol`.
pub fn minimize_on_disk<F, D>(field: &ScalarField<F, D>, tol: f64) -> Result<(PlanePoint, f64)>
where
    F: Fn(&PlanePoint) -> f64 + Sync,
    D: Fn(&PlanePoint) -> bool + Sync,
{
    let r_max = 1.0 - BOUNDARY_COLLAR;
    let total = GRID_STEPS * GRID_STEPS + 1;
    let evals: Vec<(PlanePoint, Option<f64>)> = map_indexed(total, |idx| {
        let p = if idx == 0 {
            PlanePoint::ORIGIN
        } else {
            let k = (idx - 1) / GRID_STEPS;
            let j = (idx - 1) % GRID_STEPS;
            let r = r_max * (k + 1) as f64 / GRID_STEPS as f64;
            let theta = TAU * j as f64 / GRID_STEPS as f64;
            PlanePoint::new(r * theta.cos(), r * theta.sin())
        };
        if (field.domain)(&p) {
            Some((p, (field.eval)(&p)))
        } else {
            None
        }
        .map_or((p, None), |(p, v)| (p, Some(v)))
    });

    // reduction in index order keeps the result schedule-independent
    let mut best: Option<(PlanePoint, f64)> = None;
    for (p, v) in &evals {
        if let Some(v) = v {
            if !v.is_finite() {
                return Err(Error::DomainViolation {
                    x: p.x,
                    y: p.y,
                    what: "non-finite field value on grid".into(),
                });
            }
            if best.is_none_or(|(_, bv)| *v < bv) {
                best = Some((*p, *v));
            }
        }
    }
    let (start, _) =
        best.ok_or_else(|| Error::Infeasible("field domain misses the whole grid".into()))?;

    // penalized evaluation for the local stage
    let g = |p: &PlanePoint| -> f64 {
        if p.norm_sq() < (1.0 - BOUNDARY_COLLAR).powi(2) && (field.domain)(p) {
            (field.eval)(p)
        } else {
            f64::INFINITY
        }
    };

    let h = r_max / GRID_STEPS as f64;
    let mut simplex = [
        start,
        PlanePoint::new(start.x + h, start.y),
        PlanePoint::new(start.x, start.y + h),
    ];
    let mut values = simplex.map(|p| g(&p));
    for _ in 0..500 {
        // order best..worst
        let mut order = [0, 1, 2];
        order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
        (simplex, values) = (order.map(|i| simplex[i]), order.map(|i| values[i]));
        let diameter = simplex[0]
            .dist(&simplex[1])
            .max(simplex[0].dist(&simplex[2]))
            .max(simplex[1].dist(&simplex[2]));
        if diameter < tol {
            break;
        }
        let centroid = PlanePoint::new(
            (simplex[0].x + simplex[1].x) / 2.0,
            (simplex[0].y + simplex[1].y) / 2.0,
        );
        let reflect = |t: f64| {
            PlanePoint::new(
                centroid.x + t * (simplex[2].x - centroid.x),
                centroid.y + t * (simplex[2].y - centroid.y),
            )
        };
        let xr = reflect(-1.0);
        let fr = g(&xr);
        if fr < values[0] {
            let xe = reflect(-2.0);
            let fe = g(&xe);
            if fe < fr {
                simplex[2] = xe;
                values[2] = fe;
            } else {
                simplex[2] = xr;
                values[2] = fr;
            }
        } else if fr < values[1] {
            simplex[2] = xr;
            values[2] = fr;
        } else {
            let xc = reflect(0.5);
            let fc = g(&xc);
            if fc < values[2] {
                simplex[2] = xc;
                values[2] = fc;
            } else {
                // shrink toward the best vertex
                for i in 1..3 {
                    simplex[i] = PlanePoint::new(
                        (simplex[i].x + simplex[0].x) / 2.0,
                        (simplex[i].y + simplex[0].y) / 2.0,
                    );
                    values[i] = g(&simplex[i]);
                }
            }
        }
    }
    let mut order = [0, 1, 2];
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    Ok((simplex[order[0]], values[order[0]]))
}

/// Central-difference gradient, error `O(h²)`.
pub fn finite_diff_gradient<F: Fn(&PlanePoint) -> f64>(
    f: F,
    x: &PlanePoint,
    h: f64,
) -> Result<[f64; 2]> {
    if x.norm() + h >= 1.0 {
        return Err(Error::DomainViolation {
            x: x.x,
            y: x.y,
            what: format!("needs interior margin > h = {h}"),
        });
    }
    Ok([
        (f(&PlanePoint::new(x.x + h, x.y)) - f(&PlanePoint::new(x.x - h, x.y))) / (2.0 * h),
        (f(&PlanePoint::new(x.x, x.y + h)) - f(&PlanePoint::new(x.x, x.y - h))) / (2.0 * h),
    ])
}

/// Central-difference Hessian determinant, error `O(h²)`.
pub fn finite_diff_hessian_det<F: Fn(&PlanePoint) -> f64>(
    f: F,
    x: &PlanePoint,
    h: f64,
) -> Result<f64> {
    if x.norm() + 2.0 * h >= 1.0 {
        return Err(Error::DomainViolation {
            x: x.x,
            y: x.y,
            what: format!("needs interior margin > 2h = {}", 2.0 * h),
        });
    }
    let at = |dx: f64, dy: f64| f(&PlanePoint::new(x.x + dx, x.y + dy));
    let f0 = at(0.0, 0.0);
    let fxx = (at(h, 0.0) - 2.0 * f0 + at(-h, 0.0)) / (h * h);
    let fyy = (at(0.0, h) - 2.0 * f0 + at(0.0, -h)) / (h * h);
    let fxy = (at(h, h) - at(h, -h) - at(-h, h) + at(-h, -h)) / (4.0 * h * h);
    Ok(fxx * fyy - fxy * fxy)
}

/// Seeded random convex counterclockwise ideal polygon: sorted uniform
/// angles with a minimum cyclic gap, by rejection.
pub fn random_ideal_polygon(n: usize, seed: u64, min_gap: f64) -> Result<IdealPolygon> {
    if n < 3 {
        return Err(Error::InvalidPolygon(format!("need n >= 3, got {n}")));
    }
    if min_gap * n as f64 >= TAU {
        return Err(Error::Infeasible(format!(
            "min gap {min_gap} infeasible for n = {n}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..100_000 {
        let mut angles: Vec<f64> = (0..n).map(|_| rng.gen_range(0.0..TAU)).collect();
        angles.sort_by(f64::total_cmp);
        let ok = (0..n).all(|i| {
            let gap = if i + 1 < n {
                angles[i + 1] - angles[i]
            } else {
                angles[0] + TAU - angles[n - 1]
            };
            gap >= min_gap
        });
        if ok {
            return IdealPolygon::from_angles(&angles);
        }
    }
    Err(Error::Infeasible(
        "rejection sampling failed to satisfy the gap constraint".into(),
    ))
}

/// A random orientation-preserving disk Möbius map, conditioned to keep the
/// geometry well-scaled: the image of the origin stays within radius 0.75.
pub fn random_disk_mobius(rng: &mut ChaCha8Rng) -> Mobius {
    loop {
        let v: [f64; 4] = std::array::from_fn(|_| rng.sample(StandardNormal));
        let det = v[0] * v[3] - v[1] * v[2];
        if det.abs() < 0.1 {
            continue;
        }
        let m = if det > 0.0 {
            Mobius::new(v[0], v[1], v[2], v[3])
        } else {
            Mobius::new(v[0], v[1], -v[2], -v[3])
        }
        .expect("determinant checked above");
        let iso = crate::projective::KleinIsometry::from_mobius(&m).expect("positive determinant");
        if iso.apply(PlanePoint::ORIGIN).norm() <= 0.75 {
            return m;
        }
    }
}

/// Seeded harmonic polygon: a bounded random disk Möbius applied to the
/// regular n-gon, resampled until the image is numerically well-separated.
pub fn random_harmonic_polygon(n: usize, seed: u64) -> Result<IdealPolygon> {
    let regular = IdealPolygon::regular(n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..1000 {
        let m = random_disk_mobius(&mut rng);
        let image = regular.transform(&m)?;
        let min_gap = (0..n)
            .map(|i| image.vertex(i).circular_gap(image.vertex(i + 1)))
            .fold(f64::INFINITY, f64::min);
        if min_gap >= 0.02 {
            return Ok(image);
        }
    }
    Err(Error::Infeasible(
        "could not sample a well-separated harmonic polygon".into(),
    ))
}
