//! Plane conics, Poncelet orbits circumscribed about the unit circle, and
//! the moduli-space verifications they support.
//!
//! A conic is stored as the homogeneous coefficient vector of
//! `Ax² + Bxy + Cy² + Dx + Ey + F = 0`, normalized to unit norm. Orbits are
//! traced by intersecting tangent lines of the unit circle with the conic
//! algebraically (a quadratic solve along the line), so parabolas and
//! hyperbolas with unbounded branches need no special handling.

use crate::batch::map_indexed;
use crate::error::{Error, Result};
use crate::klein::{chord_from_pole, polar_of_chord, reflect_ideal_point, PlanePoint};
use crate::polygon::{barycenter, IdealPolygon};
use crate::projective::{IdealPoint, Mobius};
use nalgebra::{DMatrix, Matrix3};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::f64::consts::TAU;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ConicClass {
    Ellipse,
    Parabola,
    Hyperbola,
    Degenerate,
}

/// A plane conic `Ax² + Bxy + Cy² + Dx + Ey + F = 0`, unit-normalized.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct Conic {
    /// `[A, B, C, D, E, F]`
    pub coeffs: [f64; 6],
}

impl Conic {
    pub fn new(coeffs: [f64; 6]) -> Result<Self> {
        let norm = coeffs.iter().map(|c| c * c).sum::<f64>().sqrt();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::ConicFit("zero coefficient vector".into()));
        }
        Ok(Conic {
            coeffs: coeffs.map(|c| c / norm),
        })
    }

    pub fn eval(&self, p: &PlanePoint) -> f64 {
        let [a, b, c, d, e, f] = self.coeffs;
        a * p.x * p.x + b * p.x * p.y + c * p.y * p.y + d * p.x + e * p.y + f
    }

    /// The symmetric 3×3 matrix of the homogeneous quadratic form.
    pub fn matrix(&self) -> Matrix3<f64> {
        let [a, b, c, d, e, f] = self.coeffs;
        Matrix3::new(
            a,
            b / 2.0,
            d / 2.0,
            b / 2.0,
            c,
            e / 2.0,
            d / 2.0,
            e / 2.0,
            f,
        )
    }

    /// Discriminant-based classification with an SVD rank test for
    /// degeneracy; thresholds are relative to the (unit) coefficient scale.
    pub fn classify(&self) -> ConicClass {
        let svd = self.matrix().svd(false, false);
        let sv = svd.singular_values;
        if sv[2] < 1e-10 * sv[0] {
            return ConicClass::Degenerate;
        }
        let [a, b, c, ..] = self.coeffs;
        let disc = b * b - 4.0 * a * c;
        let scale = (a * a + b * b + c * c).max(1e-30);
        if disc.abs() < 1e-10 * scale {
            ConicClass::Parabola
        } else if disc < 0.0 {
            ConicClass::Ellipse
        } else {
            ConicClass::Hyperbola
        }
    }

    /// The conic rotated about the origin by `theta`.
    pub fn rotated(&self, theta: f64) -> Conic {
        let (s, c) = theta.sin_cos();
        // substitute the inverse rotation into the quadratic form
        let r_inv = Matrix3::new(c, s, 0.0, -s, c, 0.0, 0.0, 0.0, 1.0);
        let m = r_inv.transpose() * self.matrix() * r_inv;
        Conic::new([
            m[(0, 0)],
            2.0 * m[(0, 1)],
            m[(1, 1)],
            2.0 * m[(0, 2)],
            2.0 * m[(1, 2)],
            m[(2, 2)],
        ])
        .expect("rotation preserves nonzero coefficients")
    }

    /// Cosine similarity with another conic, up to the projective sign.
    pub fn alignment(&self, other: &Conic) -> f64 {
        self.coeffs
            .iter()
            .zip(other.coeffs.iter())
            .map(|(a, b)| a * b)
            .sum::<f64>()
            .abs()
    }
}

fn veronese(p: &PlanePoint) -> [f64; 6] {
    [p.x * p.x, p.x * p.y, p.y * p.y, p.x, p.y, 1.0]
}

/// Incidence row for a point of the projective plane: a finite point, or a
/// point at infinity in direction `(dx, dy)` (homogeneous `(dx : dy : 0)`).
fn incidence_row(p: &ProjectivePoint) -> [f64; 6] {
    match p {
        ProjectivePoint::Finite(p) => veronese(p),
        ProjectivePoint::AtInfinity { dx, dy } => [dx * dx, dx * dy, dy * dy, 0.0, 0.0, 0.0],
    }
}

/// A point of the projective plane, for incidence constraints that may pin a
/// conic's asymptotic direction.
#[derive(Debug, Clone, Copy)]
pub enum ProjectivePoint {
    Finite(PlanePoint),
    AtInfinity { dx: f64, dy: f64 },
}

/// The pole of a chord as a projective point: finite off-diameter, at
/// infinity along the normal for diameters.
pub fn projective_pole(chord: &crate::klein::Chord) -> Result<ProjectivePoint> {
    match polar_of_chord(chord) {
        Ok(p) => Ok(ProjectivePoint::Finite(p)),
        Err(Error::PolarAtInfinity { dx, dy }) => Ok(ProjectivePoint::AtInfinity { dx, dy }),
        Err(e) => Err(e),
    }
}

/// Full right singular basis of an incidence system, padded with zero rows
/// to 6×6 so the null-space vectors are materialized.
fn incidence_svd(rows: &[[f64; 6]]) -> (nalgebra::DVector<f64>, DMatrix<f64>) {
    let m = DMatrix::from_fn(6, 6, |r, c| if r < rows.len() { rows[r][c] } else { 0.0 });
    let svd = m.svd(false, true);
    (svd.singular_values, svd.v_t.expect("requested V^T"))
}

/// The unique conic through five points in general position, via the null
/// space of the 5×6 incidence system.
pub fn conic_through(points: &[PlanePoint; 5]) -> Result<Conic> {
    let rows: Vec<[f64; 6]> = points.iter().map(veronese).collect();
    let (sv, vt) = incidence_svd(&rows);
    if sv[4] < 1e-10 * sv[0] {
        return Err(Error::ConicFit(
            "points do not determine a unique conic (rank < 5)".into(),
        ));
    }
    let null = vt.row(5);
    Conic::new(std::array::from_fn(|i| null[i]))
}

fn pencil_member(rows: &[[f64; 6]; 4], through: &PlanePoint) -> Result<Conic> {
    let (sv, vt) = incidence_svd(rows);
    if sv[3] < 1e-10 * sv[0] {
        return Err(Error::ConicFit(
            "base points do not determine a pencil (rank < 4)".into(),
        ));
    }
    let c1: [f64; 6] = std::array::from_fn(|i| vt.row(4)[i]);
    let c2: [f64; 6] = std::array::from_fn(|i| vt.row(5)[i]);
    let v = veronese(through);
    let dot = |c: &[f64; 6]| c.iter().zip(v.iter()).map(|(a, b)| a * b).sum::<f64>();
    let (t1, t2) = (dot(&c1), dot(&c2));
    let combo: [f64; 6] = std::array::from_fn(|i| t2 * c1[i] - t1 * c2[i]);
    let norm = combo.iter().map(|c| c * c).sum::<f64>().sqrt();
    if norm < 1e-9 {
        return Err(Error::ConicFit(
            "fifth point does not select a unique pencil member".into(),
        ));
    }
    Conic::new(combo)
}

/// The member of the pencil of conics through four base points that also
/// passes through `through`.
pub fn pencil_conic(base: &[PlanePoint; 4], through: &PlanePoint) -> Result<Conic> {
    pencil_member(&std::array::from_fn(|i| veronese(&base[i])), through)
}

/// The pencil through the four poles of a quadrilateral's sides (a diameter
/// side contributes its ideal pole as an asymptotic-direction constraint),
/// evaluated at a fifth point.
pub fn polar_pencil(poly: &IdealPolygon, through: &PlanePoint) -> Result<Conic> {
    if poly.len() != 4 {
        return Err(Error::WrongVertexCount {
            expected: "4".to_string(),
            got: poly.len(),
        });
    }
    let mut rows = [[0.0; 6]; 4];
    for (i, row) in rows.iter_mut().enumerate() {
        *row = incidence_row(&projective_pole(&poly.side(i))?);
    }
    pencil_member(&rows, through)
}

/// The two tangency points of the tangent lines from an external point, as
/// the endpoints of the chord polar to it.
pub fn tangency_points(vertex: &PlanePoint) -> Result<(IdealPoint, IdealPoint)> {
    let chord = chord_from_pole(vertex)?;
    Ok((*chord.start(), *chord.end()))
}

/// One Poncelet step: from a vertex on the conic whose incoming edge touches
/// the circle at `tangency`, move out along the other tangent line to the
/// next tangency and the next vertex (the second intersection of that
/// tangent with the conic).
pub fn poncelet_step(
    conic: &Conic,
    vertex: &PlanePoint,
    tangency: &IdealPoint,
) -> Result<(IdealPoint, PlanePoint)> {
    let (t1, t2) = tangency_points(vertex)?;
    let next = if t1.circular_gap(tangency) < t2.circular_gap(tangency) {
        t2
    } else {
        t1
    };
    let e = next.embed();
    // tangent line at `next` has direction perpendicular to the radius
    let dir = PlanePoint::new(-e.y, e.x);
    let [a, b, c, d, ee, _f] = conic.coeffs;
    let qa = a * dir.x * dir.x + b * dir.x * dir.y + c * dir.y * dir.y;
    let qb = 2.0 * a * vertex.x * dir.x
        + b * (vertex.x * dir.y + vertex.y * dir.x)
        + 2.0 * c * vertex.y * dir.y
        + d * dir.x
        + ee * dir.y;
    // the vertex itself is one root; the other comes from Vieta
    if qa.abs() < 1e-13 {
        return Err(Error::OrbitLeavesRealLocus);
    }
    let t = -qb / qa;
    Ok((
        next,
        PlanePoint::new(vertex.x + t * dir.x, vertex.y + t * dir.y),
    ))
}

/// A traced circumscribed polygonal orbit.
#[derive(Debug, Clone, Serialize)]
pub struct PonceletOrbit {
    pub vertices: Vec<PlanePoint>,
    pub tangencies: Vec<IdealPoint>,
    pub period: Option<usize>,
    /// `|V_k - V_0| / max(1, |V_0|)` at the detected closure (or the best
    /// value seen when no closure was found).
    pub closure_residual: f64,
}

impl PonceletOrbit {
    /// The ideal polygon of tangency points, available for periodic orbits.
    pub fn tangency_polygon(&self) -> Result<IdealPolygon> {
        let period = self
            .period
            .ok_or_else(|| Error::Infeasible("orbit did not close".into()))?;
        IdealPolygon::new(self.tangencies[..period].to_vec())
    }
}

/// Trace an orbit from a vertex on the conic with a chosen incoming
/// tangency. Closure requires both the vertex and the tangency to match the
/// start, which prevents false closure on symmetric conics.
pub fn poncelet_orbit_from(
    conic: &Conic,
    start: &PlanePoint,
    incoming: &IdealPoint,
    max_steps: usize,
    tol: f64,
) -> Result<PonceletOrbit> {
    let on_conic = conic.eval(start).abs();
    if on_conic > 1e-7 * (1.0 + start.norm_sq()) {
        return Err(Error::NotOnConic(on_conic));
    }
    let mut vertices = vec![*start];
    let mut tangencies = Vec::new();
    let mut vertex = *start;
    let mut tangency = *incoming;
    let mut best = f64::INFINITY;
    for step in 1..=max_steps {
        let (next_tangency, next_vertex) = poncelet_step(conic, &vertex, &tangency)?;
        tangencies.push(next_tangency);
        let residual = next_vertex.dist(start) / start.norm().max(1.0);
        if residual < best {
            best = residual;
        }
        if residual < tol && next_tangency.circular_gap(incoming) < 1e-3 {
            return Ok(PonceletOrbit {
                vertices,
                tangencies,
                period: Some(step),
                closure_residual: residual,
            });
        }
        vertices.push(next_vertex);
        vertex = next_vertex;
        tangency = next_tangency;
    }
    Ok(PonceletOrbit {
        vertices,
        tangencies,
        period: None,
        closure_residual: best,
    })
}

/// Trace from a vertex with a deterministic incoming-tangency choice (the
/// first endpoint of the polar chord).
pub fn poncelet_orbit(
    conic: &Conic,
    start: &PlanePoint,
    max_steps: usize,
    tol: f64,
) -> Result<PonceletOrbit> {
    let (t1, _) = tangency_points(start)?;
    poncelet_orbit_from(conic, start, &t1, max_steps, tol)
}

/// The conic traced by the polars of all ideal triangles with barycenter
/// `s`: the explicit one-parameter family
///
/// ```text
/// Γ(r, 0): (1 - 4r²)x² + 6rx + (1 - r²)y² + r² - 4 = 0
/// ```
///
/// rotated to the argument of `s`. An ellipse for `|s| < 1/2`, a parabola at
/// `|s| = 1/2`, a hyperbola beyond.
pub fn triangle_moduli_conic(s: &PlanePoint) -> Result<Conic> {
    if !s.is_hyperbolic() {
        return Err(Error::NotHyperbolicPoint { x: s.x, y: s.y });
    }
    let r = s.norm();
    let base = Conic::new([
        1.0 - 4.0 * r * r,
        0.0,
        1.0 - r * r,
        6.0 * r,
        0.0,
        r * r - 4.0,
    ])?;
    if r == 0.0 {
        return Ok(base);
    }
    Ok(base.rotated(s.y.atan2(s.x)))
}

/// The triangle whose vertices are the reflections of the input's vertices
/// in their opposite sides; it shares the barycenter with the input.
pub fn reflected_triangle(poly: &IdealPolygon) -> Result<IdealPolygon> {
    if poly.len() != 3 {
        return Err(Error::WrongVertexCount {
            expected: "3".to_string(),
            got: poly.len(),
        });
    }
    let vertices = (0..3)
        .map(|l| reflect_ideal_point(poly.vertex(l), &poly.side(l + 1)))
        .collect::<Result<Vec<_>>>()?;
    IdealPolygon::new(vertices)
}

/// One sampled orbit in a moduli verification.
#[derive(Debug, Clone, Serialize)]
pub struct OrbitSample {
    pub start: PlanePoint,
    pub period: Option<usize>,
    pub closure_residual: f64,
    /// Barycenter of the tangency polygon, when the orbit closed.
    pub tangency_barycenter: Option<PlanePoint>,
    /// Distance from the tangency barycenter to the expected center.
    pub barycenter_error: Option<f64>,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct TriangleModuliReport {
    pub center: PlanePoint,
    pub conic: Conic,
    pub conic_class: ConicClass,
    pub orbits: Vec<OrbitSample>,
    /// Residual of the six polars (triangle + reflected triangle) on the conic.
    pub six_polar_residual: f64,
    pub all_pass: bool,
}

/// Deterministically pick a starting vertex on the conic lying on the
/// tangent line at circle angle `psi`; `None` when the tangent misses the
/// conic or only grazes it.
fn start_on_conic(conic: &Conic, psi: f64) -> Option<(PlanePoint, IdealPoint)> {
    let t = IdealPoint::from_angle(psi);
    let e = t.embed();
    let dir = PlanePoint::new(-e.y, e.x);
    let [a, b, c, d, ee, _] = conic.coeffs;
    let qa = a * dir.x * dir.x + b * dir.x * dir.y + c * dir.y * dir.y;
    let qb = 2.0 * a * e.x * dir.x
        + b * (e.x * dir.y + e.y * dir.x)
        + 2.0 * c * e.y * dir.y
        + d * dir.x
        + ee * dir.y;
    let qc = conic.eval(&e);
    if qa.abs() < 1e-13 {
        if qb.abs() < 1e-13 {
            return None;
        }
        let root = -qc / qb;
        if root.abs() < 1e-4 {
            return None;
        }
        let v = PlanePoint::new(e.x + root * dir.x, e.y + root * dir.y);
        return (v.norm() <= 20.0).then_some((v, t));
    }
    let disc = qb * qb - 4.0 * qa * qc;
    if disc <= 0.0 {
        return None;
    }
    let sq = disc.sqrt();
    for root in [(-qb + sq) / (2.0 * qa), (-qb - sq) / (2.0 * qa)] {
        if root.abs() > 1e-4 {
            let v = PlanePoint::new(e.x + root * dir.x, e.y + root * dir.y);
            if v.norm() > 1.0 + 1e-9 && v.norm() <= 20.0 {
                return Some((v, t));
            }
        }
    }
    None
}

fn sample_start(conic: &Conic, rng: &mut ChaCha8Rng) -> Option<(PlanePoint, IdealPoint)> {
    for _ in 0..200 {
        if let Some(hit) = start_on_conic(conic, rng.gen_range(0.0..TAU)) {
            return Some(hit);
        }
    }
    None
}

/// Check that random Poncelet orbits on the moduli conic of `center` close
/// at period 3 with tangency triangles barycentered at `center`, and that
/// the six polars of a sample triangle and its reflection lie on the conic.
pub fn verify_triangle_moduli(
    center: &PlanePoint,
    samples: usize,
    seed: u64,
) -> Result<TriangleModuliReport> {
    let conic = triangle_moduli_conic(center)?;
    let tol = 1e-7;

    let orbits: Vec<OrbitSample> = map_indexed(samples, |i| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (i as u64).wrapping_mul(0x9e3779b97f4a7c15));
        let Some((start, tangency)) = sample_start(&conic, &mut rng) else {
            return OrbitSample {
                start: PlanePoint::new(f64::NAN, f64::NAN),
                period: None,
                closure_residual: f64::INFINITY,
                tangency_barycenter: None,
                barycenter_error: None,
                pass: false,
            };
        };
        let orbit = match poncelet_orbit_from(&conic, &start, &tangency, 9, tol) {
            Ok(o) => o,
            Err(_) => {
                return OrbitSample {
                    start,
                    period: None,
                    closure_residual: f64::INFINITY,
                    tangency_barycenter: None,
                    barycenter_error: None,
                    pass: false,
                }
            }
        };
        let (tangency_barycenter, barycenter_error) = match orbit.tangency_polygon() {
            Ok(tri) => match barycenter(&tri) {
                Ok(s) => (Some(s), Some(s.dist(center))),
                Err(_) => (None, None),
            },
            Err(_) => (None, None),
        };
        let pass = orbit.period == Some(3)
            && orbit.closure_residual < tol
            && barycenter_error.map(|e| e < tol).unwrap_or(false);
        OrbitSample {
            start,
            period: orbit.period,
            closure_residual: orbit.closure_residual,
            tangency_barycenter,
            barycenter_error,
            pass,
        }
    });

    // six-polar membership for a random triangle with the given barycenter
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xa5a5_5a5a);
    let tri = IdealPolygon::regular(3)
        .expect("regular triangle")
        .transform(&Mobius::rotation(rng.gen_range(0.0..TAU)))?
        .transform(&Mobius::taking_origin_to(*center)?)?;
    let hat = reflected_triangle(&tri)?;
    let mut six_polar_residual: f64 = 0.0;
    for l in 0..3 {
        for side in [tri.side(l), hat.side(l)] {
            let pole = polar_of_chord(&side)?;
            six_polar_residual = six_polar_residual.max(conic.eval(&pole).abs());
        }
    }

    let all_pass = orbits.iter().all(|o| o.pass) && six_polar_residual < 1e-7;
    Ok(TriangleModuliReport {
        center: *center,
        conic,
        conic_class: conic.classify(),
        orbits,
        six_polar_residual,
        all_pass,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct QuadModuliReport {
    pub barycenter: PlanePoint,
    pub orbits: Vec<OrbitSample>,
    /// Worst antipodality error `max(|Q₃+Q₁|, |Q₄+Q₂|)` over sampled orbits,
    /// meaningful when the barycenter is at the origin (rhombus case).
    pub rhombus_residual: Option<f64>,
    pub all_pass: bool,
}

/// For random fifth points, check that the pencil conic through the quad's
/// four polars carries 4-periodic orbits whose tangency quadrilaterals keep
/// the barycenter; at the origin, also check the rhombus antipodality.
pub fn verify_quad_moduli(
    poly: &IdealPolygon,
    samples: usize,
    seed: u64,
) -> Result<QuadModuliReport> {
    if poly.len() != 4 {
        return Err(Error::WrongVertexCount {
            expected: "4".to_string(),
            got: poly.len(),
        });
    }
    if !poly.is_convex() {
        return Err(Error::NotConvex(
            "quad moduli need a convex quadrilateral".into(),
        ));
    }
    let s = barycenter(poly)?;
    let tol = 1e-7;
    let finite_poles: Vec<PlanePoint> = (0..4)
        .filter_map(|i| match projective_pole(&poly.side(i)) {
            Ok(ProjectivePoint::Finite(p)) => Some(Ok(p)),
            Ok(ProjectivePoint::AtInfinity { .. }) => None,
            Err(e) => Some(Err(e)),
        })
        .collect::<Result<_>>()?;
    let at_origin = s.norm() < 1e-9;

    let results: Vec<(OrbitSample, f64)> = map_indexed(samples, |i| {
        let mut rng =
            ChaCha8Rng::seed_from_u64(seed ^ (i as u64).wrapping_mul(0x517c_c1b7_2722_0a95));
        let bad = |start: PlanePoint| {
            (
                OrbitSample {
                    start,
                    period: None,
                    closure_residual: f64::INFINITY,
                    tangency_barycenter: None,
                    barycenter_error: None,
                    pass: false,
                },
                f64::INFINITY,
            )
        };
        // a fifth point on a random tangent line, so the orbit start and its
        // incoming tangency are known exactly
        let (q, tangency) = loop {
            let psi = rng.gen_range(0.0..TAU);
            let t = IdealPoint::from_angle(psi);
            let e = t.embed();
            let mag = rng.gen_range(0.3..1.5) * if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
            let q = PlanePoint::new(e.x - mag * e.y, e.y + mag * e.x);
            if finite_poles.iter().all(|p| p.dist(&q) > 1e-3) {
                break (q, t);
            }
        };
        let conic = match polar_pencil(poly, &q) {
            Ok(c) => c,
            Err(_) => return bad(q),
        };
        let orbit = match poncelet_orbit_from(&conic, &q, &tangency, 12, tol) {
            Ok(o) => o,
            Err(_) => return bad(q),
        };
        let (tangency_barycenter, barycenter_error) = match orbit.tangency_polygon() {
            Ok(quad) => match barycenter(&quad) {
                Ok(b) => (Some(b), Some(b.dist(&s))),
                Err(_) => (None, None),
            },
            Err(_) => (None, None),
        };
        let mut rhombus = 0.0;
        if at_origin && orbit.period == Some(4) && orbit.vertices.len() >= 4 {
            let v = &orbit.vertices;
            rhombus = (v[0].x + v[2].x)
                .hypot(v[0].y + v[2].y)
                .max((v[1].x + v[3].x).hypot(v[1].y + v[3].y));
        }
        let pass = orbit.period == Some(4)
            && orbit.closure_residual < tol
            && barycenter_error.map(|e| e < tol).unwrap_or(false);
        (
            OrbitSample {
                start: q,
                period: orbit.period,
                closure_residual: orbit.closure_residual,
                tangency_barycenter,
                barycenter_error,
                pass,
            },
            rhombus,
        )
    });

    let rhombus_residual = at_origin.then(|| results.iter().map(|(_, r)| *r).fold(0.0, f64::max));
    let orbits: Vec<OrbitSample> = results.into_iter().map(|(o, _)| o).collect();
    let all_pass =
        orbits.iter().all(|o| o.pass) && rhombus_residual.map(|r| r < 1e-8).unwrap_or(true);
    Ok(QuadModuliReport {
        barycenter: s,
        orbits,
        rhombus_residual,
        all_pass,
    })
}

/// Exploratory report on the two conics traced by the polars of a
/// quadrilateral rotated about its barycenter: one per pair of opposite
/// sides. No theorem is asserted about when they coincide; the report just
/// measures it.
#[derive(Debug, Clone, Serialize)]
pub struct RotationTraceReport {
    pub even_conic: Conic,
    pub odd_conic: Conic,
    /// Cosine similarity of the two coefficient vectors (1 = same conic).
    pub alignment: f64,
}

/// Rotate the quadrilateral about its barycenter and fit the conic traced by
/// the polars of each opposite-side pair.
pub fn trace_rotated_quad_conics(
    poly: &IdealPolygon,
    samples: usize,
) -> Result<RotationTraceReport> {
    if poly.len() != 4 {
        return Err(Error::WrongVertexCount {
            expected: "4".to_string(),
            got: poly.len(),
        });
    }
    if samples < 3 {
        return Err(Error::Infeasible("need at least 3 rotation samples".into()));
    }
    let s = barycenter(poly)?;
    // normalize the barycenter to the origin so rotations stay in the family
    let centered = poly.transform(&Mobius::taking_origin_to(s)?.inverse())?;
    let mut even = Vec::new();
    let mut odd = Vec::new();
    for k in 0..samples {
        let theta = 0.1 + TAU * k as f64 / (samples as f64 * 1.618);
        let rotated = centered.transform(&Mobius::rotation(theta))?;
        for i in 0..4 {
            let pole = polar_of_chord(&rotated.side(i))?;
            if i % 2 == 0 {
                even.push(pole);
            } else {
                odd.push(pole);
            }
        }
        if even.len() >= 5 && odd.len() >= 5 {
            break;
        }
    }
    let even_conic = conic_through(&[even[0], even[1], even[2], even[3], even[4]])?;
    let odd_conic = conic_through(&[odd[0], odd[1], odd[2], odd[3], odd[4]])?;
    let alignment = even_conic.alignment(&odd_conic);
    Ok(RotationTraceReport {
        even_conic,
        odd_conic,
        alignment,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct PentagonDriftReport {
    pub barycenter: PlanePoint,
    pub orbits: usize,
    pub max_drift: f64,
    pub min_drift: f64,
}

/// Negative control: trace the Poncelet family through the five polars of a
/// pentagon and measure how far the tangency-pentagon barycenters drift from
/// the original barycenter. For non-regular pentagons the drift is large.
pub fn pentagon_moduli_drift(
    poly: &IdealPolygon,
    samples: usize,
    seed: u64,
) -> Result<PentagonDriftReport> {
    if poly.len() != 5 {
        return Err(Error::WrongVertexCount {
            expected: "5".to_string(),
            got: poly.len(),
        });
    }
    let s = barycenter(poly)?;
    let poles: Vec<PlanePoint> = (0..5)
        .map(|i| polar_of_chord(&poly.side(i)))
        .collect::<Result<_>>()?;
    let conic = conic_through(&[poles[0], poles[1], poles[2], poles[3], poles[4]])?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut drifts = Vec::new();
    let mut attempts = 0;
    while drifts.len() < samples && attempts < samples * 100 {
        attempts += 1;
        let Some((start, tangency)) = sample_start(&conic, &mut rng) else {
            continue;
        };
        let Ok(orbit) = poncelet_orbit_from(&conic, &start, &tangency, 7, 1e-6) else {
            continue;
        };
        if orbit.period != Some(5) {
            continue;
        }
        let Ok(pent) = orbit.tangency_polygon() else {
            continue;
        };
        let Ok(b) = barycenter(&pent) else { continue };
        drifts.push(b.dist(&s));
    }
    if drifts.is_empty() {
        return Err(Error::Infeasible("no period-5 orbits found".into()));
    }
    Ok(PentagonDriftReport {
        barycenter: s,
        orbits: drifts.len(),
        max_drift: drifts.iter().cloned().fold(0.0, f64::max),
        min_drift: drifts.iter().cloned().fold(f64::INFINITY, f64::min),
    })
}
