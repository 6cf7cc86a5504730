//! Metric and incidence primitives of the Klein-Beltrami model: distances,
//! chords, polars, altitudes, reflections and intersections.
//!
//! Geodesics are straight chords of the unit disk. The signed quantity
//!
//! ```text
//! q(X) = ((I-K)·x + 2J·y - (I+K)) / sqrt(1 - |X|²)
//! ```
//!
//! attached to a chord equals `±sinh` of the hyperbolic distance from `X` to
//! the chord; the sign convention is "counterclockwise chord orientation ⇒
//! positive on the interior side".

use crate::error::{Error, Result};
use crate::projective::IdealPoint;
use serde::Serialize;

/// Default absolute tolerance for incidence and concurrence checks.
pub const DEFAULT_TOL: f64 = 1e-9;

/// A point of the Euclidean plane carrying the Klein model; may lie inside,
/// on, or outside the unit disk.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PlanePoint {
    pub x: f64,
    pub y: f64,
}

impl PlanePoint {
    pub const ORIGIN: PlanePoint = PlanePoint { x: 0.0, y: 0.0 };

    pub fn new(x: f64, y: f64) -> Self {
        PlanePoint { x, y }
    }

    pub fn dot(&self, other: &PlanePoint) -> f64 {
        self.x * other.x + self.y * other.y
    }

    pub fn norm_sq(&self) -> f64 {
        self.dot(self)
    }

    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    pub fn dist(&self, other: &PlanePoint) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }

    /// Whether the point lies strictly inside the unit disk.
    pub fn is_hyperbolic(&self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.norm_sq() < 1.0
    }

    fn require_hyperbolic(&self) -> Result<()> {
        if self.is_hyperbolic() {
            Ok(())
        } else {
            Err(Error::NotHyperbolicPoint {
                x: self.x,
                y: self.y,
            })
        }
    }
}

/// The linear form attached to one chord: `a = I-K`, `b = 2J`, `c = I+K`.
///
/// Computed from angles so that vertices at `p = ∞` need no special-casing:
///
/// ```text
/// a = cos((φ₁+φ₂)/2)/sin((φ₁-φ₂)/2),  b = sin((φ₁+φ₂)/2)/sin((φ₁-φ₂)/2),
/// c = cot((φ₁-φ₂)/2),
/// ```
///
/// which agrees with the rational forms `1/(p₁-p₂)`-style sums whenever both
/// parameters are finite.
#[derive(Debug, Clone, Copy, Default, Serialize)]
pub struct SideTriple {
    pub i_minus_k: f64,
    pub two_j: f64,
    pub i_plus_k: f64,
}

impl SideTriple {
    pub fn from_angles(phi1: f64, phi2: f64) -> Self {
        let half_diff = 0.5 * (phi1 - phi2);
        let half_sum = 0.5 * (phi1 + phi2);
        let s = half_diff.sin();
        SideTriple {
            i_minus_k: half_sum.cos() / s,
            two_j: half_sum.sin() / s,
            i_plus_k: half_diff.cos() / s,
        }
    }

    pub fn add(&self, other: &SideTriple) -> SideTriple {
        SideTriple {
            i_minus_k: self.i_minus_k + other.i_minus_k,
            two_j: self.two_j + other.two_j,
            i_plus_k: self.i_plus_k + other.i_plus_k,
        }
    }

    /// `(a, b)/c` is the pole of the chord when `c ≠ 0`.
    pub fn center(&self) -> Result<PlanePoint> {
        if self.i_plus_k.abs() < 1e-12 {
            return Err(Error::DegenerateBarycenter);
        }
        Ok(PlanePoint::new(
            self.i_minus_k / self.i_plus_k,
            self.two_j / self.i_plus_k,
        ))
    }
}

/// An oriented geodesic: the chord from `start` to `end`.
#[derive(Debug, Clone, Copy)]
pub struct Chord {
    start: IdealPoint,
    end: IdealPoint,
}

impl Chord {
    pub fn new(start: IdealPoint, end: IdealPoint) -> Result<Self> {
        if start.circular_gap(&end) <= 1e-9 {
            return Err(Error::CoincidentPoints);
        }
        Ok(Chord { start, end })
    }

    pub fn start(&self) -> &IdealPoint {
        &self.start
    }

    pub fn end(&self) -> &IdealPoint {
        &self.end
    }

    pub fn reversed(&self) -> Chord {
        Chord {
            start: self.end,
            end: self.start,
        }
    }

    pub fn triple(&self) -> SideTriple {
        SideTriple::from_angles(self.start.angle(), self.end.angle())
    }

    /// Whether the chord is (numerically) a diameter, i.e. its pole is at
    /// infinity.
    pub fn is_diameter(&self) -> bool {
        self.triple().i_plus_k.abs() < 1e-12
    }

    /// Unit normal direction of the chord (the direction in which the pole
    /// escapes for a near-diameter chord).
    pub fn normal_direction(&self) -> (f64, f64) {
        let t = self.triple();
        let n = t.i_minus_k.hypot(t.two_j);
        (t.i_minus_k / n, t.two_j / n)
    }

    /// The Euclidean line through the two endpoints, with the sign convention
    /// that the eval is positive on the interior side of a counterclockwise
    /// chord.
    pub fn line(&self) -> Line {
        let t = self.triple();
        let n = t.i_minus_k.hypot(t.two_j);
        Line {
            u: t.i_minus_k / n,
            v: t.two_j / n,
            w: -t.i_plus_k / n,
        }
    }
}

/// Hyperbolic distance between two points of the open disk.
pub fn point_distance(x: &PlanePoint, y: &PlanePoint) -> Result<f64> {
    x.require_hyperbolic()?;
    y.require_hyperbolic()?;
    let num = 1.0 - x.dot(y);
    let den = ((1.0 - x.norm_sq()) * (1.0 - y.norm_sq())).sqrt();
    Ok((num / den).max(1.0).acosh())
}

/// Signed hyperbolic sine of the distance from `x` to the chord; antisymmetric
/// in the chord orientation and zero exactly on the chord.
pub fn signed_sinh_distance(x: &PlanePoint, chord: &Chord) -> Result<f64> {
    x.require_hyperbolic()?;
    let t = chord.triple();
    Ok((t.i_minus_k * x.x + t.two_j * x.y - t.i_plus_k) / (1.0 - x.norm_sq()).sqrt())
}

/// Hyperbolic distance from `x` to the chord.
pub fn line_distance(x: &PlanePoint, chord: &Chord) -> Result<f64> {
    Ok(signed_sinh_distance(x, chord)?.abs().asinh())
}

/// The pole of a chord: intersection of the tangent lines at its endpoints,
/// `((1-pp')/(1+pp'), (p+p')/(1+pp'))` in parameters.
pub fn polar_of_chord(chord: &Chord) -> Result<PlanePoint> {
    let t = chord.triple();
    if chord.is_diameter() {
        let (dx, dy) = chord.normal_direction();
        return Err(Error::PolarAtInfinity { dx, dy });
    }
    Ok(PlanePoint::new(
        t.i_minus_k / t.i_plus_k,
        t.two_j / t.i_plus_k,
    ))
}

/// Inverse of the polar construction: the chord whose pole is `q`.
///
/// The endpoints are the intersections of the polar line `{q·X = 1}` with the
/// unit circle, ordered so the chord is counterclockwise as seen from `q`.
pub fn chord_from_pole(q: &PlanePoint) -> Result<Chord> {
    let s = q.norm_sq();
    if s <= 1.0 {
        return Err(Error::PoleInsideDisk { x: q.x, y: q.y });
    }
    let base = PlanePoint::new(q.x / s, q.y / s);
    let t = ((s - 1.0) / s).sqrt();
    let perp = PlanePoint::new(-q.y / s.sqrt(), q.x / s.sqrt());
    let p1 = PlanePoint::new(base.x + t * perp.x, base.y + t * perp.y);
    let p2 = PlanePoint::new(base.x - t * perp.x, base.y - t * perp.y);
    Chord::new(
        IdealPoint::from_angle(p2.y.atan2(p2.x)),
        IdealPoint::from_angle(p1.y.atan2(p1.x)),
    )
}

/// A Euclidean line `{ux + vy + w = 0}` normalized to `u² + v² = 1`, so that
/// `eval` returns the signed Euclidean distance.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct Line {
    pub u: f64,
    pub v: f64,
    pub w: f64,
}

impl Line {
    pub fn eval(&self, p: &PlanePoint) -> f64 {
        self.u * p.x + self.v * p.y + self.w
    }

    pub fn through_point_with_direction(p: &PlanePoint, dx: f64, dy: f64) -> Result<Line> {
        let n = dx.hypot(dy);
        if n == 0.0 {
            return Err(Error::CoincidentPoints);
        }
        Ok(Line {
            u: dy / n,
            v: -dx / n,
            w: (dx * p.y - dy * p.x) / n,
        })
    }
}

/// Join of two distinct points.
pub fn line_through(a: &PlanePoint, b: &PlanePoint) -> Result<Line> {
    let u = a.y - b.y;
    let v = b.x - a.x;
    let w = a.x * b.y - a.y * b.x;
    let n = u.hypot(v);
    if n < 1e-14 * (a.norm() + b.norm()).max(1.0) {
        return Err(Error::CoincidentPoints);
    }
    Ok(Line {
        u: u / n,
        v: v / n,
        w: w / n,
    })
}

/// Meet of two lines; parallel lines fail with the common direction.
pub fn intersect(l1: &Line, l2: &Line) -> Result<PlanePoint> {
    let det = l1.u * l2.v - l1.v * l2.u;
    if det.abs() < 1e-12 {
        return Err(Error::ParallelLines {
            dx: -l1.v,
            dy: l1.u,
        });
    }
    Ok(PlanePoint::new(
        (l1.v * l2.w - l1.w * l2.v) / det,
        (l1.w * l2.u - l1.u * l2.w) / det,
    ))
}

/// The hyperbolic altitude from `v` to the chord: the line through `v` and
/// the pole of the chord (every geodesic through the pole crosses the chord
/// orthogonally). For a diameter the pole is at infinity and the altitude
/// degenerates to the Euclidean perpendicular from `v`.
pub fn altitude_line(v: &PlanePoint, chord: &Chord) -> Result<Line> {
    match polar_of_chord(chord) {
        Ok(pole) => {
            if v.dist(&pole) < 1e-12 {
                return Err(Error::AltitudeUndefined);
            }
            line_through(v, &pole)
        }
        Err(Error::PolarAtInfinity { dx, dy }) => Line::through_point_with_direction(v, dx, dy),
        Err(e) => Err(e),
    }
}

/// Hyperbolic reflection of an ideal point across a chord: the second
/// intersection with the circle of the line through the point and the pole.
pub fn reflect_ideal_point(p: &IdealPoint, chord: &Chord) -> Result<IdealPoint> {
    if p.circular_gap(chord.start()) <= 1e-9 || p.circular_gap(chord.end()) <= 1e-9 {
        return Err(Error::ReflectionUndefined);
    }
    let e = p.embed();
    match polar_of_chord(chord) {
        Ok(pole) => {
            let d = PlanePoint::new(pole.x - e.x, pole.y - e.y);
            let dd = d.norm_sq();
            let t = -2.0 * e.dot(&d) / dd;
            let image = PlanePoint::new(e.x + t * d.x, e.y + t * d.y);
            Ok(IdealPoint::from_angle(image.y.atan2(image.x)))
        }
        Err(Error::PolarAtInfinity { .. }) => {
            // Euclidean mirror across the diameter
            let axis = chord.start().angle();
            Ok(IdealPoint::from_angle(2.0 * axis - p.angle()))
        }
        Err(e) => Err(e),
    }
}

/// Thresholded collinearity of three points.
pub fn collinear(a: &PlanePoint, b: &PlanePoint, c: &PlanePoint, tol: f64) -> bool {
    let (ux, uy) = (b.x - a.x, b.y - a.y);
    let (vx, vy) = (c.x - a.x, c.y - a.y);
    let nu = ux.hypot(uy);
    let nv = vx.hypot(vy);
    if nu < tol || nv < tol {
        return true;
    }
    ((ux * vy - uy * vx) / (nu * nv)).abs() < tol
}

/// Least-squares meet of a family of lines and the largest distance from the
/// meet to any of them.
pub fn concurrence_residual(lines: &[Line]) -> Result<(PlanePoint, f64)> {
    if lines.len() < 2 {
        return Err(Error::TooFewLines(lines.len()));
    }
    let (mut a11, mut a12, mut a22, mut b1, mut b2) = (0.0, 0.0, 0.0, 0.0, 0.0);
    for l in lines {
        a11 += l.u * l.u;
        a12 += l.u * l.v;
        a22 += l.v * l.v;
        b1 -= l.w * l.u;
        b2 -= l.w * l.v;
    }
    let det = a11 * a22 - a12 * a12;
    if det.abs() < 1e-14 {
        return Err(Error::SingularSystem("all lines nearly parallel"));
    }
    let meet = PlanePoint::new((a22 * b1 - a12 * b2) / det, (a11 * b2 - a12 * b1) / det);
    let residual = lines
        .iter()
        .map(|l| l.eval(&meet).abs())
        .fold(0.0, f64::max);
    Ok((meet, residual))
}
