//! The real projective line, Möbius maps acting on it, and their lifts to
//! isometries of the Klein disk.
//!
//! The boundary circle (the absolute) is parametrized by `p ∈ ℝ ∪ {∞}` via
//!
//! ```text
//! P(p) = ((1 - p²)/(1 + p²), 2p/(1 + p²)),    p = tan(φ/2).
//! ```
//!
//! `p = ∞` is a first-class tagged value and corresponds to the angle `π`
//! (circle point `(-1, 0)`); it is never encoded as a large float.

use crate::error::{Error, Result};
use crate::klein::PlanePoint;
use serde::{Serialize, Serializer};
use std::f64::consts::{PI, TAU};
use std::fmt;
use std::ops::Mul;

/// A point of ℝP¹: either a finite real or the point at infinity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ExtReal {
    Finite(f64),
    Infinity,
}

impl ExtReal {
    pub fn is_infinite(self) -> bool {
        matches!(self, ExtReal::Infinity)
    }

    pub fn finite(self) -> Option<f64> {
        match self {
            ExtReal::Finite(v) => Some(v),
            ExtReal::Infinity => None,
        }
    }

    /// Homogeneous coordinates `(x : y)` with `Finite(p) = (p : 1)` and `∞ = (1 : 0)`.
    fn homogeneous(self) -> (f64, f64) {
        match self {
            ExtReal::Finite(v) => (v, 1.0),
            ExtReal::Infinity => (1.0, 0.0),
        }
    }
}

impl From<f64> for ExtReal {
    fn from(v: f64) -> Self {
        ExtReal::Finite(v)
    }
}

impl fmt::Display for ExtReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtReal::Finite(v) => write!(f, "{v}"),
            ExtReal::Infinity => write!(f, "inf"),
        }
    }
}

impl Serialize for ExtReal {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            ExtReal::Finite(v) => s.serialize_f64(*v),
            ExtReal::Infinity => s.serialize_str("inf"),
        }
    }
}

/// Homogeneous difference: `det(u, v)` vanishes exactly when `u = v` in ℝP¹.
fn pdet(u: ExtReal, v: ExtReal) -> f64 {
    let (ux, uy) = u.homogeneous();
    let (vx, vy) = v.homogeneous();
    ux * vy - uy * vx
}

/// Cross-ratio `[a, b, c, d] = ((a-b)(c-d)) / ((a-d)(b-c))` with projective
/// limits at infinity.
///
/// Of the six slot conventions in circulation, this one is calibrated so that
/// the regular ideal square `(0, 1, ∞, -1)` evaluates to exactly `1`.
pub fn cross_ratio(a: ExtReal, b: ExtReal, c: ExtReal, d: ExtReal) -> Result<ExtReal> {
    let pts = [a, b, c, d];
    for i in 0..4 {
        for j in (i + 1)..4 {
            if pdet(pts[i], pts[j]) == 0.0 {
                return Err(Error::DegenerateCrossRatio);
            }
        }
    }
    let num = pdet(a, b) * pdet(c, d);
    let den = pdet(a, d) * pdet(b, c);
    if den == 0.0 {
        Ok(ExtReal::Infinity)
    } else {
        Ok(ExtReal::Finite(num / den))
    }
}

/// A point of the absolute, carried in both representations: the ℝP¹
/// parameter and the angle `φ ∈ [0, 2π)` with `p = tan(φ/2)`.
#[derive(Debug, Clone, Copy)]
pub struct IdealPoint {
    param: ExtReal,
    angle: f64,
}

impl Serialize for IdealPoint {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("IdealPoint", 2)?;
        st.serialize_field("angle", &self.angle)?;
        st.serialize_field("param", &self.param)?;
        st.end()
    }
}

impl IdealPoint {
    pub fn from_param(p: ExtReal) -> Self {
        let angle = match p {
            ExtReal::Infinity => PI,
            ExtReal::Finite(v) => (2.0 * v.atan()).rem_euclid(TAU),
        };
        IdealPoint { param: p, angle }
    }

    pub fn from_angle(angle: f64) -> Self {
        let angle = angle.rem_euclid(TAU);
        let param = if angle == PI {
            ExtReal::Infinity
        } else {
            ExtReal::Finite((angle / 2.0).tan())
        };
        IdealPoint { param, angle }
    }

    pub fn param(&self) -> ExtReal {
        self.param
    }

    pub fn angle(&self) -> f64 {
        self.angle
    }

    /// The embedded circle point `(cos φ, sin φ)`.
    pub fn embed(&self) -> PlanePoint {
        PlanePoint::new(self.angle.cos(), self.angle.sin())
    }

    /// Distance along the circle to `other`, in `[0, π]`.
    pub fn circular_gap(&self, other: &IdealPoint) -> f64 {
        let d = (self.angle - other.angle).rem_euclid(TAU);
        d.min(TAU - d)
    }
}

/// A fractional-linear map `p ↦ (ap + b)/(cp + d)` on ℝP¹, normalized so
/// that `|ad - bc| = 1`.
#[derive(Debug, Clone, Copy)]
pub struct Mobius {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl Mobius {
    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Result<Self> {
        let det = a * d - b * c;
        if det == 0.0 || !det.is_finite() {
            return Err(Error::DegenerateMobius);
        }
        let s = det.abs().sqrt();
        Ok(Mobius {
            a: a / s,
            b: b / s,
            c: c / s,
            d: d / s,
        })
    }

    pub fn identity() -> Self {
        Mobius {
            a: 1.0,
            b: 0.0,
            c: 0.0,
            d: 1.0,
        }
    }

    pub fn det(&self) -> f64 {
        self.a * self.d - self.b * self.c
    }

    /// Boundary action of the rotation of the disk by `theta`:
    /// `tan(φ/2) ↦ tan((φ + θ)/2)`.
    pub fn rotation(theta: f64) -> Self {
        let (s, c) = (theta / 2.0).sin_cos();
        Mobius {
            a: c,
            b: s,
            c: -s,
            d: c,
        }
    }

    /// Hyperbolic translation along the x-axis whose Klein lift maps the
    /// origin to `(r, 0)`, `-1 < r < 1`.
    pub fn axis_translation(r: f64) -> Result<Self> {
        if r.is_nan() || r.abs() >= 1.0 {
            return Err(Error::NotHyperbolicPoint { x: r, y: 0.0 });
        }
        // lift of diag(sqrt(λ), 1/sqrt(λ)) sends 0 to ((1-λ²)/(1+λ²), 0)
        let lambda = ((1.0 - r) / (1.0 + r)).sqrt();
        Mobius::new(lambda.sqrt(), 0.0, 0.0, 1.0 / lambda.sqrt())
    }

    /// Orientation-preserving isometry (as a boundary map) taking the origin
    /// of the disk to `target`.
    pub fn taking_origin_to(target: PlanePoint) -> Result<Self> {
        if !target.is_hyperbolic() {
            return Err(Error::NotHyperbolicPoint {
                x: target.x,
                y: target.y,
            });
        }
        let r = target.norm();
        let theta = target.y.atan2(target.x);
        Ok(Mobius::rotation(theta) * Mobius::axis_translation(r)?)
    }

    pub fn inverse(&self) -> Self {
        // for |det| = 1 the adjugate is the inverse up to sign of det
        Mobius {
            a: self.d,
            b: -self.b,
            c: -self.c,
            d: self.a,
        }
    }

    /// Fractional-linear image with `∞` handled projectively.
    pub fn apply(&self, p: ExtReal) -> ExtReal {
        match p {
            ExtReal::Infinity => {
                if self.c == 0.0 {
                    ExtReal::Infinity
                } else {
                    ExtReal::Finite(self.a / self.c)
                }
            }
            ExtReal::Finite(v) => {
                let den = self.c * v + self.d;
                if den == 0.0 {
                    ExtReal::Infinity
                } else {
                    ExtReal::Finite((self.a * v + self.b) / den)
                }
            }
        }
    }

    pub fn apply_ideal(&self, p: &IdealPoint) -> IdealPoint {
        IdealPoint::from_param(self.apply(p.param()))
    }
}

impl Mul for Mobius {
    type Output = Mobius;

    fn mul(self, rhs: Mobius) -> Mobius {
        Mobius {
            a: self.a * rhs.a + self.b * rhs.c,
            b: self.a * rhs.b + self.b * rhs.d,
            c: self.c * rhs.a + self.d * rhs.c,
            d: self.c * rhs.b + self.d * rhs.d,
        }
    }
}

/// A 3×3 matrix acting projectively on `(x, y, 1)`, preserving the unit
/// circle; the lift of an orientation-preserving Möbius map by its symmetric
/// square.
#[derive(Debug, Clone, Copy)]
pub struct KleinIsometry {
    m: [[f64; 3]; 3],
}

impl KleinIsometry {
    /// Lift a Möbius map with positive determinant.
    ///
    /// The boundary action of the result agrees with [`Mobius::apply`]
    /// composed with the circle embedding.
    pub fn from_mobius(m: &Mobius) -> Result<Self> {
        let det = m.det();
        if det <= 0.0 {
            return Err(Error::OrientationReversing { det });
        }
        let (a, b, c, d) = (m.a, m.b, m.c, m.d);
        Ok(KleinIsometry {
            m: [
                [
                    (a * a - b * b - c * c + d * d) / 2.0,
                    c * d - a * b,
                    (c * c + d * d - a * a - b * b) / 2.0,
                ],
                [b * d - a * c, a * d + b * c, a * c + b * d],
                [
                    (b * b + d * d - a * a - c * c) / 2.0,
                    a * b + c * d,
                    (a * a + b * b + c * c + d * d) / 2.0,
                ],
            ],
        })
    }

    pub fn identity() -> Self {
        KleinIsometry {
            m: [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]],
        }
    }

    /// Euclidean rotation about the origin, embedded projectively.
    pub fn rotation_about_origin(theta: f64) -> Self {
        let (s, c) = theta.sin_cos();
        KleinIsometry {
            m: [[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]],
        }
    }

    pub fn matrix(&self) -> &[[f64; 3]; 3] {
        &self.m
    }

    fn apply_homogeneous(&self, x: f64, y: f64, w: f64) -> (f64, f64, f64) {
        let r = &self.m;
        (
            r[0][0] * x + r[0][1] * y + r[0][2] * w,
            r[1][0] * x + r[1][1] * y + r[1][2] * w,
            r[2][0] * x + r[2][1] * y + r[2][2] * w,
        )
    }

    pub fn apply(&self, p: PlanePoint) -> PlanePoint {
        let (x, y, w) = self.apply_homogeneous(p.x, p.y, 1.0);
        PlanePoint::new(x / w, y / w)
    }

    pub fn apply_ideal(&self, p: &IdealPoint) -> IdealPoint {
        let e = p.embed();
        let (x, y, w) = self.apply_homogeneous(e.x, e.y, 1.0);
        let s = if w < 0.0 { -1.0 } else { 1.0 };
        IdealPoint::from_angle((s * y).atan2(s * x))
    }
}

impl Mul for KleinIsometry {
    type Output = KleinIsometry;

    fn mul(self, rhs: KleinIsometry) -> KleinIsometry {
        let mut m = [[0.0; 3]; 3];
        for (i, row) in m.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = (0..3).map(|k| self.m[i][k] * rhs.m[k][j]).sum();
            }
        }
        KleinIsometry { m }
    }
}
