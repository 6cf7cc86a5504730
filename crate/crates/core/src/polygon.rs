//! Ideal polygons, their Hamiltonians, and the hyperbolic barycenter.
//!
//! For an ideal polygon with vertex parameters `p₁, …, pₙ` (indices mod n),
//! the per-side sums
//!
//! ```text
//! I = Σ 1/(pₗ - pₗ₊₁),   J = ½ Σ (pₗ + pₗ₊₁)/(pₗ - pₗ₊₁),   K = Σ pₗpₗ₊₁/(pₗ - pₗ₊₁)
//! ```
//!
//! determine the hyperbolic barycenter
//!
//! ```text
//! S = ((I - K)/(I + K), 2J/(I + K)),
//! ```
//!
//! the unique interior minimizer of the sum of hyperbolic sines of the
//! distances to the sides. All sums are carried in the angle form of
//! [`SideTriple`] so vertices at `p = ∞` need no special-casing; the raw
//! rational sums are only exposed when every parameter is finite.

use crate::error::{Error, Result};
use crate::klein::{signed_sinh_distance, Chord, PlanePoint, SideTriple};
use crate::projective::{cross_ratio, ExtReal, IdealPoint, KleinIsometry, Mobius};
use serde::Serialize;
use std::f64::consts::TAU;

/// Listing orientation of a polygon around the circle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Orientation {
    Counterclockwise,
    Clockwise,
}

/// A cyclically ordered list of n ≥ 3 distinct ideal points.
///
/// Convexity is detected, not required: the listing winds around the circle
/// some number `k` of times, and the polygon is convex exactly when `k = 1`
/// (counterclockwise) or `k = n - 1` (clockwise). Star polygons such as the
/// regular pentagram are accepted.
#[derive(Debug, Clone)]
pub struct IdealPolygon {
    vertices: Vec<IdealPoint>,
    winding: usize,
}

impl IdealPolygon {
    pub fn new(vertices: Vec<IdealPoint>) -> Result<Self> {
        let n = vertices.len();
        if n < 3 {
            return Err(Error::InvalidPolygon(format!(
                "need n >= 3 vertices, got {n}"
            )));
        }
        let mut sorted: Vec<f64> = vertices.iter().map(|v| v.angle()).collect();
        sorted.sort_by(f64::total_cmp);
        for i in 0..n {
            let gap = if i + 1 < n {
                sorted[i + 1] - sorted[i]
            } else {
                sorted[0] + TAU - sorted[n - 1]
            };
            if gap <= 1e-9 {
                return Err(Error::InvalidPolygon(
                    "vertices not pairwise distinct (min angle gap <= 1e-9)".into(),
                ));
            }
        }
        let total: f64 = (0..n)
            .map(|i| (vertices[(i + 1) % n].angle() - vertices[i].angle()).rem_euclid(TAU))
            .sum();
        let winding = (total / TAU).round() as usize;
        Ok(IdealPolygon { vertices, winding })
    }

    pub fn from_angles(angles: &[f64]) -> Result<Self> {
        Self::new(angles.iter().map(|&a| IdealPoint::from_angle(a)).collect())
    }

    pub fn from_params(params: &[ExtReal]) -> Result<Self> {
        Self::new(params.iter().map(|&p| IdealPoint::from_param(p)).collect())
    }

    /// The regular ideal n-gon with vertices at angles `2πl/n`.
    pub fn regular(n: usize) -> Result<Self> {
        Self::new(
            (0..n)
                .map(|l| IdealPoint::from_angle(TAU * l as f64 / n as f64))
                .collect(),
        )
    }

    /// Regular star polygon {n/step}: vertices at angles `2π·step·l/n`.
    pub fn regular_star(n: usize, step: usize) -> Result<Self> {
        Self::new(
            (0..n)
                .map(|l| IdealPoint::from_angle(TAU * ((step * l) % n) as f64 / n as f64))
                .collect(),
        )
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn vertices(&self) -> &[IdealPoint] {
        &self.vertices
    }

    pub fn vertex(&self, i: usize) -> &IdealPoint {
        &self.vertices[i % self.vertices.len()]
    }

    /// Side `ξᵢ`, the oriented chord from vertex `i` to vertex `i+1` (mod n).
    pub fn side(&self, i: usize) -> Chord {
        let n = self.vertices.len();
        Chord::new(self.vertices[i % n], self.vertices[(i + 1) % n])
            .expect("polygon invariant guarantees distinct adjacent vertices")
    }

    pub fn winding(&self) -> usize {
        self.winding
    }

    pub fn is_convex(&self) -> bool {
        self.winding == 1 || self.winding == self.vertices.len() - 1
    }

    pub fn orientation(&self) -> Orientation {
        if 2 * self.winding < self.vertices.len() {
            Orientation::Counterclockwise
        } else {
            Orientation::Clockwise
        }
    }

    pub fn reversed(&self) -> IdealPolygon {
        let mut vertices = self.vertices.clone();
        vertices.reverse();
        IdealPolygon::new(vertices).expect("reversal preserves validity")
    }

    /// Cyclic relabeling starting at vertex `k`.
    pub fn rotated_labels(&self, k: usize) -> IdealPolygon {
        let n = self.vertices.len();
        let vertices = (0..n).map(|i| self.vertices[(i + k) % n]).collect();
        IdealPolygon::new(vertices).expect("relabeling preserves validity")
    }

    /// Image under a Möbius map acting on the vertex parameters.
    pub fn transform(&self, m: &Mobius) -> Result<IdealPolygon> {
        IdealPolygon::new(self.vertices.iter().map(|v| m.apply_ideal(v)).collect())
    }

    /// Image under a Klein isometry acting on the embedded circle points.
    pub fn transform_isometry(&self, iso: &KleinIsometry) -> Result<IdealPolygon> {
        IdealPolygon::new(self.vertices.iter().map(|v| iso.apply_ideal(v)).collect())
    }

    pub fn all_params_finite(&self) -> bool {
        self.vertices.iter().all(|v| !v.param().is_infinite())
    }
}

/// A nonempty, deduplicated subset of side indices.
#[derive(Debug, Clone)]
pub struct SideSet {
    indices: Vec<usize>,
}

impl SideSet {
    pub fn new(indices: impl IntoIterator<Item = usize>, n: usize) -> Result<Self> {
        let mut v: Vec<usize> = indices.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        if v.is_empty() {
            return Err(Error::InvalidSideSet("empty".into()));
        }
        if let Some(&bad) = v.iter().find(|&&i| i >= n) {
            return Err(Error::InvalidSideSet(format!(
                "index {bad} out of range for n = {n}"
            )));
        }
        Ok(SideSet { indices: v })
    }

    pub fn all(n: usize) -> Self {
        SideSet {
            indices: (0..n).collect(),
        }
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }
}

/// Raw rational sums, available only when all vertex parameters are finite.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct RawHamiltonians {
    pub i: f64,
    pub j: f64,
    pub k: f64,
}

/// Combined per-side sums `(I-K, 2J, I+K)` over a side set.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct Hamiltonians {
    #[serde(rename = "iMinusK")]
    pub i_minus_k: f64,
    #[serde(rename = "twoJ")]
    pub two_j: f64,
    #[serde(rename = "iPlusK")]
    pub i_plus_k: f64,
    pub raw: Option<RawHamiltonians>,
}

impl Hamiltonians {
    pub fn triple(&self) -> SideTriple {
        SideTriple {
            i_minus_k: self.i_minus_k,
            two_j: self.two_j,
            i_plus_k: self.i_plus_k,
        }
    }
}

/// Angle-form Hamiltonian sums over `sides` (all sides when `None`).
pub fn hamiltonians(poly: &IdealPolygon, sides: Option<&SideSet>) -> Hamiltonians {
    let n = poly.len();
    let all;
    let set = match sides {
        Some(s) => s,
        None => {
            all = SideSet::all(n);
            &all
        }
    };
    let mut t = SideTriple::default();
    for &i in set.indices() {
        t = t.add(&poly.side(i).triple());
    }
    let raw = if poly.all_params_finite() {
        let (mut i_sum, mut j_sum, mut k_sum) = (0.0, 0.0, 0.0);
        for &idx in set.indices() {
            let p = poly.vertex(idx).param().finite().unwrap();
            let q = poly.vertex(idx + 1).param().finite().unwrap();
            let d = p - q;
            i_sum += 1.0 / d;
            j_sum += 0.5 * (p + q) / d;
            k_sum += p * q / d;
        }
        Some(RawHamiltonians {
            i: i_sum,
            j: j_sum,
            k: k_sum,
        })
    } else {
        None
    };
    Hamiltonians {
        i_minus_k: t.i_minus_k,
        two_j: t.two_j,
        i_plus_k: t.i_plus_k,
        raw,
    }
}

/// The hyperbolic barycenter `S = ((I-K)/(I+K), 2J/(I+K))`.
///
/// `I + K` never vanishes for convex polygons; a near-zero denominator
/// (possible for star polygons) is surfaced as an error.
pub fn barycenter(poly: &IdealPolygon) -> Result<PlanePoint> {
    hamiltonians(poly, None).triple().center()
}

/// The center `S_Ξ` attached to a subset of sides; a single side gives the
/// pole of that side, two adjacent sides give their common ideal vertex, and
/// the full set gives the barycenter. The point need not lie in the disk.
pub fn subset_center(poly: &IdealPolygon, sides: &SideSet) -> Result<PlanePoint> {
    hamiltonians(poly, Some(sides)).triple().center()
}

/// Weighted combination of subset centers with weights
/// `(I_Ξⱼ + K_Ξⱼ) / Σ (I_Ξⱼ + K_Ξⱼ)`; the weights sum to 1 and the result
/// nullifies the polynomial part of the combined gradient.
pub fn interpolation_center(poly: &IdealPolygon, sets: &[SideSet]) -> Result<PlanePoint> {
    if sets.is_empty() {
        return Err(Error::InvalidSideSet("empty family".into()));
    }
    let mut total = 0.0;
    let mut acc = PlanePoint::ORIGIN;
    for set in sets {
        let h = hamiltonians(poly, Some(set));
        let c = h.triple().center()?;
        total += h.i_plus_k;
        acc = PlanePoint::new(acc.x + h.i_plus_k * c.x, acc.y + h.i_plus_k * c.y);
    }
    if total.abs() < 1e-12 {
        return Err(Error::DegenerateBarycenter);
    }
    Ok(PlanePoint::new(acc.x / total, acc.y / total))
}

/// Sum of signed hyperbolic sines of distances from `x` to the selected
/// sides. Positive on the interior for counterclockwise listings.
pub fn objective(poly: &IdealPolygon, sides: &SideSet, x: &PlanePoint) -> Result<f64> {
    let mut total = 0.0;
    for &i in sides.indices() {
        total += signed_sinh_distance(x, &poly.side(i))?;
    }
    Ok(total)
}

/// Analytic gradient of [`objective`] at an interior point.
pub fn gradient(poly: &IdealPolygon, sides: &SideSet, x: &PlanePoint) -> Result<[f64; 2]> {
    if !x.is_hyperbolic() {
        return Err(Error::NotHyperbolicPoint { x: x.x, y: x.y });
    }
    let [px, py] = gradient_polynomial_part(poly, sides, x);
    let w = (1.0 - x.norm_sq()).powf(1.5);
    Ok([px / w, py / w])
}

/// The polynomial part `(1-|X|²)^{3/2} ∇Q`, defined for any finite `x`; it
/// vanishes exactly at the subset center, even when that point lies outside
/// the disk.
pub fn gradient_polynomial_part(poly: &IdealPolygon, sides: &SideSet, x: &PlanePoint) -> [f64; 2] {
    let h = hamiltonians(poly, Some(sides));
    let (a, b, c) = (h.i_minus_k, h.two_j, h.i_plus_k);
    [
        a - a * x.y * x.y + b * x.x * x.y - c * x.x,
        b - b * x.x * x.x + a * x.x * x.y - c * x.y,
    ]
}

/// Determinant of the Hessian of the full objective at the barycenter:
/// `(I+K)² / (1-|S|²)²`.
pub fn hessian_det_at_barycenter(poly: &IdealPolygon) -> Result<f64> {
    let h = hamiltonians(poly, None);
    let s = h.triple().center()?;
    if !s.is_hyperbolic() {
        return Err(Error::NotHyperbolicPoint { x: s.x, y: s.y });
    }
    let d = 1.0 - s.norm_sq();
    Ok(h.i_plus_k * h.i_plus_k / (d * d))
}

/// The two sub-polygons obtained by cutting along a diagonal, with their
/// barycentric weights.
#[derive(Debug, Clone)]
pub struct ArchimedeanSplit {
    pub first: IdealPolygon,
    pub second: IdealPolygon,
    pub first_weight: f64,
    pub second_weight: f64,
}

/// Cut the polygon along the diagonal `(i, j)` into `(pᵢ…pⱼ)` and `(pⱼ…pᵢ)`.
///
/// Each Hamiltonian is additive across the cut (the shared diagonal enters
/// the two parts with opposite orientations), so the barycenter is the
/// weight-combination of the parts' barycenters with weights
/// `(I_Q + K_Q)/(I_P + K_P)` summing to 1.
pub fn archimedean_split(poly: &IdealPolygon, i: usize, j: usize) -> Result<ArchimedeanSplit> {
    let n = poly.len();
    let (i, j) = (i % n, j % n);
    let step = (j + n - i) % n;
    if step < 2 || step > n - 2 {
        return Err(Error::NotADiagonal { i, j, n });
    }
    let take = |from: usize, count: usize| -> Vec<IdealPoint> {
        (0..count).map(|k| *poly.vertex(from + k)).collect()
    };
    let first = IdealPolygon::new(take(i, step + 1))?;
    let second = IdealPolygon::new(take(j, n - step + 1))?;
    let c = hamiltonians(poly, None).i_plus_k;
    if c.abs() < 1e-12 {
        return Err(Error::DegenerateBarycenter);
    }
    let w1 = hamiltonians(&first, None).i_plus_k / c;
    let w2 = hamiltonians(&second, None).i_plus_k / c;
    Ok(ArchimedeanSplit {
        first,
        second,
        first_weight: w1,
        second_weight: w2,
    })
}

/// Outcome of comparing two same-size polygons for constant vertex-pair
/// cross-ratio.
#[derive(Debug, Clone, PartialEq)]
pub enum AlphaRelatedness {
    /// All n cross-ratios `[pₗ, qₗ, pₗ₊₁, qₗ₊₁]` agree: the common value.
    Related { alpha: f64 },
    /// The cross-ratios differ by more than the tolerance.
    Unrelated { spread: f64 },
    /// Some cross-ratio is degenerate (shared vertices) or infinite.
    Degenerate { detail: String },
}

/// Test whether two polygons are α-related (all vertex-pair cross-ratios
/// equal, tolerance 1e-9); α-related polygons share their barycenter.
pub fn alpha_relatedness(p: &IdealPolygon, q: &IdealPolygon) -> Result<AlphaRelatedness> {
    let n = p.len();
    if q.len() != n {
        return Err(Error::SizeMismatch(n, q.len()));
    }
    let mut values = Vec::with_capacity(n);
    for l in 0..n {
        match cross_ratio(
            p.vertex(l).param(),
            q.vertex(l).param(),
            p.vertex(l + 1).param(),
            q.vertex(l + 1).param(),
        ) {
            Ok(ExtReal::Finite(v)) => values.push(v),
            Ok(ExtReal::Infinity) => {
                return Ok(AlphaRelatedness::Degenerate {
                    detail: format!("cross-ratio at l = {l} is infinite"),
                })
            }
            Err(e) => {
                return Ok(AlphaRelatedness::Degenerate {
                    detail: format!("cross-ratio at l = {l}: {e}"),
                })
            }
        }
    }
    let max = values.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let min = values.iter().cloned().fold(f64::INFINITY, f64::min);
    let spread = max - min;
    let scale = values.iter().map(|v| v.abs()).fold(1.0, f64::max);
    if spread <= 1e-9 * scale {
        Ok(AlphaRelatedness::Related {
            alpha: values.iter().sum::<f64>() / n as f64,
        })
    } else {
        Ok(AlphaRelatedness::Unrelated { spread })
    }
}

/// The fully Möbius-invariant combination `IK - J²`, computed in angle form
/// as `((I+K)² - (I-K)² - (2J)²)/4`.
pub fn mobius_invariant(poly: &IdealPolygon) -> f64 {
    let h = hamiltonians(poly, None);
    (h.i_plus_k * h.i_plus_k - h.i_minus_k * h.i_minus_k - h.two_j * h.two_j) / 4.0
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use rand::{Rng, SeedableRng};
    use std::f64::consts::{FRAC_PI_2, PI};

    fn regular_triangle() -> IdealPolygon {
        // params (sqrt3, -sqrt3, 0)
        IdealPolygon::from_params(&[
            ExtReal::Finite(3.0f64.sqrt()),
            ExtReal::Finite(-(3.0f64.sqrt())),
            ExtReal::Finite(0.0),
        ])
        .unwrap()
    }

    fn regular_square() -> IdealPolygon {
        IdealPolygon::from_angles(&[0.0, FRAC_PI_2, PI, 3.0 * FRAC_PI_2]).unwrap()
    }

    fn moduli_triangle() -> IdealPolygon {
        IdealPolygon::from_params(&[
            ExtReal::Finite(3.0f64.sqrt() / 2.0),
            ExtReal::Finite(-(3.0f64.sqrt()) / 2.0),
            ExtReal::Finite(0.0),
        ])
        .unwrap()
    }

    #[test]
    fn hamiltonians_regular_triangle() {
        let h = hamiltonians(&regular_triangle(), None);
        let raw = h.raw.unwrap();
        assert_relative_eq!(raw.i, -(3.0f64.sqrt()) / 2.0, epsilon = 1e-12);
        assert_relative_eq!(raw.j, 0.0, epsilon = 1e-12);
        assert_relative_eq!(raw.k, -(3.0f64.sqrt()) / 2.0, epsilon = 1e-12);
        assert_relative_eq!(h.i_plus_k, -(3.0f64.sqrt()), epsilon = 1e-12);
        // angle form agrees with the rational form
        assert_relative_eq!(h.i_minus_k, raw.i - raw.k, epsilon = 1e-10);
        assert_relative_eq!(h.two_j, 2.0 * raw.j, epsilon = 1e-10);
    }

    #[test]
    fn hamiltonians_regular_square() {
        let h = hamiltonians(&regular_square(), None);
        assert_relative_eq!(h.i_minus_k, 0.0, epsilon = 1e-12);
        assert_relative_eq!(h.two_j, 0.0, epsilon = 1e-12);
        assert_relative_eq!(h.i_plus_k, -4.0, epsilon = 1e-12);
        assert!(h.raw.is_none(), "square has a vertex at p = infinity");
    }

    #[test]
    fn reversal_negates_hamiltonians() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2);
        for _ in 0..50 {
            let mut angles: Vec<f64> = (0..6).map(|_| rng.gen_range(0.0..TAU)).collect();
            angles.sort_by(f64::total_cmp);
            if angles.windows(2).any(|w| w[1] - w[0] < 0.05) {
                continue;
            }
            let p = IdealPolygon::from_angles(&angles).unwrap();
            let h = hamiltonians(&p, None);
            let hr = hamiltonians(&p.reversed(), None);
            assert_relative_eq!(h.i_minus_k, -hr.i_minus_k, epsilon = 1e-9);
            assert_relative_eq!(h.two_j, -hr.two_j, epsilon = 1e-9);
            assert_relative_eq!(h.i_plus_k, -hr.i_plus_k, epsilon = 1e-9);
        }
    }

    #[test]
    fn barycenter_anchors() {
        let s = barycenter(&regular_triangle()).unwrap();
        assert!(s.norm() < 1e-12);

        let s = barycenter(&regular_square()).unwrap();
        assert!(s.norm() < 1e-12);

        let s = barycenter(&moduli_triangle()).unwrap();
        assert_relative_eq!(s.x, 0.6, epsilon = 1e-12);
        assert_relative_eq!(s.y, 0.0, epsilon = 1e-12);
    }

    #[test]
    fn barycenter_invariant_under_relabeling_and_reversal() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(8);
        for _ in 0..30 {
            let mut angles: Vec<f64> = (0..5).map(|_| rng.gen_range(0.0..TAU)).collect();
            angles.sort_by(f64::total_cmp);
            if angles.windows(2).any(|w| w[1] - w[0] < 0.1) {
                continue;
            }
            let p = IdealPolygon::from_angles(&angles).unwrap();
            let s = barycenter(&p).unwrap();
            for k in 1..5 {
                let s2 = barycenter(&p.rotated_labels(k)).unwrap();
                assert!(s.dist(&s2) < 1e-12);
            }
            let s3 = barycenter(&p.reversed()).unwrap();
            assert!(s.dist(&s3) < 1e-12);
        }
    }

    #[test]
    fn subset_center_special_cases() {
        let p = moduli_triangle();
        // single side: the pole
        let single = SideSet::new([0], 3).unwrap();
        let c = subset_center(&p, &single).unwrap();
        let pole = crate::klein::polar_of_chord(&p.side(0)).unwrap();
        assert!(c.dist(&pole) < 1e-12);

        // two adjacent sides {0, 1}: the shared vertex P_1
        let pair = SideSet::new([0, 1], 3).unwrap();
        let c = subset_center(&p, &pair).unwrap();
        assert!(c.dist(&p.vertex(1).embed()) < 1e-12);

        // all sides: the barycenter
        let all = SideSet::all(3);
        let c = subset_center(&p, &all).unwrap();
        assert!(c.dist(&barycenter(&p).unwrap()) < 1e-12);
    }

    #[test]
    fn interpolation_center_reassembles_barycenter() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(4);
        for _ in 0..30 {
            let mut angles: Vec<f64> = (0..5).map(|_| rng.gen_range(0.0..TAU)).collect();
            angles.sort_by(f64::total_cmp);
            if angles.windows(2).any(|w| w[1] - w[0] < 0.1) {
                continue;
            }
            let p = IdealPolygon::from_angles(&angles).unwrap();
            let singletons: Vec<SideSet> = (0..5).map(|i| SideSet::new([i], 5).unwrap()).collect();
            let s = interpolation_center(&p, &singletons).unwrap();
            assert!(s.dist(&barycenter(&p).unwrap()) < 1e-10);
        }
    }

    #[test]
    fn interpolation_center_quad_on_diagonal() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(14);
        for _ in 0..30 {
            let mut angles: Vec<f64> = (0..4).map(|_| rng.gen_range(0.0..TAU)).collect();
            angles.sort_by(f64::total_cmp);
            if angles.windows(2).any(|w| w[1] - w[0] < 0.2) {
                continue;
            }
            let p = IdealPolygon::from_angles(&angles).unwrap();
            // {ξ₄, ξ₁} and {ξ₂, ξ₃} in 1-based labels = {3, 0} and {1, 2}
            let sets = [
                SideSet::new([3, 0], 4).unwrap(),
                SideSet::new([1, 2], 4).unwrap(),
            ];
            let c = interpolation_center(&p, &sets).unwrap();
            let s = barycenter(&p).unwrap();
            assert!(c.dist(&s) < 1e-10);
            // the two subset centers are the opposite vertices P₁, P₃
            // (0-based: vertex 0 and vertex 2), and S lies on that chord
            let line =
                crate::klein::line_through(&p.vertex(0).embed(), &p.vertex(2).embed()).unwrap();
            assert!(line.eval(&s).abs() < 1e-10);
        }
    }

    #[test]
    fn objective_anchors() {
        let p = regular_triangle();
        let all = SideSet::all(3);
        let q = objective(&p, &all, &PlanePoint::ORIGIN).unwrap();
        // each side at sinh distance 1/sqrt(3) from the center; the params
        // (sqrt3, -sqrt3, 0) list counterclockwise, so the sum is positive
        assert_relative_eq!(q, 3.0f64.sqrt(), epsilon = 1e-12);

        // on a side
        let single = SideSet::new([0], 3).unwrap();
        let side_mid = PlanePoint::new(-0.5, 0.0); // chord between angles ±2π/3
        assert!(objective(&p, &single, &side_mid).unwrap().abs() < 1e-12);
    }

    #[test]
    fn gradient_matches_finite_differences() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(10);
        for _ in 0..100 {
            let mut angles: Vec<f64> = (0..5).map(|_| rng.gen_range(0.0..TAU)).collect();
            angles.sort_by(f64::total_cmp);
            if angles.windows(2).any(|w| w[1] - w[0] < 0.1) {
                continue;
            }
            let p = IdealPolygon::from_angles(&angles).unwrap();
            let all = SideSet::all(5);
            let r = rng.gen_range(0.0..0.8);
            let th = rng.gen_range(0.0..TAU);
            let x = PlanePoint::new(r * th.cos(), r * th.sin());
            let g = gradient(&p, &all, &x).unwrap();
            let h = 1e-6;
            let fd = [
                (objective(&p, &all, &PlanePoint::new(x.x + h, x.y)).unwrap()
                    - objective(&p, &all, &PlanePoint::new(x.x - h, x.y)).unwrap())
                    / (2.0 * h),
                (objective(&p, &all, &PlanePoint::new(x.x, x.y + h)).unwrap()
                    - objective(&p, &all, &PlanePoint::new(x.x, x.y - h)).unwrap())
                    / (2.0 * h),
            ];
            let scale = (g[0].hypot(g[1])).max(1.0);
            assert!((g[0] - fd[0]).hypot(g[1] - fd[1]) < 1e-6 * scale);
        }
    }

    #[test]
    fn polynomial_part_vanishes_at_subset_center() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(12);
        for _ in 0..50 {
            let mut angles: Vec<f64> = (0..6).map(|_| rng.gen_range(0.0..TAU)).collect();
            angles.sort_by(f64::total_cmp);
            if angles.windows(2).any(|w| w[1] - w[0] < 0.1) {
                continue;
            }
            let p = IdealPolygon::from_angles(&angles).unwrap();
            // arbitrary subset, including ones whose center is outside the disk
            let set = SideSet::new([0, 2, 3], 6).unwrap();
            if let Ok(c) = subset_center(&p, &set) {
                let g = gradient_polynomial_part(&p, &set, &c);
                assert!(g[0].hypot(g[1]) < 1e-10 * (1.0 + c.norm_sq()));
            }
        }
    }

    #[test]
    fn gradient_zero_at_center_of_regular_triangle() {
        let p = regular_triangle();
        let g = gradient(&p, &SideSet::all(3), &PlanePoint::ORIGIN).unwrap();
        assert!(g[0].hypot(g[1]) < 1e-14, "{g:?}");
    }

    #[test]
    fn hessian_det_anchors() {
        assert_relative_eq!(
            hessian_det_at_barycenter(&regular_triangle()).unwrap(),
            3.0,
            epsilon = 1e-12
        );
        assert_relative_eq!(
            hessian_det_at_barycenter(&regular_square()).unwrap(),
            16.0,
            epsilon = 1e-12
        );
    }

    #[test]
    fn archimedean_split_square() {
        // regular square cut along (p₁, p₃) = vertices 0 and 2
        let p = regular_square();
        let split = archimedean_split(&p, 0, 2).unwrap();
        let s1 = barycenter(&split.first).unwrap();
        let s2 = barycenter(&split.second).unwrap();
        assert!(s1.dist(&PlanePoint::new(0.0, 0.5)) < 1e-12);
        assert!(s2.dist(&PlanePoint::new(0.0, -0.5)) < 1e-12);
        assert_relative_eq!(split.first_weight, 0.5, epsilon = 1e-12);
        assert_relative_eq!(split.second_weight, 0.5, epsilon = 1e-12);
        let recombined = PlanePoint::new(
            split.first_weight * s1.x + split.second_weight * s2.x,
            split.first_weight * s1.y + split.second_weight * s2.y,
        );
        assert!(recombined.norm() < 1e-12);
    }

    #[test]
    fn archimedean_weights_and_collinearity() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(19);
        for _ in 0..40 {
            let n = rng.gen_range(4..9_usize);
            let mut angles: Vec<f64> = (0..n).map(|_| rng.gen_range(0.0..TAU)).collect();
            angles.sort_by(f64::total_cmp);
            if angles.windows(2).any(|w| w[1] - w[0] < 0.08) {
                continue;
            }
            let p = IdealPolygon::from_angles(&angles).unwrap();
            let s = barycenter(&p).unwrap();
            for i in 0..n {
                for j in (i + 2)..n {
                    if i == 0 && j == n - 1 {
                        continue; // adjacent through the wrap
                    }
                    let split = archimedean_split(&p, i, j).unwrap();
                    assert_relative_eq!(
                        split.first_weight + split.second_weight,
                        1.0,
                        epsilon = 1e-12
                    );
                    let s1 = barycenter(&split.first).unwrap();
                    let s2 = barycenter(&split.second).unwrap();
                    assert!(crate::klein::collinear(&s, &s1, &s2, 1e-8));
                }
            }
        }
    }

    #[test]
    fn archimedean_split_rejects_edges() {
        let p = regular_square();
        assert!(matches!(
            archimedean_split(&p, 0, 1),
            Err(Error::NotADiagonal { .. })
        ));
        assert!(matches!(
            archimedean_split(&p, 3, 0),
            Err(Error::NotADiagonal { .. })
        ));
    }

    #[test]
    fn alpha_relatedness_rotated_pentagon() {
        let p = IdealPolygon::regular(5).unwrap();
        let q = p.transform(&Mobius::rotation(0.3)).unwrap();
        match alpha_relatedness(&p, &q).unwrap() {
            AlphaRelatedness::Related { .. } => {}
            other => panic!("expected related, got {other:?}"),
        }
        let sp = barycenter(&p).unwrap();
        let sq = barycenter(&q).unwrap();
        assert!(sp.dist(&sq) < 1e-9);
    }

    #[test]
    fn alpha_relatedness_detects_degenerate_and_broken() {
        let p = IdealPolygon::regular(5).unwrap();
        match alpha_relatedness(&p, &p).unwrap() {
            AlphaRelatedness::Degenerate { .. } => {}
            other => panic!("expected degenerate, got {other:?}"),
        }

        let mut angles: Vec<f64> = p.vertices().iter().map(|v| v.angle() + 0.3).collect();
        angles[2] += 0.2; // push one vertex off the related family
        let q = IdealPolygon::from_angles(&angles).unwrap();
        match alpha_relatedness(&p, &q).unwrap() {
            AlphaRelatedness::Unrelated { .. } => {}
            other => panic!("expected unrelated, got {other:?}"),
        }
    }

    #[test]
    fn mobius_invariant_anchors() {
        assert_relative_eq!(mobius_invariant(&regular_triangle()), 0.75, epsilon = 1e-12);
        assert_relative_eq!(mobius_invariant(&regular_square()), 4.0, epsilon = 1e-12);
    }

    #[test]
    fn mobius_invariant_is_invariant() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(77);
        let p = IdealPolygon::regular(6).unwrap();
        let base = mobius_invariant(&p);
        for _ in 0..200 {
            let m = loop {
                let v: [f64; 4] = std::array::from_fn(|_| rng.gen_range(-1.5..1.5));
                if v[0] * v[3] - v[1] * v[2] > 0.1 {
                    break Mobius::new(v[0], v[1], v[2], v[3]).unwrap();
                }
            };
            let q = p.transform(&m).unwrap();
            let v = mobius_invariant(&q);
            assert!(
                (v - base).abs() < 1e-9 * base.abs().max(1.0),
                "{v} vs {base}"
            );
        }
    }

    #[test]
    fn winding_and_convexity() {
        assert_eq!(regular_square().winding(), 1);
        assert!(regular_square().is_convex());
        assert_eq!(
            regular_square().orientation(),
            Orientation::Counterclockwise
        );

        let cw = regular_square().reversed();
        assert_eq!(cw.winding(), 3);
        assert!(cw.is_convex());
        assert_eq!(cw.orientation(), Orientation::Clockwise);

        let star = IdealPolygon::regular_star(5, 2).unwrap();
        assert_eq!(star.winding(), 2);
        assert!(!star.is_convex());
    }

    #[test]
    fn rejects_degenerate_polygons() {
        assert!(IdealPolygon::from_angles(&[0.0, 1.0]).is_err());
        assert!(IdealPolygon::from_angles(&[0.0, 1.0, 1.0 + 1e-12]).is_err());
        assert!(IdealPolygon::from_angles(&[0.0, 1e-12, 1.0, 2.0]).is_err());
    }

    #[test]
    fn barycenter_isometry_equivariance() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(55);
        for _ in 0..50 {
            let mut angles: Vec<f64> = (0..6).map(|_| rng.gen_range(0.0..TAU)).collect();
            angles.sort_by(f64::total_cmp);
            if angles.windows(2).any(|w| w[1] - w[0] < 0.1) {
                continue;
            }
            let p = IdealPolygon::from_angles(&angles).unwrap();
            let m = loop {
                let v: [f64; 4] = std::array::from_fn(|_| rng.gen_range(-1.5..1.5));
                if v[0] * v[3] - v[1] * v[2] > 0.1 {
                    break Mobius::new(v[0], v[1], v[2], v[3]).unwrap();
                }
            };
            let iso = KleinIsometry::from_mobius(&m).unwrap();
            let lhs = barycenter(&p.transform(&m).unwrap()).unwrap();
            let rhs = iso.apply(barycenter(&p).unwrap());
            assert!(lhs.dist(&rhs) < 1e-9 * (1.0 + rhs.norm()));
        }
    }
}
