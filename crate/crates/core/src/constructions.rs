//! Straightedge-style constructions of the hyperbolic barycenter, each
//! returned as a verifiable report: the construction lines, their
//! least-squares meet, how tightly they meet (`residual`), and how far the
//! meet lands from the coordinate formula (`deviation`).

use crate::error::{Error, Result};
use crate::klein::{
    altitude_line, concurrence_residual, line_through, polar_of_chord, Line, PlanePoint,
};
use crate::polygon::{archimedean_split, barycenter, subset_center, IdealPolygon, SideSet};
use serde::Serialize;

/// A construction line with a human-readable label for reports and figures.
#[derive(Debug, Clone, Serialize)]
pub struct LabeledLine {
    pub label: String,
    pub line: Line,
}

/// Outcome of one concurrence construction.
#[derive(Debug, Clone, Serialize)]
pub struct ConstructionReport {
    pub name: String,
    pub lines: Vec<LabeledLine>,
    /// Least-squares meet of the lines.
    pub meet: PlanePoint,
    /// Largest distance from the meet to any construction line.
    pub residual: f64,
    /// The coordinate-formula barycenter the construction should hit.
    pub reference: PlanePoint,
    /// `|meet - reference|`.
    pub deviation: f64,
}

fn assemble(
    name: &str,
    lines: Vec<LabeledLine>,
    reference: PlanePoint,
) -> Result<ConstructionReport> {
    let bare: Vec<Line> = lines.iter().map(|l| l.line).collect();
    let (meet, residual) = concurrence_residual(&bare)?;
    Ok(ConstructionReport {
        name: name.to_string(),
        lines,
        meet,
        residual,
        reference,
        deviation: meet.dist(&reference),
    })
}

fn require_n(poly: &IdealPolygon, expected: usize, what: &str) -> Result<()> {
    if poly.len() != expected {
        return Err(Error::WrongVertexCount {
            expected: what.to_string(),
            got: poly.len(),
        });
    }
    Ok(())
}

fn require_convex(poly: &IdealPolygon) -> Result<()> {
    if !poly.is_convex() {
        return Err(Error::NotConvex(format!(
            "winding {} for n = {}",
            poly.winding(),
            poly.len()
        )));
    }
    Ok(())
}

/// The line joining the poles of sides `i` and `j`. A diameter side has its
/// pole at infinity; the join degenerates to the line through the other pole
/// in the diameter's normal direction.
fn polar_join(poly: &IdealPolygon, i: usize, j: usize) -> Result<Line> {
    match (polar_of_chord(&poly.side(i)), polar_of_chord(&poly.side(j))) {
        (Ok(a), Ok(b)) => line_through(&a, &b),
        (Ok(a), Err(Error::PolarAtInfinity { dx, dy })) => {
            Line::through_point_with_direction(&a, dx, dy)
        }
        (Err(Error::PolarAtInfinity { dx, dy }), Ok(b)) => {
            Line::through_point_with_direction(&b, dx, dy)
        }
        (Err(e), _) | (_, Err(e)) => Err(e),
    }
}

/// The classical construction: the three vertex-to-opposite-pole lines of an
/// ideal triangle concur at its barycenter.
pub fn triangle_symmedian_construction(poly: &IdealPolygon) -> Result<ConstructionReport> {
    require_n(poly, 3, "3")?;
    let reference = barycenter(poly)?;
    let mut lines = Vec::with_capacity(3);
    for l in 0..3 {
        let pole = polar_of_chord(&poly.side(l + 1))?;
        lines.push(LabeledLine {
            label: format!("P{}->pole(side {})", l, (l + 1) % 3),
            line: line_through(&poly.vertex(l).embed(), &pole)?,
        });
    }
    assemble("triangle-symmedian", lines, reference)
}

/// The center of three consecutive sides `{ξₗ₋₁, ξₗ, ξₗ₊₁}` as the meet of
/// the altitudes from `Pₗ` to `ξₗ₊₁` and from `Pₗ₊₁` to `ξₗ₋₁`.
pub fn three_sides_center(poly: &IdealPolygon, l: usize) -> Result<ConstructionReport> {
    let n = poly.len();
    if n < 4 {
        return Err(Error::WrongVertexCount {
            expected: ">= 4".to_string(),
            got: n,
        });
    }
    let reference = subset_center(
        poly,
        &SideSet::new([(l + n - 1) % n, l % n, (l + 1) % n], n)?,
    )?;
    let lines = vec![
        LabeledLine {
            label: format!("altitude P{} -> side {}", l % n, (l + 1) % n),
            line: altitude_line(&poly.vertex(l).embed(), &poly.side(l + 1))?,
        },
        LabeledLine {
            label: format!("altitude P{} -> side {}", (l + 1) % n, (l + n - 1) % n),
            line: altitude_line(&poly.vertex(l + 1).embed(), &poly.side(l + n - 1))?,
        },
    ];
    assemble("three-sides-center", lines, reference)
}

/// The four quadrilateral constructions: vertex diagonals, polar diagonals,
/// the triangulation segments, and the two opposite-side-pair centers.
pub fn quad_constructions(poly: &IdealPolygon) -> Result<Vec<ConstructionReport>> {
    require_n(poly, 4, "4")?;
    require_convex(poly)?;
    let reference = barycenter(poly)?;
    let mut reports = Vec::with_capacity(4);

    // (a) the diagonals P1P3 and P2P4
    reports.push(assemble(
        "quad-diagonals",
        vec![
            LabeledLine {
                label: "P0P2".into(),
                line: line_through(&poly.vertex(0).embed(), &poly.vertex(2).embed())?,
            },
            LabeledLine {
                label: "P1P3".into(),
                line: line_through(&poly.vertex(1).embed(), &poly.vertex(3).embed())?,
            },
        ],
        reference,
    )?);

    // (b) the diagonals of the polar quadrilateral
    let polar_diagonals = vec![
        LabeledLine {
            label: "P0*P2*".into(),
            line: polar_join(poly, 0, 2)?,
        },
        LabeledLine {
            label: "P1*P3*".into(),
            line: polar_join(poly, 1, 3)?,
        },
    ];
    reports.push(assemble(
        "quad-polar-diagonals",
        polar_diagonals.clone(),
        reference,
    )?);

    // (c) segments joining symmedians of opposite triangles in the two
    // triangulations
    let tri_center = |l: usize| -> Result<PlanePoint> {
        let tri = IdealPolygon::new(vec![
            *poly.vertex(l + 3),
            *poly.vertex(l),
            *poly.vertex(l + 1),
        ])?;
        barycenter(&tri)
    };
    let s: Vec<PlanePoint> = (0..4).map(tri_center).collect::<Result<_>>()?;
    reports.push(assemble(
        "quad-triangulation",
        vec![
            LabeledLine {
                label: "S0S2".into(),
                line: line_through(&s[0], &s[2])?,
            },
            LabeledLine {
                label: "S1S3".into(),
                line: line_through(&s[1], &s[3])?,
            },
        ],
        reference,
    )?);

    // (d) the opposite side pairs minimize independently: S_{ξ0,ξ2} and
    // S_{ξ1,ξ3} both equal the barycenter, each lying on both polar diagonals
    let odd = subset_center(poly, &SideSet::new([0, 2], 4)?)?;
    let even = subset_center(poly, &SideSet::new([1, 3], 4)?)?;
    let mut report = assemble("quad-askew-side-pairs", polar_diagonals, reference)?;
    report.deviation = report
        .deviation
        .max(odd.dist(&reference))
        .max(even.dist(&reference));
    reports.push(report);

    Ok(reports)
}

/// The two pentagon constructions: the five segments from each triangle
/// symmedian to the opposite diagonal meet, and the five vertex-to-R lines.
pub fn pentagon_constructions(poly: &IdealPolygon) -> Result<Vec<ConstructionReport>> {
    require_n(poly, 5, "5")?;
    require_convex(poly)?;
    let reference = barycenter(poly)?;
    let n = 5;

    // report A: S_l = symmedian of (P_{l-1}, P_l, P_{l+1}); T_l = meet of the
    // two diagonals avoiding P_l; the five S_lT_l concur at the barycenter
    let mut lines_a = Vec::with_capacity(n);
    for l in 0..n {
        let tri = IdealPolygon::new(vec![
            *poly.vertex(l + n - 1),
            *poly.vertex(l),
            *poly.vertex(l + 1),
        ])?;
        let s_l = barycenter(&tri)?;
        let d1 = line_through(&poly.vertex(l + n - 1).embed(), &poly.vertex(l + 2).embed())?;
        let d2 = line_through(&poly.vertex(l + 1).embed(), &poly.vertex(l + n - 2).embed())?;
        let t_l = crate::klein::intersect(&d1, &d2)?;
        lines_a.push(LabeledLine {
            label: format!("S{l}T{l}"),
            line: line_through(&s_l, &t_l)?,
        });
    }

    // report B: R_l = meet of the altitudes P_{l+2} -> side l+3 and
    // P_{l+3} -> side l+1; the five P_lR_l concur at the barycenter
    let mut lines_b = Vec::with_capacity(n);
    for l in 0..n {
        let a1 = altitude_line(&poly.vertex(l + 2).embed(), &poly.side(l + 3))?;
        let a2 = altitude_line(&poly.vertex(l + 3).embed(), &poly.side(l + 1))?;
        let r_l = crate::klein::intersect(&a1, &a2)?;
        lines_b.push(LabeledLine {
            label: format!("P{l}R{l}"),
            line: line_through(&poly.vertex(l).embed(), &r_l)?,
        });
    }

    Ok(vec![
        assemble("pentagon-archimedean", lines_a, reference)?,
        assemble("pentagon-interpolation", lines_b, reference)?,
    ])
}

/// The two hexagon constructions: long diagonals of the short-diagonal
/// hexagon, and the three R-segment lines.
pub fn hexagon_constructions(poly: &IdealPolygon) -> Result<Vec<ConstructionReport>> {
    require_n(poly, 6, "6")?;
    require_convex(poly)?;
    let reference = barycenter(poly)?;
    let n = 6;

    let q: Vec<PlanePoint> = (0..n)
        .map(|l| {
            let d1 = line_through(&poly.vertex(l).embed(), &poly.vertex(l + 2).embed())?;
            let d2 = line_through(&poly.vertex(l + n - 1).embed(), &poly.vertex(l + 1).embed())?;
            crate::klein::intersect(&d1, &d2)
        })
        .collect::<Result<_>>()?;
    let lines_a = (0..3)
        .map(|l| {
            Ok(LabeledLine {
                label: format!("Q{}Q{}", l, l + 3),
                line: line_through(&q[l], &q[l + 3])?,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let r: Vec<PlanePoint> = (0..n)
        .map(|l| {
            let a1 = altitude_line(&poly.vertex(l).embed(), &poly.side(l + 1))?;
            let a2 = altitude_line(&poly.vertex(l + 1).embed(), &poly.side(l + n - 1))?;
            crate::klein::intersect(&a1, &a2)
        })
        .collect::<Result<_>>()?;
    let lines_b = (0..3)
        .map(|l| {
            Ok(LabeledLine {
                label: format!("R{}R{}", l, l + 3),
                line: line_through(&r[l], &r[l + 3])?,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    Ok(vec![
        assemble("hexagon-long-diagonals", lines_a, reference)?,
        assemble("hexagon-interpolation", lines_b, reference)?,
    ])
}

/// Recursive construction for `(2^m + 2)`-gons: each of the `2^{m-1} + 1`
/// long diagonals splits the polygon into two halves whose barycenters span a
/// segment through the barycenter; all the segments concur there.
pub fn power_of_two_construction(poly: &IdealPolygon) -> Result<ConstructionReport> {
    let n = poly.len();
    let valid = n >= 4 && (n - 2).is_power_of_two();
    if !valid {
        return Err(Error::WrongVertexCount {
            expected: "2^m + 2 (4, 6, 10, 18, ...)".to_string(),
            got: n,
        });
    }
    require_convex(poly)?;
    let reference = barycenter(poly)?;
    let half = n / 2;
    let mut lines = Vec::with_capacity(half);
    for i in 0..half {
        let split = archimedean_split(poly, i, i + half)?;
        let s1 = barycenter(&split.first)?;
        let s2 = barycenter(&split.second)?;
        lines.push(LabeledLine {
            label: format!("S({i}..{})S({}..{i})", i + half, i + half),
            line: line_through(&s1, &s2)?,
        });
    }
    assemble("power-of-two-long-diagonals", lines, reference)
}
