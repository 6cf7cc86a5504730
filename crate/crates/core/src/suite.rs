//! The verification suite: every acceptance criterion as a callable check
//! with its tolerances pinned, shared by the `acceptance` test target and
//! the CLI `verify` command.

use crate::batch::map_indexed;
use crate::conic::{
    pentagon_moduli_drift, triangle_moduli_conic, verify_quad_moduli, verify_triangle_moduli,
    ConicClass,
};
use crate::constructions::{
    hexagon_constructions, pentagon_constructions, power_of_two_construction, quad_constructions,
    triangle_symmedian_construction, ConstructionReport,
};
use crate::euclidean::{
    cevian_perimeter, coincidence_check, least_squares_point, pentagon_conjecture_scan,
    pentagon_conjecture_scan_sequential, strictly_inside_triangle, CoincidenceClass,
};
use crate::klein::PlanePoint;
use crate::oracle::{
    finite_diff_gradient, finite_diff_hessian_det, minimize_on_disk, random_disk_mobius,
    random_harmonic_polygon, random_ideal_polygon, ScalarField,
};
use crate::polygon::{
    alpha_relatedness, archimedean_split, barycenter, gradient, hamiltonians,
    hessian_det_at_barycenter, mobius_invariant, objective, AlphaRelatedness, IdealPolygon,
    SideSet,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

/// Result of one acceptance criterion.
#[derive(Debug, Clone, Serialize)]
pub struct CriterionOutcome {
    pub id: usize,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl CriterionOutcome {
    fn new(id: usize, name: &'static str, passed: bool, detail: String) -> Self {
        CriterionOutcome {
            id,
            name,
            passed,
            detail,
        }
    }
}

fn polygon_for(index: usize, seed: u64, sizes: &[usize], min_gap: f64) -> IdealPolygon {
    let n = sizes[index % sizes.len()];
    random_ideal_polygon(
        n,
        seed ^ (index as u64).wrapping_mul(0x2545f4914f6cdd1d),
        min_gap,
    )
    .expect("gap settings are feasible")
}

/// 1. The formula barycenter is the oracle minimizer of the sinh-distance
///    objective (100 convex n-gons, n in 3..=8, within 1e-6).
pub fn criterion_barycenter_optimality(seed: u64) -> CriterionOutcome {
    const TOL: f64 = 1e-6;
    let errors: Vec<f64> = map_indexed(100, |i| {
        let poly = polygon_for(i, seed, &[3, 4, 5, 6, 7, 8], 0.15);
        let s = barycenter(&poly).expect("convex polygons have barycenters");
        let triples: Vec<_> = (0..poly.len()).map(|k| poly.side(k).triple()).collect();
        let field = ScalarField::on_disk(move |p: &PlanePoint| {
            let w = (1.0 - p.norm_sq()).sqrt();
            triples
                .iter()
                .map(|t| (t.i_minus_k * p.x + t.two_j * p.y - t.i_plus_k) / w)
                .sum()
        });
        let (argmin, _) = minimize_on_disk(&field, 1e-9).expect("objective is finite on the grid");
        argmin.dist(&s)
    });
    let worst = errors.iter().cloned().fold(0.0, f64::max);
    CriterionOutcome::new(
        1,
        "barycenter-optimality",
        worst < TOL,
        format!("worst |oracle argmin - formula| = {worst:.3e} over 100 polygons (tol {TOL:.0e})"),
    )
}

/// 2. Analytic gradient matches central differences (1e3 cases, rel 1e-6);
///    the closed-form Hessian determinant matches finite differences (rel 1e-4).
pub fn criterion_gradient_hessian(seed: u64) -> CriterionOutcome {
    const GRAD_TOL: f64 = 1e-6;
    const HESS_TOL: f64 = 1e-4;
    let grad_errs: Vec<f64> = map_indexed(1000, |i| {
        let poly = polygon_for(i, seed, &[3, 4, 5, 6, 7, 8], 0.15);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ ((i as u64) << 17));
        let r = rng.gen_range(0.0..0.8);
        let th = rng.gen_range(0.0..std::f64::consts::TAU);
        let x = PlanePoint::new(r * th.cos(), r * th.sin());
        let all = SideSet::all(poly.len());
        let g = gradient(&poly, &all, &x).expect("interior point");
        let fd = finite_diff_gradient(
            |p| objective(&poly, &all, p).expect("interior point"),
            &x,
            1e-6,
        )
        .expect("margin holds");
        let scale = g[0].hypot(g[1]).max(1.0);
        (g[0] - fd[0]).hypot(g[1] - fd[1]) / scale
    });
    let worst_grad = grad_errs.iter().cloned().fold(0.0, f64::max);

    let hess_errs: Vec<f64> = map_indexed(100, |i| {
        let poly = polygon_for(i, seed ^ 0xbeef, &[3, 4, 5, 6, 7, 8], 0.2);
        let closed = hessian_det_at_barycenter(&poly).expect("interior barycenter");
        let s = barycenter(&poly).expect("barycenter");
        let all = SideSet::all(poly.len());
        // the objective varies on the scale of the boundary distance, so the
        // step follows 1 - |S|²
        let h = 1e-3 * (1.0 - s.norm_sq());
        let fd = finite_diff_hessian_det(
            |p| objective(&poly, &all, p).expect("interior point"),
            &s,
            h,
        )
        .expect("margin holds");
        (closed - fd).abs() / closed.abs()
    });
    let worst_hess = hess_errs.iter().cloned().fold(0.0, f64::max);

    CriterionOutcome::new(
        2,
        "gradient-and-hessian",
        worst_grad < GRAD_TOL && worst_hess < HESS_TOL,
        format!(
            "gradient rel err {worst_grad:.3e} (tol {GRAD_TOL:.0e}, 1000 cases); hessian det rel err {worst_hess:.3e} (tol {HESS_TOL:.0e}, 100 cases)"
        ),
    )
}

fn construction_family<F>(seed: u64, n: usize, gap: f64, count: usize, build: F) -> (f64, f64)
where
    F: Fn(&IdealPolygon) -> Vec<ConstructionReport> + Sync,
{
    let results: Vec<(f64, f64)> = map_indexed(count, |i| {
        let poly = random_ideal_polygon(n, seed ^ (i as u64).wrapping_mul(0x9e3779b9), gap)
            .expect("feasible gap");
        build(&poly).iter().fold((0.0f64, 0.0f64), |(r, d), rep| {
            (r.max(rep.residual), d.max(rep.deviation))
        })
    });
    results.iter().fold((0.0f64, 0.0f64), |(r, d), (rr, dd)| {
        (r.max(*rr), d.max(*dd))
    })
}

/// 3. All concurrence constructions hit the formula barycenter within 1e-8
///    on 1e3 seeded random convex inputs per family.
pub fn criterion_construction_concurrences(seed: u64) -> CriterionOutcome {
    const TOL: f64 = 1e-8;
    let families = [
        (
            "triangle",
            construction_family(seed, 3, 0.25, 1000, |p| {
                vec![triangle_symmedian_construction(p).expect("convex triangle")]
            }),
        ),
        (
            "quad",
            construction_family(seed ^ 1, 4, 0.25, 1000, |p| {
                quad_constructions(p).expect("convex quad")
            }),
        ),
        (
            "pentagon",
            construction_family(seed ^ 2, 5, 0.2, 1000, |p| {
                pentagon_constructions(p).expect("convex pentagon")
            }),
        ),
        (
            "hexagon",
            construction_family(seed ^ 3, 6, 0.15, 1000, |p| {
                hexagon_constructions(p).expect("convex hexagon")
            }),
        ),
        (
            "decagon",
            construction_family(seed ^ 4, 10, 0.1, 1000, |p| {
                vec![power_of_two_construction(p).expect("convex decagon")]
            }),
        ),
    ];
    let mut passed = true;
    let mut parts = Vec::new();
    for (name, (residual, deviation)) in &families {
        passed &= *residual < TOL && *deviation < TOL;
        parts.push(format!("{name}: res {residual:.2e} dev {deviation:.2e}"));
    }
    CriterionOutcome::new(
        3,
        "construction-concurrences",
        passed,
        format!("{} (tol {TOL:.0e}, 1000 inputs each)", parts.join("; ")),
    )
}

/// 4. Cutting along any diagonal splits every Hamiltonian additively and
///    recombines the barycenter exactly (1e2 polygons, 1e-10).
pub fn criterion_archimedean(seed: u64) -> CriterionOutcome {
    const TOL: f64 = 1e-10;
    let worst_each: Vec<f64> = map_indexed(100, |i| {
        let poly = polygon_for(i, seed, &[4, 5, 6, 7, 8, 9], 0.12);
        let n = poly.len();
        let h = hamiltonians(&poly, None);
        let s = barycenter(&poly).expect("convex");
        let mut worst: f64 = 0.0;
        for a in 0..n {
            for b in (a + 2)..n {
                if a == 0 && b == n - 1 {
                    continue;
                }
                let split = archimedean_split(&poly, a, b).expect("diagonal");
                let h1 = hamiltonians(&split.first, None);
                let h2 = hamiltonians(&split.second, None);
                let scale = h.i_plus_k.abs().max(1.0);
                worst = worst
                    .max((h1.i_minus_k + h2.i_minus_k - h.i_minus_k).abs() / scale)
                    .max((h1.two_j + h2.two_j - h.two_j).abs() / scale)
                    .max((h1.i_plus_k + h2.i_plus_k - h.i_plus_k).abs() / scale)
                    .max((split.first_weight + split.second_weight - 1.0).abs());
                let s1 = barycenter(&split.first).expect("sub-polygon");
                let s2 = barycenter(&split.second).expect("sub-polygon");
                let recombined = PlanePoint::new(
                    split.first_weight * s1.x + split.second_weight * s2.x,
                    split.first_weight * s1.y + split.second_weight * s2.y,
                );
                worst = worst.max(recombined.dist(&s));
            }
        }
        worst
    });
    let worst = worst_each.iter().cloned().fold(0.0, f64::max);
    CriterionOutcome::new(
        4,
        "archimedean-additivity",
        worst < TOL,
        format!("worst additivity/recombination error {worst:.3e} over all diagonals of 100 polygons (tol {TOL:.0e})"),
    )
}

/// 5. Rotated regular n-gons are detected α-related with equal barycenters
///    (1e-9); IK - J² is invariant under 1e3 random Möbius maps (rel 1e-9).
pub fn criterion_alpha_relatedness(seed: u64) -> CriterionOutcome {
    const TOL: f64 = 1e-9;
    let mut related_failures = 0usize;
    let mut worst_gap: f64 = 0.0;
    for n in 3..=8 {
        let poly = IdealPolygon::regular(n).expect("regular");
        for j in 0..10 {
            let theta = 0.1 + 0.05 * j as f64;
            let rotated = poly
                .transform(&crate::projective::Mobius::rotation(theta))
                .expect("rotation");
            if !matches!(
                alpha_relatedness(&poly, &rotated).expect("same size"),
                AlphaRelatedness::Related { .. }
            ) {
                related_failures += 1;
            }
            let gap = barycenter(&poly)
                .expect("regular")
                .dist(&barycenter(&rotated).expect("rotated"));
            worst_gap = worst_gap.max(gap);
        }
    }

    let inv_errs: Vec<f64> = map_indexed(1000, |i| {
        let poly = polygon_for(i, seed, &[3, 4, 5, 6, 7, 8], 0.15);
        let base = mobius_invariant(&poly);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ ((i as u64) << 9));
        let m = random_disk_mobius(&mut rng);
        let image = poly.transform(&m).expect("Möbius image");
        (mobius_invariant(&image) - base).abs() / base.abs().max(1.0)
    });
    let worst_inv = inv_errs.iter().cloned().fold(0.0, f64::max);

    CriterionOutcome::new(
        5,
        "alpha-relatedness-and-invariant",
        related_failures == 0 && worst_gap < TOL && worst_inv < TOL,
        format!(
            "rotated n-gons: {related_failures} detection failures, worst barycenter gap {worst_gap:.3e}; invariant rel err {worst_inv:.3e} over 1000 maps (tol {TOL:.0e})"
        ),
    )
}

/// 6. The explicit moduli conic reproduces the six sample polars (1e-10),
///    orbits close at period 3 with barycenter within 1e-7 across |S| in
///    {0, 0.3, 0.5, 0.6, 0.9} × 20 starts, and the class flips at |S| = 1/2.
pub fn criterion_triangle_moduli(seed: u64) -> CriterionOutcome {
    let p1 = 3.0f64.sqrt() / 2.0;
    let six_polars = [
        PlanePoint::new(7.0, 0.0),
        PlanePoint::new(1.0, -p1),
        PlanePoint::new(1.0, p1),
        PlanePoint::new(13.0 / 11.0, 0.0),
        PlanePoint::new(-1.0, 2.0 * 3.0f64.sqrt()),
        PlanePoint::new(-1.0, -2.0 * 3.0f64.sqrt()),
    ];
    let conic = triangle_moduli_conic(&PlanePoint::new(0.6, 0.0)).expect("inside disk");
    let sub_residual = six_polars
        .iter()
        .map(|p| conic.eval(p).abs())
        .fold(0.0, f64::max);

    let mut orbit_pass = true;
    let mut orbit_notes = Vec::new();
    for (k, r) in [0.0, 0.3, 0.5, 0.6, 0.9].iter().enumerate() {
        let center = if *r == 0.0 {
            PlanePoint::ORIGIN
        } else {
            PlanePoint::new(r * 0.36f64.cos(), r * 0.36f64.sin())
        };
        let report = verify_triangle_moduli(&center, 20, seed ^ (k as u64)).expect("valid center");
        orbit_pass &= report.all_pass;
        let worst = report
            .orbits
            .iter()
            .filter_map(|o| o.barycenter_error)
            .fold(0.0, f64::max);
        orbit_notes.push(format!(
            "|S|={r}: {:?} worst dS {worst:.2e}",
            report.conic_class
        ));
    }

    let classes: Vec<ConicClass> = [0.49, 0.5, 0.51]
        .iter()
        .map(|r| {
            triangle_moduli_conic(&PlanePoint::new(*r, 0.0))
                .expect("inside disk")
                .classify()
        })
        .collect();
    let flip_ok = classes
        == vec![
            ConicClass::Ellipse,
            ConicClass::Parabola,
            ConicClass::Hyperbola,
        ];

    CriterionOutcome::new(
        6,
        "triangle-moduli",
        sub_residual < 1e-10 && orbit_pass && flip_ok,
        format!(
            "six-polar residual {sub_residual:.2e} (tol 1e-10); {}; class flip at 1/2: {flip_ok}",
            orbit_notes.join("; ")
        ),
    )
}

/// 7. Pencil conics through quad polars carry period-4 orbits preserving the
///    barycenter (1e-7, 20 conics × 1e2 quads); rectangles give antipodal
///    circumscribed rhombi (1e-8).
pub fn criterion_quad_moduli(seed: u64) -> CriterionOutcome {
    let results: Vec<bool> = map_indexed(100, |i| {
        let quad = random_ideal_polygon(4, seed ^ (i as u64).wrapping_mul(0xd1342543), 0.3)
            .expect("feasible");
        verify_quad_moduli(&quad, 20, seed ^ ((i as u64) << 3))
            .map(|r| r.all_pass)
            .unwrap_or(false)
    });
    let quad_failures = results.iter().filter(|ok| !**ok).count();

    let rect = IdealPolygon::from_angles(&[
        0.7,
        std::f64::consts::PI - 0.7,
        std::f64::consts::PI + 0.7,
        std::f64::consts::TAU - 0.7,
    ])
    .expect("rectangle");
    let rect_report = verify_quad_moduli(&rect, 20, seed ^ 0xfeed).expect("rectangle");
    let rhombus = rect_report.rhombus_residual.unwrap_or(f64::INFINITY);

    CriterionOutcome::new(
        7,
        "quad-moduli",
        quad_failures == 0 && rect_report.all_pass && rhombus < 1e-8,
        format!(
            "{quad_failures}/100 quads failed (20 pencil conics each, tol 1e-7); rectangle rhombus residual {rhombus:.2e} (tol 1e-8)"
        ),
    )
}

/// 8. Harmonic polygons have S = L (1e2 samples, 1e-8); the quadrilateral
///    taxonomy has no stray classes over 1e3 random quads (tol 1e-7); every
///    random triangle has S = L (1e-8).
pub fn criterion_coincidence(seed: u64) -> CriterionOutcome {
    let harmonic_gaps: Vec<f64> = map_indexed(100, |i| {
        let n = [3, 4, 5, 6, 7, 8][i % 6];
        let poly = random_harmonic_polygon(n, seed ^ (i as u64).wrapping_mul(0xc2b2ae35))
            .expect("harmonic sample");
        let s = barycenter(&poly).expect("barycenter");
        let l = least_squares_point(&poly).expect("least squares");
        s.dist(&l)
    });
    let worst_harmonic = harmonic_gaps.iter().cloned().fold(0.0, f64::max);

    let quad_strays: Vec<bool> = map_indexed(1000, |i| {
        let quad = random_ideal_polygon(4, seed ^ (i as u64).wrapping_mul(0x85ebca6b), 0.2)
            .expect("feasible");
        let verdict = coincidence_check(&quad, 1e-7).expect("convex quad").verdict;
        matches!(
            verdict,
            CoincidenceClass::CoincidentUnpredicted | CoincidenceClass::Violation
        )
    });
    let stray = quad_strays.iter().filter(|s| **s).count();

    let tri_gaps: Vec<f64> = map_indexed(1000, |i| {
        let tri = random_ideal_polygon(3, seed ^ (i as u64).wrapping_mul(0x27d4eb2f), 0.25)
            .expect("feasible");
        let s = barycenter(&tri).expect("barycenter");
        let l = least_squares_point(&tri).expect("least squares");
        s.dist(&l)
    });
    let worst_tri = tri_gaps.iter().cloned().fold(0.0, f64::max);

    CriterionOutcome::new(
        8,
        "coincidence-theorems",
        worst_harmonic < 1e-8 && stray == 0 && worst_tri < 1e-8,
        format!(
            "harmonic gap {worst_harmonic:.3e} (100 n-gons, tol 1e-8); quad taxonomy strays {stray}/1000 (tol 1e-7); triangle gap {worst_tri:.3e} (1000 triangles, tol 1e-8)"
        ),
    )
}

/// 9. The barycenter minimizes the Cevian perimeter (oracle within 1e-4, 20
///    triangles); the equilateral value is 3·acosh(3/2) (1e-9).
pub fn criterion_cevian(seed: u64) -> CriterionOutcome {
    let tri = IdealPolygon::regular(3).expect("regular");
    let equilateral = cevian_perimeter(&tri, &PlanePoint::ORIGIN).expect("interior");
    let anchor_err = (equilateral - 3.0 * 1.5f64.acosh()).abs();

    let errors: Vec<f64> = map_indexed(20, |i| {
        let tri = random_ideal_polygon(3, seed ^ (i as u64).wrapping_mul(0x165667b1), 0.4)
            .expect("feasible");
        let s = barycenter(&tri).expect("barycenter");
        let eval_tri = tri.clone();
        let domain_tri = tri.clone();
        let field = ScalarField {
            eval: move |p: &PlanePoint| cevian_perimeter(&eval_tri, p).unwrap_or(f64::INFINITY),
            domain: move |p: &PlanePoint| {
                p.is_hyperbolic() && strictly_inside_triangle(&domain_tri, p)
            },
        };
        let (argmin, _) = minimize_on_disk(&field, 1e-8).expect("triangle interior on grid");
        argmin.dist(&s)
    });
    let worst = errors.iter().cloned().fold(0.0, f64::max);

    CriterionOutcome::new(
        9,
        "cevian-minimality",
        anchor_err < 1e-9 && worst < 1e-4,
        format!(
            "equilateral perimeter err {anchor_err:.3e} (tol 1e-9); oracle argmin err {worst:.3e} over 20 triangles (tol 1e-4)"
        ),
    )
}

/// 10. The pentagon scan over 1e4 seeded samples (generic + targeted strata)
///     yields zero violation records at tol 1e-7 and is bit-for-bit
///     reproducible across schedules.
///
///     The barycenter-at-origin stratum empirically produces violation-class
///     records: an origin barycenter does not force the two centers to
///     coincide for pentagons, so the zero-violation expectation fails. The
///     detail string carries a reproduction record.
pub fn criterion_conjecture_scan(seed: u64) -> CriterionOutcome {
    const TOL: f64 = 1e-7;
    let report = pentagon_conjecture_scan(10_000, seed, TOL);
    let rerun = pentagon_conjecture_scan(10_000, seed, TOL);
    let sequential = pentagon_conjecture_scan_sequential(10_000, seed, TOL);
    let ser = serde_json::to_string(&report.records).expect("serializable");
    let reproducible = ser == serde_json::to_string(&rerun.records).expect("serializable")
        && ser == serde_json::to_string(&sequential.records).expect("serializable");

    let example = report
        .records
        .iter()
        .find(|r| r.class == CoincidenceClass::Violation)
        .map(|r| serde_json::to_string(r).expect("serializable"))
        .unwrap_or_else(|| "none".to_string());

    let t = report.tally;
    CriterionOutcome::new(
        10,
        "conjecture-scan",
        t.violation == 0 && reproducible,
        format!(
            "tally: predicted {}, candidates {}, predicted-non {}, violations {} (expected 0); reproducible: {reproducible}; first violation: {example}",
            t.coincident_predicted, t.coincident_unpredicted, t.noncoincident_predicted_non, t.violation
        ),
    )
}

/// 11. Negative control: the Poncelet pentagon family of a non-regular
///     pentagon drifts the barycenter by more than 1e-3.
pub fn criterion_pentagon_drift(seed: u64) -> CriterionOutcome {
    let pent = random_ideal_polygon(5, seed ^ 0x5eed, 0.3).expect("feasible");
    match pentagon_moduli_drift(&pent, 30, seed) {
        Ok(report) => CriterionOutcome::new(
            11,
            "pentagon-moduli-negative-control",
            report.max_drift > 1e-3,
            format!(
                "max barycenter drift {:.4} over {} period-5 orbits (must exceed 1e-3)",
                report.max_drift, report.orbits
            ),
        ),
        Err(e) => CriterionOutcome::new(
            11,
            "pentagon-moduli-negative-control",
            false,
            format!("drift experiment failed: {e}"),
        ),
    }
}

/// Run every criterion with per-criterion derived seeds.
pub fn all_criteria(seed: u64) -> Vec<CriterionOutcome> {
    (1..=11)
        .map(|id| run_criterion(id, seed).expect("id in range"))
        .collect()
}

/// Run a single criterion by id (1-based).
pub fn run_criterion(id: usize, seed: u64) -> Option<CriterionOutcome> {
    let f: fn(u64) -> CriterionOutcome = match id {
        1 => criterion_barycenter_optimality,
        2 => criterion_gradient_hessian,
        3 => criterion_construction_concurrences,
        4 => criterion_archimedean,
        5 => criterion_alpha_relatedness,
        6 => criterion_triangle_moduli,
        7 => criterion_quad_moduli,
        8 => criterion_coincidence,
        9 => criterion_cevian,
        10 => criterion_conjecture_scan,
        11 => criterion_pentagon_drift,
        _ => return None,
    };
    Some(f(seed.wrapping_add(id as u64 - 1)))
}
