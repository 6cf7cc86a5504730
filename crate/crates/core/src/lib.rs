//! Hyperbolic barycenters of ideal polygons in the Klein-Beltrami disk.
//!
//! An ideal polygon is an inscribed Euclidean polygon read hyperbolically:
//! its vertices live on the unit circle (the absolute) and its sides are
//! geodesic chords. This crate computes the polygon's hyperbolic barycenter
//! — the interior point minimizing the sum of hyperbolic sines of the
//! distances to the sides — together with everything that makes that point
//! workable:
//!
//! - [`projective`]: the real projective line, cross-ratios, Möbius maps and
//!   their lifts to Klein-disk isometries;
//! - [`klein`]: distances, chords, poles and polars, altitudes, reflections,
//!   concurrence measurement;
//! - [`polygon`]: Hamiltonian sums, the barycenter formula, subset centers,
//!   interpolation/partition identities, gradients and the Hessian;
//! - [`constructions`]: straightedge-style concurrence constructions for
//!   triangles through decagons, with quantitative reports;
//! - [`conic`]: conic fitting, Poncelet orbits about the circle, and the
//!   moduli-space verifications for triangles and quadrilaterals;
//! - [`euclidean`]: the least-squares point, harmonicity, coincidence
//!   classification, the pentagon scan, and the Cevian-perimeter property;
//! - [`oracle`]: derivative-free minimization and seeded random polygons,
//!   kept independent of the closed forms they validate;
//! - [`suite`]: the acceptance criteria as callable checks.
//!
//! Batch work (scans, moduli sampling, grid minimization) runs on rayon when
//! the default `parallel` feature is enabled and falls back to sequential
//! loops without it; outputs are identical either way.

pub mod batch;
pub mod conic;
pub mod constructions;
pub mod error;
pub mod euclidean;
pub mod klein;
pub mod oracle;
pub mod polygon;
pub mod projective;
pub mod suite;

pub use error::{Error, Result};
pub use klein::{Chord, Line, PlanePoint, SideTriple};
pub use polygon::{IdealPolygon, SideSet};
pub use projective::{ExtReal, IdealPoint, KleinIsometry, Mobius};
