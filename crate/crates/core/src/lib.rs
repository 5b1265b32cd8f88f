//! Numerical laboratory for the principal Dirichlet eigenvalue of the
//! truncated Laplacian `−λ_max(D²u)` on planar convex domains.
//!
//! The pieces, bottom-up:
//!
//! * [`geometry`]: convex polygons, diameters, enclosing circles, Reuleaux
//!   polygons, Hausdorff distance, JSON domain specs;
//! * [`grid`]: lattice rasterization with boundary-clipped stencil arms;
//! * [`operator`]: the wide-stencil discrete operator `Λ`;
//! * [`eigensolver`]: inverse power iteration with Collatz–Wielandt bracketing;
//! * [`bounds`]: closed-form bounds and maximality comparisons;
//! * [`explorer`]: limiting sequences and conjecture scans;
//! * [`verify`]: reproducible pass/fail checks shared by the CLI and tests.
//!
//! Everything numerical is generic over [`Scalar`] (`f32` or `f64`); the
//! aliases below fix `f64`.

pub mod bounds;
pub mod eigensolver;
mod error;
pub mod explorer;
pub mod geometry;
pub mod grid;
pub mod operator;
mod scalar;
pub mod table;
pub mod verify;

pub use error::{Error, Result};
pub use scalar::Scalar;

pub use eigensolver::{analytic_mu, collatz_wielandt, solve, solve_on_grid, InnerSolver};
pub use geometry::{hausdorff_distance, jung_bound, regular_polygon, reuleaux_polygon};
pub use grid::{build_stencil, rasterize};

pub type Point = geometry::Point2<f64>;
pub type Polygon = geometry::ConvexPolygon<f64>;
pub type Domain = geometry::DomainSpec<f64>;
pub type Planar = geometry::PlanarDomain<f64>;
pub type Stencil = grid::StencilSet<f64>;
pub type Grid = grid::Grid2<f64>;
pub type Field = grid::ScalarField<f64>;
pub type Config = eigensolver::SolverConfig<f64>;
pub type Estimate = eigensolver::EigenEstimate<f64>;
pub type Report = bounds::BoundsReport<f64>;
