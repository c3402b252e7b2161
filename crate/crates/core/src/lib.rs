//! Exact lattice-point geometry of rational polygons.
//!
//! The crate counts lattice points in dilates of rational polygons,
//! reconstructs Ehrhart quasipolynomials, decides whether a polygon is
//! pseudo-integral (its quasipolynomial is a polynomial), and builds the
//! families of such polygons, including the triangles attached to positive
//! integer solutions of `(x + y + z)² = b·xyz`.

pub mod constructions;
pub mod counting;
pub mod ehrhart;
pub mod error;
pub mod exact;
pub mod polygon;
pub mod verify;
pub mod vieta;

pub use counting::{count_boundary, count_interior, count_report, count_total, CountReport, LatticeCounter};
pub use error::{Error, Result};
pub use exact::{Rational, Vec2};
pub use polygon::{Edge, RationalPolygon};
