//! Reporting and correcting self-intersections of simple-polygon candidates
//! with a scan-line over sorted vertices, using no memory beyond the sorted
//! order itself.

pub mod bench;
pub mod brute_force;
pub mod cli;
pub mod corrector;
pub mod error;
pub mod geom;
pub mod io;
pub mod polygon;
pub mod region_query;
pub mod registry;
pub mod scanline;

pub use error::{Error, Result};
pub use geom::{Axis, CrossKind, Point, Segment};
pub use polygon::Polygon;
