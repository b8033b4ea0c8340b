//! Connectivity of point sets under uncertainty.
//!
//! Each input point is only known to lie in a region (a fixed point, a pair of candidate
//! points, a segment, a disk or a square). The best-case question asks for the smallest
//! `alpha` such that some choice of one point per region yields a connected graph when
//! points within `2 alpha` are joined; the worst-case question asks for the smallest
//! `alpha` that works for every choice.

pub mod approx;
pub mod connectivity;
pub mod error;
pub mod exact;
pub mod flower;
pub mod geometry;
pub mod instance;
pub mod io;
pub mod oracle;
pub mod render;

pub use error::{Error, Result};
pub use geometry::{dist, Point2, Segment};
pub use instance::{Instance, Region, Selection};
