//! Certified upper bounds on the Lebesgue measure of `J_c − J_c` for Cantor
//! quadratic Julia sets (`z ↦ z² + c`, `|c| > 2`), together with the brute-force
//! raster machinery used to check those bounds from below.
//!
//! The crate is split along the lines of the argument:
//!
//! * [`geometry`]: the quadratic map, its inverse branches, diameters, the
//!   `√3/2` enclosing disk and differences of disks;
//! * [`bounds`]: the radius recursions, `K_n`, the depth-`n` area bound and the
//!   decay parameters;
//! * [`cover`]: symbolic pieces by inverse iteration and their difference-disk
//!   cover;
//! * [`oracle`]: escape-test rasters, discrete difference sets and sampling
//!   checks;
//! * [`verify`]: the full invariant suite as a deterministic report.

pub mod bounds;
pub mod cover;
pub mod error;
pub mod geometry;
mod hull;
pub mod io;
pub mod limits;
pub mod numeric;
pub mod oracle;
pub mod render;
pub mod verify;

pub use error::{Error, Result};
pub use geometry::{ComplexPoint, Disk, Parameter, Sign, Symbol};
