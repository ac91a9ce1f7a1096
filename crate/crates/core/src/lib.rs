//! Exact angular-momentum algebra, curvature of the coupled two-sphere
//! configuration space, and fine-structure level models for bounding a
//! scalar-curvature term in atomic spectra.

pub mod coupling;
pub mod exact;
pub mod geometry;
pub mod harmonics;
pub mod io;
pub mod spectra;
