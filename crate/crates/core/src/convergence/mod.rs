//! Exclusion sets, error grids, rate fits and overconvergence scans.

pub mod errors;
pub mod exclusion;
pub mod grid;
pub mod overconv;
pub mod poles;

pub use errors::{fit_rate, grid_errors, trailing_half, ConvergenceReport, NError, Verdict};
pub use exclusion::{omega_disks, within_basel_bound, Disk, ExclusionSet, ExclusionSummary};
pub use grid::{CompactGrid, Shape};
pub use overconv::{delta0, overconvergence_scan, phi, RadiusResult, ScanConfig, ScanReport};
pub use poles::{pole_proximity, PoleDistance, ProximityReport};
