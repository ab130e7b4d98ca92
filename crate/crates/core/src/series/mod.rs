//! Power series with exact coefficients, the test-function catalog and
//! radius estimation.

pub mod catalog;
pub mod hp;
pub mod poly;
pub mod power_series;
pub mod radius;

pub use catalog::{catalog_make, CatalogSpec, GapMask, RationalText};
pub use hp::HpComplex;
pub use poly::Polynomial;
pub use power_series::{CoefficientRule, FnRule, PowerSeries, Radius, ReferenceEvaluator, SeriesMeta};
pub use radius::{estimate_r0, estimate_rm, Provenance, RadiusEstimate, RadiusMethod, RadiusValue};
