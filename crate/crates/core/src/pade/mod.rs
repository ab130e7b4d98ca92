//! Exact Padé approximants: entries, blocks, normalization and identities.

pub mod blocks;
pub mod entry;
pub mod identities;
pub mod normalize;
pub mod roots;

pub use blocks::{block_scan, Block, TableScan};
pub use entry::{a_coefficient, order_of_contact, pade, Contact, PadeEntry};
pub use identities::{
    contact_exponent, difference_identity_residual, difference_numerator, normalized_lead, tail_series_check,
    A_coefficient, Ray, TailReport,
};
pub use normalize::{normalize_denominator, NormalizedDenominator};
