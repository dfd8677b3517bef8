pub mod arith;
pub mod bounds;
pub mod carmichael;
pub mod error;
pub mod group;
pub mod lehmer;
pub mod scalar;
pub mod scan;

pub use arith::rational::ExactRational;
pub use error::{Error, Result};
pub use scalar::Scalar;

/// Factorization of a machine-word integer.
pub type Factorization64 = arith::Factorization<u64>;
/// Factorization of an arbitrary-precision integer.
pub type BigFactorization = arith::Factorization<num_bigint::BigUint>;
/// Group description over machine-word orders.
pub type Group64 = group::GroupSpec<u64>;
/// Group description over arbitrary-precision orders.
pub type BigGroup = group::GroupSpec<num_bigint::BigUint>;
pub type Spectrum64 = group::OrderSpectrum<u64>;
pub type BigSpectrum = group::OrderSpectrum<num_bigint::BigUint>;
