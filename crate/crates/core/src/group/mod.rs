//! Symbolic finite groups, their element-order spectra, and the order sums
//! ψ(G) = Σ ord(x), ψ′(G) = ψ(G)/ψ(C_|G|) and ψ″(G) = ψ(G)/|G|².

mod abelian;
mod parse;
mod spec;
mod spectrum;

pub use abelian::{abelian_group_count, abelian_groups, partitions};
pub use parse::{parse_group_spec, ParseError};
pub use spec::GroupSpec;
pub use spectrum::{
    order_spectrum, psi, psi_cyclic, psi_cyclic_divisor_sum, psi_double_prime, psi_prime,
    OrderSpectrum, SpectrumEngine, DEFAULT_SUPPORT_LIMIT,
};
