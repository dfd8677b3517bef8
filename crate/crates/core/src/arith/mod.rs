//! Integer arithmetic: primality, factorization, multiplicative functions,
//! segmented sieves and exact rationals.

mod factor;
mod functions;
mod primality;
pub mod rational;
pub mod sieve;

pub use factor::{
    factor, factor_u64, perfect_power, pollard_brent, Factorization, TRIAL_DIVISION_LIMIT,
};
pub use functions::{
    divisor_count, divisors, divisors_with_phi, euler_phi, is_prime_factorization, is_squarefree,
    sigma, sum_d_phi,
};
pub use primality::{is_prime, is_prime_u64, primality, Primality};
pub use rational::ExactRational;
