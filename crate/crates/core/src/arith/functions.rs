//! Multiplicative arithmetic functions evaluated from a factorization.

use super::factor::Factorization;
use crate::error::Result;
use crate::scalar::Scalar;

/// Euler's totient as `∏ p^(α-1) (p-1)`; never exceeds `n`, so it cannot overflow.
pub fn euler_phi<T: Scalar>(f: &Factorization<T>) -> T {
    f.factors().iter().fold(T::one(), |acc, (p, a)| {
        acc * num_traits::pow(p.clone(), (*a - 1) as usize) * (p.clone() - T::one())
    })
}

/// Sum of divisors, `∏ (p^(α+1) - 1)/(p - 1)`.
pub fn sigma<T: Scalar>(f: &Factorization<T>) -> Result<T> {
    f.factors().iter().try_fold(T::one(), |acc, (p, a)| {
        let top = p.try_pow(a + 1, "sigma")?;
        acc.try_mul(&((top - T::one()) / (p.clone() - T::one())), "sigma")
    })
}

pub fn is_squarefree<T: Scalar>(f: &Factorization<T>) -> bool {
    f.factors().iter().all(|(_, a)| *a == 1)
}

pub fn divisor_count<T: Scalar>(f: &Factorization<T>) -> u64 {
    f.factors().iter().map(|(_, a)| *a as u64 + 1).product()
}

/// All divisors in ascending order.
pub fn divisors<T: Scalar>(f: &Factorization<T>) -> Vec<T> {
    let mut out = vec![T::one()];
    for (p, a) in f.factors() {
        let len = out.len();
        let mut pk = T::one();
        for _ in 0..*a {
            pk = pk * p.clone();
            for i in 0..len {
                out.push(out[i].clone() * pk.clone());
            }
        }
    }
    out.sort();
    out
}

/// Every divisor `d` paired with `φ(d)`, ascending in `d`.
pub fn divisors_with_phi<T: Scalar>(f: &Factorization<T>) -> Vec<(T, T)> {
    let mut out = vec![(T::one(), T::one())];
    for (p, a) in f.factors() {
        let len = out.len();
        let mut pk = T::one();
        for k in 0..*a {
            let phi_pk = if k == 0 {
                p.clone() - T::one()
            } else {
                pk.clone() * (p.clone() - T::one())
            };
            pk = pk * p.clone();
            for i in 0..len {
                let (d, phi) = out[i].clone();
                out.push((d * pk.clone(), phi * phi_pk.clone()));
            }
        }
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out
}

/// `n` is prime exactly when its factorization is a single first power.
pub fn is_prime_factorization<T: Scalar>(f: &Factorization<T>) -> bool {
    matches!(f.factors(), [(_, 1)])
}

/// Sum of `d φ(d)` over the divisors, i.e. the element-order sum of `C_n`.
pub fn sum_d_phi<T: Scalar>(f: &Factorization<T>) -> Result<T> {
    divisors_with_phi(f)
        .into_iter()
        .try_fold(T::zero(), |acc, (d, phi)| {
            acc.try_add(&d.try_mul(&phi, "sum of d*phi(d)")?, "sum of d*phi(d)")
        })
}
