//! Element-order spectra and the order sums ψ, ψ′, ψ″ derived from them.
//!
//! Spectra are maps over the divisor lattice, never element lists: a direct
//! product combines factor spectra by sending each pair of orders to their
//! lcm with the product of the counts. This is exact for every direct product,
//! coprime or not.

use std::collections::{BTreeMap, HashMap};

use serde::ser::SerializeMap;
use serde::Serialize;

use super::spec::GroupSpec;
use crate::arith::rational::{ratio_of, ExactRational};
use crate::arith::{divisor_count, divisors_with_phi, factor, sum_d_phi, Factorization};
use crate::error::{Error, Result};
use crate::scalar::{serde_scalar, Scalar};

/// Default cap on the number of distinct element orders in a spectrum.
pub const DEFAULT_SUPPORT_LIMIT: usize = 10_000_000;

/// Multiset of element orders: order `d` ↦ number of elements of order `d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderSpectrum<T> {
    entries: BTreeMap<T, T>,
}

impl<T: Scalar> OrderSpectrum<T> {
    pub fn trivial() -> Self {
        OrderSpectrum {
            entries: BTreeMap::from([(T::one(), T::one())]),
        }
    }

    pub fn entries(&self) -> &BTreeMap<T, T> {
        &self.entries
    }

    pub fn count(&self, order: &T) -> T {
        self.entries.get(order).cloned().unwrap_or_else(T::zero)
    }

    pub fn support(&self) -> usize {
        self.entries.len()
    }

    /// Number of elements, `Σ c_d`.
    pub fn total(&self) -> Result<T> {
        self.entries
            .values()
            .try_fold(T::zero(), |acc, c| acc.try_add(c, "spectrum total"))
    }

    /// `Σ d · c_d`.
    pub fn psi(&self) -> Result<T> {
        self.entries.iter().try_fold(T::zero(), |acc, (d, c)| {
            acc.try_add(&d.try_mul(c, "psi")?, "psi")
        })
    }

    pub fn exponent(&self) -> T {
        self.entries.keys().fold(T::one(), |acc, d| acc.lcm(d))
    }

    fn add(&mut self, order: T, count: T) {
        let slot = self.entries.entry(order).or_insert_with(T::zero);
        *slot = slot.clone() + count;
    }

    /// lcm-convolution: the spectrum of the direct product.
    pub fn product(&self, other: &Self, limit: usize) -> Result<Self> {
        let pairs = self.support().saturating_mul(other.support());
        if pairs > limit.saturating_mul(16) {
            return Err(Error::SpectrumTooLarge {
                support: pairs,
                limit,
            });
        }
        let mut out = OrderSpectrum {
            entries: BTreeMap::new(),
        };
        for (a, ca) in &self.entries {
            for (b, cb) in &other.entries {
                let count = ca.try_mul(cb, "spectrum count")?;
                out.add(a.lcm(b), count);
            }
        }
        if out.support() > limit {
            return Err(Error::SpectrumTooLarge {
                support: out.support(),
                limit,
            });
        }
        Ok(out)
    }
}

impl<T: Scalar> Serialize for OrderSpectrum<T> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        struct N<'a, T>(&'a T);
        impl<T: Scalar> Serialize for N<'_, T> {
            fn serialize<S: serde::Serializer>(
                &self,
                s: S,
            ) -> std::result::Result<S::Ok, S::Error> {
                serde_scalar::serialize(self.0, s)
            }
        }
        let mut m = s.serialize_map(Some(self.entries.len()))?;
        for (d, c) in &self.entries {
            m.serialize_entry(&d.to_string(), &N(c))?;
        }
        m.end()
    }
}

/// Evaluates spectra and order sums under a support limit, optionally using
/// factorizations supplied up front instead of factoring cyclic orders.
#[derive(Debug, Clone)]
pub struct SpectrumEngine<T> {
    limit: usize,
    known: HashMap<T, Factorization<T>>,
}

impl<T: Scalar> Default for SpectrumEngine<T> {
    fn default() -> Self {
        SpectrumEngine {
            limit: DEFAULT_SUPPORT_LIMIT,
            known: HashMap::new(),
        }
    }
}

impl<T: Scalar> SpectrumEngine<T> {
    pub fn with_limit(limit: usize) -> Self {
        SpectrumEngine {
            limit,
            ..Default::default()
        }
    }

    pub fn limit(&self) -> usize {
        self.limit
    }

    /// Registers a known factorization, used whenever its value appears as a cyclic order.
    pub fn know(mut self, f: Factorization<T>) -> Self {
        self.known.insert(f.value().clone(), f);
        self
    }

    pub fn factorization_of(&self, n: &T) -> Result<Factorization<T>> {
        match self.known.get(n) {
            Some(f) => Ok(f.clone()),
            None => factor(n),
        }
    }

    /// Factorization of `|G|`, assembled atom by atom.
    pub fn order_factorization(&self, g: &GroupSpec<T>) -> Result<Factorization<T>> {
        g.validate()?;
        let two = T::from_small(2);
        g.atoms().iter().try_fold(Factorization::one(), |acc, a| {
            let f = match a {
                GroupSpec::Cyclic(n) => self.factorization_of(n)?,
                GroupSpec::Dihedral(m) => self
                    .factorization_of(m)?
                    .mul(&Factorization::from_prime_powers([(two.clone(), 1)])?)?,
                GroupSpec::Quaternion8 => Factorization::from_prime_powers([(two.clone(), 3)])?,
                _ => unreachable!("atoms are never composite"),
            };
            acc.mul(&f)
        })
    }

    pub fn cyclic_spectrum(&self, f: &Factorization<T>) -> Result<OrderSpectrum<T>> {
        let support = divisor_count(f);
        if support > self.limit as u64 {
            return Err(Error::SpectrumTooLarge {
                support: usize::try_from(support).unwrap_or(usize::MAX),
                limit: self.limit,
            });
        }
        Ok(OrderSpectrum {
            entries: divisors_with_phi(f).into_iter().collect(),
        })
    }

    pub fn spectrum(&self, g: &GroupSpec<T>) -> Result<OrderSpectrum<T>> {
        g.validate()?;
        let mut acc = OrderSpectrum::trivial();
        for atom in g.atoms() {
            let s = self.atom_spectrum(&atom)?;
            acc = acc.product(&s, self.limit)?;
        }
        Ok(acc)
    }

    fn atom_spectrum(&self, atom: &GroupSpec<T>) -> Result<OrderSpectrum<T>> {
        match atom {
            GroupSpec::Cyclic(n) => self.cyclic_spectrum(&self.factorization_of(n)?),
            GroupSpec::Dihedral(m) => {
                // rotations form C_m; each of the m reflections has order 2
                let mut s = self.cyclic_spectrum(&self.factorization_of(m)?)?;
                s.add(T::from_small(2), m.clone());
                Ok(s)
            }
            GroupSpec::Quaternion8 => Ok(OrderSpectrum {
                entries: BTreeMap::from([
                    (T::one(), T::one()),
                    (T::from_small(2), T::one()),
                    (T::from_small(4), T::from_small(6)),
                ]),
            }),
            _ => unreachable!("atoms are never composite"),
        }
    }

    pub fn psi(&self, g: &GroupSpec<T>) -> Result<T> {
        self.spectrum(g)?.psi()
    }

    /// `ψ(G) / ψ(C_|G|)`.
    pub fn psi_prime(&self, g: &GroupSpec<T>) -> Result<ExactRational> {
        let psi = self.psi(g)?;
        let cyclic = psi_cyclic(&self.order_factorization(g)?)?;
        Ok(ratio_of(&psi, &cyclic))
    }

    /// `ψ(G) / |G|²`.
    pub fn psi_double_prime(&self, g: &GroupSpec<T>) -> Result<ExactRational> {
        let psi = self.psi(g)?;
        let n = g.order()?;
        Ok(ratio_of(&psi, &n.try_mul(&n, "|G|^2")?))
    }
}

/// `ψ(C_n) = ∏ (p^(2α+1) + 1) / (p + 1)`.
pub fn psi_cyclic<T: Scalar>(f: &Factorization<T>) -> Result<T> {
    f.factors().iter().try_fold(T::one(), |acc, (p, a)| {
        let top = p
            .try_pow(2 * a + 1, "psi(C_n)")?
            .try_add(&T::one(), "psi(C_n)")?;
        acc.try_mul(&(top / (p.clone() + T::one())), "psi(C_n)")
    })
}

/// `ψ(C_n) = Σ_{d | n} d φ(d)`, the divisor-sum route.
pub fn psi_cyclic_divisor_sum<T: Scalar>(f: &Factorization<T>) -> Result<T> {
    sum_d_phi(f)
}

pub fn order_spectrum<T: Scalar>(g: &GroupSpec<T>) -> Result<OrderSpectrum<T>> {
    SpectrumEngine::default().spectrum(g)
}

pub fn psi<T: Scalar>(g: &GroupSpec<T>) -> Result<T> {
    SpectrumEngine::default().psi(g)
}

pub fn psi_prime<T: Scalar>(g: &GroupSpec<T>) -> Result<ExactRational> {
    SpectrumEngine::default().psi_prime(g)
}

pub fn psi_double_prime<T: Scalar>(g: &GroupSpec<T>) -> Result<ExactRational> {
    SpectrumEngine::default().psi_double_prime(g)
}
