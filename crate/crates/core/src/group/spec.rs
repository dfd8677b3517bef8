use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Symbolic description of a finite group built from the supported families.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum GroupSpec<T> {
    /// Cyclic group of order `n`.
    Cyclic(T),
    /// Dihedral group of order `2m`, stored by `m`; `Dihedral(3)` prints as `D6`.
    Dihedral(T),
    Quaternion8,
    Product(Vec<GroupSpec<T>>),
    /// Direct product of cyclic groups with these orders.
    AbelianFactors(Vec<T>),
}

impl<T: Scalar> GroupSpec<T> {
    pub fn cyclic(n: T) -> Result<Self> {
        if n.is_zero() {
            return Err(Error::invalid("cyclic group order must be positive"));
        }
        Ok(GroupSpec::Cyclic(n))
    }

    /// Dihedral group of the given (even) order.
    pub fn dihedral_of_order(order: T) -> Result<Self> {
        let two = T::from_small(2);
        if order.is_zero() || order.is_odd() {
            return Err(Error::invalid(format!(
                "dihedral order must be even and >= 2, got {order}"
            )));
        }
        Ok(GroupSpec::Dihedral(order / two))
    }

    /// Canonical direct product of the given factors.
    pub fn product(factors: impl IntoIterator<Item = GroupSpec<T>>) -> Self {
        GroupSpec::Product(factors.into_iter().collect()).canonical()
    }

    pub fn abelian(orders: impl IntoIterator<Item = T>) -> Result<Self> {
        let orders: Vec<T> = orders.into_iter().collect();
        if let Some(bad) = orders.iter().find(|o| **o < T::from_small(2)) {
            return Err(Error::invalid(format!(
                "abelian invariant {bad} must be >= 2"
            )));
        }
        Ok(GroupSpec::AbelianFactors(orders))
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            GroupSpec::Cyclic(n) if n.is_zero() => Err(Error::invalid("C0 is not a group")),
            GroupSpec::Dihedral(m) if m.is_zero() => Err(Error::invalid("D0 is not a group")),
            GroupSpec::Product(fs) => fs.iter().try_for_each(|f| f.validate()),
            GroupSpec::AbelianFactors(os) if os.iter().any(|o| o.is_zero()) => {
                Err(Error::invalid("abelian invariants must be positive"))
            }
            _ => Ok(()),
        }
    }

    /// Flattened atoms (cyclic, dihedral, quaternion), in input order.
    pub fn atoms(&self) -> Vec<GroupSpec<T>> {
        let mut out = Vec::new();
        self.push_atoms(&mut out);
        out
    }

    fn push_atoms(&self, out: &mut Vec<GroupSpec<T>>) {
        match self {
            GroupSpec::Product(fs) => fs.iter().for_each(|f| f.push_atoms(out)),
            GroupSpec::AbelianFactors(os) => out.extend(os.iter().cloned().map(GroupSpec::Cyclic)),
            atom => out.push(atom.clone()),
        }
    }

    /// Flat, sorted by (order, constructor, parameter), trivial factors dropped.
    pub fn canonical(&self) -> Self {
        let mut atoms: Vec<_> = self
            .atoms()
            .into_iter()
            .filter(|a| !matches!(a, GroupSpec::Cyclic(n) if n.is_one()))
            .collect();
        atoms.sort_by(atom_cmp);
        match atoms.len() {
            0 => GroupSpec::Cyclic(T::one()),
            1 => atoms.pop().expect("one atom"),
            _ => GroupSpec::Product(atoms),
        }
    }

    pub fn order(&self) -> Result<T> {
        match self {
            GroupSpec::Cyclic(n) => Ok(n.clone()),
            GroupSpec::Dihedral(m) => m.try_mul(&T::from_small(2), "group order"),
            GroupSpec::Quaternion8 => Ok(T::from_small(8)),
            GroupSpec::Product(fs) => fs
                .iter()
                .try_fold(T::one(), |acc, f| acc.try_mul(&f.order()?, "group order")),
            GroupSpec::AbelianFactors(os) => os
                .iter()
                .try_fold(T::one(), |acc, o| acc.try_mul(o, "group order")),
        }
    }

    /// Structural test: every atom is cyclic and atom orders are pairwise coprime.
    pub fn is_cyclic(&self) -> bool {
        let atoms = self.atoms();
        let mut orders = Vec::with_capacity(atoms.len());
        for a in &atoms {
            match a {
                GroupSpec::Cyclic(n) => orders.push(n.clone()),
                // D2 is the cyclic group of order 2
                GroupSpec::Dihedral(m) if m.is_one() => orders.push(T::from_small(2)),
                _ => return false,
            }
        }
        orders
            .iter()
            .enumerate()
            .all(|(i, a)| orders[i + 1..].iter().all(|b| a.gcd(b).is_one()))
    }

    pub fn is_abelian(&self) -> bool {
        self.atoms().iter().all(|a| match a {
            GroupSpec::Dihedral(m) => *m <= T::from_small(2),
            GroupSpec::Quaternion8 => false,
            _ => true,
        })
    }

    /// A product is nilpotent iff every factor is; `D_2m` is nilpotent iff `m` is a power of two.
    pub fn is_nilpotent(&self) -> bool {
        self.atoms().iter().all(|a| match a {
            GroupSpec::Dihedral(m) => is_power_of_two(m),
            _ => true,
        })
    }
}

fn is_power_of_two<T: Scalar>(m: &T) -> bool {
    let two = T::from_small(2);
    let mut m = m.clone();
    while m.is_even() && !m.is_zero() {
        m = m / two.clone();
    }
    m.is_one()
}

fn atom_key<T: Scalar>(a: &GroupSpec<T>) -> (T, u8, T) {
    match a {
        GroupSpec::Cyclic(n) => (n.clone(), 0, n.clone()),
        GroupSpec::Dihedral(m) => (m.clone() * T::from_small(2), 1, m.clone()),
        GroupSpec::Quaternion8 => (T::from_small(8), 2, T::from_small(8)),
        _ => unreachable!("atoms are never composite"),
    }
}

fn atom_cmp<T: Scalar>(a: &GroupSpec<T>, b: &GroupSpec<T>) -> Ordering {
    atom_key(a).cmp(&atom_key(b))
}

/// Canonical printer; emits the same dialect the parser accepts.
impl<T: Scalar> fmt::Display for GroupSpec<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Cyclic(n) => write!(f, "C{n}"),
            GroupSpec::Dihedral(m) => write!(f, "D{}", m.clone() * T::from_small(2)),
            GroupSpec::Quaternion8 => write!(f, "Q8"),
            GroupSpec::Product(_) | GroupSpec::AbelianFactors(_) => {
                let atoms = self.atoms();
                if atoms.is_empty() {
                    return write!(f, "C1");
                }
                for (i, a) in atoms.iter().enumerate() {
                    if i > 0 {
                        write!(f, " x ")?;
                    }
                    write!(f, "{a}")?;
                }
                Ok(())
            }
        }
    }
}
