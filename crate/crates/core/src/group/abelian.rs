//! Enumeration of abelian groups by order: one group per choice of integer
//! partition of each prime exponent.

use super::spec::GroupSpec;
use crate::arith::factor_u64;
use crate::error::Result;

/// Partitions of `n` as non-increasing part lists.
pub fn partitions(n: u32) -> Vec<Vec<u32>> {
    fn go(n: u32, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if n == 0 {
            out.push(prefix.clone());
            return;
        }
        for part in (1..=max.min(n)).rev() {
            prefix.push(part);
            go(n - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// Every abelian group of order `n` up to isomorphism, as canonical specs
/// over prime-power cyclic factors.
pub fn abelian_groups(n: u64) -> Result<Vec<GroupSpec<u64>>> {
    let f = factor_u64(n)?;
    let mut groups: Vec<Vec<u64>> = vec![Vec::new()];
    for &(p, a) in f.factors() {
        let shapes = partitions(a);
        groups = groups
            .iter()
            .flat_map(|g| {
                shapes.iter().map(move |shape| {
                    let mut g = g.clone();
                    g.extend(shape.iter().map(|&e| p.pow(e)));
                    g
                })
            })
            .collect();
    }
    Ok(groups
        .into_iter()
        .map(|orders| GroupSpec::AbelianFactors(orders).canonical())
        .collect())
}

/// Number of abelian groups of order `n`.
pub fn abelian_group_count(n: u64) -> Result<usize> {
    let f = factor_u64(n)?;
    Ok(f.factors()
        .iter()
        .map(|&(_, a)| partitions(a).len())
        .product())
}
