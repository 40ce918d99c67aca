//! Multi-indices of fixed total degree, listed in dictionary order.
//!
//! Dictionary order ranks variable 0 first: `x0^N` comes first, then
//! `x0^(N-1) x1`, and so on. On exponent tuples this is descending
//! lexicographic order, which is what [`MultiIndex`]'s `Ord` implements.

use alloc::collections::BTreeMap;
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};

use crate::error::{Error, Result};

/// Default upper bound on the induced dimension `binom(N+d, d)`.
pub const DEFAULT_GUARD: usize = 20_000;

/// Exponent tuple `(m_0, ..., m_d)` with its total degree cached.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultiIndex {
    parts: Vec<u32>,
    degree: u32,
}

impl MultiIndex {
    pub fn new(parts: Vec<u32>) -> Self {
        let degree = parts.iter().sum();
        Self { parts, degree }
    }

    /// `N·e_0`, the first index of degree `N` over `d + 1` variables.
    pub fn leading(dim: usize, degree: u32) -> Self {
        let mut parts = vec![0; dim + 1];
        parts[0] = degree;
        Self::new(parts)
    }

    /// The standard multi-index `e_i`.
    pub fn unit(dim: usize, i: usize) -> Self {
        let mut parts = vec![0; dim + 1];
        parts[i] = 1;
        Self::new(parts)
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// Number of variables, `d + 1`.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn get(&self, i: usize) -> u32 {
        self.parts[i]
    }

    /// `m + e_j`.
    pub fn raise(&self, j: usize) -> Self {
        let mut parts = self.parts.clone();
        parts[j] += 1;
        Self {
            parts,
            degree: self.degree + 1,
        }
    }

    /// `m - e_i`, absent when `m_i = 0`.
    pub fn lower(&self, i: usize) -> Option<Self> {
        if self.parts[i] == 0 {
            return None;
        }
        let mut parts = self.parts.clone();
        parts[i] -= 1;
        Some(Self {
            parts,
            degree: self.degree - 1,
        })
    }

    /// `m - e_i + e_j`, absent when `m_i = 0`.
    pub fn neighbor(&self, i: usize, j: usize) -> Option<Self> {
        if self.parts[i] == 0 {
            return None;
        }
        let mut parts = self.parts.clone();
        parts[i] -= 1;
        parts[j] += 1;
        Some(Self {
            parts,
            degree: self.degree,
        })
    }

    /// Position of the first nonzero exponent.
    pub fn first_positive(&self) -> Option<usize> {
        self.parts.iter().position(|&p| p > 0)
    }

    /// True when `self` comes strictly before `other` in dictionary order.
    pub fn precedes(&self, other: &Self) -> bool {
        self < other
    }
}

impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        other.parts.cmp(&self.parts)
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (k, p) in self.parts.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str(")")
    }
}

/// `N! / (m_0! ... m_d!)`.
pub fn multinomial(m: &MultiIndex) -> BigUint {
    let mut acc = BigUint::one();
    let mut running = 0u64;
    for &p in m.parts() {
        for k in 1..=u64::from(p) {
            running += 1;
            acc = acc * running / k;
        }
    }
    acc
}

/// `binom(n, k)` exactly.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::ZERO;
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for t in 1..=k {
        acc = acc * (n - k + t) / t;
    }
    acc
}

/// Number of monomials of degree `degree` in `dim + 1` variables.
pub fn induced_dimension(dim: usize, degree: u32) -> BigUint {
    binomial(u64::from(degree) + dim as u64, dim as u64)
}

/// All multi-indices of one degree, in dictionary order, with a rank lookup.
#[derive(Clone, Debug)]
pub struct IndexTable {
    dim: usize,
    degree: u32,
    list: Vec<MultiIndex>,
    ranks: BTreeMap<Vec<u32>, usize>,
}

impl IndexTable {
    pub fn new(dim: usize, degree: u32) -> Result<Self> {
        Self::with_guard(dim, degree, DEFAULT_GUARD)
    }

    /// Enumerates the table, failing if `binom(N+d, d)` exceeds `guard`.
    pub fn with_guard(dim: usize, degree: u32, guard: usize) -> Result<Self> {
        let nu = induced_dimension(dim, degree);
        if nu.to_usize().is_none_or(|n| n > guard) {
            return Err(Error::Capacity {
                nu: nu.to_string(),
                limit: guard,
            });
        }
        let mut list = Vec::with_capacity(nu.to_usize().unwrap_or(0));
        let mut current = vec![0u32; dim + 1];
        fill(&mut current, 0, degree, &mut list);
        let ranks = list.iter().enumerate().map(|(k, m)| (m.parts.clone(), k)).collect();
        Ok(Self {
            dim,
            degree,
            list,
            ranks,
        })
    }

    /// `d`, one less than the number of variables.
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.list.len()
    }

    pub fn is_empty(&self) -> bool {
        self.list.is_empty()
    }

    pub fn indices(&self) -> &[MultiIndex] {
        &self.list
    }

    pub fn iter(&self) -> core::slice::Iter<'_, MultiIndex> {
        self.list.iter()
    }

    pub fn rank(&self, m: &MultiIndex) -> Option<usize> {
        self.ranks.get(&m.parts).copied()
    }

    pub fn rank_parts(&self, parts: &[u32]) -> Option<usize> {
        self.ranks.get(parts).copied()
    }

    pub fn unrank(&self, k: usize) -> Option<&MultiIndex> {
        self.list.get(k)
    }
}

fn fill(current: &mut [u32], pos: usize, remaining: u32, out: &mut Vec<MultiIndex>) {
    if pos + 1 == current.len() {
        current[pos] = remaining;
        out.push(MultiIndex::new(current.to_vec()));
        return;
    }
    for v in (0..=remaining).rev() {
        current[pos] = v;
        fill(current, pos + 1, remaining - v, out);
    }
    current[pos] = 0;
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table(d: usize, n: u32) -> Vec<Vec<u32>> {
        IndexTable::new(d, n)
            .unwrap()
            .iter()
            .map(|m| m.parts().to_vec())
            .collect()
    }

    #[test]
    fn enumerate_examples() {
        assert_eq!(
            table(2, 2),
            vec![
                vec![2, 0, 0],
                vec![1, 1, 0],
                vec![1, 0, 1],
                vec![0, 2, 0],
                vec![0, 1, 1],
                vec![0, 0, 2]
            ]
        );
        assert_eq!(
            table(1, 4),
            vec![vec![4, 0], vec![3, 1], vec![2, 2], vec![1, 3], vec![0, 4]]
        );
        assert_eq!(table(3, 0), vec![vec![0, 0, 0, 0]]);
    }

    #[test]
    fn capacity_guard() {
        // binom(6+3,3) = 84
        assert!(IndexTable::with_guard(3, 6, 84).is_ok());
        let err = IndexTable::with_guard(3, 6, 83).unwrap_err();
        assert_eq!(
            err,
            Error::Capacity {
                nu: "84".into(),
                limit: 83
            }
        );
        assert!(matches!(IndexTable::new(40, 40), Err(Error::Capacity { .. })));
    }

    #[test]
    fn multinomial_examples() {
        assert_eq!(multinomial(&MultiIndex::new(vec![2, 2])), 6u32.into());
        assert_eq!(multinomial(&MultiIndex::leading(3, 7)), 1u32.into());
        assert_eq!(multinomial(&MultiIndex::new(vec![1, 1, 0, 0])), 2u32.into());
        assert_eq!(multinomial(&MultiIndex::new(vec![3, 2, 1])), 60u32.into());
    }

    #[test]
    fn neighbor_examples() {
        let m = MultiIndex::new(vec![2, 0, 0]);
        assert_eq!(m.neighbor(0, 1), Some(MultiIndex::new(vec![1, 1, 0])));
        assert_eq!(MultiIndex::new(vec![0, 2, 0]).neighbor(0, 1), None);
        let m = MultiIndex::new(vec![1, 1]);
        assert_eq!(m.neighbor(1, 1), Some(m.clone()));
    }

    #[test]
    fn sizes_sums_and_bijection() {
        for d in 0..=4 {
            for n in 0..=6u32 {
                let t = IndexTable::new(d, n).unwrap();
                assert_eq!(BigUint::from(t.len()), induced_dimension(d, n));
                let total: BigUint = t.iter().map(multinomial).sum();
                assert_eq!(total, BigUint::from(d as u64 + 1).pow(n));
                for (k, m) in t.iter().enumerate() {
                    assert_eq!(m.degree(), n);
                    assert_eq!(t.rank(m), Some(k));
                    assert_eq!(t.unrank(k), Some(m));
                }
                for w in t.indices().windows(2) {
                    assert!(w[0].precedes(&w[1]) && !w[1].precedes(&w[0]));
                }
            }
        }
    }
}
