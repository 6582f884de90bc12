//! Simplicial operators: the order-preserving maps `[m] -> [n]` between
//! finite ordinals, with `[-1]` (the empty ordinal) admitted so that joins and
//! their unique pair decompositions can be expressed.
//!
//! Operators act on simplices on the right; composition, epi-mono
//! factorisation, and ordinal sum are the primitive moves everything else in
//! the kernel reduces to.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// An order-preserving map `[m] -> [n]`, stored as the list of its values.
///
/// `source_rank` is `m = values.len() - 1` (so the empty ordinal is rank -1);
/// `target_rank` is `n`, which must be recorded separately because the empty
/// map `[-1] -> [n]` exists for every `n`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SimplicialOperator {
    target_rank: i64,
    values: Vec<usize>,
}

impl SimplicialOperator {
    pub fn new(target_rank: i64, values: Vec<usize>) -> Result<Self> {
        if target_rank < -1 {
            return Err(Error::InvalidOperator(format!(
                "target rank {target_rank} below -1"
            )));
        }
        if target_rank == -1 && !values.is_empty() {
            return Err(Error::InvalidOperator(
                "nonempty map into the empty ordinal".into(),
            ));
        }
        for w in values.windows(2) {
            if w[0] > w[1] {
                return Err(Error::InvalidOperator(format!(
                    "values {values:?} not weakly monotone"
                )));
            }
        }
        if let Some(&last) = values.last() {
            if last as i64 > target_rank {
                return Err(Error::InvalidOperator(format!(
                    "value {last} exceeds target rank {target_rank}"
                )));
            }
        }
        Ok(SimplicialOperator {
            target_rank,
            values,
        })
    }

    /// The identity on `[n]`; `n = -1` gives the identity of the empty ordinal.
    pub fn identity(n: i64) -> Self {
        let values = (0..=n).map(|i| i as usize).collect();
        SimplicialOperator {
            target_rank: n,
            values,
        }
    }

    /// The elementary face `delta^j : [n-1] -> [n]`, skipping `j`.
    pub fn face(n: usize, j: usize) -> Self {
        assert!(j <= n, "face index {j} out of range for [{n}]");
        let values = (0..n).map(|i| if i < j { i } else { i + 1 }).collect();
        SimplicialOperator {
            target_rank: n as i64,
            values,
        }
    }

    /// The elementary degeneracy `sigma^j : [n+1] -> [n]`, repeating `j`.
    pub fn degeneracy(n: usize, j: usize) -> Self {
        assert!(j <= n, "degeneracy index {j} out of range for [{n}]");
        let values = (0..=n + 1).map(|i| if i <= j { i } else { i - 1 }).collect();
        SimplicialOperator {
            target_rank: n as i64,
            values,
        }
    }

    /// The unique map `[-1] -> [n]`.
    pub fn empty_into(n: i64) -> Self {
        SimplicialOperator {
            target_rank: n,
            values: Vec::new(),
        }
    }

    /// The constant map `[m] -> [n]` at value `v`.
    pub fn constant(m: usize, n: usize, v: usize) -> Self {
        assert!(v <= n);
        SimplicialOperator {
            target_rank: n as i64,
            values: vec![v; m + 1],
        }
    }

    /// The vertex inclusion `[0] -> [n]` hitting `v`.
    pub fn vertex(n: usize, v: usize) -> Self {
        Self::constant(0, n, v)
    }

    pub fn source_rank(&self) -> i64 {
        self.values.len() as i64 - 1
    }

    pub fn target_rank(&self) -> i64 {
        self.target_rank
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn apply(&self, i: usize) -> usize {
        self.values[i]
    }

    pub fn is_identity(&self) -> bool {
        self.source_rank() == self.target_rank
            && self.values.iter().enumerate().all(|(i, &v)| v == i)
    }

    /// Surjective onto `[n]` (a degeneracy operator when also rank-decreasing).
    pub fn is_epi(&self) -> bool {
        if self.target_rank == -1 {
            return self.values.is_empty();
        }
        let mut next = 0usize;
        for &v in &self.values {
            if v == next {
                next += 1;
            } else if v > next {
                return false;
            }
        }
        next as i64 == self.target_rank + 1
    }

    /// Injective (a face operator when also rank-increasing).
    pub fn is_mono(&self) -> bool {
        self.values.windows(2).all(|w| w[0] < w[1])
    }

    /// Pointwise composite `self . other : [k] -> [n]` where
    /// `other : [k] -> [m]` and `self : [m] -> [n]`.
    pub fn compose(&self, other: &SimplicialOperator) -> Result<SimplicialOperator> {
        if other.target_rank != self.source_rank() {
            return Err(Error::RankMismatch(format!(
                "cannot compose [{}]->[{}] after [{}]->[{}]",
                self.source_rank(),
                self.target_rank,
                other.source_rank(),
                other.target_rank,
            )));
        }
        let values = other.values.iter().map(|&i| self.values[i]).collect();
        Ok(SimplicialOperator {
            target_rank: self.target_rank,
            values,
        })
    }

    /// Unique factorisation `self = mono . epi` with `epi` surjective and
    /// `mono` injective (the Eilenberg-Zilber decomposition of an operator).
    pub fn epi_mono_factor(&self) -> (SimplicialOperator, SimplicialOperator) {
        let mut image: Vec<usize> = self.values.clone();
        image.dedup();
        let mono = SimplicialOperator {
            target_rank: self.target_rank,
            values: image.clone(),
        };
        let epi_values = self
            .values
            .iter()
            .map(|&v| image.binary_search(&v).expect("value in image"))
            .collect();
        let epi = SimplicialOperator {
            target_rank: image.len() as i64 - 1,
            values: epi_values,
        };
        (epi, mono)
    }

    /// Ordinal sum `self (+) other : [n+m+1] -> [n'+m'+1]`, placing `self` on
    /// the initial block and `other`, shifted, on the final block.
    pub fn ordinal_sum(&self, other: &SimplicialOperator) -> SimplicialOperator {
        let shift = (self.target_rank + 1) as usize;
        let mut values = self.values.clone();
        values.extend(other.values.iter().map(|&v| v + shift));
        SimplicialOperator {
            target_rank: self.target_rank + other.target_rank + 1,
            values,
        }
    }

    /// Inverse of `ordinal_sum` on a map into `[r + s + 1]`: splits
    /// `self : [k] -> [r+s+1]` uniquely as `alpha1 (+) alpha2` with
    /// `alpha1 : [k1] -> [r]` and `alpha2 : [k2] -> [s]`.
    pub fn split_at(&self, r: i64) -> (SimplicialOperator, SimplicialOperator) {
        let s = self.target_rank - r - 1;
        debug_assert!(s >= -1);
        let cut = self.values.partition_point(|&v| v as i64 <= r);
        let alpha1 = SimplicialOperator {
            target_rank: r,
            values: self.values[..cut].to_vec(),
        };
        let alpha2 = SimplicialOperator {
            target_rank: s,
            values: self.values[cut..]
                .iter()
                .map(|&v| v - (r + 1) as usize)
                .collect(),
        };
        (alpha1, alpha2)
    }

    /// All operators `[m] -> [n]`, in lexicographic order of value lists.
    pub fn all(m: i64, n: i64) -> Vec<SimplicialOperator> {
        if m == -1 {
            return vec![SimplicialOperator::empty_into(n)];
        }
        if n == -1 {
            return Vec::new();
        }
        let mut out = Vec::new();
        let mut stack = vec![Vec::new()];
        while let Some(prefix) = stack.pop() {
            if prefix.len() == (m + 1) as usize {
                out.push(SimplicialOperator {
                    target_rank: n,
                    values: prefix,
                });
                continue;
            }
            let lo = prefix.last().copied().unwrap_or(0);
            // push in reverse so the stack pops in increasing order
            for v in (lo..=n as usize).rev() {
                let mut next = prefix.clone();
                next.push(v);
                stack.push(next);
            }
        }
        out
    }

    /// All epis `[m] ->> [n]`, lexicographic.
    pub fn epis(m: i64, n: i64) -> Vec<SimplicialOperator> {
        Self::all(m, n).into_iter().filter(|a| a.is_epi()).collect()
    }

    /// All monos `[m] >-> [n]`, lexicographic.
    pub fn monos(m: i64, n: i64) -> Vec<SimplicialOperator> {
        Self::all(m, n).into_iter().filter(|a| a.is_mono()).collect()
    }
}

impl std::fmt::Display for SimplicialOperator {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[")?;
        for (i, v) in self.values.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "]:{}->{}", self.source_rank(), self.target_rank)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sigma0_after_delta1_is_identity() {
        let d1 = SimplicialOperator::face(1, 1);
        let s0 = SimplicialOperator::degeneracy(0, 0);
        let c = s0.compose(&d1).unwrap();
        assert!(c.is_identity());
        assert_eq!(c, SimplicialOperator::identity(0));
    }

    #[test]
    fn delta1_after_delta0_hits_vertex_zero() {
        // [0] -> [1] -> [2]; delta^1 . delta^0 misses 1 then 0... composite
        // computed against the brute-force table in the integration tests;
        // here just the stated value.
        let d0 = SimplicialOperator::face(1, 0);
        let d1 = SimplicialOperator::face(2, 1);
        let c = d1.compose(&d0).unwrap();
        assert_eq!(c.values(), &[2]);
    }

    #[test]
    fn identity_laws() {
        for alpha in SimplicialOperator::all(2, 3) {
            let idn = SimplicialOperator::identity(alpha.target_rank());
            let idm = SimplicialOperator::identity(alpha.source_rank());
            assert_eq!(idn.compose(&alpha).unwrap(), alpha);
            assert_eq!(alpha.compose(&idm).unwrap(), alpha);
        }
    }

    #[test]
    fn epi_mono_factor_examples() {
        let id = SimplicialOperator::identity(3);
        let (e, m) = id.epi_mono_factor();
        assert!(e.is_identity() && m.is_identity());

        let s0 = SimplicialOperator::degeneracy(0, 0);
        let (e, m) = s0.epi_mono_factor();
        assert_eq!(e, s0);
        assert!(m.is_identity());

        let alpha = SimplicialOperator::new(2, vec![0, 0, 2]).unwrap();
        let (e, m) = alpha.epi_mono_factor();
        assert_eq!(e.values(), &[0, 0, 1]);
        assert_eq!(m.values(), &[0, 2]);
        assert_eq!(m.compose(&e).unwrap(), alpha);
    }

    #[test]
    fn split_inverts_ordinal_sum() {
        for a1 in SimplicialOperator::all(1, 2) {
            for a2 in SimplicialOperator::all(0, 1) {
                let sum = a1.ordinal_sum(&a2);
                let (b1, b2) = sum.split_at(2);
                assert_eq!(b1, a1);
                assert_eq!(b2, a2);
            }
        }
        // empty blocks
        let e = SimplicialOperator::empty_into(2);
        let a = SimplicialOperator::identity(1);
        let sum = e.ordinal_sum(&a);
        assert_eq!(sum.source_rank(), 1);
        assert_eq!(sum.target_rank(), 4);
        let (b1, b2) = sum.split_at(2);
        assert_eq!(b1, e);
        assert_eq!(b2, a);
    }

    #[test]
    fn enumeration_counts() {
        // monotone maps [1] -> [1]: 3 of them
        assert_eq!(SimplicialOperator::all(1, 1).len(), 3);
        // epis [2] ->> [1]: sigma^0, sigma^1
        assert_eq!(SimplicialOperator::epis(2, 1).len(), 2);
        // monos [1] >-> [2]: three edges of the triangle
        assert_eq!(SimplicialOperator::monos(1, 2).len(), 3);
    }
}
