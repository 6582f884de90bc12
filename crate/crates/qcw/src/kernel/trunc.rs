//! Truncated views onto simplicial sets that may be infinite: the stored
//! complex agrees with the real object in all levels up to `complete_up_to`,
//! and says nothing above that.

use crate::kernel::sset::SsetRef;

/// How much of a stored complex can be trusted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum Completeness {
    /// The stored complex is the entire object.
    Exact,
    /// Levels up to and including the given height agree with the real object;
    /// higher levels are unknown, never asserted empty.
    UpTo(usize),
}

impl Completeness {
    pub fn allows(&self, level: usize) -> bool {
        match self {
            Completeness::Exact => true,
            Completeness::UpTo(n) => level <= *n,
        }
    }

    /// Largest usable level not exceeding `want`.
    pub fn clamp(&self, want: usize) -> usize {
        match self {
            Completeness::Exact => want,
            Completeness::UpTo(n) => want.min(*n),
        }
    }
}

/// A finite window onto a (possibly infinite) simplicial set.
#[derive(Debug, Clone)]
pub struct TruncatedSSet {
    pub complex: SsetRef,
    pub completeness: Completeness,
}

impl TruncatedSSet {
    pub fn exact(complex: SsetRef) -> Self {
        TruncatedSSet {
            complex,
            completeness: Completeness::Exact,
        }
    }

    pub fn up_to(complex: SsetRef, level: usize) -> Self {
        TruncatedSSet {
            complex,
            completeness: Completeness::UpTo(level),
        }
    }

    pub fn truncation_level(&self) -> Option<usize> {
        match self.completeness {
            Completeness::Exact => None,
            Completeness::UpTo(n) => Some(n),
        }
    }
}
