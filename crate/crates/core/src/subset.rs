//! Subsets of the simple reflections, packed into a bitmask.

use serde::{Deserialize, Serialize};
use std::fmt;

/// A parabolic subset I ⊆ S, stored as a bitmask over generator indices.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Subset(pub u32);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    pub fn full(n: usize) -> Subset {
        Subset((1u32 << n) - 1)
    }

    pub fn single(g: usize) -> Subset {
        Subset(1 << g)
    }

    pub fn from_iter<I: IntoIterator<Item = usize>>(gens: I) -> Subset {
        let mut bits = 0;
        for g in gens {
            bits |= 1 << g;
        }
        Subset(bits)
    }

    pub fn contains(self, g: usize) -> bool {
        self.0 >> g & 1 == 1
    }

    pub fn with(self, g: usize) -> Subset {
        Subset(self.0 | 1 << g)
    }

    pub fn without(self, g: usize) -> Subset {
        Subset(self.0 & !(1 << g))
    }

    pub fn union(self, other: Subset) -> Subset {
        Subset(self.0 | other.0)
    }

    pub fn intersect(self, other: Subset) -> Subset {
        Subset(self.0 & other.0)
    }

    pub fn minus(self, other: Subset) -> Subset {
        Subset(self.0 & !other.0)
    }

    pub fn is_subset_of(self, other: Subset) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let bits = self.0;
        (0..32).filter(move |g| bits >> g & 1 == 1)
    }

    /// All subsets of `self`, in increasing bitmask order.
    pub fn subsets(self) -> Vec<Subset> {
        let mut out = Vec::with_capacity(1 << self.len());
        let mask = self.0;
        // iterate submasks
        let mut sub = 0u32;
        loop {
            out.push(Subset(sub));
            if sub == mask {
                break;
            }
            sub = (sub.wrapping_sub(mask)) & mask;
        }
        out.sort();
        out
    }

    /// Symmetric difference size.
    pub fn sym_diff_len(self, other: Subset) -> usize {
        (self.0 ^ other.0).count_ones() as usize
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, g) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, "}}")
    }
}
