use std::fmt;

use fixedbitset::FixedBitSet;

/// A fixed-length binary column. Row indices are 0-based.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitColumn {
    bits: FixedBitSet,
}

impl BitColumn {
    pub fn zeros(len: usize) -> Self {
        BitColumn {
            bits: FixedBitSet::with_capacity(len),
        }
    }

    /// Builds a column of length `len` with 1's at the given rows.
    ///
    /// Panics if a row is `>= len`.
    pub fn from_support(len: usize, support: &[usize]) -> Self {
        let mut bits = FixedBitSet::with_capacity(len);
        for &row in support {
            assert!(row < len, "row {row} out of range for length {len}");
            bits.insert(row);
        }
        BitColumn { bits }
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn get(&self, row: usize) -> bool {
        self.bits.contains(row)
    }

    pub fn set(&mut self, row: usize, value: bool) {
        self.bits.set(row, value);
    }

    pub fn weight(&self) -> usize {
        self.bits.count_ones(..)
    }

    /// Rows carrying a 1, increasing.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.ones()
    }

    pub fn support_vec(&self) -> Vec<usize> {
        self.bits.ones().collect()
    }

    pub fn is_zero(&self) -> bool {
        self.bits.is_clear()
    }

    /// `supp(self) ⊆ supp(other)`.
    pub fn is_covered_by(&self, other: &BitColumn) -> bool {
        self.bits.is_subset(&other.bits)
    }

    pub fn union_with(&mut self, other: &BitColumn) {
        self.bits.union_with(&other.bits);
    }

    pub fn intersects(&self, other: &BitColumn) -> bool {
        !self.bits.is_disjoint(&other.bits)
    }

    /// First pair of consecutive 1's closer than `d + 1` rows apart.
    pub fn gap_violation(&self, d: usize) -> Option<(usize, usize)> {
        let mut prev: Option<usize> = None;
        for row in self.bits.ones() {
            if let Some(p) = prev {
                if row - p < d + 1 {
                    return Some((p, row));
                }
            }
            prev = Some(row);
        }
        None
    }

    pub fn as_bitset(&self) -> &FixedBitSet {
        &self.bits
    }
}

impl fmt::Debug for BitColumn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitColumn({self})")
    }
}

impl fmt::Display for BitColumn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in 0..self.len() {
            f.write_str(if self.get(row) { "1" } else { "0" })?;
        }
        Ok(())
    }
}
