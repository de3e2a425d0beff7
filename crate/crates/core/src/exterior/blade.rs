use std::fmt;

/// A set of basis indices, stored as a bitmask. The associated basis element
/// is the wedge of the indexed coordinate vectors (or covectors) in ascending
/// order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Blade(u64);

impl Blade {
    pub const EMPTY: Blade = Blade(0);

    pub fn from_mask(mask: u64) -> Self {
        Blade(mask)
    }

    pub fn single(i: usize) -> Self {
        Blade(1 << i)
    }

    /// Builds the blade for `e_{i_1} ∧ … ∧ e_{i_k}` in the given order.
    /// Returns the blade together with the sign of the sorting permutation, or
    /// `None` when an index repeats.
    pub fn from_indices(indices: &[usize]) -> Option<(Blade, i32)> {
        let mut acc = Blade::EMPTY;
        let mut sign = 1;
        for &i in indices {
            sign *= acc.wedge_sign(Blade::single(i))?;
            acc = Blade(acc.0 | (1 << i));
        }
        Some((acc, sign))
    }

    pub fn mask(self) -> u64 {
        self.0
    }

    pub fn grade(self) -> u32 {
        self.0.count_ones()
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 & (1 << i) != 0
    }

    pub fn is_subset_of(self, other: Blade) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn without(self, i: usize) -> Blade {
        Blade(self.0 & !(1 << i))
    }

    pub fn union(self, other: Blade) -> Blade {
        Blade(self.0 | other.0)
    }

    /// Ascending list of indices.
    pub fn indices(self) -> impl Iterator<Item = usize> {
        let mask = self.0;
        (0..64).filter(move |&i| mask & (1u64 << i) != 0)
    }

    /// Number of elements of `self` strictly below index `i`.
    pub fn count_below(self, i: usize) -> u32 {
        (self.0 & ((1u64 << i) - 1)).count_ones()
    }

    /// All blades of the given grade over `dim` indices, in increasing mask
    /// order.
    pub fn all_of_grade(dim: usize, grade: u32) -> impl Iterator<Item = Blade> {
        let limit = if dim >= 64 {
            u64::MAX
        } else {
            (1u64 << dim) - 1
        };
        let mut next = if grade as usize > dim {
            None
        } else if grade == 0 {
            Some(0)
        } else {
            Some(u64::MAX >> (64 - grade))
        };
        std::iter::from_fn(move || {
            let cur = next?;
            next = if cur == 0 {
                None
            } else {
                // Gosper's hack: next larger mask with the same popcount
                let c = cur & cur.wrapping_neg();
                let r = cur.wrapping_add(c);
                let n = (((r ^ cur) >> 2) / c) | r;
                (r != 0 && n <= limit).then_some(n)
            };
            Some(Blade(cur))
        })
    }

    /// Sign of reordering `self ∧ other` into ascending order, or `None` if the
    /// blades overlap (the wedge vanishes).
    pub fn wedge_sign(self, other: Blade) -> Option<i32> {
        if self.0 & other.0 != 0 {
            return None;
        }
        // count pairs (i in self, j in other) with i > j
        let mut inversions = 0u32;
        for j in other.indices() {
            inversions += (self.0 >> (j + 1)).count_ones();
        }
        Some(if inversions.is_multiple_of(2) { 1 } else { -1 })
    }
}

impl fmt::Display for Blade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let idx: Vec<String> = self.indices().map(|i| i.to_string()).collect();
        write!(f, "{{{}}}", idx.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grade_enumeration() {
        let all: Vec<u64> = Blade::all_of_grade(4, 2).map(Blade::mask).collect();
        assert_eq!(all, vec![0b0011, 0b0101, 0b0110, 0b1001, 0b1010, 0b1100]);
        assert_eq!(Blade::all_of_grade(3, 0).count(), 1);
        assert_eq!(Blade::all_of_grade(3, 3).count(), 1);
        assert_eq!(Blade::all_of_grade(3, 4).count(), 0);
        assert_eq!(Blade::all_of_grade(6, 3).count(), 20);
    }

    #[test]
    fn sorting_sign() {
        assert_eq!(Blade::from_indices(&[0, 1]), Some((Blade(0b11), 1)));
        assert_eq!(Blade::from_indices(&[1, 0]), Some((Blade(0b11), -1)));
        assert_eq!(Blade::from_indices(&[2, 0, 1]), Some((Blade(0b111), 1)));
        assert_eq!(Blade::from_indices(&[0, 0]), None);
    }

    #[test]
    fn wedge_sign_matches_brute_force() {
        for a in 0u64..32 {
            for b in 0u64..32 {
                let (ba, bb) = (Blade(a), Blade(b));
                let seq: Vec<usize> = ba.indices().chain(bb.indices()).collect();
                let expected = Blade::from_indices(&seq).map(|(_, s)| s);
                assert_eq!(ba.wedge_sign(bb), expected, "{a:b} ∧ {b:b}");
            }
        }
    }
}
