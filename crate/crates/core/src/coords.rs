use std::fmt;

/// Largest code length representable by [`CoordSet`].
pub const MAX_LENGTH: usize = 64;

/// A set of code coordinates, stored as a bitmask.
///
/// Coordinates are 0-based in the API. Everything printed or serialized
/// for people (JSON files, CLI flags, error messages) uses 1-based labels.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CoordSet(u64);

impl CoordSet {
    pub const EMPTY: CoordSet = CoordSet(0);

    pub const fn from_mask(mask: u64) -> Self {
        CoordSet(mask)
    }

    /// `{0, 1, …, n-1}`.
    pub fn full(n: usize) -> Self {
        assert!(n <= MAX_LENGTH);
        if n == MAX_LENGTH {
            CoordSet(u64::MAX)
        } else {
            CoordSet((1u64 << n) - 1)
        }
    }

    pub fn single(i: usize) -> Self {
        CoordSet(1u64 << i)
    }

    pub const fn mask(self) -> u64 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, i: usize) -> bool {
        i < MAX_LENGTH && self.0 >> i & 1 == 1
    }

    pub fn insert(&mut self, i: usize) {
        self.0 |= 1u64 << i;
    }

    pub fn remove(&mut self, i: usize) {
        self.0 &= !(1u64 << i);
    }

    pub fn with(self, i: usize) -> Self {
        CoordSet(self.0 | 1u64 << i)
    }

    pub fn without(self, i: usize) -> Self {
        CoordSet(self.0 & !(1u64 << i))
    }

    pub fn union(self, other: Self) -> Self {
        CoordSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        CoordSet(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        CoordSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    /// Largest member plus one, or 0 for the empty set.
    pub fn bound(self) -> usize {
        64 - self.0.leading_zeros() as usize
    }

    /// Members in increasing order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut m = self.0;
        std::iter::from_fn(move || {
            if m == 0 {
                return None;
            }
            let i = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(i)
        })
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// 1-based labels, as used in files and on the command line.
    pub fn labels(self) -> Vec<usize> {
        self.iter().map(|i| i + 1).collect()
    }

    /// Builds a set from 1-based labels, rejecting 0 and anything above `n`.
    pub fn from_labels(labels: &[usize], n: usize) -> crate::Result<Self> {
        let mut s = CoordSet::EMPTY;
        for &l in labels {
            if l == 0 || l > n {
                return crate::error::usage(format!("coordinate {l} outside 1..={n}"));
            }
            if s.contains(l - 1) {
                return crate::error::usage(format!("coordinate {l} listed twice"));
            }
            s.insert(l - 1);
        }
        Ok(s)
    }

    /// Compares by the sorted member lists, lexicographically.
    pub fn lex_cmp(self, other: Self) -> std::cmp::Ordering {
        self.iter().cmp(other.iter())
    }
}

impl FromIterator<usize> for CoordSet {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        let mut s = CoordSet::EMPTY;
        for i in iter {
            s.insert(i);
        }
        s
    }
}

impl fmt::Debug for CoordSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// All `k`-subsets of `{0..n}` in increasing mask order (Gosper's hack).
pub fn k_subsets(n: usize, k: usize) -> impl Iterator<Item = CoordSet> {
    assert!(n <= MAX_LENGTH);
    let limit: u128 = 1u128 << n;
    let mut next: Option<u64> = if k > n {
        None
    } else if k == 0 {
        Some(0)
    } else {
        Some(((1u128 << k) - 1) as u64)
    };
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == 0 {
            None
        } else {
            let cur = cur as u128;
            let c = cur & cur.wrapping_neg();
            let r = cur + c;
            let nxt = (((r ^ cur) >> 2) / c) | r;
            (nxt < limit).then_some(nxt as u64)
        };
        Some(CoordSet(cur))
    })
}

/// `k`-subsets of the members of `base`, in increasing order of the
/// index pattern over `base`'s members.
pub fn k_subsets_of(base: CoordSet, k: usize) -> impl Iterator<Item = CoordSet> {
    let members = base.to_vec();
    k_subsets(members.len(), k).map(move |pattern| pattern.iter().map(|p| members[p]).collect())
}
