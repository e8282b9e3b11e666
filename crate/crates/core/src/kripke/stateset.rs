use std::fmt;

use smallvec::{smallvec, SmallVec};

/// A subset of `{0, …, n-1}` as a bitset. Models up to 128 states stay
/// inline.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StateSet {
    words: SmallVec<[u64; 2]>,
    n: usize,
}

fn words_for(n: usize) -> usize {
    n.div_ceil(64)
}

impl StateSet {
    pub fn empty(n: usize) -> Self {
        StateSet {
            words: smallvec![0; words_for(n)],
            n,
        }
    }

    pub fn full(n: usize) -> Self {
        let mut s = StateSet {
            words: smallvec![u64::MAX; words_for(n)],
            n,
        };
        s.trim();
        s
    }

    pub fn from_indices(n: usize, items: impl IntoIterator<Item = usize>) -> Self {
        let mut s = Self::empty(n);
        for i in items {
            s.insert(i);
        }
        s
    }

    fn trim(&mut self) {
        let r = self.n % 64;
        if r != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << r) - 1;
            }
        }
    }

    /// Size of the universe, not of the set.
    pub fn universe(&self) -> usize {
        self.n
    }

    pub fn insert(&mut self, i: usize) {
        assert!(i < self.n, "state {i} out of range {}", self.n);
        self.words[i / 64] |= 1 << (i % 64);
    }

    pub fn remove(&mut self, i: usize) {
        assert!(i < self.n, "state {i} out of range {}", self.n);
        self.words[i / 64] &= !(1 << (i % 64));
    }

    pub fn contains(&self, i: usize) -> bool {
        i < self.n && self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_full(&self) -> bool {
        self.len() == self.n
    }

    pub fn union_with(&mut self, other: &StateSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn intersect_with(&mut self, other: &StateSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    pub fn difference_with(&mut self, other: &StateSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
    }

    pub fn complement(&self) -> StateSet {
        let mut s = StateSet {
            words: self.words.iter().map(|w| !w).collect(),
            n: self.n,
        };
        s.trim();
        s
    }

    pub fn union(&self, other: &StateSet) -> StateSet {
        let mut s = self.clone();
        s.union_with(other);
        s
    }

    pub fn intersection(&self, other: &StateSet) -> StateSet {
        let mut s = self.clone();
        s.intersect_with(other);
        s
    }

    pub fn difference(&self, other: &StateSet) -> StateSet {
        let mut s = self.clone();
        s.difference_with(other);
        s
    }

    pub fn intersects(&self, other: &StateSet) -> bool {
        self.words.iter().zip(&other.words).any(|(a, b)| a & b != 0)
    }

    pub fn is_subset(&self, other: &StateSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    /// Moves every member `i` to `i + d`, dropping those that leave the
    /// universe.
    pub fn shifted(&self, d: isize) -> StateSet {
        let mut out = StateSet::empty(self.n);
        let nw = self.words.len();
        let (q, r) = (d.unsigned_abs() / 64, d.unsigned_abs() % 64);
        if d >= 0 {
            for i in q..nw {
                let mut w = self.words[i - q] << r;
                if r > 0 && i > q {
                    w |= self.words[i - q - 1] >> (64 - r);
                }
                out.words[i] = w;
            }
        } else {
            for i in 0..nw.saturating_sub(q) {
                let mut w = self.words[i + q] >> r;
                if r > 0 && i + q + 1 < nw {
                    w |= self.words[i + q + 1] << (64 - r);
                }
                out.words[i] = w;
            }
        }
        out.trim();
        out
    }

    pub fn first(&self) -> Option<usize> {
        self.iter().next()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * 64 + b)
            })
        })
    }
}

impl fmt::Debug for StateSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_ops() {
        let mut a = StateSet::empty(70);
        a.insert(0);
        a.insert(69);
        assert_eq!(a.iter().collect::<Vec<_>>(), vec![0, 69]);
        assert_eq!(a.complement().len(), 68);
        assert!(StateSet::full(70).is_full());
        assert_eq!(StateSet::full(3).len(), 3);
        let b = StateSet::from_indices(70, [0, 1]);
        assert_eq!(a.intersection(&b).iter().collect::<Vec<_>>(), vec![0]);
        assert!(a.intersection(&b).is_subset(&a));
        assert!(!a.is_subset(&b));
        assert!(StateSet::empty(0).is_full());
    }

    #[test]
    fn shifts_match_index_arithmetic() {
        let items = [0usize, 5, 63, 64, 65, 127, 130, 199];
        let s = StateSet::from_indices(200, items);
        for d in [-130isize, -64, -63, -3, -1, 0, 1, 2, 63, 64, 65, 140] {
            let want = StateSet::from_indices(
                200,
                items
                    .iter()
                    .map(|&i| i as isize + d)
                    .filter(|&j| (0..200).contains(&j))
                    .map(|j| j as usize),
            );
            assert_eq!(s.shifted(d), want, "shift by {d}");
        }
    }
}
