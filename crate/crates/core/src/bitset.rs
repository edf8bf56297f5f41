use std::fmt;

/// A subset of `Z_n` stored as a bitset.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ResidueSet {
    n: u32,
    words: Vec<u64>,
}

impl ResidueSet {
    pub fn empty(n: u32) -> Self {
        Self {
            n,
            words: vec![0; (n as usize).div_ceil(64)],
        }
    }

    pub fn full(n: u32) -> Self {
        Self::from_iter(n, 0..n)
    }

    pub fn singleton(n: u32, x: u32) -> Self {
        let mut s = Self::empty(n);
        s.insert(x);
        s
    }

    /// Builds a set from residues; values are reduced modulo `n`.
    pub fn from_iter<I: IntoIterator<Item = u32>>(n: u32, iter: I) -> Self {
        let mut s = Self::empty(n);
        for x in iter {
            s.insert(x % n);
        }
        s
    }

    pub fn modulus(&self) -> u32 {
        self.n
    }

    #[inline]
    pub fn contains(&self, x: u32) -> bool {
        x < self.n && self.words[(x / 64) as usize] >> (x % 64) & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, x: u32) {
        debug_assert!(x < self.n);
        self.words[(x / 64) as usize] |= 1 << (x % 64);
    }

    pub fn remove(&mut self, x: u32) {
        self.words[(x / 64) as usize] &= !(1 << (x % 64));
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros();
                w &= w - 1;
                Some(i as u32 * 64 + b)
            })
        })
    }

    pub fn to_vec(&self) -> Vec<u32> {
        self.iter().collect()
    }

    pub fn min(&self) -> Option<u32> {
        self.iter().next()
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    pub fn is_disjoint(&self, other: &Self) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    pub fn union(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a | b)
    }

    pub fn intersection(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a & b)
    }

    pub fn difference(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a & !b)
    }

    pub fn union_with(&mut self, other: &Self) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    fn zip_with(&self, other: &Self, f: impl Fn(u64, u64) -> u64) -> Self {
        debug_assert_eq!(self.n, other.n);
        Self {
            n: self.n,
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        }
    }

    /// `a + X`.
    pub fn shifted(&self, a: u32) -> Self {
        let n = self.n;
        Self::from_iter(n, self.iter().map(|x| (x + a % n) % n))
    }

    /// `k·X`.
    pub fn scaled(&self, k: u32) -> Self {
        let n = u64::from(self.n);
        Self::from_iter(
            self.n,
            self.iter()
                .map(|x| (u64::from(x) * u64::from(k) % n) as u32),
        )
    }

    /// `-X`.
    pub fn negated(&self) -> Self {
        let n = self.n;
        Self::from_iter(n, self.iter().map(|x| (n - x) % n))
    }

    pub fn complement(&self) -> Self {
        Self::full(self.n).difference(self)
    }
}

impl fmt::Debug for ResidueSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}
