//! Dense binary relations on `{0, .., n-1}` backed by row bitsets.

/// A binary relation on a finite index set.
///
/// Row `i` holds the set `{ j | i R j }` as a bitset.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Rel {
    n: usize,
    words: usize,
    bits: Vec<u64>,
}

impl Rel {
    pub fn empty(n: usize) -> Self {
        let words = n.div_ceil(64).max(1);
        Rel { n, words, bits: vec![0; n * words] }
    }

    /// The identity relation (equality).
    pub fn identity(n: usize) -> Self {
        let mut r = Rel::empty(n);
        for i in 0..n {
            r.set(i, i);
        }
        r
    }

    /// Full relation: everything related to everything.
    pub fn full(n: usize) -> Self {
        let mut r = Rel::empty(n);
        for i in 0..n {
            for j in 0..n {
                r.set(i, j);
            }
        }
        r
    }

    pub fn from_pairs(n: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut r = Rel::empty(n);
        for (i, j) in pairs {
            r.set(i, j);
        }
        r
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        debug_assert!(i < self.n && j < self.n);
        self.bits[i * self.words + j / 64] >> (j % 64) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize) {
        debug_assert!(i < self.n && j < self.n);
        self.bits[i * self.words + j / 64] |= 1 << (j % 64);
    }

    pub fn union(&self, other: &Rel) -> Rel {
        assert_eq!(self.n, other.n);
        let mut out = self.clone();
        for (a, b) in out.bits.iter_mut().zip(&other.bits) {
            *a |= b;
        }
        out
    }

    pub fn pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in 0..self.n {
                if self.get(i, j) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn reflexive_closure(&self) -> Rel {
        let mut r = self.clone();
        for i in 0..r.n {
            r.set(i, i);
        }
        r
    }

    /// Warshall closure, row-parallel over words.
    pub fn transitive_closure(&self) -> Rel {
        let mut r = self.clone();
        let (n, w) = (r.n, r.words);
        for k in 0..n {
            let row_k: Vec<u64> = r.bits[k * w..(k + 1) * w].to_vec();
            for i in 0..n {
                if r.get(i, k) {
                    for t in 0..w {
                        r.bits[i * w + t] |= row_k[t];
                    }
                }
            }
        }
        r
    }

    pub fn is_reflexive(&self) -> bool {
        (0..self.n).all(|i| self.get(i, i))
    }

    pub fn reflexivity_witness(&self) -> Option<usize> {
        (0..self.n).find(|&i| !self.get(i, i))
    }

    pub fn is_transitive(&self) -> bool {
        *self == self.transitive_closure()
    }

    /// First triple `(i, j, k)` with `i R j`, `j R k` but not `i R k`.
    pub fn transitivity_witness(&self) -> Option<(usize, usize, usize)> {
        for i in 0..self.n {
            for j in 0..self.n {
                if !self.get(i, j) {
                    continue;
                }
                for k in 0..self.n {
                    if self.get(j, k) && !self.get(i, k) {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }

    pub fn is_antisymmetric(&self) -> bool {
        self.antisymmetry_witness().is_none()
    }

    pub fn antisymmetry_witness(&self) -> Option<(usize, usize)> {
        for i in 0..self.n {
            for j in i + 1..self.n {
                if self.get(i, j) && self.get(j, i) {
                    return Some((i, j));
                }
            }
        }
        None
    }

    /// Restriction to the listed indices, reindexed in list order.
    pub fn restrict(&self, keep: &[usize]) -> Rel {
        let mut r = Rel::empty(keep.len());
        for (a, &i) in keep.iter().enumerate() {
            for (b, &j) in keep.iter().enumerate() {
                if self.get(i, j) {
                    r.set(a, b);
                }
            }
        }
        r
    }

    /// Image under a relabeling `perm` where `perm[old] = new`.
    pub fn permute(&self, perm: &[usize]) -> Rel {
        assert_eq!(perm.len(), self.n);
        let mut r = Rel::empty(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                if self.get(i, j) {
                    r.set(perm[i], perm[j]);
                }
            }
        }
        r
    }

    /// Row-major bit vector, used for canonical forms.
    pub fn matrix_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(self.n * self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                out.push(self.get(i, j) as u8);
            }
        }
        out
    }
}

impl std::fmt::Debug for Rel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Rel{{{}: ", self.n)?;
        let mut first = true;
        for (i, j) in self.pairs() {
            if i == j {
                continue;
            }
            if !first {
                write!(f, ", ")?;
            }
            write!(f, "{i}<{j}")?;
            first = false;
        }
        write!(f, "}}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closure_and_witnesses() {
        let r = Rel::from_pairs(3, [(0, 1), (1, 2)]);
        assert_eq!(r.transitivity_witness(), Some((0, 1, 2)));
        let c = r.reflexive_closure().transitive_closure();
        assert!(c.get(0, 2));
        assert!(c.is_reflexive());
        assert!(c.is_transitive());
        assert!(c.is_antisymmetric());
    }

    #[test]
    fn antisymmetry_witness_found() {
        let r = Rel::from_pairs(2, [(0, 1), (1, 0)]);
        assert_eq!(r.antisymmetry_witness(), Some((0, 1)));
    }

    #[test]
    fn restrict_reindexes() {
        let r = Rel::from_pairs(3, [(0, 2)]).reflexive_closure();
        let s = r.restrict(&[0, 2]);
        assert!(s.get(0, 1));
        assert!(!s.get(1, 0));
    }
}
