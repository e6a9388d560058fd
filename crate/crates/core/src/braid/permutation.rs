use std::fmt;

use crate::braid::BraidWord;
use crate::error::{Error, Result};

/// A permutation of `{1, …, n}`, stored 0-based: `images[i]` is the image of `i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Self {
            images: (0..n).collect(),
        }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            if i >= images.len() || seen[i] {
                return Err(Error::invalid(format!("{images:?} is not a bijection")));
            }
            seen[i] = true;
        }
        Ok(Self { images })
    }

    /// The transposition `(i i+1)`, 1-based `i`.
    pub fn adjacent_transposition(n: usize, i: usize) -> Self {
        let mut p = Self::identity(n);
        p.images.swap(i - 1, i);
        p
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    /// Image of the 0-based point `i`.
    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Self) -> Self {
        assert_eq!(self.len(), other.len());
        Self {
            images: other.images.iter().map(|&i| self.images[i]).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// Cycle lengths, longest first.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut seen = vec![false; self.len()];
        let mut lengths = Vec::new();
        for start in 0..self.len() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = self.images[i];
                len += 1;
            }
            lengths.push(len);
        }
        lengths.sort_unstable_by(|a, b| b.cmp(a));
        lengths
    }

    /// True for a single `n`-cycle.
    pub fn is_cyclic(&self) -> bool {
        self.cycle_type() == [self.len()]
    }
}

impl fmt::Display for Permutation {
    /// Cycle notation, 1-based, fixed points omitted.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut seen = vec![false; self.len()];
        let mut wrote = false;
        for start in 0..self.len() {
            if seen[start] || self.images[start] == start {
                continue;
            }
            f.write_str("(")?;
            let mut i = start;
            let mut first = true;
            while !seen[i] {
                seen[i] = true;
                if !first {
                    f.write_str(" ")?;
                }
                write!(f, "{}", i + 1)?;
                first = false;
                i = self.images[i];
            }
            f.write_str(")")?;
            wrote = true;
        }
        if !wrote {
            f.write_str("()")?;
        }
        Ok(())
    }
}

/// `ŝ(b)`: each `σ_j` maps to `(j j+1)`; letters compose left to right, so
/// `permutation(a·b) = permutation(a) ∘ permutation(b)`.
pub fn permutation(b: &BraidWord) -> Permutation {
    let n = b.strands();
    b.letters().iter().fold(Permutation::identity(n), |acc, l| {
        acc.compose(&Permutation::adjacent_transposition(n, l.generator))
    })
}

pub fn is_pure(b: &BraidWord) -> bool {
    permutation(b).is_identity()
}

pub fn is_cyclic(b: &BraidWord) -> bool {
    permutation(b).is_cyclic()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::alpha;
    use crate::combinatorics::SignSequence;

    #[test]
    fn single_generator() {
        let p = permutation(&BraidWord::parse("s1", 3).unwrap());
        assert_eq!(p.images(), &[1, 0, 2]);
        assert_eq!(p.to_string(), "(1 2)");
        assert!(!p.is_cyclic());
    }

    #[test]
    fn alpha_powers_are_pure() {
        for bits in 0..8 {
            let omega = SignSequence::from_bits(4, bits).unwrap();
            assert!(is_pure(&alpha(&omega).power(4)));
            assert!(!is_pure(&alpha(&omega).power(2)));
        }
    }

    #[test]
    fn alpha_is_cyclic() {
        for bits in 0..16 {
            let omega = SignSequence::from_bits(5, bits).unwrap();
            assert!(is_cyclic(&alpha(&omega)), "{omega}");
        }
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(Permutation::from_images(vec![0, 0, 1]).is_err());
        assert!(Permutation::from_images(vec![2, 0, 1]).unwrap().is_cyclic());
    }
}
