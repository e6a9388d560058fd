use std::fmt;

/// A freely reduced word in the free group on `x_1, …, x_n`.
///
/// Letters are signed 1-based indices: `3` is `x_3`, `-3` is `x_3^{-1}`.
/// Every constructor keeps the word reduced.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct FreeGroupWord {
    letters: Vec<i32>,
}

impl FreeGroupWord {
    pub fn identity() -> Self {
        Self::default()
    }

    pub fn generator(index: usize) -> Self {
        Self {
            letters: vec![index as i32],
        }
    }

    /// Reduces `letters` on the way in.
    pub fn from_letters(letters: impl IntoIterator<Item = i32>) -> Self {
        let mut w = Self::identity();
        for l in letters {
            w.push(l);
        }
        w
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn push(&mut self, letter: i32) {
        debug_assert_ne!(letter, 0);
        if self.letters.last() == Some(&-letter) {
            self.letters.pop();
        } else {
            self.letters.push(letter);
        }
    }

    pub fn append(&mut self, other: &Self) {
        for &l in &other.letters {
            self.push(l);
        }
    }

    pub fn append_inverse(&mut self, other: &Self) {
        for &l in other.letters.iter().rev() {
            self.push(-l);
        }
    }

    pub fn inverse(&self) -> Self {
        Self {
            letters: self.letters.iter().rev().map(|l| -l).collect(),
        }
    }

    /// Strips `u … u^{-1}` from both ends; the result is conjugate to `self`.
    pub fn cyclically_reduced(&self) -> Self {
        let letters = &self.letters;
        let (mut lo, mut hi) = (0, letters.len());
        while hi - lo >= 2 && letters[lo] == -letters[hi - 1] {
            lo += 1;
            hi -= 1;
        }
        Self {
            letters: letters[lo..hi].to_vec(),
        }
    }

    pub fn cyclic_length(&self) -> usize {
        let letters = &self.letters;
        let (mut lo, mut hi) = (0, letters.len());
        while hi - lo >= 2 && letters[lo] == -letters[hi - 1] {
            lo += 1;
            hi -= 1;
        }
        hi - lo
    }

    pub fn is_reduced(&self) -> bool {
        self.letters.windows(2).all(|w| w[0] != -w[1])
    }
}

impl fmt::Display for FreeGroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("1");
        }
        for (i, &l) in self.letters.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "x{}", l.unsigned_abs())?;
            if l < 0 {
                f.write_str("'")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn reduction() {
        let w = FreeGroupWord::from_letters([1, 2, -2, 3, -3, -1, 4]);
        assert_eq!(w.letters(), &[4]);
        let mut v = FreeGroupWord::generator(1);
        v.append_inverse(&FreeGroupWord::generator(1));
        assert!(v.is_empty());
    }

    #[test]
    fn cyclic_reduction() {
        let w = FreeGroupWord::from_letters([1, 2, 3, -1]);
        assert_eq!(w.cyclically_reduced().letters(), &[2, 3]);
        assert_eq!(w.cyclic_length(), 2);
        let w = FreeGroupWord::from_letters([1, 2, -1]);
        assert_eq!(w.cyclic_length(), 1);
    }

    proptest! {
        #[test]
        fn stays_reduced(letters in prop::collection::vec(prop_oneof![-3i32..=-1, 1i32..=3], 0..60)) {
            let w = FreeGroupWord::from_letters(letters);
            prop_assert!(w.is_reduced());
            let mut both = w.clone();
            both.append(&w.inverse());
            prop_assert!(both.is_empty());
            prop_assert!(w.cyclically_reduced().is_reduced());
        }
    }
}
