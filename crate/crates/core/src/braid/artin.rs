//! The Artin action of `B_n` on the free group `F_n`.
//!
//! `σ_i` acts by `x_i ↦ x_i x_{i+1} x_i^{-1}`, `x_{i+1} ↦ x_i`, fixing the
//! other generators; `σ_i^{-1}` by `x_i ↦ x_{i+1}`,
//! `x_{i+1} ↦ x_{i+1}^{-1} x_i x_{i+1}`. The action is faithful, so comparing
//! images decides the word problem.

use crate::braid::{BraidWord, FreeGroupWord, Letter};
use crate::error::{Error, Result};

/// Total image length at which the action gives up.
pub const DEFAULT_IMAGE_LIMIT: usize = 20_000_000;

/// An endomorphism of `F_n` given by the images of the generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeAutomorphism {
    images: Vec<FreeGroupWord>,
}

impl FreeAutomorphism {
    pub fn identity(rank: usize) -> Self {
        Self {
            images: (1..=rank).map(FreeGroupWord::generator).collect(),
        }
    }

    pub fn rank(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[FreeGroupWord] {
        &self.images
    }

    pub fn into_images(self) -> Vec<FreeGroupWord> {
        self.images
    }

    pub fn total_length(&self) -> usize {
        self.images.iter().map(FreeGroupWord::len).sum()
    }

    /// Replaces `self` by `self ∘ φ_letter`.
    fn compose_letter(&mut self, letter: Letter) {
        let i = letter.generator - 1;
        let a = self.images[i].clone();
        let b = self.images[i + 1].clone();
        if letter.exponent > 0 {
            let mut first = a.clone();
            first.append(&b);
            first.append_inverse(&a);
            self.images[i] = first;
            self.images[i + 1] = a;
        } else {
            let mut second = b.inverse();
            second.append(&a);
            second.append(&b);
            self.images[i] = b;
            self.images[i + 1] = second;
        }
    }

    /// Image of an arbitrary word, failing once it exceeds `limit` letters.
    pub fn apply(&self, word: &FreeGroupWord, limit: usize) -> Result<FreeGroupWord> {
        let mut out = FreeGroupWord::identity();
        for &l in word.letters() {
            let image = &self.images[l.unsigned_abs() as usize - 1];
            if l > 0 {
                out.append(image);
            } else {
                out.append_inverse(image);
            }
            if out.len() > limit {
                return Err(Error::ImageTooLarge { limit });
            }
        }
        Ok(out)
    }
}

/// Automorphism induced by `b`, with a cap on the total image length.
pub fn artin_automorphism(b: &BraidWord, limit: usize) -> Result<FreeAutomorphism> {
    let mut phi = FreeAutomorphism::identity(b.strands());
    for &letter in b.letters() {
        phi.compose_letter(letter);
        if phi.total_length() > limit {
            return Err(Error::ImageTooLarge { limit });
        }
    }
    Ok(phi)
}

/// Images of `x_1, …, x_n` under the action of `b`.
///
/// Composition is left to right: the action of `a·b` is `φ_a ∘ φ_b`.
pub fn artin_action(b: &BraidWord) -> Result<Vec<FreeGroupWord>> {
    Ok(artin_automorphism(b, DEFAULT_IMAGE_LIMIT)?.into_images())
}

/// Decides whether `a` and `b` are the same element of `B_n`.
pub fn word_equal(a: &BraidWord, b: &BraidWord) -> Result<bool> {
    if a.strands() != b.strands() {
        return Err(Error::StrandMismatch {
            left: a.strands(),
            right: b.strands(),
        });
    }
    // a = b iff a·b^{-1} acts trivially, and the reduced quotient word is
    // usually far shorter than either side.
    let quotient = a.concat(&b.inverse())?.freely_reduced();
    let phi = artin_automorphism(&quotient, DEFAULT_IMAGE_LIMIT)?;
    Ok(phi == FreeAutomorphism::identity(a.strands()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::{cycle_word, full_twist, half_twist};
    use proptest::prelude::*;

    fn w(text: &str, n: usize) -> BraidWord {
        BraidWord::parse(text, n).unwrap()
    }

    fn free(letters: &[i32]) -> FreeGroupWord {
        FreeGroupWord::from_letters(letters.iter().copied())
    }

    #[test]
    fn identity_action() {
        let images = artin_action(&BraidWord::identity(4)).unwrap();
        assert_eq!(images, (1..=4).map(FreeGroupWord::generator).collect::<Vec<_>>());
        let images = artin_action(&w("s1 s1'", 4)).unwrap();
        assert_eq!(images, (1..=4).map(FreeGroupWord::generator).collect::<Vec<_>>());
    }

    #[test]
    fn single_generator_action() {
        let images = artin_action(&w("s1", 2)).unwrap();
        assert_eq!(images, vec![free(&[1, 2, -1]), free(&[1])]);
        let images = artin_action(&w("s1'", 2)).unwrap();
        assert_eq!(images, vec![free(&[2]), free(&[-2, 1, 2])]);
    }

    #[test]
    fn action_is_a_homomorphism() {
        let a = w("s1 s2'", 3);
        let b = w("s2 s2 s1", 3);
        let ab = artin_automorphism(&a.concat(&b).unwrap(), 1000).unwrap();
        let pa = artin_automorphism(&a, 1000).unwrap();
        let pb = artin_automorphism(&b, 1000).unwrap();
        for (j, image) in pb.images().iter().enumerate() {
            assert_eq!(&pa.apply(image, 1000).unwrap(), &ab.images()[j]);
        }
    }

    #[test]
    fn boundary_word_is_fixed() {
        let boundary = free(&[1, 2, 3, 4]);
        let phi = artin_automorphism(&w("s1 s3' s2 s2 s1'", 4), 1000).unwrap();
        assert_eq!(phi.apply(&boundary, 1000).unwrap(), boundary);
    }

    #[test]
    fn braid_relations() {
        assert!(word_equal(&w("s1 s3", 4), &w("s3 s1", 4)).unwrap());
        assert!(word_equal(&w("s1 s2 s1", 3), &w("s2 s1 s2", 3)).unwrap());
        assert!(!word_equal(&w("s1", 2), &w("s1'", 2)).unwrap());
        assert!(!word_equal(&w("s1 s2", 3), &w("s2 s1", 3)).unwrap());
        assert!(word_equal(&w("s1", 2), &w("s1", 3)).is_err());
    }

    #[test]
    fn all_relation_instances_up_to_eight_strands() {
        for n in 2..=8 {
            for i in 1..n {
                for j in 1..n {
                    let (si, sj) = (
                        BraidWord::generator(n, i, 1).unwrap(),
                        BraidWord::generator(n, j, 1).unwrap(),
                    );
                    let ij = si.concat(&sj).unwrap();
                    let ji = sj.concat(&si).unwrap();
                    if i.abs_diff(j) > 1 {
                        assert!(word_equal(&ij, &ji).unwrap());
                    } else if i.abs_diff(j) == 1 {
                        assert!(word_equal(&ij.concat(&si).unwrap(), &ji.concat(&sj).unwrap()).unwrap());
                        assert!(!word_equal(&ij, &ji).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn full_twist_is_central() {
        for n in 2..=6 {
            let d2 = full_twist(n).unwrap();
            for i in 1..n {
                let s = BraidWord::generator(n, i, 1).unwrap();
                assert!(word_equal(&d2.concat(&s).unwrap(), &s.concat(&d2).unwrap()).unwrap());
            }
            let d = half_twist(n).unwrap();
            if n > 2 {
                let s = BraidWord::generator(n, 1, 1).unwrap();
                assert!(!word_equal(&d.concat(&s).unwrap(), &s.concat(&d).unwrap()).unwrap());
            }
        }
    }

    #[test]
    fn cycle_power_is_full_twist() {
        for n in 3..=5 {
            assert!(word_equal(&cycle_word(n).power(n), &full_twist(n).unwrap()).unwrap());
            assert!(!word_equal(&cycle_word(n).power(n - 1), &full_twist(n).unwrap()).unwrap());
        }
    }

    #[test]
    fn image_cap_is_reported() {
        let b = w("s1 s2'", 3).power(40);
        assert!(matches!(
            artin_automorphism(&b, 10_000),
            Err(Error::ImageTooLarge { .. })
        ));
    }

    fn random_word(n: usize) -> impl Strategy<Value = BraidWord> {
        prop::collection::vec((1..n, prop::bool::ANY), 0..12).prop_map(move |ls| {
            BraidWord::new(
                n,
                ls.into_iter()
                    .map(|(g, inv)| Letter::new(g, if inv { -1 } else { 1 }))
                    .collect(),
            )
            .unwrap()
        })
    }

    proptest! {
        #[test]
        fn word_times_inverse_is_identity(b in random_word(5)) {
            let id = BraidWord::identity(5);
            prop_assert!(word_equal(&b.concat(&b.inverse()).unwrap(), &id).unwrap());
            prop_assert_eq!(b.rev().rev(), b.clone());
            prop_assert_eq!(b.mirror().mirror(), b);
        }

        #[test]
        fn images_are_reduced(b in random_word(4)) {
            for image in artin_action(&b).unwrap() {
                prop_assert!(image.is_reduced());
            }
        }

        #[test]
        fn permutation_is_a_homomorphism(a in random_word(5), b in random_word(5)) {
            use crate::braid::permutation;
            let ab = permutation(&a.concat(&b).unwrap());
            prop_assert_eq!(ab, permutation(&a).compose(&permutation(&b)));
        }
    }
}
