//! Compositions of integers, sign sequences, and the correspondence between them.
//!
//! A sign sequence `ω = (ω_1, …, ω_{N-1})` with entries in `{+1, -1}` labels a
//! simple choreography of `N` bodies. Sign sequences whose first entry is `+1`
//! are in bijection with compositions of `N - 1` via run-length encoding of the
//! sign blocks.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default cap on the body count for exhaustive enumerations over `Ω_N`.
pub const DEFAULT_MAX_BODIES: usize = 24;

/// An ordered tuple of positive integers.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Composition {
    parts: Vec<usize>,
}

impl Composition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::invalid("a composition needs at least one part"));
        }
        if parts.contains(&0) {
            return Err(Error::invalid(format!(
                "composition parts must be positive, got {parts:?}"
            )));
        }
        Ok(Self { parts })
    }

    /// The all-ones composition `1_n`.
    pub fn ones(n: usize) -> Result<Self> {
        Self::new(vec![1; n])
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// The integer being composed.
    pub fn total(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Number of parts, `k + 1`.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn reversed(&self) -> Self {
        let mut parts = self.parts.clone();
        parts.reverse();
        Self { parts }
    }

    /// Number of strands of the associated braid, `1 + Σ m_i`.
    pub fn strands(&self) -> usize {
        self.total() + 1
    }
}

impl TryFrom<Vec<usize>> for Composition {
    type Error = Error;

    fn try_from(parts: Vec<usize>) -> Result<Self> {
        Self::new(parts)
    }
}

impl From<Composition> for Vec<usize> {
    fn from(c: Composition) -> Self {
        c.parts
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str(")")
    }
}

impl FromStr for Composition {
    type Err = Error;

    /// Accepts `1,2`, `(1,2)`, `1 2` and `1+2`.
    fn from_str(s: &str) -> Result<Self> {
        let body = s.trim().trim_start_matches('(').trim_end_matches(')');
        let parts = body
            .split(|c: char| c == ',' || c == '+' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<usize>()
                    .map_err(|_| Error::invalid(format!("bad composition part {t:?} in {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(parts)
    }
}

/// All compositions of `n`, in lexicographic order of their parts.
///
/// There are `2^{n-1}` of them.
pub fn enumerate_compositions(n: usize) -> Result<Vec<Composition>> {
    if n == 0 {
        return Err(Error::invalid("cannot enumerate compositions of 0"));
    }
    if n > 40 {
        return Err(Error::invalid(format!("n = {n} is too large to enumerate")));
    }
    let mut out = Vec::with_capacity(1 << (n - 1));
    let mut stack = Vec::new();
    push_compositions(n, &mut stack, &mut out);
    Ok(out)
}

fn push_compositions(remaining: usize, prefix: &mut Vec<usize>, out: &mut Vec<Composition>) {
    if remaining == 0 {
        out.push(Composition { parts: prefix.clone() });
        return;
    }
    for first in 1..=remaining {
        prefix.push(first);
        push_compositions(remaining - first, prefix, out);
        prefix.pop();
    }
}

/// A sign sequence `ω ∈ Ω_N`: `N - 1` entries, each `+1` or `-1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<i8>", into = "Vec<i8>")]
pub struct SignSequence {
    signs: Vec<i8>,
}

impl SignSequence {
    pub fn new(signs: Vec<i8>) -> Result<Self> {
        if signs.len() < 2 {
            return Err(Error::invalid(format!(
                "a sign sequence for N >= 3 bodies has at least 2 entries, got {}",
                signs.len()
            )));
        }
        if let Some(bad) = signs.iter().find(|&&s| s != 1 && s != -1) {
            return Err(Error::invalid(format!("sign entries must be +1 or -1, got {bad}")));
        }
        Ok(Self { signs })
    }

    /// Builds a sign sequence from bits: bit `i` set means `ω_{i+1} = -1`.
    pub fn from_bits(bodies: usize, bits: u64) -> Result<Self> {
        Self::new(
            (0..bodies.saturating_sub(1))
                .map(|i| if bits >> i & 1 == 1 { -1 } else { 1 })
                .collect(),
        )
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    /// The body count `N`.
    pub fn bodies(&self) -> usize {
        self.signs.len() + 1
    }

    /// `ω_j` with 1-based `j`.
    pub fn get(&self, j: usize) -> i8 {
        self.signs[j - 1]
    }

    /// `-ω`.
    pub fn negate(&self) -> Self {
        Self {
            signs: self.signs.iter().map(|s| -s).collect(),
        }
    }

    /// `ω̂ = (ω_{N-1}, …, ω_1)`.
    pub fn reverse(&self) -> Self {
        let mut signs = self.signs.clone();
        signs.reverse();
        Self { signs }
    }

    pub fn is_positive_led(&self) -> bool {
        self.signs[0] == 1
    }

    pub fn is_constant(&self) -> bool {
        self.signs.iter().all(|&s| s == self.signs[0])
    }

    /// `|ω|`: the number of sign changes between consecutive entries.
    pub fn sign_changes(&self) -> usize {
        self.signs.windows(2).filter(|w| w[0] != w[1]).count()
    }

    fn order_key(&self) -> Vec<u8> {
        // +1 sorts before -1
        self.signs.iter().map(|&s| u8::from(s < 0)).collect()
    }
}

impl TryFrom<Vec<i8>> for SignSequence {
    type Error = Error;

    fn try_from(signs: Vec<i8>) -> Result<Self> {
        Self::new(signs)
    }
}

impl From<SignSequence> for Vec<i8> {
    fn from(s: SignSequence) -> Self {
        s.signs
    }
}

impl fmt::Display for SignSequence {
    /// Compact `+-+` spelling.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &s in &self.signs {
            f.write_str(if s > 0 { "+" } else { "-" })?;
        }
        Ok(())
    }
}

impl FromStr for SignSequence {
    type Err = Error;

    /// Parses `+-+` strings or comma separated `1,-1,1`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if !s.is_empty() && s.chars().all(|c| c == '+' || c == '-') {
            return Self::new(s.chars().map(|c| if c == '+' { 1 } else { -1 }).collect());
        }
        let body = s.trim_start_matches('(').trim_end_matches(')');
        let signs = body
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<i8>()
                    .map_err(|_| Error::invalid(format!("bad sign {t:?} in {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(signs)
    }
}

impl Ord for SignSequence {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.signs
            .len()
            .cmp(&other.signs.len())
            .then_with(|| self.order_key().cmp(&other.order_key()))
    }
}

impl PartialOrd for SignSequence {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// `Θ`: a composition of `N - 1` to the positive-led sign sequence with block
/// lengths `m_1, …, m_{k+1}` and alternating signs starting at `+1`.
pub fn theta(m: &Composition) -> Result<SignSequence> {
    let mut signs = Vec::with_capacity(m.total());
    let mut sign = 1i8;
    for &block in m.parts() {
        signs.extend(std::iter::repeat_n(sign, block));
        sign = -sign;
    }
    SignSequence::new(signs)
}

/// `Θ^{-1}`: run-length encoding of the sign blocks.
pub fn theta_inverse(omega: &SignSequence) -> Result<Composition> {
    if !omega.is_positive_led() {
        return Err(Error::invalid(format!("theta_inverse needs ω_1 = +1, got {omega}")));
    }
    let mut parts = Vec::new();
    let mut run = 0usize;
    let mut current = omega.signs[0];
    for &s in omega.signs() {
        if s == current {
            run += 1;
        } else {
            parts.push(run);
            run = 1;
            current = s;
        }
    }
    parts.push(run);
    Composition::new(parts)
}

/// `{ω, -ω, ω̂, -ω̂}` without duplicates, sorted.
pub fn equivalence_class(omega: &SignSequence) -> Vec<SignSequence> {
    let mut class = vec![omega.clone(), omega.negate(), omega.reverse(), omega.reverse().negate()];
    class.sort();
    class.dedup();
    class
}

/// Lexicographically smallest member of the class of `ω` under `+1 < -1`.
pub fn canonical_representative(omega: &SignSequence) -> SignSequence {
    equivalence_class(omega)
        .into_iter()
        .next()
        .expect("class is never empty")
}

/// Every class of `Ω_N`, keyed by canonical representative.
pub fn equivalence_classes(bodies: usize) -> Result<BTreeMap<SignSequence, Vec<SignSequence>>> {
    equivalence_classes_capped(bodies, DEFAULT_MAX_BODIES)
}

pub fn equivalence_classes_capped(
    bodies: usize,
    max_bodies: usize,
) -> Result<BTreeMap<SignSequence, Vec<SignSequence>>> {
    check_bodies(bodies, max_bodies)?;
    let mut classes: BTreeMap<SignSequence, Vec<SignSequence>> = BTreeMap::new();
    for bits in 0..(1u64 << (bodies - 1)) {
        let omega = SignSequence::from_bits(bodies, bits)?;
        let rep = canonical_representative(&omega);
        classes.entry(rep).or_default().push(omega);
    }
    for members in classes.values_mut() {
        members.sort();
    }
    Ok(classes)
}

/// Number of equivalence classes of `Ω_N`, counted by enumeration.
pub fn count_classes(bodies: usize) -> Result<u64> {
    count_classes_capped(bodies, DEFAULT_MAX_BODIES)
}

pub fn count_classes_capped(bodies: usize, max_bodies: usize) -> Result<u64> {
    check_bodies(bodies, max_bodies)?;
    let mut count = 0u64;
    for bits in 0..(1u64 << (bodies - 1)) {
        let omega = SignSequence::from_bits(bodies, bits)?;
        if canonical_representative(&omega) == omega {
            count += 1;
        }
    }
    Ok(count)
}

/// Closed form `2^{N-3} + 2^{⌊(N-3)/2⌋}` for the class count.
pub fn class_count_formula(bodies: usize) -> u64 {
    assert!(bodies >= 3);
    (1u64 << (bodies - 3)) + (1u64 << ((bodies - 3) / 2))
}

fn check_bodies(bodies: usize, max_bodies: usize) -> Result<()> {
    if bodies < 3 {
        return Err(Error::invalid(format!("need N >= 3 bodies, got {bodies}")));
    }
    if bodies > max_bodies {
        return Err(Error::invalid(format!(
            "N = {bodies} exceeds the enumeration cap {max_bodies}"
        )));
    }
    Ok(())
}

/// `ω_max = ((-1)^{i-1})`, alternating from `+1`.
pub fn omega_max(bodies: usize) -> Result<SignSequence> {
    check_bodies(bodies, usize::MAX)?;
    SignSequence::new((0..bodies - 1).map(|i| if i % 2 == 0 { 1 } else { -1 }).collect())
}

/// `ω_min`: `+1` on the first `⌊N/2⌋` entries, `-1` afterwards.
pub fn omega_min(bodies: usize) -> Result<SignSequence> {
    check_bodies(bodies, usize::MAX)?;
    let half = bodies / 2;
    SignSequence::new((0..bodies - 1).map(|i| if i < half { 1 } else { -1 }).collect())
}

/// Number of loops in the chain traced by the choreography, `1 + |ω|`.
pub fn loop_count(omega: &SignSequence) -> usize {
    1 + omega.sign_changes()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn comp(parts: &[usize]) -> Composition {
        Composition::new(parts.to_vec()).unwrap()
    }

    fn signs(s: &str) -> SignSequence {
        s.parse().unwrap()
    }

    #[test]
    fn compositions_of_three() {
        let all = enumerate_compositions(3).unwrap();
        assert_eq!(all, vec![comp(&[1, 1, 1]), comp(&[1, 2]), comp(&[2, 1]), comp(&[3])]);
        assert_eq!(enumerate_compositions(1).unwrap(), vec![comp(&[1])]);
        assert!(enumerate_compositions(0).is_err());
    }

    #[test]
    fn composition_counts_are_powers_of_two() {
        for n in 1..=16 {
            let all = enumerate_compositions(n).unwrap();
            assert_eq!(all.len(), 1 << (n - 1), "n = {n}");
            assert!(all.iter().all(|c| c.total() == n));
            assert!(all.windows(2).all(|w| w[0] < w[1]));
        }
        assert_eq!(enumerate_compositions(10).unwrap().len(), 512);
    }

    #[test]
    fn theta_examples() {
        assert_eq!(theta(&comp(&[1, 2])).unwrap(), signs("+--"));
        assert_eq!(theta(&comp(&[3])).unwrap(), signs("+++"));
        assert_eq!(theta(&comp(&[2, 1])).unwrap(), signs("++-"));
        assert_eq!(theta(&comp(&[1, 1, 1])).unwrap(), signs("+-+"));
        for n in 3..10 {
            let ones = Composition::ones(n - 1).unwrap();
            assert_eq!(theta(&ones).unwrap(), omega_max(n).unwrap());
        }
    }

    #[test]
    fn theta_inverse_examples() {
        assert_eq!(theta_inverse(&signs("+-+")).unwrap(), comp(&[1, 1, 1]));
        assert_eq!(theta_inverse(&signs("+++++")).unwrap(), comp(&[5]));
        assert!(theta_inverse(&signs("-+")).is_err());
    }

    #[test]
    fn theta_is_a_bijection_up_to_twelve_bodies() {
        for bodies in 3..=12 {
            let comps = enumerate_compositions(bodies - 1).unwrap();
            let mut images: Vec<_> = comps.iter().map(|m| theta(m).unwrap()).collect();
            for (m, w) in comps.iter().zip(&images) {
                assert!(w.is_positive_led());
                assert_eq!(&theta_inverse(w).unwrap(), m);
            }
            images.sort();
            images.dedup();
            assert_eq!(images.len(), 1 << (bodies - 2));
        }
    }

    #[test]
    fn negate_and_reverse() {
        assert_eq!(signs("+-").negate(), signs("-+"));
        assert_eq!(signs("++-+").reverse(), signs("+-++"));
        for bits in 0..16 {
            let w = SignSequence::from_bits(5, bits).unwrap();
            assert_eq!(w.negate().negate(), w);
            assert_eq!(w.reverse().reverse(), w);
        }
    }

    #[test]
    fn class_counts_match_formula() {
        assert_eq!(count_classes(3).unwrap(), 2);
        assert_eq!(count_classes(4).unwrap(), 3);
        assert_eq!(count_classes(5).unwrap(), 6);
        assert_eq!(count_classes(6).unwrap(), 10);
        for n in 3..=12 {
            assert_eq!(count_classes(n).unwrap(), class_count_formula(n), "N = {n}");
        }
        assert!(count_classes(2).is_err());
        assert!(count_classes_capped(9, 8).is_err());
    }

    #[test]
    fn classes_partition_omega() {
        for n in 3..=9 {
            let classes = equivalence_classes(n).unwrap();
            let total: usize = classes.values().map(Vec::len).sum();
            assert_eq!(total, 1 << (n - 1));
            for (rep, members) in &classes {
                assert!(matches!(members.len(), 1 | 2 | 4));
                assert_eq!(&members[0], rep);
                assert_eq!(&equivalence_class(rep), members);
            }
        }
    }

    #[test]
    fn canonical_representative_prefers_plus() {
        assert_eq!(canonical_representative(&signs("-+")), signs("+-"));
        assert_eq!(canonical_representative(&signs("--+")), signs("++-"));
        assert_eq!(canonical_representative(&signs("+--")), signs("++-"));
        assert_eq!(canonical_representative(&signs("-++")), signs("++-"));
    }

    #[test]
    fn extremal_sign_sequences() {
        assert_eq!(omega_max(4).unwrap(), signs("+-+"));
        assert_eq!(omega_min(5).unwrap(), signs("++--"));
        assert_eq!(omega_min(6).unwrap(), signs("+++--"));
        assert_eq!(theta_inverse(&omega_min(7).unwrap()).unwrap(), comp(&[3, 3]));
        assert_eq!(theta_inverse(&omega_min(8).unwrap()).unwrap(), comp(&[4, 3]));
    }

    #[test]
    fn loop_counts() {
        assert_eq!(loop_count(&signs("+-+")), 3);
        assert_eq!(loop_count(&signs("+-")), 2);
        assert_eq!(loop_count(&signs("++++")), 1);
        for bits in 0..64 {
            let w = SignSequence::from_bits(7, bits).unwrap();
            assert_eq!(loop_count(&w), loop_count(&w.negate()));
            assert_eq!(loop_count(&w), loop_count(&w.reverse()));
        }
    }

    #[test]
    fn json_forms() {
        let w = signs("+-+");
        assert_eq!(serde_json::to_string(&w).unwrap(), "[1,-1,1]");
        let back: SignSequence = serde_json::from_str("[1,-1,1]").unwrap();
        assert_eq!(back, w);
        assert!(serde_json::from_str::<SignSequence>("[1,0,1]").is_err());
        let m = comp(&[3, 2]);
        assert_eq!(serde_json::to_string(&m).unwrap(), "[3,2]");
        assert!(serde_json::from_str::<Composition>("[3,0]").is_err());
    }

    #[test]
    fn parsing() {
        assert_eq!("(1,2)".parse::<Composition>().unwrap(), comp(&[1, 2]));
        assert_eq!("3+2".parse::<Composition>().unwrap(), comp(&[3, 2]));
        assert_eq!("1,-1,1".parse::<SignSequence>().unwrap(), signs("+-+"));
        assert!("+".parse::<SignSequence>().is_err());
        assert!("+x-".parse::<SignSequence>().is_err());
    }
}
