use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::combinatorics::{theta, Composition, SignSequence};
use crate::error::{Error, Result};

/// One Artin generator `σ_i^{±1}`; `generator` is 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Letter {
    pub generator: usize,
    pub exponent: i8,
}

impl Letter {
    pub fn new(generator: usize, exponent: i8) -> Self {
        debug_assert!(exponent == 1 || exponent == -1);
        Self { generator, exponent }
    }

    pub fn inverse(self) -> Self {
        Self::new(self.generator, -self.exponent)
    }

    /// Signed-integer form: `i` for `σ_i`, `-i` for `σ_i^{-1}`.
    pub fn to_signed(self) -> i64 {
        self.generator as i64 * i64::from(self.exponent)
    }

    pub fn from_signed(v: i64) -> Result<Self> {
        if v == 0 {
            return Err(Error::invalid("generator index 0 does not exist"));
        }
        Ok(Self::new(v.unsigned_abs() as usize, v.signum() as i8))
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "s{}", self.generator)?;
        if self.exponent < 0 {
            f.write_str("'")?;
        }
        Ok(())
    }
}

/// A word in the Artin generators of `B_n`.
///
/// The empty word is the identity braid. Serializes to JSON as
/// `{"strands": n, "letters": [1, -2, 3]}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "BraidJson", into = "BraidJson")]
pub struct BraidWord {
    strands: usize,
    letters: Vec<Letter>,
}

#[derive(Serialize, Deserialize)]
struct BraidJson {
    strands: usize,
    letters: Vec<i64>,
}

impl TryFrom<BraidJson> for BraidWord {
    type Error = Error;

    fn try_from(json: BraidJson) -> Result<Self> {
        let letters = json
            .letters
            .into_iter()
            .map(Letter::from_signed)
            .collect::<Result<Vec<_>>>()?;
        BraidWord::new(json.strands, letters)
    }
}

impl From<BraidWord> for BraidJson {
    fn from(b: BraidWord) -> Self {
        BraidJson {
            strands: b.strands,
            letters: b.letters.iter().map(|l| l.to_signed()).collect(),
        }
    }
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<Letter>) -> Result<Self> {
        if strands < 2 {
            return Err(Error::invalid(format!(
                "a braid needs at least 2 strands, got {strands}"
            )));
        }
        if let Some(bad) = letters
            .iter()
            .find(|l| l.generator == 0 || l.generator >= strands || l.exponent.abs() != 1)
        {
            return Err(Error::invalid(format!(
                "letter {bad} is not a generator of B_{strands}"
            )));
        }
        Ok(Self { strands, letters })
    }

    /// Builds a word from signed generator indices.
    pub fn from_signed(strands: usize, letters: &[i64]) -> Result<Self> {
        let letters = letters
            .iter()
            .map(|&v| Letter::from_signed(v))
            .collect::<Result<Vec<_>>>()?;
        Self::new(strands, letters)
    }

    pub fn identity(strands: usize) -> Self {
        assert!(strands >= 2);
        Self {
            strands,
            letters: Vec::new(),
        }
    }

    /// `σ_i^{exponent}` as a one-letter word.
    pub fn generator(strands: usize, generator: usize, exponent: i8) -> Result<Self> {
        Self::new(strands, vec![Letter::new(generator, exponent)])
    }

    /// Parses text such as `s1 s2' s3`; `1` or an empty string is the identity.
    pub fn parse(text: &str, strands: usize) -> Result<Self> {
        Self::new(strands, parse_letters(text)?)
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn to_signed(&self) -> Vec<i64> {
        self.letters.iter().map(|l| l.to_signed()).collect()
    }

    /// Sum of exponents.
    pub fn writhe(&self) -> i64 {
        self.letters.iter().map(|l| i64::from(l.exponent)).sum()
    }

    /// Reverses the letter order, keeping exponents.
    pub fn rev(&self) -> Self {
        let mut letters = self.letters.clone();
        letters.reverse();
        Self {
            strands: self.strands,
            letters,
        }
    }

    /// Flips every crossing sign.
    pub fn mirror(&self) -> Self {
        Self {
            strands: self.strands,
            letters: self.letters.iter().map(|l| l.inverse()).collect(),
        }
    }

    pub fn inverse(&self) -> Self {
        Self {
            strands: self.strands,
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }

    pub fn concat(&self, other: &Self) -> Result<Self> {
        if self.strands != other.strands {
            return Err(Error::StrandMismatch {
                left: self.strands,
                right: other.strands,
            });
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(Self {
            strands: self.strands,
            letters,
        })
    }

    pub fn power(&self, k: usize) -> Self {
        Self {
            strands: self.strands,
            letters: self.letters.repeat(k),
        }
    }

    /// `h^{-1} · self · h`.
    pub fn conjugate_by(&self, h: &Self) -> Result<Self> {
        h.inverse().concat(self)?.concat(h)
    }

    /// Cancels adjacent `σ_i σ_i^{-1}` pairs. Same braid, possibly shorter word.
    pub fn freely_reduced(&self) -> Self {
        let mut out: Vec<Letter> = Vec::with_capacity(self.letters.len());
        for &l in &self.letters {
            if out.last() == Some(&l.inverse()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Self {
            strands: self.strands,
            letters: out,
        }
    }
}

fn parse_letters(text: &str) -> Result<Vec<Letter>> {
    let text = text.trim();
    if text.is_empty() || text == "1" || text == "e" {
        return Ok(Vec::new());
    }
    text.split(|c: char| c.is_whitespace() || c == '*' || c == '.')
        .filter(|t| !t.is_empty())
        .map(|token| {
            let (body, exponent) = match token.strip_suffix('\'') {
                Some(body) => (body, -1),
                None => (token, 1),
            };
            let index = body
                .strip_prefix('s')
                .or_else(|| body.strip_prefix('σ'))
                .ok_or_else(|| Error::invalid(format!("bad braid letter {token:?}")))?;
            let generator: usize = index
                .parse()
                .map_err(|_| Error::invalid(format!("bad generator index in {token:?}")))?;
            if generator == 0 {
                return Err(Error::invalid("generator index 0 does not exist"));
            }
            Ok(Letter::new(generator, exponent))
        })
        .collect()
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("1");
        }
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl FromStr for BraidWord {
    type Err = Error;

    /// Parses the text syntax with the smallest strand count that fits.
    fn from_str(s: &str) -> Result<Self> {
        let letters = parse_letters(s)?;
        let strands = letters.iter().map(|l| l.generator + 1).max().unwrap_or(2);
        Self::new(strands, letters)
    }
}

/// `α_ω = σ_1^{ω_1} σ_2^{ω_2} ⋯ σ_{N-1}^{ω_{N-1}}`.
pub fn alpha(omega: &SignSequence) -> BraidWord {
    BraidWord {
        strands: omega.bodies(),
        letters: omega
            .signs()
            .iter()
            .enumerate()
            .map(|(i, &s)| Letter::new(i + 1, s))
            .collect(),
    }
}

fn parity_braid(omega: &SignSequence, even: bool) -> BraidWord {
    // The factors commute, so ascending order is as good as any; it is the
    // order in which the primitive braid reads off a trajectory.
    BraidWord {
        strands: omega.bodies(),
        letters: omega
            .signs()
            .iter()
            .enumerate()
            .map(|(i, &s)| Letter::new(i + 1, s))
            .filter(|l| (l.generator % 2 == 0) == even)
            .collect(),
    }
}

/// `e_ω`: product of `σ_i^{ω_i}` over even `i`, ascending.
pub fn e_braid(omega: &SignSequence) -> BraidWord {
    parity_braid(omega, true)
}

/// `o_ω`: product of `σ_i^{ω_i}` over odd `i`, ascending.
pub fn o_braid(omega: &SignSequence) -> BraidWord {
    parity_braid(omega, false)
}

/// `β_m = α_{Θ(m)}`.
pub fn beta(m: &Composition) -> Result<BraidWord> {
    Ok(alpha(&theta(m)?))
}

/// `σ_1 σ_2 ⋯ σ_{n-1}`.
pub fn cycle_word(strands: usize) -> BraidWord {
    BraidWord {
        strands,
        letters: (1..strands).map(|i| Letter::new(i, 1)).collect(),
    }
}

/// Garside half twist `Δ = (σ_1⋯σ_{n-1})(σ_1⋯σ_{n-2})⋯(σ_1σ_2)σ_1`.
pub fn half_twist(strands: usize) -> Result<BraidWord> {
    if strands < 2 {
        return Err(Error::invalid("half twist needs at least 2 strands"));
    }
    let letters = (1..strands)
        .rev()
        .flat_map(|top| (1..=top).map(|i| Letter::new(i, 1)))
        .collect();
    Ok(BraidWord { strands, letters })
}

/// `Δ²`, which generates the centre of `B_n`.
pub fn full_twist(strands: usize) -> Result<BraidWord> {
    Ok(half_twist(strands)?.power(2))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(text: &str, n: usize) -> BraidWord {
        BraidWord::parse(text, n).unwrap()
    }

    fn signs(s: &str) -> SignSequence {
        s.parse().unwrap()
    }

    #[test]
    fn alpha_examples() {
        assert_eq!(alpha(&signs("+-")), w("s1 s2'", 3));
        assert_eq!(alpha(&signs("-++")), w("s1' s2 s3", 4));
        assert_eq!(alpha(&signs("+--")), w("s1 s2' s3'", 4));
        assert_eq!(alpha(&signs("+++")), w("s1 s2 s3", 4));
    }

    #[test]
    fn parity_braids() {
        assert_eq!(e_braid(&signs("-+")), w("s2", 3));
        assert_eq!(o_braid(&signs("-+")), w("s1'", 3));
        assert_eq!(e_braid(&signs("-++")), w("s2", 4));
        assert_eq!(o_braid(&signs("-++")), w("s1' s3", 4));
        let omega = signs("+-+--+");
        assert_eq!(o_braid(&omega), w("s1 s3 s5'", 7));
        assert_eq!(e_braid(&omega), w("s2' s4' s6", 7));
    }

    #[test]
    fn beta_examples() {
        let b = |parts: &[usize]| beta(&Composition::new(parts.to_vec()).unwrap()).unwrap();
        assert_eq!(b(&[3, 2]), w("s1 s2 s3 s4' s5'", 6));
        assert_eq!(b(&[1, 1, 1, 1, 1]), w("s1 s2' s3 s4' s5", 6));
        assert_eq!(b(&[6]), cycle_word(7));
    }

    #[test]
    fn structural_maps() {
        let b = w("s1 s2'", 3);
        assert_eq!(b.rev(), w("s2' s1", 3));
        assert_eq!(b.mirror(), w("s1' s2", 3));
        assert_eq!(b.inverse(), w("s2 s1'", 3));
        assert_eq!(b.power(0), BraidWord::identity(3));
        assert_eq!(b.power(2), w("s1 s2' s1 s2'", 3));
        assert!(b.concat(&BraidWord::identity(4)).is_err());
        let a = alpha(&signs("+-+-"));
        assert_eq!(a.inverse(), w("s4 s3' s2 s1'", 5));
    }

    #[test]
    fn twists() {
        assert_eq!(half_twist(3).unwrap(), w("s1 s2 s1", 3));
        assert_eq!(half_twist(4).unwrap().len(), 6);
        assert_eq!(half_twist(2).unwrap(), w("s1", 2));
        for n in 2..9 {
            assert_eq!(half_twist(n).unwrap().len(), n * (n - 1) / 2);
            assert_eq!(full_twist(n).unwrap().len(), n * (n - 1));
        }
    }

    #[test]
    fn text_syntax() {
        let b = w("s1 s2' s3", 4);
        assert_eq!(b.to_string(), "s1 s2' s3");
        assert_eq!(b.to_string().parse::<BraidWord>().unwrap(), b);
        assert_eq!(BraidWord::identity(3).to_string(), "1");
        assert_eq!("1".parse::<BraidWord>().unwrap().len(), 0);
        assert!(BraidWord::parse("s3", 3).is_err());
        assert!(BraidWord::parse("t1", 3).is_err());
        assert!(BraidWord::parse("s0", 3).is_err());
    }

    #[test]
    fn json_syntax() {
        let b = w("s1 s2' s3", 4);
        let text = serde_json::to_string(&b).unwrap();
        assert_eq!(text, r#"{"strands":4,"letters":[1,-2,3]}"#);
        assert_eq!(serde_json::from_str::<BraidWord>(&text).unwrap(), b);
        assert!(serde_json::from_str::<BraidWord>(r#"{"strands":3,"letters":[3]}"#).is_err());
    }
}
