//! Dense univariate polynomials with arbitrary-precision integer coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Coefficients in ascending degree order with trailing zeros trimmed.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct IntPolynomial {
    coefficients: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coefficients: Vec<BigInt>) -> Self {
        while coefficients.last().is_some_and(Zero::is_zero) {
            coefficients.pop();
        }
        Self { coefficients }
    }

    pub fn from_i64(coefficients: &[i64]) -> Self {
        Self::new(coefficients.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    /// `c · t^degree`.
    pub fn monomial(c: impl Into<BigInt>, degree: usize) -> Self {
        let mut coefficients = vec![BigInt::zero(); degree];
        coefficients.push(c.into());
        Self::new(coefficients)
    }

    /// `t - c`.
    pub fn linear_root(c: i64) -> Self {
        Self::from_i64(&[-c, 1])
    }

    pub fn coefficients(&self) -> &[BigInt] {
        &self.coefficients
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coefficients.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coefficients.last()
    }

    pub fn coefficient(&self, degree: usize) -> BigInt {
        self.coefficients.get(degree).cloned().unwrap_or_default()
    }

    /// `t^degree · f(1/t)`, i.e. the coefficient list reversed.
    pub fn reciprocal(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::invalid("reciprocal of the zero polynomial"));
        }
        Ok(Self::new(self.coefficients.iter().rev().cloned().collect()))
    }

    /// Multiplies by `t^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coefficients = vec![BigInt::zero(); k];
        coefficients.extend(self.coefficients.iter().cloned());
        Self { coefficients }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::new(self.coefficients.iter().map(|a| a * c).collect())
    }

    pub fn pow(&self, k: usize) -> Self {
        (0..k).fold(Self::one(), |acc, _| &acc * self)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coefficients
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    /// Gcd of the coefficients, zero for the zero polynomial.
    pub fn content(&self) -> BigInt {
        self.coefficients.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Divides out the content and makes the leading coefficient positive.
    pub fn primitive_part(&self) -> Self {
        let c = self.content();
        if c.is_zero() {
            return Self::zero();
        }
        let c = if self.leading().expect("nonzero").is_negative() {
            -c
        } else {
            c
        };
        Self::new(self.coefficients.iter().map(|a| a / &c).collect())
    }

    pub fn eval_f64(&self, t: f64) -> f64 {
        self.coefficients
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * t + bigint_to_f64(c))
    }

    /// Sign of `f(num / 2^exp)`, computed exactly.
    pub fn sign_at_dyadic(&self, num: &BigInt, exp: u32) -> i8 {
        // Horner on 2^{exp·d} f(num/2^exp) = Σ a_i num^i 2^{exp(d-i)}.
        let Some(d) = self.degree() else { return 0 };
        let mut value = BigInt::zero();
        for (i, c) in self.coefficients.iter().enumerate().rev() {
            value = value * num + (c << (exp as usize * (d - i)));
        }
        sign_of(&value)
    }

    /// Exact division; fails unless `divisor` divides `self` over the integers.
    pub fn exact_div(&self, divisor: &Self) -> Result<Self> {
        let (q, r) = self.div_rem_rational(divisor)?;
        if !r.iter().all(Zero::is_zero) {
            return Err(Error::invalid(format!("{divisor} does not divide {self}")));
        }
        let mut out = Vec::with_capacity(q.len());
        for c in q {
            if !c.is_integer() {
                return Err(Error::invalid(format!(
                    "{divisor} does not divide {self} over the integers"
                )));
            }
            out.push(c.to_integer());
        }
        Ok(Self::new(out))
    }

    /// True when `divisor` divides `self` in `Z[t]`.
    pub fn is_divisible_by(&self, divisor: &Self) -> bool {
        self.exact_div(divisor).is_ok()
    }

    /// Quotient and remainder over the rationals.
    pub(crate) fn div_rem_rational(&self, divisor: &Self) -> Result<(Vec<BigRational>, Vec<BigRational>)> {
        let Some(dd) = divisor.degree() else {
            return Err(Error::invalid("division by the zero polynomial"));
        };
        let lead = BigRational::from_integer(divisor.leading().expect("nonzero").clone());
        let mut rem: Vec<BigRational> = self
            .coefficients
            .iter()
            .map(|c| BigRational::from_integer(c.clone()))
            .collect();
        let n = self.coefficients.len();
        if n <= dd {
            return Ok((Vec::new(), rem));
        }
        let mut quotient = vec![BigRational::zero(); n - dd];
        for k in (0..n - dd).rev() {
            let q = &rem[k + dd] / &lead;
            if !q.is_zero() {
                for (j, c) in divisor.coefficients.iter().enumerate() {
                    rem[k + j] -= &q * BigRational::from_integer(c.clone());
                }
            }
            quotient[k] = q;
        }
        rem.truncate(dd);
        Ok((quotient, rem))
    }

    /// Primitive integer polynomial proportional (with positive factor) to the
    /// remainder of `self` by `divisor`.
    pub(crate) fn rem_primitive(&self, divisor: &Self) -> Result<Self> {
        let (_, rem) = self.div_rem_rational(divisor)?;
        Ok(Self::from_rational_positive(&rem))
    }

    /// Clears denominators with a positive multiplier and divides by the
    /// positive content, preserving the sign of every value.
    pub(crate) fn from_rational_positive(coefficients: &[BigRational]) -> Self {
        let lcm = coefficients.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        let p = Self::new(
            coefficients
                .iter()
                .map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer())
                .collect(),
        );
        let content = p.content();
        if content.is_zero() {
            return p;
        }
        Self::new(p.coefficients.iter().map(|a| a / &content).collect())
    }

    /// `gcd(self, other)` as a primitive polynomial with positive leading
    /// coefficient.
    pub fn gcd(&self, other: &Self) -> Result<Self> {
        let (mut a, mut b) = (self.primitive_part(), other.primitive_part());
        while !b.is_zero() {
            let r = a.rem_primitive(&b)?;
            a = b;
            b = r;
        }
        Ok(a.primitive_part())
    }

    /// `self / gcd(self, self')`: same distinct roots, all simple.
    pub fn square_free_part(&self) -> Result<Self> {
        if self.degree().unwrap_or(0) == 0 {
            return Ok(self.primitive_part());
        }
        let g = self.gcd(&self.derivative())?;
        Ok(self.primitive_part().exact_div_rational_primitive(&g))
    }

    fn exact_div_rational_primitive(&self, divisor: &Self) -> Self {
        let (q, _) = self.div_rem_rational(divisor).expect("divisor is a nonzero gcd");
        Self::from_rational_positive(&q).primitive_part()
    }
}

pub(crate) fn sign_of(x: &BigInt) -> i8 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

pub(crate) fn bigint_to_f64(x: &BigInt) -> f64 {
    use num_traits::ToPrimitive;
    x.to_f64().unwrap_or(if x.is_negative() {
        f64::NEG_INFINITY
    } else {
        f64::INFINITY
    })
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;
    fn add(self, rhs: Self) -> IntPolynomial {
        let n = self.coefficients.len().max(rhs.coefficients.len());
        IntPolynomial::new((0..n).map(|i| self.coefficient(i) + rhs.coefficient(i)).collect())
    }
}

impl Sub for &IntPolynomial {
    type Output = IntPolynomial;
    fn sub(self, rhs: Self) -> IntPolynomial {
        let n = self.coefficients.len().max(rhs.coefficients.len());
        IntPolynomial::new((0..n).map(|i| self.coefficient(i) - rhs.coefficient(i)).collect())
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;
    fn mul(self, rhs: Self) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::zero();
        }
        let mut out = vec![BigInt::zero(); self.coefficients.len() + rhs.coefficients.len() - 1];
        for (i, a) in self.coefficients.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coefficients.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPolynomial::new(out)
    }
}

impl Neg for &IntPolynomial {
    type Output = IntPolynomial;
    fn neg(self) -> IntPolynomial {
        IntPolynomial::new(self.coefficients.iter().map(|c| -c).collect())
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for IntPolynomial {
            type Output = IntPolynomial;
            fn $m(self, rhs: Self) -> IntPolynomial { (&self).$m(&rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for IntPolynomial {
    type Output = IntPolynomial;
    fn neg(self) -> IntPolynomial {
        -&self
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coefficients.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let magnitude = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            }
            first = false;
            let show_coefficient = i == 0 || !magnitude.is_one();
            if show_coefficient {
                write!(f, "{magnitude}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "t")?,
                _ => write!(f, "t^{i}")?,
            }
        }
        Ok(())
    }
}

impl Serialize for IntPolynomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let strings: Vec<String> = self.coefficients.iter().map(ToString::to_string).collect();
        strings.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for IntPolynomial {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let strings = Vec::<String>::deserialize(deserializer)?;
        let coefficients = strings
            .iter()
            .map(|s| s.parse::<BigInt>().map_err(serde::de::Error::custom))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Ok(Self::new(coefficients))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn poly(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64(c)
    }

    #[test]
    fn trims_and_degree() {
        assert_eq!(poly(&[1, 2, 0, 0]).degree(), Some(1));
        assert_eq!(poly(&[0, 0]).degree(), None);
        assert!(poly(&[]).is_zero());
    }

    #[test]
    fn reciprocal_examples() {
        assert_eq!(poly(&[5]).reciprocal().unwrap(), poly(&[5]));
        assert_eq!(poly(&[1, 3, 1]).reciprocal().unwrap(), poly(&[1, 3, 1]));
        // t^{m+2} - t^{m+1} - 2t for m = 3 reverses to 1 - t - 2t^4.
        let r = poly(&[0, -2, 0, 0, -1, 1]);
        assert_eq!(r.reciprocal().unwrap(), poly(&[1, -1, 0, 0, -2]));
        assert!(IntPolynomial::zero().reciprocal().is_err());
    }

    #[test]
    fn display() {
        assert_eq!(poly(&[0, -2, -1, 1]).to_string(), "t^3 - t^2 - 2t");
        assert_eq!(poly(&[1, -4, 1]).to_string(), "t^2 - 4t + 1");
        assert_eq!(poly(&[-3]).to_string(), "-3");
        assert_eq!(IntPolynomial::zero().to_string(), "0");
    }

    #[test]
    fn serde_uses_decimal_strings() {
        let p = poly(&[1, -4, 1]);
        let json = serde_json::to_string(&p).unwrap();
        assert_eq!(json, r#"["1","-4","1"]"#);
        assert_eq!(serde_json::from_str::<IntPolynomial>(&json).unwrap(), p);
    }

    #[test]
    fn division_and_gcd() {
        let a = poly(&[-1, 1]);
        let b = poly(&[1, -4, 1]);
        let ab = &a * &b;
        assert_eq!(ab.exact_div(&b).unwrap(), a);
        assert!(!ab.is_divisible_by(&poly(&[1, 1])));
        assert!(!poly(&[1, 2]).is_divisible_by(&poly(&[0, 2])));
        assert_eq!(ab.gcd(&(&b * &poly(&[3, 1]))).unwrap(), b);
        let square = &ab * &a;
        assert_eq!(square.square_free_part().unwrap(), ab);
    }

    #[test]
    fn dyadic_signs() {
        let p = poly(&[1, -4, 1]);
        // p(3.5) = 12.25 - 14 + 1 < 0, p(3.75) > 0.
        assert_eq!(p.sign_at_dyadic(&BigInt::from(7), 1), -1);
        assert_eq!(p.sign_at_dyadic(&BigInt::from(15), 2), 1);
        assert_eq!(poly(&[-2, 1]).sign_at_dyadic(&BigInt::from(4), 1), 0);
    }

    proptest! {
        #[test]
        fn ring_laws(a in prop::collection::vec(-9i64..9, 0..6),
                     b in prop::collection::vec(-9i64..9, 0..6),
                     x in -3i64..3) {
            let (p, q) = (poly(&a), poly(&b));
            let v = |f: &IntPolynomial| f.eval_f64(x as f64);
            prop_assert_eq!(v(&(&p * &q)), v(&p) * v(&q));
            prop_assert_eq!(v(&(&p + &q)), v(&p) + v(&q));
            prop_assert_eq!(&(&p - &q) + &q, p.clone());
            if !p.is_zero() {
                prop_assert_eq!(p.reciprocal().unwrap().reciprocal().unwrap().degree() <= p.degree(), true);
            }
        }
    }
}
