//! Certified isolation of the largest real root by Sturm sequences evaluated
//! exactly at dyadic rationals.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::polynomial::{bigint_to_f64, IntPolynomial};
use crate::error::{Error, Result};

/// Smallest enclosure width accepted; finer requests are clamped to this.
pub const MIN_ENCLOSURE_WIDTH: f64 = 1e-14;

/// Closed interval certified to contain a root.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RootEnclosure {
    pub lo: f64,
    pub hi: f64,
}

impl RootEnclosure {
    pub fn midpoint(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }

    pub fn radius(&self) -> f64 {
        0.5 * (self.hi - self.lo)
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    /// `Some` ordering when the intervals are disjoint, `None` when they overlap.
    pub fn strict_cmp(&self, other: &Self) -> Option<Ordering> {
        if self.hi < other.lo {
            Some(Ordering::Less)
        } else if other.hi < self.lo {
            Some(Ordering::Greater)
        } else {
            None
        }
    }
}

/// Sturm chain of a square-free polynomial.
#[derive(Clone, Debug)]
pub struct SturmSequence {
    chain: Vec<IntPolynomial>,
}

impl SturmSequence {
    pub fn new(f: &IntPolynomial) -> Result<Self> {
        if f.degree().unwrap_or(0) == 0 {
            return Err(Error::invalid("Sturm sequence needs a nonconstant polynomial"));
        }
        let p0 = f.square_free_part()?;
        let p1 = p0.derivative();
        let mut chain = vec![p0, p1];
        loop {
            let n = chain.len();
            if chain[n - 1].degree() == Some(0) {
                break;
            }
            // Remainders are only needed up to a positive factor.
            let r = -chain[n - 2].rem_primitive(&chain[n - 1])?;
            if r.is_zero() {
                break;
            }
            chain.push(r);
        }
        Ok(Self { chain })
    }

    /// The square-free polynomial heading the chain.
    pub fn base(&self) -> &IntPolynomial {
        &self.chain[0]
    }

    /// Sign changes at `num / 2^exp`, zeros dropped.
    pub fn variations(&self, num: &BigInt, exp: u32) -> usize {
        let mut last = 0i8;
        let mut count = 0;
        for p in &self.chain {
            let s = p.sign_at_dyadic(num, exp);
            if s != 0 {
                if last != 0 && s != last {
                    count += 1;
                }
                last = s;
            }
        }
        count
    }

    /// Distinct roots in `(a/2^exp, b/2^exp]`.
    pub fn count_roots(&self, a: &BigInt, b: &BigInt, exp: u32) -> usize {
        self.variations(a, exp).saturating_sub(self.variations(b, exp))
    }
}

/// Exponent `p` with `2^p` strictly above every root modulus.
pub fn cauchy_bound_exponent(f: &IntPolynomial) -> u32 {
    let lead = f.leading().map(|c| c.abs()).unwrap_or_default();
    let max = f.coefficients().iter().map(|c| c.abs()).max().unwrap_or_default();
    if lead.is_zero() {
        return 0;
    }
    // Roots satisfy |x| < 1 + max|a_i|/|a_d| ≤ 1 + ceil(max/lead).
    let bound = BigInt::from(1) + Integer::div_ceil(&max, &lead);
    bound.bits() as u32
}

/// Enclosure of the largest real root of `f`, of width at most `tol`.
///
/// Fails with [`Error::NoPositiveRoot`] when `f` has no root in `(0, ∞)`.
pub fn largest_real_root(f: &IntPolynomial, tol: f64) -> Result<RootEnclosure> {
    if !(tol.is_finite() && tol > 0.0) {
        return Err(Error::invalid(format!("tolerance must be positive, got {tol}")));
    }
    let tol = tol.max(MIN_ENCLOSURE_WIDTH);
    let sturm = SturmSequence::new(f)?;
    let p = cauchy_bound_exponent(sturm.base());
    // Interval (a/2^k, b/2^k] holding the largest root.
    let mut a = BigInt::zero();
    let mut b = BigInt::from(1) << p as usize;
    let mut k = 0u32;
    if sturm.count_roots(&a, &b, k) == 0 {
        return Err(Error::NoPositiveRoot);
    }
    // Leave room for outward rounding to f64.
    let target = tol * 0.5;
    while width(&a, &b, k) > target {
        if (&b - &a).is_odd() {
            a <<= 1;
            b <<= 1;
            k += 1;
        }
        let mid: BigInt = (&a + &b) >> 1;
        if sturm.count_roots(&mid, &b, k) > 0 {
            a = mid;
        } else {
            b = mid;
        }
    }
    Ok(RootEnclosure {
        lo: dyadic_to_f64(&a, k).next_down(),
        hi: dyadic_to_f64(&b, k).next_up(),
    })
}

/// Orders the largest real roots of `f` and `g`, refining until the
/// enclosures separate. `None` when they still overlap at the finest width.
pub fn compare_largest_roots(f: &IntPolynomial, g: &IntPolynomial) -> Result<Option<Ordering>> {
    let mut tol = 1e-6;
    loop {
        let (a, b) = (largest_real_root(f, tol)?, largest_real_root(g, tol)?);
        if let Some(ordering) = a.strict_cmp(&b) {
            return Ok(Some(ordering));
        }
        if tol <= MIN_ENCLOSURE_WIDTH {
            return Ok(None);
        }
        tol = (tol * 1e-2).max(MIN_ENCLOSURE_WIDTH);
    }
}

fn width(a: &BigInt, b: &BigInt, k: u32) -> f64 {
    dyadic_to_f64(&(b - a), k)
}

fn dyadic_to_f64(num: &BigInt, exp: u32) -> f64 {
    bigint_to_f64(num) * 2f64.powi(-(exp as i32))
}
