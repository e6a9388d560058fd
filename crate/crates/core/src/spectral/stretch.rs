//! Stretch factors of `β_m` from the `R`/`F` polynomial recursion, the
//! Nielsen–Thurston type of `α_ω`, and the extremal survey over compositions.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::polynomial::IntPolynomial;
use super::roots::{compare_largest_roots, largest_real_root, RootEnclosure};
use crate::combinatorics::{enumerate_compositions, Composition, SignSequence, DEFAULT_MAX_BODIES};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum Classification {
    Periodic,
    PseudoAnosov,
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Periodic => "periodic",
            Self::PseudoAnosov => "pseudo-Anosov",
        })
    }
}

/// `t^a (t - 1)`.
fn shifted_t_minus_one(a: usize) -> IntPolynomial {
    IntPolynomial::from_i64(&[-1, 1]).shift(a)
}

/// `R_{(m_1,…,m_i)}` from `R_{(m_1)} = t^{m_1+1}(t-1) - 2t` and
/// `R_{(…,m_i)} = t^{m_i}(t-1) R_{(…,m_{i-1})} + (-1)^i 2t R_{(…,m_{i-1})*}`.
pub fn r_poly(m: &[usize]) -> Result<IntPolynomial> {
    let (&first, rest) = m
        .split_first()
        .ok_or_else(|| Error::invalid("R polynomial needs a nonempty tuple"))?;
    if m.contains(&0) {
        return Err(Error::invalid("R polynomial entries must be positive"));
    }
    let mut r = &shifted_t_minus_one(first + 1) - &IntPolynomial::monomial(2, 1);
    for (offset, &mi) in rest.iter().enumerate() {
        let i = offset + 2;
        let sign = if i % 2 == 0 { 2 } else { -2 };
        let twisted = &IntPolynomial::monomial(sign, 1) * &r.reciprocal()?;
        r = &(&shifted_t_minus_one(mi) * &r) + &twisted;
    }
    Ok(r)
}

/// `F_m = t^{m_{k+1}} R_{(m_1,…,m_k)} + (-1)^{k+1} R_{(m_1,…,m_k)*}`.
///
/// A single-block composition gives a periodic braid and has no `F`.
pub fn f_poly(m: &Composition) -> Result<IntPolynomial> {
    let parts = m.parts();
    let k = parts.len() - 1;
    if k == 0 {
        return Err(Error::PeriodicBraid(m.to_string()));
    }
    let r = r_poly(&parts[..k])?;
    let r_star = r.reciprocal()?;
    let head = r.shift(parts[k]);
    Ok(if (k + 1).is_multiple_of(2) {
        &head + &r_star
    } else {
        &head - &r_star
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StretchReport {
    pub composition: Composition,
    pub classification: Classification,
    /// `F_m`; absent for periodic braids.
    pub polynomial: Option<IntPolynomial>,
    /// Midpoint of the enclosure, or 1 for periodic braids.
    pub lambda: f64,
    /// Half-width of the certified enclosure.
    pub radius: f64,
    pub enclosure: Option<RootEnclosure>,
}

impl StretchReport {
    pub fn bodies(&self) -> usize {
        self.composition.strands()
    }
}

/// Stretch factor of `β_m`, enclosed to width `tol`.
pub fn stretch_factor(m: &Composition, tol: f64) -> Result<StretchReport> {
    if m.len() == 1 {
        return Ok(StretchReport {
            composition: m.clone(),
            classification: Classification::Periodic,
            polynomial: None,
            lambda: 1.0,
            radius: 0.0,
            enclosure: None,
        });
    }
    let f = f_poly(m)?;
    let enclosure = largest_real_root(&f, tol)?;
    Ok(StretchReport {
        composition: m.clone(),
        classification: Classification::PseudoAnosov,
        polynomial: Some(f),
        lambda: enclosure.midpoint(),
        radius: enclosure.radius(),
        enclosure: Some(enclosure),
    })
}

/// Strict comparison of `λ_a` and `λ_b` by disjoint enclosures; `None` when
/// they cannot be separated at the finest width.
pub fn compare_stretch(a: &Composition, b: &Composition) -> Result<Option<Ordering>> {
    match (a.len() == 1, b.len() == 1) {
        (true, true) => Ok(None),
        (true, false) => Ok(Some(Ordering::Less)),
        (false, true) => Ok(Some(Ordering::Greater)),
        (false, false) => compare_largest_roots(&f_poly(a)?, &f_poly(b)?),
    }
}

/// Type of `α_ω`: periodic exactly when all signs agree.
pub fn classify(omega: &SignSequence) -> Classification {
    if omega.is_constant() {
        Classification::Periodic
    } else {
        Classification::PseudoAnosov
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Survey {
    pub bodies: usize,
    /// Every pseudo-Anosov `β_m`, in lexicographic order of `m`.
    pub table: Vec<StretchReport>,
    /// All compositions attaining the minimum, in table order.
    pub minimizers: Vec<Composition>,
    pub maximizers: Vec<Composition>,
    pub min: StretchReport,
    pub max: StretchReport,
}

/// Enclosures within this of the extreme count as ties.
const TIE_WIDTH: f64 = 1e-10;

/// Stretch factors of all pseudo-Anosov `β_m` with `m` a composition of `N-1`.
pub fn extremal_survey(bodies: usize, tol: f64) -> Result<Survey> {
    extremal_survey_capped(bodies, tol, DEFAULT_MAX_BODIES)
}

pub fn extremal_survey_capped(bodies: usize, tol: f64, max_bodies: usize) -> Result<Survey> {
    if bodies < 3 || bodies > max_bodies {
        return Err(Error::invalid(format!(
            "survey needs 3 <= N <= {max_bodies}, got {bodies}"
        )));
    }
    let compositions: Vec<Composition> = enumerate_compositions(bodies - 1)?
        .into_iter()
        .filter(|m| m.len() > 1)
        .collect();
    let table = compositions
        .par_iter()
        .map(|m| stretch_factor(m, tol))
        .collect::<Result<Vec<_>>>()?;
    let extreme = |better: fn(f64, f64) -> bool| {
        let best = table
            .iter()
            .map(|r| r.lambda)
            .reduce(|a, b| if better(b, a) { b } else { a })
            .expect("N >= 3 has a pseudo-Anosov composition");
        let slack = TIE_WIDTH + tol;
        let attaining: Vec<&StretchReport> = table.iter().filter(|r| (r.lambda - best).abs() <= slack).collect();
        (
            attaining.iter().map(|r| r.composition.clone()).collect::<Vec<_>>(),
            attaining[0].clone(),
        )
    };
    let (minimizers, min) = extreme(|a, b| a < b);
    let (maximizers, max) = extreme(|a, b| a > b);
    Ok(Survey {
        bodies,
        table,
        minimizers,
        maximizers,
        min,
        max,
    })
}

/// Extremal compositions for `N` bodies: `1_{N-1}` maximizes, and `(n, n)`
/// for `N = 2n+1` or `(n-1, n)`, `(n, n-1)` for `N = 2n` minimize.
pub fn predicted_extremes(bodies: usize) -> Result<(Vec<Composition>, Composition)> {
    if bodies < 3 {
        return Err(Error::invalid("extremes need N >= 3"));
    }
    let n = bodies / 2;
    let min = if bodies % 2 == 1 {
        vec![Composition::new(vec![n, n])?]
    } else {
        vec![Composition::new(vec![n - 1, n])?, Composition::new(vec![n, n - 1])?]
    };
    Ok((min, Composition::ones(bodies - 1)?))
}

/// `t^4 - 2t^3 - 2t + 1`.
pub fn four_strand_minimal_factor() -> IntPolynomial {
    IntPolynomial::new([1, -2, 0, -2, 1].map(BigInt::from).to_vec())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn poly(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64(c)
    }

    fn comp(parts: &[usize]) -> Composition {
        Composition::new(parts.to_vec()).unwrap()
    }

    /// Largest real root by a plain floating-point scan and bisection.
    fn float_largest_root(f: &IntPolynomial) -> f64 {
        let mut hi = 64.0;
        let step = 1e-3;
        let sign_hi = f.eval_f64(hi).signum();
        let mut lo = hi - step;
        while f.eval_f64(lo).signum() == sign_hi && f.eval_f64(lo) != 0.0 {
            hi = lo;
            lo -= step;
            assert!(lo > 0.0);
        }
        for _ in 0..80 {
            let mid = 0.5 * (lo + hi);
            if f.eval_f64(mid).signum() == sign_hi {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        0.5 * (lo + hi)
    }

    #[test]
    fn r_polynomials() {
        assert_eq!(r_poly(&[1]).unwrap(), poly(&[0, -2, -1, 1]));
        assert_eq!(r_poly(&[1, 1]).unwrap(), poly(&[0, 2, 0, -5, -2, 1]));
        assert_eq!(r_poly(&[1, 1, 1]).unwrap(), poly(&[0, -2, 2, 12, 5, -7, -3, 1]));
        assert_eq!(
            r_poly(&[1, 1, 1, 1]).unwrap(),
            poly(&[0, 2, -4, -18, 0, 31, 16, -8, -4, 1])
        );
        assert!(r_poly(&[]).is_err());
        assert!(r_poly(&[1, 0]).is_err());
    }

    #[test]
    fn f_polynomial_factorizations() {
        let t = |c: i64| IntPolynomial::linear_root(c);
        let f3 = &(&t(1) * &t(-1).pow(3)) * &poly(&[1, -4, 1]);
        assert_eq!(f_poly(&comp(&[1, 1, 1])).unwrap(), f3);
        let f4 = &t(-1).pow(4) * &poly(&[1, -7, 13, -7, 1]);
        assert_eq!(f_poly(&comp(&[1, 1, 1, 1])).unwrap(), f4);
        let f5 = &(&(&t(1) * &t(-1).pow(5)) * &poly(&[1, -3, 1])) * &poly(&[1, -5, 1]);
        assert_eq!(f_poly(&comp(&[1, 1, 1, 1, 1])).unwrap(), f5);
        assert!(matches!(f_poly(&comp(&[3])), Err(Error::PeriodicBraid(_))));
    }

    #[test]
    fn two_block_closed_form() {
        for m in 1..=6 {
            for n in 1..=6 {
                // t^n (t^{m+2} - t^{m+1} - 2t) - 2t^{m+1} - t + 1
                let r = &(&IntPolynomial::monomial(1, m + 2) - &IntPolynomial::monomial(1, m + 1))
                    - &IntPolynomial::monomial(2, 1);
                let expected = &(&(&r.shift(n) - &IntPolynomial::monomial(2, m + 1)) - &IntPolynomial::monomial(1, 1))
                    + &IntPolynomial::one();
                assert_eq!(f_poly(&comp(&[m, n])).unwrap(), expected, "(m,n)=({m},{n})");
            }
        }
    }

    #[test]
    fn four_strand_minimum() {
        let f = f_poly(&comp(&[1, 2])).unwrap();
        assert!(f.is_divisible_by(&four_strand_minimal_factor()));
        let report = stretch_factor(&comp(&[1, 2]), 1e-10).unwrap();
        assert!((report.lambda - 2.2966).abs() < 1e-4);
        assert!(report
            .enclosure
            .unwrap()
            .contains(float_largest_root(&four_strand_minimal_factor())));
    }

    #[test]
    fn reports() {
        let r = stretch_factor(&comp(&[2, 2]), 1e-12).unwrap();
        assert_eq!(r.classification, Classification::PseudoAnosov);
        assert!((r.lambda - 2.0153572).abs() < 5e-8);
        assert!(r.radius <= 0.5e-12 + 1e-15);
        let p = stretch_factor(&comp(&[4]), 1e-12).unwrap();
        assert_eq!(p.classification, Classification::Periodic);
        assert_eq!(p.lambda, 1.0);
        let json = serde_json::to_value(&r).unwrap();
        assert_eq!(json["classification"], "pseudoAnosov");
        assert_eq!(json["composition"], serde_json::json!([2, 2]));
    }

    #[test]
    fn classification_of_sign_sequences() {
        let c = |s: &str| classify(&s.parse().unwrap());
        assert_eq!(c("++++"), Classification::Periodic);
        assert_eq!(c("--"), Classification::Periodic);
        assert_eq!(c("+-+"), Classification::PseudoAnosov);
    }

    #[test]
    fn table_values() {
        let table = [
            (3, "(1,1)", 2.6180340, "(1,1)", 2.6180340),
            (4, "(1,2)", 2.2966303, "(1,1,1)", 3.7320508),
            (5, "(2,2)", 2.0153572, "(1,1,1,1)", 4.3902569),
            (6, "(2,3)", 1.8832035, "(1,1,1,1,1)", 4.7912878),
            (7, "(3,3)", 1.7548777, "(1,1,1,1,1,1)", 5.0489173),
            (8, "(3,4)", 1.6815023, "(1,1,1,1,1,1,1)", 5.2227433),
            (9, "(4,4)", 1.6075064, "(1,1,1,1,1,1,1,1)", 5.3449981),
            (10, "(4,5)", 1.5602841, "(1,1,1,1,1,1,1,1,1)", 5.4340078),
        ];
        for (n, argmin, min, argmax, max) in table {
            let s = extremal_survey(n, 1e-10).unwrap();
            assert_eq!(s.min.composition.to_string(), argmin);
            assert_eq!(s.max.composition.to_string(), argmax);
            assert!((s.min.lambda - min).abs() < 1e-7, "N={n}: {}", s.min.lambda);
            assert!((s.max.lambda - max).abs() < 1e-7, "N={n}: {}", s.max.lambda);
            let (mins, maxc) = predicted_extremes(n).unwrap();
            assert_eq!(s.maximizers, vec![maxc]);
            assert_eq!(s.minimizers, mins);
            assert_eq!(s.table.len(), (1 << (n - 2)) - 1);
        }
    }

    #[test]
    fn survey_bounds() {
        assert!(extremal_survey(2, 1e-8).is_err());
        assert!(extremal_survey_capped(9, 1e-8, 8).is_err());
    }

    #[test]
    fn enclosures_agree_with_floating_point_roots() {
        for m in enumerate_compositions(7).unwrap().into_iter().filter(|m| m.len() > 1) {
            let r = stretch_factor(&m, 1e-12).unwrap();
            let float = float_largest_root(r.polynomial.as_ref().unwrap());
            assert!((r.lambda - float).abs() < 1e-9, "{m}: {} vs {float}", r.lambda);
            assert!(r.lambda > 1.0);
        }
    }

    fn tuple() -> impl Strategy<Value = Vec<usize>> {
        prop::collection::vec(1usize..5, 2..6)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn bumping_an_entry_decreases_lambda(m in tuple(), i in 0usize..6) {
            let i = i % m.len();
            let mut bumped = m.clone();
            bumped[i] += 1;
            prop_assert_eq!(
                compare_stretch(&Composition::new(bumped).unwrap(), &Composition::new(m).unwrap()).unwrap(),
                Some(Ordering::Less)
            );
        }

        #[test]
        fn appending_an_entry_increases_lambda(m in tuple(), extra in 1usize..4) {
            let mut longer = m.clone();
            longer.push(extra);
            prop_assert_eq!(
                compare_stretch(&Composition::new(m).unwrap(), &Composition::new(longer).unwrap()).unwrap(),
                Some(Ordering::Less)
            );
        }

        #[test]
        fn reversal_preserves_lambda(m in tuple()) {
            let a = Composition::new(m).unwrap();
            let (x, y) = (stretch_factor(&a, 1e-12).unwrap(), stretch_factor(&a.reversed(), 1e-12).unwrap());
            prop_assert!((x.lambda - y.lambda).abs() <= x.radius + y.radius + 1e-14);
        }
    }
}
