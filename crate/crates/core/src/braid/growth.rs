//! Numerical stretch factor of a braid from word growth in the free group.
//!
//! Generator images are conjugates of generators (loops around one puncture)
//! and never grow once cyclically reduced, so the iteration runs on the
//! two-puncture loops `x_i x_{i+1}`. For a pseudo-Anosov braid their cyclically
//! reduced lengths grow like `λ^k`; for a periodic braid they are eventually
//! periodic in `k`.

use serde::{Deserialize, Serialize};

use crate::braid::artin::{artin_automorphism, FreeAutomorphism};
use crate::braid::{BraidWord, FreeGroupWord};
use crate::error::{Error, Result};

/// Letters allowed across all tracked words before the iteration stops.
pub const DEFAULT_GROWTH_LIMIT: usize = 24_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GrowthEstimate {
    pub rate: f64,
    pub iterations: usize,
    /// Set when the tracked lengths repeated exactly, i.e. they stay bounded.
    pub bounded: bool,
    /// Set when the rate comes from Aitken extrapolation of the ratio sequence
    /// because the length budget ran out before the plain ratios settled.
    pub extrapolated: bool,
}

#[derive(Clone, Copy, Debug)]
pub struct GrowthOptions {
    pub max_iter: usize,
    pub tol: f64,
    /// Accept an extrapolated rate when two consecutive extrapolations agree
    /// to within this.
    pub extrapolation_tol: f64,
    pub length_limit: usize,
}

impl Default for GrowthOptions {
    fn default() -> Self {
        Self {
            max_iter: 80,
            tol: 1e-4,
            extrapolation_tol: 1e-2,
            length_limit: DEFAULT_GROWTH_LIMIT,
        }
    }
}

/// Tracked words must reach this total length before a ratio can count as
/// converged; short words give coincidentally equal ratios.
const MIN_SETTLED_LENGTH: usize = 200;

/// Estimates the growth rate of `b` under iteration of its Artin action.
///
/// The estimate at step `k` is the ratio of total cyclically reduced lengths
/// `S_k / S_{k-1}`. It stops when three consecutive ratios lie within `tol`
/// of each other; two can agree by accident in the transient. If the length budget runs out first, the Aitken extrapolation of the
/// last three ratios is returned when it has itself settled; otherwise the
/// call fails with the last estimate.
pub fn growth_rate_estimate(b: &BraidWord, max_iter: usize, tol: f64) -> Result<GrowthEstimate> {
    growth_rate_with(
        b,
        GrowthOptions {
            max_iter,
            tol,
            ..GrowthOptions::default()
        },
    )
}

pub fn growth_rate_with(b: &BraidWord, options: GrowthOptions) -> Result<GrowthEstimate> {
    if options.max_iter < 2 {
        return Err(Error::invalid("growth estimate needs max_iter >= 2"));
    }
    let n = b.strands();
    let phi = artin_automorphism(b, options.length_limit)?;
    let mut words: Vec<FreeGroupWord> = (1..n)
        .map(|i| FreeGroupWord::from_letters([i as i32, i as i32 + 1]))
        .collect();
    let mut history: Vec<Vec<usize>> = vec![words.iter().map(FreeGroupWord::len).collect()];
    let mut ratios: Vec<f64> = Vec::new();
    let mut extrapolations: Vec<f64> = Vec::new();

    for iteration in 1..=options.max_iter {
        let next = match step(&phi, &words, options.length_limit) {
            Ok(next) => next,
            Err(Error::ImageTooLarge { .. }) => {
                return budget_exhausted(&ratios, &extrapolations, iteration - 1, options)
            }
            Err(e) => return Err(e),
        };
        let lengths: Vec<usize> = next.iter().map(FreeGroupWord::len).collect();
        let total: usize = lengths.iter().sum();
        let old_total: usize = history.last().expect("history starts non-empty").iter().sum();

        if repeats(&history, &lengths) {
            // The lengths cycle, so the mean ratio over a cycle is exactly 1.
            return Ok(GrowthEstimate {
                rate: 1.0,
                iterations: iteration,
                bounded: true,
                extrapolated: false,
            });
        }

        let ratio = total as f64 / old_total.max(1) as f64;
        ratios.push(ratio);
        if let Some(a) = aitken(&ratios) {
            extrapolations.push(a);
        }
        if let [.., first, prev, last] = ratios[..] {
            let span = first.max(prev).max(last) - first.min(prev).min(last);
            if total >= MIN_SETTLED_LENGTH && span < options.tol {
                return Ok(GrowthEstimate {
                    rate: last,
                    iterations: iteration,
                    bounded: false,
                    extrapolated: false,
                });
            }
        }
        history.push(lengths);
        words = next;
    }
    Err(Error::GrowthNonConvergence {
        iterations: options.max_iter,
        estimate: ratios.last().copied().unwrap_or(f64::NAN),
    })
}

/// Fallback once the length budget is spent: the Aitken extrapolation when two
/// consecutive extrapolations agree, else the last ratio when the last
/// [`SETTLE_WINDOW`] ratios agree, both to within `extrapolation_tol`.
fn budget_exhausted(
    ratios: &[f64],
    extrapolations: &[f64],
    iterations: usize,
    options: GrowthOptions,
) -> Result<GrowthEstimate> {
    let settled = |xs: &[f64], window: usize| {
        xs.len() >= window && {
            let tail = &xs[xs.len() - window..];
            let hi = tail.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            let lo = tail.iter().copied().fold(f64::INFINITY, f64::min);
            hi - lo < options.extrapolation_tol
        }
    };
    if settled(extrapolations, 2) {
        return Ok(GrowthEstimate {
            rate: extrapolations[extrapolations.len() - 1],
            iterations,
            bounded: false,
            extrapolated: true,
        });
    }
    if settled(ratios, SETTLE_WINDOW) {
        return Ok(GrowthEstimate {
            rate: ratios[ratios.len() - 1],
            iterations,
            bounded: false,
            extrapolated: false,
        });
    }
    Err(Error::GrowthNonConvergence {
        iterations,
        estimate: ratios.last().copied().unwrap_or(f64::NAN),
    })
}

const SETTLE_WINDOW: usize = 3;

/// Aitken's delta-squared applied to the last three ratios.
fn aitken(ratios: &[f64]) -> Option<f64> {
    let [.., r0, r1, r2] = ratios[..] else {
        return None;
    };
    let d1 = r1 - r0;
    let d2 = r2 - r1;
    let curvature = d2 - d1;
    // Only meaningful for a geometrically shrinking tail.
    if curvature.abs() < f64::EPSILON || d2.abs() >= d1.abs() {
        return None;
    }
    Some(r2 - d2 * d2 / curvature)
}

fn step(phi: &FreeAutomorphism, words: &[FreeGroupWord], limit: usize) -> Result<Vec<FreeGroupWord>> {
    let mut budget = limit;
    words
        .iter()
        .map(|w| {
            let image = phi.apply(w, budget)?.cyclically_reduced();
            budget = budget.saturating_sub(image.len());
            Ok(image)
        })
        .collect()
}

/// True when the new length vector, and the one before it, both match an
/// earlier pair one period back.
fn repeats(history: &[Vec<usize>], lengths: &[usize]) -> bool {
    let k = history.len();
    (1..k).any(|p| history[k - p] == lengths && history[k - 1 - p] == history[k - 1])
}

/// Growth estimate with the default options.
pub fn growth_rate(b: &BraidWord) -> Result<GrowthEstimate> {
    growth_rate_with(b, GrowthOptions::default())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::{alpha, cycle_word};
    use crate::combinatorics::SignSequence;

    fn w(text: &str, n: usize) -> BraidWord {
        BraidWord::parse(text, n).unwrap()
    }

    #[test]
    fn three_strand_golden() {
        let est = growth_rate(&w("s1 s2'", 3)).unwrap();
        let expected = (3.0 + 5f64.sqrt()) / 2.0;
        assert!((est.rate - expected).abs() < 1e-2, "{est:?}");
        assert!(!est.bounded);
    }

    #[test]
    fn minimal_five_strand() {
        let est = growth_rate(&w("s1 s2 s3 s4 s1 s2", 5)).unwrap();
        assert!((est.rate - 1.7220).abs() < 1e-2, "{est:?}");
    }

    #[test]
    fn periodic_braids_have_rate_one() {
        for n in 3..=6 {
            let est = growth_rate(&cycle_word(n)).unwrap();
            assert!(est.bounded);
            assert_eq!(est.rate, 1.0);
        }
        let est = growth_rate(&w("s1 s2 s1", 3)).unwrap();
        assert_eq!(est.rate, 1.0);
    }

    #[test]
    fn mirror_and_inverse_share_the_rate() {
        let omega: SignSequence = "++-+".parse().unwrap();
        let a = alpha(&omega);
        let r = growth_rate(&a).unwrap().rate;
        assert!((growth_rate(&a.mirror()).unwrap().rate - r).abs() < 2e-2);
        assert!((growth_rate(&a.inverse()).unwrap().rate - r).abs() < 2e-2);
    }

    #[test]
    fn rejects_tiny_iteration_budget() {
        assert!(growth_rate_estimate(&w("s1 s2'", 3), 1, 1e-3).is_err());
    }
}
