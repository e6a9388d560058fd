use serde::{Deserialize, Serialize};

use super::crossings::{default_epsilon, extract_crossings, CrossingEvent};
use crate::braid::{alpha, conjugacy_witness_eo_alpha, e_braid, growth_rate, o_braid, word_equal, BraidWord};
use crate::choreography::LoopPath;
use crate::combinatorics::{theta_inverse, SignSequence};
use crate::error::{Error, Result};
use crate::spectral::{classify, stretch_factor, Classification, RootEnclosure};

/// Allowed gap between the growth estimate of the extracted word and the
/// certified stretch factor.
pub const GROWTH_AGREEMENT_TOL: f64 = 2e-2;

const ENCLOSURE_TOL: f64 = 1e-12;

/// `e_{-ω} · o_{-ω}`.
pub fn expected_primitive(omega: &SignSequence) -> BraidWord {
    let neg = omega.negate();
    e_braid(&neg).concat(&o_braid(&neg)).expect("same strand count")
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct VerificationReport {
    pub bodies: usize,
    pub omega: SignSequence,
    pub epsilon: f64,
    pub events: Vec<CrossingEvent>,
    pub extracted: String,
    pub expected: String,
    /// `α_{-ω}`.
    pub alpha: String,
    /// Conjugator taking `e_{-ω} o_{-ω}` to `α_{-ω}`.
    pub witness: String,
    pub literal_match: bool,
    pub conjugacy_match: bool,
    pub classification: Classification,
    /// Growth of the extracted word; `None` if the estimate failed.
    pub growth_rate: Option<f64>,
    pub growth_bounded: bool,
    /// Certified stretch factor of the primitive braid; 1 when periodic.
    pub lambda: f64,
    pub lambda_enclosure: Option<RootEnclosure>,
    /// `λ^N`, the stretch factor of the full braid type.
    pub full_stretch: f64,
    pub growth_match: bool,
    pub passed: bool,
    /// Human-readable reasons for each failed check.
    pub mismatches: Vec<String>,
}

/// Extracts the primitive braid of `path` and checks it three ways against
/// the prediction for `omega`: literally, up to the known conjugator, and by
/// growth rate.
pub fn verify_braid_type(path: &LoopPath, omega: &SignSequence) -> Result<VerificationReport> {
    if omega.bodies() != path.bodies() {
        return Err(Error::StrandMismatch {
            left: omega.bodies(),
            right: path.bodies(),
        });
    }
    let epsilon = default_epsilon(path);
    let extraction = extract_crossings(path, epsilon)?;
    let word = &extraction.word;
    let neg = omega.negate();
    let expected = expected_primitive(omega);
    let target = alpha(&neg);
    let witness = conjugacy_witness_eo_alpha(&neg)?;

    let mut mismatches = Vec::new();
    let literal_match = *word == expected;
    if !literal_match {
        mismatches.push(format!("extracted {word} differs from expected {expected}"));
    }
    let conjugacy_match = word_equal(&word.conjugate_by(&witness)?, &target)?;
    if !conjugacy_match {
        mismatches.push(format!("conjugating {word} by {witness} does not give {target}"));
    }

    let representative = if omega.is_positive_led() {
        omega.clone()
    } else {
        neg.clone()
    };
    let report = stretch_factor(&theta_inverse(&representative)?, ENCLOSURE_TOL)?;
    let classification = classify(omega);
    let (growth_rate, growth_bounded) = match growth_rate(word) {
        Ok(g) => (Some(g.rate), g.bounded),
        Err(_) => (None, false),
    };
    let growth_match = match (classification, growth_rate) {
        (Classification::Periodic, _) => growth_bounded,
        (Classification::PseudoAnosov, Some(rate)) => {
            !growth_bounded && (rate - report.lambda).abs() <= GROWTH_AGREEMENT_TOL
        }
        (Classification::PseudoAnosov, None) => false,
    };
    if !growth_match {
        let shown = growth_rate.map_or("no estimate".to_string(), |r| format!("{r:.6}"));
        mismatches.push(match classification {
            Classification::Periodic => format!("expected a periodic braid, growth of {word} gives {shown}"),
            Classification::PseudoAnosov => {
                format!("growth of {word} gives {shown}, stretch factor is {:.6}", report.lambda)
            }
        });
    }

    Ok(VerificationReport {
        bodies: omega.bodies(),
        omega: omega.clone(),
        epsilon,
        events: extraction.events,
        extracted: word.to_string(),
        expected: expected.to_string(),
        alpha: target.to_string(),
        witness: witness.to_string(),
        literal_match,
        conjugacy_match,
        classification,
        growth_rate,
        growth_bounded,
        lambda: report.lambda,
        lambda_enclosure: report.enclosure,
        full_stretch: report.lambda.powi(omega.bodies() as i32),
        growth_match,
        passed: literal_match && conjugacy_match && growth_match,
        mismatches,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sigma(s: &str) -> SignSequence {
        s.parse().unwrap()
    }

    #[test]
    fn expected_words_match_figure_captions() {
        assert_eq!(expected_primitive(&sigma("+-")).to_string(), "s2 s1'");
        assert_eq!(expected_primitive(&sigma("+-+")).to_string(), "s2 s1' s3'");
        assert_eq!(expected_primitive(&sigma("+--")).to_string(), "s2 s1' s3");
    }

    #[test]
    fn expected_for_all_positive_is_all_negative() {
        let w = expected_primitive(&sigma("++++"));
        assert_eq!(w.len(), 4);
        assert!(w.letters().iter().all(|l| l.exponent == -1));
    }

    #[test]
    fn expected_is_conjugate_to_alpha_of_negation() {
        for s in ["+-", "+-+", "+--", "+-+-", "++-+-"] {
            let omega = sigma(s);
            let neg = omega.negate();
            let h = conjugacy_witness_eo_alpha(&neg).unwrap();
            let w = expected_primitive(&omega).conjugate_by(&h).unwrap();
            assert!(word_equal(&w, &alpha(&neg)).unwrap(), "{s}");
        }
    }
}
