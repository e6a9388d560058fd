//! Solve, validate and extract across sign sequences.

use proptest::prelude::*;

use choreo_braids::braid::{is_cyclic, word_equal};
use choreo_braids::choreography::{solve, validate, ChoreographyProblem, Trajectory};
use choreo_braids::combinatorics::SignSequence;
use choreo_braids::extract::{default_epsilon, expected_primitive, extract_braid, extract_crossings};

fn solved(omega: &SignSequence, grid: usize) -> Trajectory {
    let problem = ChoreographyProblem::new(omega.clone(), grid).unwrap();
    let t = solve(&problem, 7).unwrap();
    let report = validate(&t.path, &problem).unwrap();
    assert!(report.passed, "{omega} at M={grid}: {:?}", report.failures());
    t
}

fn check_word_invariants(omega: &SignSequence, t: &Trajectory) {
    let ex = extract_crossings(&t.path, default_epsilon(&t.path)).unwrap();
    let n = omega.bodies();
    assert_eq!(ex.word.len(), n - 1, "{omega}: {}", ex.word);
    assert!(is_cyclic(&ex.word), "{omega}: {}", ex.word);
    let sum: i64 = omega.signs().iter().map(|&s| s as i64).sum();
    assert_eq!(ex.word.writhe(), -sum, "{omega}: {}", ex.word);
    assert_eq!(ex.word, expected_primitive(omega));
    assert!(ex.events.windows(2).all(|w| w[0].time <= w[1].time));
    assert!(ex
        .events
        .iter()
        .all(|e| e.time > ex.epsilon && e.time < 1.0 + ex.epsilon));
}

#[test]
fn every_class_for_five_bodies() {
    for bits in 0..1u64 << 4 {
        let omega = SignSequence::from_bits(5, bits).unwrap();
        if !omega.is_positive_led() {
            continue;
        }
        let t = solved(&omega, 64);
        check_word_invariants(&omega, &t);
    }
}

#[test]
fn word_is_stable_under_refinement() {
    for s in ["+-", "+--", "+-+-"] {
        let omega: SignSequence = s.parse().unwrap();
        let coarse = solved(&omega, 64);
        let fine = solved(&omega, 128);
        let a = extract_braid(&coarse.path, default_epsilon(&coarse.path)).unwrap();
        let b = extract_braid(&fine.path, default_epsilon(&fine.path)).unwrap();
        assert_eq!(a, b, "{s}");
        let c = extract_braid(&coarse.path.refined(), 1.0 / 1024.0).unwrap();
        assert_eq!(a, c, "{s}");
    }
}

#[test]
fn negated_signs_give_mirror_word() {
    let omega: SignSequence = "+-+".parse().unwrap();
    let t = solved(&omega, 64);
    let m = solved(&omega.negate(), 64);
    let w = extract_braid(&t.path, default_epsilon(&t.path)).unwrap();
    let v = extract_braid(&m.path, default_epsilon(&m.path)).unwrap();
    assert!(word_equal(&w.mirror(), &v).unwrap());
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 6, ..ProptestConfig::default() })]

    #[test]
    fn extraction_invariants_hold(bodies in 3usize..=6, bits in any::<u64>()) {
        let omega = SignSequence::from_bits(bodies, bits % (1 << (bodies - 1))).unwrap();
        let t = solved(&omega, 64);
        check_word_invariants(&omega, &t);
    }
}
