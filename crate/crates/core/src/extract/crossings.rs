use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::braid::{BraidWord, Letter};
use crate::choreography::LoopPath;
use crate::error::{Error, Result};

/// Bisection stops once the bracket is narrower than this.
pub const TIME_TOL: f64 = 1e-10;

/// Crossings closer in time than this are treated as simultaneous.
pub const SIMULTANEITY_THRESHOLD: f64 = 1e-7;

/// Relative gap in imaginary part below which over and under cannot be told
/// apart; also the relative gap that separates a third strand from a crossing.
pub const IM_GAP_THRESHOLD: f64 = 1e-8;

/// Subdivisions of each grid step in the sign-change scan.
const SCAN_SUBDIVISIONS: usize = 4;

/// A double point of the projection to the real axis.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CrossingEvent {
    pub time: f64,
    /// 1-based rank of the left strand among the x-sorted strands; the letter
    /// acts on positions `(position, position + 1)`.
    pub position: usize,
    pub sign: i8,
    /// Strand on the left just before the crossing.
    pub left_strand: usize,
    pub right_strand: usize,
}

impl CrossingEvent {
    pub fn letter(&self) -> Letter {
        Letter::new(self.position, self.sign)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Extraction {
    pub epsilon: f64,
    /// Strand indices sorted by real part at `t = ε`.
    pub base_order: Vec<usize>,
    /// Sorted by time, then by position.
    pub events: Vec<CrossingEvent>,
    pub word: BraidWord,
}

/// `1 / (8M)`.
pub fn default_epsilon(path: &LoopPath) -> f64 {
    1.0 / (8.0 * path.samples_per_unit() as f64)
}

/// The braid word of the projection of `z_0, …, z_{N-1}` over `(ε, 1 + ε)`.
pub fn extract_braid(path: &LoopPath, epsilon: f64) -> Result<BraidWord> {
    Ok(extract_crossings(path, epsilon)?.word)
}

/// Locates every crossing of real parts over `(ε, 1 + ε)` and builds the word.
///
/// Letters are read from the latest crossing to the earliest. Simultaneous
/// crossings must commute and are written in ascending position order.
pub fn extract_crossings(path: &LoopPath, epsilon: f64) -> Result<Extraction> {
    let bodies = path.bodies();
    if !(epsilon > 0.0 && epsilon < 0.5) {
        return Err(Error::invalid(format!("epsilon must lie in (0, 1/2), got {epsilon}")));
    }
    let scale = path.samples().iter().map(|z| z.norm()).fold(0.0, f64::max);
    if scale == 0.0 {
        return Err(Error::invalid("trajectory is identically zero"));
    }

    let base_x: Vec<f64> = (0..bodies).map(|j| path.eval_strand(j, epsilon).re).collect();
    let mut base_order: Vec<usize> = (0..bodies).collect();
    base_order.sort_by(|&a, &b| base_x[a].total_cmp(&base_x[b]));
    if let Some(w) = base_order
        .windows(2)
        .find(|w| base_x[w[1]] - base_x[w[0]] <= IM_GAP_THRESHOLD * scale)
    {
        return Err(Error::AmbiguousCrossing {
            time: epsilon,
            reason: format!("strands {} and {} share a real part at the base point", w[0], w[1]),
        });
    }

    let steps = SCAN_SUBDIVISIONS * path.samples_per_unit();
    let dt = 1.0 / steps as f64;
    let pairs: Vec<(usize, usize)> = (0..bodies).flat_map(|i| (i + 1..bodies).map(move |j| (i, j))).collect();
    let gap = |i: usize, j: usize, t: f64| path.eval_strand(i, t).re - path.eval_strand(j, t).re;

    let roots: Vec<(f64, usize, usize)> = pairs
        .par_iter()
        .flat_map_iter(|&(i, j)| {
            let mut found = Vec::new();
            let mut a = epsilon;
            let mut fa = gap(i, j, a);
            for k in 1..=steps {
                let b = epsilon + k as f64 * dt;
                let fb = gap(i, j, b);
                if fb == 0.0 || fa.signum() != fb.signum() {
                    let t = bisect(|t| gap(i, j, t), a, b, fa);
                    // Left strand before the crossing has the smaller real part.
                    let (left, right) = if fa < 0.0 { (i, j) } else { (j, i) };
                    found.push((t, left, right));
                    if fb == 0.0 {
                        // Step past an exact grid root so it is not seen twice.
                        fa = gap(i, j, b + 0.5 * dt);
                        a = b;
                        continue;
                    }
                }
                a = b;
                fa = fb;
            }
            found
        })
        .collect();

    let mut events = Vec::with_capacity(roots.len());
    for (time, left, right) in roots {
        events.push(classify_crossing(path, time, left, right, scale)?);
    }
    events.sort_by(|a, b| a.time.total_cmp(&b.time).then(a.position.cmp(&b.position)));

    let groups = simultaneous_groups(&events);
    for group in &groups {
        for w in group.windows(2) {
            if w[1].position < w[0].position + 2 {
                return Err(Error::AmbiguousCrossing {
                    time: w[0].time,
                    reason: format!(
                        "simultaneous crossings at positions {} and {} do not commute",
                        w[0].position, w[1].position
                    ),
                });
            }
        }
    }
    let letters = groups
        .iter()
        .rev()
        .flat_map(|g| g.iter().map(CrossingEvent::letter))
        .collect();
    let word = BraidWord::new(bodies, letters)?;
    Ok(Extraction {
        epsilon,
        base_order,
        events,
        word,
    })
}

fn bisect(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64, mut fa: f64) -> f64 {
    while b - a > TIME_TOL {
        let m = 0.5 * (a + b);
        let fm = f(m);
        if fm == 0.0 {
            return m;
        }
        if fm.signum() == fa.signum() {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    0.5 * (a + b)
}

fn classify_crossing(path: &LoopPath, time: f64, left: usize, right: usize, scale: f64) -> Result<CrossingEvent> {
    let zl = path.eval_strand(left, time);
    let zr = path.eval_strand(right, time);
    let x = 0.5 * (zl.re + zr.re);
    let threshold = IM_GAP_THRESHOLD * scale;
    if (zl.im - zr.im).abs() <= threshold {
        return Err(Error::AmbiguousCrossing {
            time,
            reason: format!("strands {left} and {right} meet in the plane"),
        });
    }
    let mut below = 0;
    for j in (0..path.bodies()).filter(|&j| j != left && j != right) {
        let xj = path.eval_strand(j, time).re;
        if (xj - x).abs() <= threshold {
            return Err(Error::AmbiguousCrossing {
                time,
                reason: format!("strand {j} shares the real part of crossing strands {left} and {right}"),
            });
        }
        if xj < x {
            below += 1;
        }
    }
    let sign = if zl.im > zr.im { -1 } else { 1 };
    Ok(CrossingEvent {
        time,
        position: below + 1,
        sign,
        left_strand: left,
        right_strand: right,
    })
}

fn simultaneous_groups(events: &[CrossingEvent]) -> Vec<Vec<CrossingEvent>> {
    let mut groups: Vec<Vec<CrossingEvent>> = Vec::new();
    for e in events {
        match groups.last_mut() {
            Some(g) if e.time - g[0].time <= SIMULTANEITY_THRESHOLD => g.push(*e),
            _ => groups.push(vec![*e]),
        }
    }
    for g in &mut groups {
        g.sort_by_key(|e| e.position);
    }
    groups
}
