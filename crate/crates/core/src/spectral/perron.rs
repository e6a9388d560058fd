//! Dominant eigenvalue of a nonnegative square matrix by power iteration.

use crate::error::{Error, Result};

/// Perron root of an irreducible nonnegative matrix.
///
/// Iterates `A + I`, which is primitive whenever `A` is irreducible, so the
/// iteration converges even for imprimitive `A`; the shift is removed at the end.
pub fn perron_root(matrix: &[Vec<u64>], tol: f64, max_iter: usize) -> Result<f64> {
    let n = matrix.len();
    if n == 0 || matrix.iter().any(|row| row.len() != n) {
        return Err(Error::invalid("Perron root needs a nonempty square matrix"));
    }
    if !(tol.is_finite() && tol > 0.0) {
        return Err(Error::invalid(format!("tolerance must be positive, got {tol}")));
    }
    let shifted: Vec<Vec<f64>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| matrix[i][j] as f64 + if i == j { 1.0 } else { 0.0 })
                .collect()
        })
        .collect();
    let mut v = vec![1.0 / n as f64; n];
    let mut estimate = f64::NAN;
    for _ in 0..max_iter {
        let w: Vec<f64> = shifted
            .iter()
            .map(|row| row.iter().zip(&v).map(|(a, x)| a * x).sum())
            .collect();
        let norm: f64 = w.iter().sum();
        if norm <= 0.0 {
            return Err(Error::invalid("matrix annihilates the positive vector"));
        }
        let next = norm - 1.0;
        v = w.into_iter().map(|x| x / norm).collect();
        if (next - estimate).abs() < tol {
            return Ok(next);
        }
        estimate = next;
    }
    Err(Error::GrowthNonConvergence {
        iterations: max_iter,
        estimate,
    })
}
