//! Explicit conjugators relating `α_ω`, `e_ω·o_ω` and reversed words.
//!
//! Both return `h` with `h^{-1} · x · h = α_ω`; callers check the identity with
//! [`word_equal`](crate::braid::word_equal).

use crate::braid::{alpha, e_braid, o_braid, BraidWord, Letter};
use crate::combinatorics::SignSequence;
use crate::error::Result;

/// `σ_j^{ω_j} σ_{j+1}^{ω_{j+1}} ⋯ σ_{N-1}^{ω_{N-1}}`.
fn suffix(omega: &SignSequence, j: usize) -> BraidWord {
    let letters = (j..omega.bodies()).map(|i| Letter::new(i, omega.get(i))).collect();
    BraidWord::new(omega.bodies(), letters).expect("indices are in range")
}

/// Intermediate braids of the cascade taking `e_ω o_ω` to `α_ω`.
///
/// The first entry is `e_ω o_ω`, the second `o_ω e_ω`; each later entry is the
/// previous one conjugated by the next suffix block over odd `j`, descending.
/// The final entry equals `α_ω` as a braid.
pub fn eo_alpha_chain(omega: &SignSequence) -> Result<(Vec<BraidWord>, BraidWord)> {
    let eo = e_braid(omega).concat(&o_braid(omega))?;
    let mut chain = vec![eo.clone()];
    let mut witness = e_braid(omega);
    let mut current = eo.conjugate_by(&witness)?;
    chain.push(current.clone());
    let top = omega.bodies() - 1;
    let mut j = if top % 2 == 1 { top } else { top - 1 };
    while j >= 3 {
        let block = suffix(omega, j);
        current = current.conjugate_by(&block)?;
        chain.push(current.clone());
        witness = witness.concat(&block)?;
        j -= 2;
    }
    Ok((chain, witness))
}

/// `h` with `h^{-1} (e_ω o_ω) h = α_ω`.
pub fn conjugacy_witness_eo_alpha(omega: &SignSequence) -> Result<BraidWord> {
    Ok(eo_alpha_chain(omega)?.1)
}

/// `h` with `h^{-1} rev(α_ω) h = α_ω`: the product of suffix blocks starting
/// at `N-1, N-2, …, 2`.
pub fn conjugacy_witness_rev_alpha(omega: &SignSequence) -> Result<BraidWord> {
    let mut h = BraidWord::identity(omega.bodies());
    for j in (2..omega.bodies()).rev() {
        h = h.concat(&suffix(omega, j))?;
    }
    Ok(h)
}

/// Checks `h^{-1} (e_ω o_ω) h = α_ω` with the returned witness.
pub fn verify_eo_alpha(omega: &SignSequence) -> Result<bool> {
    let h = conjugacy_witness_eo_alpha(omega)?;
    let eo = e_braid(omega).concat(&o_braid(omega))?;
    crate::braid::word_equal(&eo.conjugate_by(&h)?, &alpha(omega))
}

/// Checks `h^{-1} rev(α_ω) h = α_ω` with the returned witness.
pub fn verify_rev_alpha(omega: &SignSequence) -> Result<bool> {
    let h = conjugacy_witness_rev_alpha(omega)?;
    let a = alpha(omega);
    crate::braid::word_equal(&a.rev().conjugate_by(&h)?, &a)
}
