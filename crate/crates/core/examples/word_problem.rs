//! Braid identities decided through the action on the free group.

use choreo_braids::braid::{
    alpha, artin_action, conjugacy_witness_eo_alpha, cycle_word, e_braid, full_twist, o_braid, permutation, word_equal,
    BraidWord,
};
use choreo_braids::combinatorics::SignSequence;

fn main() -> choreo_braids::Result<()> {
    let braid_relation = (BraidWord::parse("s1 s2 s1", 3)?, BraidWord::parse("s2 s1 s2", 3)?);
    println!(
        "s1 s2 s1 = s2 s1 s2: {}",
        word_equal(&braid_relation.0, &braid_relation.1)?
    );

    for n in 3..=5 {
        let lhs = cycle_word(n).power(n);
        println!(
            "(s1..s{})^{n} = full twist: {}",
            n - 1,
            word_equal(&lhs, &full_twist(n)?)?
        );
    }

    let b = BraidWord::parse("s1 s2'", 3)?;
    let images: Vec<String> = artin_action(&b)?.iter().map(|w| format!("{:?}", w.letters())).collect();
    println!("action of {b} on x1, x2, x3: {}", images.join(", "));
    println!("permutation of {b}: {:?}", permutation(&b).images());

    let omega: SignSequence = "+-+-".parse()?;
    let eo = e_braid(&omega).concat(&o_braid(&omega))?;
    let h = conjugacy_witness_eo_alpha(&omega)?;
    let conjugated = eo.conjugate_by(&h)?;
    println!(
        "e o = {eo}; conjugating by {h} gives alpha = {}: {}",
        alpha(&omega),
        word_equal(&conjugated, &alpha(&omega))?
    );
    Ok(())
}
