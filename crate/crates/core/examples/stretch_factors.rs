//! Certified stretch factors from the F polynomials and the extremal table.

use choreo_braids::combinatorics::Composition;
use choreo_braids::spectral::{compare_stretch, extremal_survey, f_poly, stretch_factor};

fn main() -> choreo_braids::Result<()> {
    for text in ["1,2", "1,1,1", "2,2", "1,1,1,1"] {
        let m: Composition = text.parse()?;
        let report = stretch_factor(&m, 1e-12)?;
        let e = report.enclosure.expect("pseudo-Anosov");
        println!("{m}: F = {}", f_poly(&m)?);
        println!("      lambda in [{:.13}, {:.13}]", e.lo, e.hi);
    }
    let (a, b): (Composition, Composition) = ("2,2".parse()?, "1,3".parse()?);
    println!("lambda{a} vs lambda{b}: {:?}", compare_stretch(&a, &b)?);

    println!("{:<3}{:<22}{:<10}{:<22}max", "N", "argmin", "min", "argmax");
    for n in 3..=10 {
        let s = extremal_survey(n, 1e-12)?;
        println!(
            "{n:<3}{:<22}{:<10.6}{:<22}{:.6}",
            s.min.composition.to_string(),
            s.min.lambda,
            s.max.composition.to_string(),
            s.max.lambda
        );
    }
    Ok(())
}
