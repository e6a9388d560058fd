//! Compositions of N-1, their sign sequences, and the equivalence classes.

use choreo_braids::combinatorics::{
    class_count_formula, enumerate_compositions, equivalence_classes, theta, theta_inverse,
};

fn main() -> choreo_braids::Result<()> {
    let bodies = 5;
    println!("compositions of {} and their sign sequences:", bodies - 1);
    for m in enumerate_compositions(bodies - 1)? {
        let omega = theta(&m)?;
        assert_eq!(theta_inverse(&omega)?, m);
        println!("  {m:<12} {omega}");
    }
    let classes = equivalence_classes(bodies)?;
    println!("{} classes for N = {bodies}:", classes.len());
    for (rep, members) in &classes {
        let members: Vec<String> = members.iter().map(ToString::to_string).collect();
        println!("  {rep}: {}", members.join(" "));
    }
    for n in 3..=12 {
        println!("N = {n:>2}: {} classes", class_count_formula(n));
    }
    Ok(())
}
