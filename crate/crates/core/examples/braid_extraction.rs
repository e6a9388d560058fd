//! Reads the braid off solved choreographies and checks it against the prediction.

use choreo_braids::choreography::{solve, ChoreographyProblem};
use choreo_braids::combinatorics::SignSequence;
use choreo_braids::extract::verify_braid_type;

fn main() -> choreo_braids::Result<()> {
    for text in ["+-", "+-+", "+--", "+++"] {
        let omega: SignSequence = text.parse()?;
        let trajectory = solve(&ChoreographyProblem::new(omega.clone(), 128)?, 1)?;
        let report = verify_braid_type(&trajectory.path, &omega)?;
        println!("{omega}: extracted {} (expected {})", report.extracted, report.expected);
        for e in &report.events {
            println!("    t = {:.6}  s{}^{}", e.time, e.position, e.sign);
        }
        println!(
            "    {:?}, lambda {:.6}, growth {:?}, full stretch {:.6}, passed {}",
            report.classification, report.lambda, report.growth_rate, report.full_stretch, report.passed
        );
    }
    Ok(())
}
