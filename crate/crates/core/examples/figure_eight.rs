//! Solves for the figure-eight choreography, validates it and writes an SVG.

use choreo_braids::choreography::{render_svg, solve, validate, ChoreographyProblem};

fn main() -> choreo_braids::Result<()> {
    let problem = ChoreographyProblem::new("+-".parse()?, 256)?;
    let trajectory = solve(&problem, 1)?;
    println!(
        "action {:.10}, gradient norm {:.2e}",
        trajectory.action, trajectory.gradient_norm
    );
    let report = validate(&trajectory.path, &problem)?;
    println!("residual {:.2e} (tol {:.2e})", report.max_residual, report.residual_tol);
    println!(
        "energy spread {:.2e} (tol {:.2e})",
        report.energy_spread, report.energy_tol
    );
    println!("min separation {:.4}, passed {}", report.min_separation, report.passed);
    let out = std::env::temp_dir().join("figure-eight.svg");
    std::fs::write(&out, render_svg(&trajectory.path))?;
    println!("wrote {}", out.display());
    Ok(())
}
