//! Growth of free group words under iterated braid automorphisms.

use choreo_braids::braid::{beta, growth_rate, BraidWord};
use choreo_braids::combinatorics::Composition;
use choreo_braids::spectral::stretch_factor;

fn main() -> choreo_braids::Result<()> {
    let word = BraidWord::parse("s1 s2 s3 s4 s1 s2", 5)?;
    let g = growth_rate(&word)?;
    println!("{word}: {:.5} after {} iterations", g.rate, g.iterations);

    let periodic = BraidWord::parse("s1 s2 s3", 4)?;
    println!("{periodic}: bounded = {}", growth_rate(&periodic)?.bounded);

    for text in ["1,1", "1,2", "2,2", "1,1,1,1"] {
        let m: Composition = text.parse()?;
        let estimate = growth_rate(&beta(&m)?)?.rate;
        let exact = stretch_factor(&m, 1e-12)?.lambda;
        println!("beta{m}: growth {estimate:.6}, stretch factor {exact:.6}");
    }
    Ok(())
}
