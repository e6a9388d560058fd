//! Dominant eigenvalue of a nonnegative integer matrix.

use choreo_braids::spectral::perron_root;

fn main() -> choreo_braids::Result<()> {
    let golden = vec![vec![1, 1], vec![1, 0]];
    println!("[[1,1],[1,0]]: {:.12}", perron_root(&golden, 1e-13, 10_000)?);
    let cat_map = vec![vec![2, 1], vec![1, 1]];
    println!("[[2,1],[1,1]]: {:.12}", perron_root(&cat_map, 1e-13, 10_000)?);
    // Imprimitive: period two, spectral radius 1.
    let swap = vec![vec![0, 1], vec![1, 0]];
    println!("[[0,1],[1,0]]: {:.12}", perron_root(&swap, 1e-13, 10_000)?);
    Ok(())
}
