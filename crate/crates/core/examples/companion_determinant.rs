//! Builds the companion matrix of a random `(d, e)` form and checks `det M = f`.

use coxcones::hypersurface::{companion_matrix, matrix_b, Hypersurface};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for (d, e, n) in [(2, 2, 3), (3, 2, 3), (3, 3, 4)] {
        let x = Hypersurface::random(d, e, n, &mut rng, 5, None)?;
        let m = companion_matrix(&x)?;
        let det = m.det()?;
        println!(
            "(d,e,n)=({d},{e},{n}): {}x{} companion matrix, det = f: {}",
            m.rows(),
            m.cols(),
            Some(&det) == x.form()
        );
    }
    let x = Hypersurface::fixture(2, 2, 3)?;
    let b = matrix_b(&x)?;
    println!("\nB for f_i = y_i^2 on P1 x P3:");
    for r in 0..b.rows() {
        let row: Vec<String> = b.row(r).iter().map(ToString::to_string).collect();
        println!("  [{}]", row.join(", "));
    }
    Ok(())
}
