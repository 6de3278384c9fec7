//! Certifies that the Cox ideal is a complete intersection of the expected dimension.

use coxcones::classify::certify_krull_dimension;
use coxcones::polyalg::Budget;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let budget = Budget::from_env()?;
    for (n, d, e) in [(3, 2, 2), (3, 3, 2), (4, 2, 2), (4, 3, 2)] {
        let c = certify_krull_dimension(n, d, e, &budget)?;
        println!(
            "X({d},{e}) in P1 x P{n}: {} generators, {} relations, codim {}, Krull dim {} (expected {}), complete intersection: {}",
            c.generators, c.relations, c.codim, c.krull_dimension, c.expected, c.is_complete_intersection()
        );
    }
    Ok(())
}
