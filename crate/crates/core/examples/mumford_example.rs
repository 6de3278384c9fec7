//! Checks the vanishing conditions that make `H⁰(D) ⊗ H⁰(L) → H⁰(D + L)` surjective.

use coxcones::cohomology::{h_x, vanishing_check_mumford};
use coxcones::cones::DivisorClass;
use coxcones::hypersurface::{AmbientProduct, Hypersurface};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let x = Hypersurface::new(AmbientProduct::p1_pn(3), DivisorClass::new(vec![2, 2]))?;
    let dc = |a, b| DivisorClass::new(vec![a, b]);
    for (d, l) in [(dc(0, 2), dc(0, 1)), (dc(2, 1), dc(1, 0)), (dc(-2, -3), dc(0, 1))] {
        println!("D = {d}, L = {l}: {:?}", vanishing_check_mumford(&x, &d, &l)?);
    }
    println!("\nh^i(X, O(a, b)) for i = 0..3:");
    for (a, b) in [(0, 0), (-1, 2), (-3, 1), (-4, -2)] {
        let c = dc(a, b);
        let hs: Vec<String> = (0..=3)
            .map(|i| h_x(&x, &c, i).map(|v| v.to_string()))
            .collect::<Result<_, _>>()?;
        println!("  {c}: {}", hs.join(" "));
    }
    Ok(())
}
