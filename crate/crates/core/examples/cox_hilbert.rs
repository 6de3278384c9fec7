//! Compares the Koszul Hilbert function of the Cox ring with `h⁰(X, O(a, b))`.

use coxcones::cohomology::{h0_x, koszul_hilbert, CoxPresentation};
use coxcones::cones::DivisorClass;
use coxcones::hypersurface::{AmbientProduct, Hypersurface};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let (n, d, e) = (3, 2, 2);
    let p = CoxPresentation::p1_family(n, d, e);
    let names = p.generator_names();
    let rel: Vec<String> = p.relation_degrees.iter().map(ToString::to_string).collect();
    println!(
        "Cox ring of X({d},{e}) in P1 x P{n}: {} generators, relation degrees {}",
        names.len(),
        rel.join(" ")
    );
    println!("  generators {}", names.join(" "));
    let x = Hypersurface::new(AmbientProduct::p1_pn(n), DivisorClass::new(vec![d as i64, e as i64]))?;
    println!("\n  a\\b {}", (0..=5).map(|b| format!("{b:>6}")).collect::<String>());
    for a in -1..=3 {
        let row: String = (0..=5)
            .map(|b| {
                let c = DivisorClass::new(vec![a, b]);
                let k = koszul_hilbert(&p, &c).expect("positively graded");
                let h = h0_x(&x, &c).expect("valid class");
                if h.exact() == Some(k) {
                    format!("{k:>6}")
                } else {
                    format!("{:>6}", format!("{k}!"))
                }
            })
            .collect();
        println!("  {a:>3} {row}");
    }
    println!("(a ! marks a disagreement with h0)");
    Ok(())
}
