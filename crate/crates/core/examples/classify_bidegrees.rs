//! Prints the Mori dream region of `P¹ × P³` and the cones of a few threefolds.

use coxcones::classify::{classify, mds_bidegree_region, GeneralityLevel, MdsStatus};
use coxcones::cones::DivisorClass;
use coxcones::hypersurface::AmbientProduct;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let n = 3;
    let grid = mds_bidegree_region(n, 6, 5)?;
    println!("Mori dream cells of P1 x P{n} (rows d = 1.., columns e = 1..):");
    for (d, row) in grid.iter().enumerate() {
        let cells: String = row
            .iter()
            .map(|s| if *s == MdsStatus::Yes { " Y" } else { " ." })
            .collect();
        println!("  d={:<2}{cells}", d + 1);
    }
    let amb = AmbientProduct::p1_pn(n);
    for (d, e) in [(1, 2), (2, 2), (3, 2), (4, 2), (5, 1)] {
        let r = classify(&amb, &DivisorClass::new(vec![d, e]), GeneralityLevel::VeryGeneral)?;
        let show = |c: &Option<_>| {
            c.as_ref()
                .map_or("-".to_string(), |c: &coxcones::cones::RationalCone| c.to_string())
        };
        println!("\n({d},{e}): {} [{}]", r.mds_status, r.case_tag);
        println!("  Eff {}  Mov {}  Nef {}", show(&r.eff), show(&r.mov), show(&r.nef));
        for ch in &r.mov_chambers {
            println!("  chamber {} = {}", ch.label, ch.cone);
        }
    }
    Ok(())
}
