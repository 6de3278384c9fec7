//! The two covering involutions of `X(2,2,3) ⊂ P¹ × P¹ × P²` and the growth of
//! the orbit of the nef cone.

use coxcones::cones::DivisorClass;
use coxcones::cones::{orbit_chambers, RationalCone};
use coxcones::hypersurface::{canonical_class, involution_action, AmbientProduct};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let amb = AmbientProduct::new(vec![1, 1, 2])?;
    let md = DivisorClass::new(vec![2, 2, 3]);
    println!("K_X = {}", canonical_class(&amb, &md));
    let s = involution_action(&amb, &md, 0)?;
    let t = involution_action(&amb, &md, 1)?;
    for (name, g) in [("sigma", &s), ("sigma'", &t)] {
        let images: Vec<String> = (0..3)
            .map(|i| {
                let mut v = vec![0; 3];
                v[i] = 1;
                g.apply(&DivisorClass::new(v)).map(|c| c.to_string())
            })
            .collect::<Result<_, _>>()?;
        println!("{name}*: H1, H2, H3 -> {}", images.join(", "));
    }
    let nef = RationalCone::orthant(3);
    for len in 1..=6 {
        println!(
            "words of length <= {len}: {} chambers",
            orbit_chambers(&[s.clone(), t.clone()], &nef, len)?.len()
        );
    }
    Ok(())
}
