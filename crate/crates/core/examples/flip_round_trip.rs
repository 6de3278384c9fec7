//! Samples points of `X` over `F_p`, flips them and maps them back.

use coxcones::hypersurface::{flip_backward, flip_forward, flip_model, on_flipped_side, sample_point, Hypersurface};
use coxcones::polyalg::{Modulus, DEFAULT_PRIME};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let x = Hypersurface::fixture(2, 2, 3)?;
    let model = flip_model(&x)?;
    println!("X in {} flips to X+ in {}", model.source, model.target);
    let m = Modulus::new(DEFAULT_PRIME as u64)?;
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let mut ok = 0;
    for i in 0..20 {
        let p = sample_point(&x, &mut rng, m, 1000)?;
        let q = flip_forward(&x, &p)?;
        let back = flip_backward(&x, &q)?;
        if i < 5 {
            println!("  {p} -> {q} (on X+: {})", on_flipped_side(&x, &q)?);
        }
        ok += usize::from(back == p);
    }
    println!("{ok}/20 points return under the inverse flip");
    Ok(())
}
