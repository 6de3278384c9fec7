//! Variation of GIT for the Cox weights of `X(2,2) ⊂ P¹ × P³`.

use coxcones::git::{git_quotients, irr_codim, WeightSystem};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let w = WeightSystem::standard(3, 2, 2);
    let report = git_quotients(&w, None)?;
    for c in report.chambers.iter().chain(&report.walls) {
        println!(
            "{:<3} {:<22} chi = {:<8} B = ({})",
            c.label,
            c.cone.to_string(),
            c.character.to_string(),
            c.irrelevant.join(", ")
        );
    }
    println!("\ncodim of the irrelevant locus of P^m x P^n:");
    for m in 1..=3 {
        let row: Vec<String> = (1..=3).map(|n| irr_codim(m, n).to_string()).collect();
        println!("  m={m}: {}", row.join(" "));
    }
    Ok(())
}
