//! How fast depth-n cumulative scores approach eigenvector centrality:
//! each extra layer is one power-iteration step, so the normalized
//! error decays with the spectral gap.
//!
//!     cargo run --example eigenvector_approximation

use consentric::compare::{convergence_profile, ProfileOptions};
use consentric::graph::{bucky, erdos_renyi};

fn main() -> consentric::Result<()> {
    let g = erdos_renyi(30, 0.15, 42)?;
    let profile = convergence_profile(&g, "er:30:0.15 seed 42", 200, &ProfileOptions::default())?;

    println!("lazy walk scores vs eigenvector centrality, max-norm error:");
    for n in [1, 2, 5, 10, 20, 50, 100, 200] {
        println!("  depth {n:>3}: {:.3e}", profile.error_at(n).unwrap());
    }
    for (threshold, first) in &profile.first_n_below {
        match first {
            Some(n) => println!("error first dips under {threshold} at depth {n}"),
            None => println!("error never reaches {threshold} within depth 200"),
        }
    }

    // On a vertex-transitive graph every depth already matches: scores
    // are uniform, exactly like the eigenvector.
    let flat = convergence_profile(&bucky(), "bucky", 5, &ProfileOptions::default())?;
    println!(
        "\nbucky ball, max error over depths 1..=5: {:.1e} (uniform from the start)",
        flat.errors.iter().cloned().fold(0.0f64, f64::max)
    );
    Ok(())
}
