//! The cumulative-degree family at increasing depth: plain neighbor
//! sums, walk versus tree neighborhoods, the full-tree total, and
//! layer-discounted scores.
//!
//!     cargo run --example cumulative_degree

use consentric::centrality::{
    cd_vector_all, cumulative_degree, d2cd_vector_all, dcd_vector_all, CumulativeParams,
};
use consentric::graph::{erdos_renyi, star};

fn main() -> consentric::Result<()> {
    // On a star, depth separates hub from leaves immediately: the hub
    // sums the leaf degrees, each leaf sees only the hub.
    let s = star(4);
    println!("star S4, CD per node:");
    for m in s.nodes() {
        println!("  node {m}: {}", cumulative_degree(&s, m)?);
    }

    let g = erdos_renyi(12, 0.3, 11)?;
    println!("\nG(12, 0.3) sample, node 0, walk vs tree depth sums:");
    println!("  n  walk        tree");
    for n in 1..=4 {
        let walk = cd_vector_all(&g, &CumulativeParams::walk(n))?;
        let tree = cd_vector_all(&g, &CumulativeParams::tree(n))?;
        println!("  {n}  {:<10}  {}", walk.scores[0], tree.scores[0]);
    }
    println!("walk sums revisit nodes and blow up; tree sums saturate");
    println!("once every reachable node is counted.");

    let full = dcd_vector_all(&g, &CumulativeParams::tree(1))?;
    println!(
        "\nfull-tree total for node 0: {} (= 2 * component edges - own degree)",
        full.scores[0]
    );

    // Geometric discounts keep the score finite while still crediting
    // deep structure a little.
    let discounted = d2cd_vector_all(
        &g,
        &CumulativeParams::walk(3).with_discounts(vec![1.0, 0.5, 0.25]),
    )?;
    println!("\nlayer-discounted score, coefficients (1, 0.5, 0.25):");
    println!("  node 0: {}", discounted.scores[0]);
    println!("  most central: node {}", discounted.argmax().unwrap());
    Ok(())
}
