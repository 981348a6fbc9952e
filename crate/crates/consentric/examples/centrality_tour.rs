//! Scores one graph with all four classic measures and compares who
//! comes out on top under each.
//!
//!     cargo run --example centrality_tour

use consentric::centrality::{
    betweenness_centrality, closeness_centrality, degree_centrality, eigenvector_centrality,
    PairCounting,
};
use consentric::compare::rank_correlation;
use consentric::graph::load_edge_list;

fn main() -> consentric::Result<()> {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/data/sample_sparse.txt");
    let g = load_edge_list(path)?;
    println!(
        "ring-with-chords graph: {} nodes, {} edges, connected: {}",
        g.node_count(),
        g.edge_count(),
        g.is_connected()
    );

    let degree = degree_centrality(&g)?;
    let betweenness = betweenness_centrality(&g, PairCounting::Unordered);
    let closeness = closeness_centrality(&g, true);
    let eigenvector = eigenvector_centrality(&g, 1e-12, 100_000)?;

    println!("\nnode  degree  betweenness  closeness  eigenvector");
    for node in [0, 5, 10, 15, 20, 25, 7, 22] {
        println!(
            "{node:>4}  {:>6.3}  {:>11.2}  {:>9.4}  {:>11.4}",
            degree.scores[node],
            betweenness.scores[node],
            closeness.scores[node],
            eigenvector.scores[node]
        );
    }

    for v in [&degree, &betweenness, &closeness, &eigenvector] {
        println!("most central by {}: node {}", v.measure, v.argmax().unwrap());
    }

    // The measures rank nodes differently; Spearman correlation shows
    // how much they still agree on this graph.
    println!("\nrank agreement with degree:");
    for v in [&betweenness, &closeness, &eigenvector] {
        println!("  {:<12} {:+.3}", v.measure.name(), rank_correlation(&degree, v)?);
    }
    Ok(())
}
