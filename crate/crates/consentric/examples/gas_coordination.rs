//! Coordinates the bundled pipeline scenario: consumers anchor their
//! demanded pressures and biased consensus settles the rest of the
//! network between them.
//!
//!     cargo run --example gas_coordination

use consentric::gas::{run_coordination, CoordinationOptions, GasNetwork, Role};

fn main() -> consentric::Result<()> {
    let net = GasNetwork::bundled();
    println!(
        "{}: {} refineries, {} compressors, {} valves, {} consumers",
        net.name(),
        net.nodes_with_role(Role::Refinery).len(),
        net.nodes_with_role(Role::Compressor).len(),
        net.nodes_with_role(Role::Valve).len(),
        net.nodes_with_role(Role::Consumer).len()
    );

    let nominal = run_coordination(&net, &CoordinationOptions::default())?;
    println!(
        "\ndefault anchoring (beta {}), converged after {} iterations:",
        net.beta(),
        nominal.trace.iterations
    );
    println!("consumer  desired  achieved  decision power");
    for (c, d) in &nominal.desired {
        println!(
            "{c:>8}  {d:>7}  {:>8.2}  {:>14.4}",
            nominal.achieved[c], nominal.decision_power[c]
        );
    }
    println!("total gap: {:.1} psi", nominal.gap);
    println!("(moderate anchors let the network agree on one shared pressure)");

    // Hard anchors over the same horizon: demands barely move, at the
    // price of never actually reaching agreement.
    let opts = CoordinationOptions {
        beta: Some(1e6),
        max_iter: nominal.trace.iterations,
        ..Default::default()
    };
    let pinned = run_coordination(&net, &opts)?;
    println!("\nbeta 1e6 over the same horizon:");
    for (c, d) in &pinned.desired {
        println!("{c:>8}  {d:>7}  {:>8.2}", pinned.achieved[c]);
    }
    println!(
        "total gap: {:.2} psi, converged: {}",
        pinned.gap, pinned.trace.converged
    );
    Ok(())
}
