//! Fault injection on the pipeline: a pipe break that reroutes, and a
//! valve closure that strands a consumer.
//!
//!     cargo run --example fault_recovery

use consentric::gas::{run_coordination, CoordinationOptions, GasNetwork};
use consentric::Error;

fn main() -> consentric::Result<()> {
    let net = GasNetwork::bundled();
    let opts = CoordinationOptions::default();

    let nominal = run_coordination(&net, &opts)?;
    println!("nominal run: {} iterations, gap {:.1} psi", nominal.trace.iterations, nominal.gap);

    // Breaking a backbone pipe leaves an alternate route, so the run
    // still converges, just more slowly through the detour.
    let broken = net.inject_fault(&"pipe:6-7=break".parse()?)?;
    let rerun = run_coordination(&broken, &opts)?;
    println!(
        "after pipe 6-7 breaks: {} iterations ({:.2}x nominal), gap {:.1} psi",
        rerun.trace.iterations,
        rerun.trace.iterations as f64 / nominal.trace.iterations as f64,
        rerun.gap
    );

    // A leak keeps the topology but derates the pipe's capacity.
    let leaking = net.inject_fault(&"pipe:6-7=leak".parse()?)?;
    let eff = leaking.effective_graph();
    println!(
        "after pipe 6-7 leaks: capacity {} -> {}",
        net.graph().edge_weight(6, 7).unwrap(),
        eff.edge_weight(6, 7).unwrap()
    );

    // Closing the valve on consumer 13's only spur cuts it off; the
    // coordination refuses to run rather than quietly dropping demand.
    let cut = net.inject_fault(&"valve:9=close".parse()?)?;
    match run_coordination(&cut, &opts) {
        Err(Error::Disconnected(msg)) => println!("after valve 9 closes: refused ({msg})"),
        other => panic!("expected a disconnection error, got {other:?}"),
    }

    // The original network value is untouched by all of the above.
    let again = run_coordination(&net, &opts)?;
    assert_eq!(nominal.achieved, again.achieved);
    println!("original network unchanged; nominal run reproduces exactly");
    Ok(())
}
