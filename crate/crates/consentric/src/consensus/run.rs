//! The synchronous consensus iteration and its periodically gossiping
//! variant.

use super::{ActivationSchedule, ConsensusTrace, WeightMatrix};
use crate::error::{Error, Result};

fn spread(x: &[f64]) -> f64 {
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for &v in x {
        lo = lo.min(v);
        hi = hi.max(v);
    }
    if x.is_empty() {
        0.0
    } else {
        hi - lo
    }
}

fn check_state(x: &[f64], step: usize) -> Result<()> {
    if x.iter().any(|v| !v.is_finite()) {
        return Err(Error::Numerical {
            step,
            msg: "state vector contains a non-finite value".into(),
        });
    }
    Ok(())
}

fn validate(w: &WeightMatrix, x0: &[f64], tol: f64) -> Result<()> {
    if x0.len() != w.n() {
        return Err(Error::DimensionMismatch { expected: w.n(), got: x0.len() });
    }
    if !(tol > 0.0) {
        return Err(Error::InvalidParameter(format!("tolerance must be positive, got {tol}")));
    }
    check_state(x0, 0)
}

/// Iterates `x <- W x` until the disagreement (max minus min of the
/// state) drops below `tol` or `max_iter` steps have run. The trace
/// records every state including the input; `converged` reports which
/// exit was taken. A uniform input converges at step zero.
pub fn run_consensus(
    w: &WeightMatrix,
    x0: &[f64],
    tol: f64,
    max_iter: usize,
) -> Result<ConsensusTrace> {
    validate(w, x0, tol)?;
    let initial_average = x0.iter().sum::<f64>() / x0.len().max(1) as f64;
    let mut states = vec![x0.to_vec()];
    let mut disagreements = vec![spread(x0)];
    let mut converged = disagreements[0] < tol;
    for step in 1..=max_iter {
        if converged {
            break;
        }
        let x = w.apply(states.last().unwrap());
        check_state(&x, step)?;
        let d = spread(&x);
        states.push(x);
        disagreements.push(d);
        converged = d < tol;
    }
    Ok(ConsensusTrace {
        iterations: states.len() - 1,
        states,
        disagreements,
        converged,
        initial_average,
    })
}

/// Derives a gossip timetable from weights: heavier edges fire more
/// often, with period max(1, round(base_period / w_ij)) per directed
/// edge. Zero-weight pairs carry no entry.
pub fn schedule_from_weights(w: &WeightMatrix, base_period: f64) -> Result<ActivationSchedule> {
    if !(base_period > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "base period must be positive, got {base_period}"
        )));
    }
    let mut periods = std::collections::BTreeMap::new();
    let mut horizon = 1;
    for i in 0..w.n() {
        for &(j, weight) in w.row(i) {
            let period = (base_period / weight).round().max(1.0) as u64;
            horizon = horizon.max(period);
            periods.insert((i, j), period);
        }
    }
    Ok(ActivationSchedule { periods, horizon })
}

/// The consensus iteration where edge (i, j) participates only in
/// rounds that are multiples of its period. In every round each row is
/// re-balanced: weights of silent edges fold into the diagonal, so the
/// per-round matrix stays row-stochastic. A schedule of all ones
/// reproduces [`run_consensus`] bit for bit.
pub fn run_scheduled_consensus(
    w: &WeightMatrix,
    sched: &ActivationSchedule,
    x0: &[f64],
    tol: f64,
    max_iter: usize,
) -> Result<ConsensusTrace> {
    validate(w, x0, tol)?;
    for i in 0..w.n() {
        for &(j, _) in w.row(i) {
            if !sched.periods.contains_key(&(i, j)) {
                return Err(Error::InvalidParameter(format!(
                    "schedule has no period for edge ({i}, {j})"
                )));
            }
        }
    }
    let initial_average = x0.iter().sum::<f64>() / x0.len().max(1) as f64;
    let mut states = vec![x0.to_vec()];
    let mut disagreements = vec![spread(x0)];
    let mut converged = disagreements[0] < tol;
    for step in 1..=max_iter {
        if converged {
            break;
        }
        let prev = states.last().unwrap();
        let mut x = vec![0.0; w.n()];
        for i in 0..w.n() {
            // Mirror WeightMatrix::row_apply exactly: self term first,
            // then active neighbors in column order.
            let mut diag = w.diag(i);
            for &(j, weight) in w.row(i) {
                if !sched.is_active(i, j, step as u64) {
                    diag += weight;
                }
            }
            let mut acc = diag * prev[i];
            for &(j, weight) in w.row(i) {
                if sched.is_active(i, j, step as u64) {
                    acc += weight * prev[j];
                }
            }
            x[i] = acc;
        }
        check_state(&x, step)?;
        let d = spread(&x);
        states.push(x);
        disagreements.push(d);
        converged = d < tol;
    }
    Ok(ConsensusTrace {
        iterations: states.len() - 1,
        states,
        disagreements,
        converged,
        initial_average,
    })
}
