//! Second-largest eigenvalue modulus of a weight matrix: the factor by
//! which disagreement shrinks per step once transients die out. Smaller
//! means faster consensus.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::WeightMatrix;
use crate::error::{Error, Result};

const FIT_TOL: f64 = 1e-13;
const MAX_ITER: usize = 200_000;

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

/// Estimates the modulus of the second-largest eigenvalue of `w`.
///
/// The consensus direction (the all-ones eigenvector, eigenvalue 1) is
/// removed exactly by working in difference coordinates y_i = x_i -
/// x_n: one step maps y to B y with B_ik = w_ik - w_nk, whose spectrum
/// is the spectrum of W minus one copy of the eigenvalue 1. Power
/// iteration on B then fits a second-order linear recurrence to three
/// consecutive iterates, so conjugate pairs, sign-opposite ties and
/// defective pairs all resolve without complex arithmetic. The result
/// of a uniform-averaging matrix is 0; of the identity, 1.
pub fn convergence_rate(w: &WeightMatrix) -> Result<f64> {
    if !w.is_row_stochastic() {
        return Err(Error::InvalidParameter(
            "convergence rate is defined for row-stochastic matrices".into(),
        ));
    }
    let n = w.n();
    if n <= 1 {
        return Ok(0.0);
    }
    let m = n - 1;
    let last = n - 1;

    // y = B x, evaluated through the sparse rows of W against x padded
    // with a zero in the last coordinate.
    let step = |x: &[f64]| {
        let mut padded = Vec::with_capacity(n);
        padded.extend_from_slice(x);
        padded.push(0.0);
        let base = w.row_apply(last, &padded);
        (0..m).map(|i| w.row_apply(i, &padded) - base).collect::<Vec<f64>>()
    };

    let mut rng = ChaCha8Rng::seed_from_u64(0x00C0_FFEE);
    let mut u: Vec<f64> = (0..m).map(|_| rng.gen::<f64>() - 0.5).collect();
    let un = norm(&u);
    for v in &mut u {
        *v /= un;
    }
    let mut v = step(&u);
    let mut estimate = norm(&v);
    if estimate == 0.0 {
        return Ok(0.0);
    }
    let mut wv = step(&v);

    for _ in 0..MAX_ITER {
        let nv = norm(&v);
        let nw = norm(&wv);
        if nv == 0.0 || nw == 0.0 {
            // A nilpotent tail: everything collapses in finitely many
            // steps, so no geometric rate survives.
            return Ok(0.0);
        }

        // Single dominant eigenvalue: v is already an eigenvector.
        let guu = dot(&u, &u);
        let c = dot(&u, &v) / guu;
        let res1: f64 = v
            .iter()
            .zip(&u)
            .map(|(a, b)| (a - c * b) * (a - c * b))
            .sum::<f64>()
            .sqrt();
        if res1 <= FIT_TOL * nv {
            return Ok(c.abs());
        }

        // Otherwise fit w = a v + b u by least squares and read the
        // modulus off the characteristic roots of t^2 = a t + b.
        let gvv = dot(&v, &v);
        let guv = dot(&u, &v);
        let rv = dot(&v, &wv);
        let ru = dot(&u, &wv);
        let det = gvv * guu - guv * guv;
        if det > f64::MIN_POSITIVE * gvv.max(guu) {
            let a = (rv * guu - ru * guv) / det;
            let b = (ru * gvv - rv * guv) / det;
            let res2: f64 = wv
                .iter()
                .zip(v.iter().zip(&u))
                .map(|(y, (p, q))| {
                    let r = y - a * p - b * q;
                    r * r
                })
                .sum::<f64>()
                .sqrt();
            let disc = a * a + 4.0 * b;
            estimate = if disc >= 0.0 {
                let root = disc.sqrt();
                ((a + root).abs()).max((a - root).abs()) / 2.0
            } else {
                (-b).sqrt()
            };
            if res2 <= FIT_TOL * nw {
                return Ok(estimate);
            }
        }

        // Advance the window, rescaling all three by the same factor so
        // the recurrence coefficients are untouched.
        let scale = 1.0 / nv;
        u = v.iter().map(|x| x * scale).collect();
        v = wv.iter().map(|x| x * scale).collect();
        wv = step(&v);
    }
    Ok(estimate)
}
