//! Sampling estimate of `N_a(P)`.
//!
//! Samples are drawn in fixed-size chunks; chunk `k` uses its own ChaCha8
//! stream `k` under the given seed, so the estimate depends only on the seed
//! and the sample count, never on how rayon schedules the chunks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::{DiameterCounter, DiameterError};
use crate::geom::Polytope;
use crate::scalar::Tolerance;

const CHUNK: usize = 1024;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MonteCarloEstimate {
    pub mean: f64,
    pub stderr: f64,
    /// Accepted interior samples.
    pub samples: usize,
    /// Interior samples within tolerance of a slab boundary; excluded from the mean.
    pub exceptional_hits: usize,
    pub seed: u64,
}

#[derive(Default)]
struct Tally {
    n: usize,
    sum: f64,
    sum_sq: f64,
    exceptional: usize,
}

fn run_chunk(counter: &DiameterCounter, lo: &[f64], hi: &[f64], want: usize, seed: u64, stream: u64, tol: &Tolerance) -> Tally {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    let mut t = Tally::default();
    let mut z = vec![0.0; lo.len()];
    while t.n < want {
        for (k, c) in z.iter_mut().enumerate() {
            *c = rng.gen_range(lo[k]..hi[k]);
        }
        if !counter.inside_body_f64(&z, tol) {
            continue;
        }
        match counter.count_f64(&z, tol) {
            Ok(c) => {
                let c = f64::from(c);
                t.n += 1;
                t.sum += c;
                t.sum_sq += c * c;
            }
            Err(_) => t.exceptional += 1,
        }
    }
    t
}

pub fn na_montecarlo(p: &Polytope, samples: usize, seed: u64, tol: &Tolerance) -> Result<MonteCarloEstimate, DiameterError> {
    let counter = DiameterCounter::new(p)?;
    let (lo, hi) = p.bounding_box();
    let chunks = samples.div_ceil(CHUNK);
    let total = (0..chunks)
        .into_par_iter()
        .map(|k| {
            let want = CHUNK.min(samples - k * CHUNK);
            run_chunk(&counter, &lo, &hi, want, seed, k as u64, tol)
        })
        .collect::<Vec<_>>()
        .into_iter()
        .fold(Tally::default(), |a, b| Tally {
            n: a.n + b.n,
            sum: a.sum + b.sum,
            sum_sq: a.sum_sq + b.sum_sq,
            exceptional: a.exceptional + b.exceptional,
        });
    let n = total.n as f64;
    let mean = total.sum / n;
    let var = if total.n > 1 {
        ((total.sum_sq - n * mean * mean) / (n - 1.0)).max(0.0)
    } else {
        0.0
    };
    Ok(MonteCarloEstimate {
        mean,
        stderr: (var / n).sqrt(),
        samples: total.n,
        exceptional_hits: total.exceptional,
        seed,
    })
}
