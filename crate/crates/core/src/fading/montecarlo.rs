//! Monte Carlo outage estimate used to cross-check the analytic path.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;

use super::RiceanLink;
use crate::error::{Error, Result};

/// Draws per independent random stream.
pub const MC_CHUNK: u64 = 1 << 16;

/// Fraction of `n` Ricean draws that fall below the outage threshold.
///
/// Draws are split into chunks of [`MC_CHUNK`]; chunk `c` uses ChaCha8
/// seeded with `seed` on stream `c`. Chunk counts are integers, so the
/// result does not depend on how chunks are spread over worker threads.
pub fn mc_outage(link: &RiceanLink, n: u64, seed: u64) -> Result<f64> {
    if n == 0 {
        return Err(Error::InvalidInput(
            "sample count must be at least 1".into(),
        ));
    }
    let k = link.k_factor_lin;
    let los = (k / (k + 1.0)).sqrt();
    let sigma = (0.5 / (k + 1.0)).sqrt();
    let limit = link.threshold() / link.mean_snr_lin;

    let chunks = n.div_ceil(MC_CHUNK);
    let hits: u64 = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(c);
            let draws = MC_CHUNK.min(n - c * MC_CHUNK);
            let mut hits = 0u64;
            for _ in 0..draws {
                let re = los + sigma * rng.sample::<f64, _>(StandardNormal);
                let im = sigma * rng.sample::<f64, _>(StandardNormal);
                if re * re + im * im < limit {
                    hits += 1;
                }
            }
            hits
        })
        .sum();
    Ok(hits as f64 / n as f64)
}
