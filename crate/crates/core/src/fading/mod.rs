//! Ricean fading outage.
//!
//! The channel power gain `|h|^2` is normalized to unit mean, so the
//! instantaneous SNR is `mean_snr * |h|^2`. An outage occurs when
//! `log2(1 + snr) < rate`, i.e. `snr < 2^rate - 1`.

mod bessel;
mod marcum;
mod montecarlo;

pub use bessel::{scaled_bessel_i0, scaled_bessel_i_seq};
pub use marcum::{marcum_q1, MARCUM_ARG_MAX};
pub use montecarlo::{mc_outage, MC_CHUNK};

use crate::error::{Error, Result};
use crate::linkbudget::db_to_linear;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RiceanLink {
    /// Mean SNR as a linear power ratio.
    pub mean_snr_lin: f64,
    /// Line-of-sight to scattered power ratio, linear.
    pub k_factor_lin: f64,
    /// Normalized rate, b/s/Hz.
    pub rate: f64,
}

impl RiceanLink {
    pub fn new(mean_snr_lin: f64, k_factor_lin: f64, rate: f64) -> Result<Self> {
        let link = Self {
            mean_snr_lin,
            k_factor_lin,
            rate,
        };
        link.check()?;
        Ok(link)
    }

    /// Builds a link from a mean SNR and K factor in dB. `k_db = -inf` is
    /// Rayleigh fading.
    pub fn from_db(mean_snr_db: f64, k_db: f64, rate: f64) -> Result<Self> {
        Self::new(db_to_linear(mean_snr_db), db_to_linear(k_db), rate)
    }

    /// SNR threshold `2^rate - 1`.
    pub fn threshold(&self) -> f64 {
        self.rate.exp2() - 1.0
    }

    fn check(&self) -> Result<()> {
        if !(self.mean_snr_lin > 0.0 && self.mean_snr_lin.is_finite()) {
            return Err(Error::InvalidInput(format!(
                "mean SNR must be positive and finite, got {}",
                self.mean_snr_lin
            )));
        }
        if !(self.k_factor_lin >= 0.0 && self.k_factor_lin.is_finite()) {
            return Err(Error::InvalidInput(format!(
                "K factor must be non-negative and finite, got {}",
                self.k_factor_lin
            )));
        }
        if !(self.rate > 0.0 && self.rate.is_finite()) {
            return Err(Error::InvalidInput(format!(
                "rate must be positive, got {}",
                self.rate
            )));
        }
        Ok(())
    }
}

/// `P(mean_snr |h|^2 < 2^R - 1) = 1 - Q1(sqrt(2K), sqrt(2 (K+1) gamma_th / mean_snr))`.
pub fn ricean_outage(link: &RiceanLink) -> Result<f64> {
    link.check()?;
    let k = link.k_factor_lin;
    let x = link.threshold() / link.mean_snr_lin;
    let a = (2.0 * k).sqrt();
    let b = (2.0 * (k + 1.0) * x).sqrt();
    let (_, outage) = marcum::marcum_q1_pair(a, b);
    Ok(outage.clamp(0.0, 1.0))
}

/// Outage for a mean SNR in dB; a mean SNR of `-inf` (no radiated power
/// toward the receiver) is a certain outage.
pub fn outage_from_db(mean_snr_db: f64, k_db: f64, rate: f64) -> Result<f64> {
    if mean_snr_db == f64::NEG_INFINITY {
        if !(rate > 0.0 && rate.is_finite()) {
            return Err(Error::InvalidInput(format!(
                "rate must be positive, got {rate}"
            )));
        }
        return Ok(1.0);
    }
    ricean_outage(&RiceanLink::from_db(mean_snr_db, k_db, rate)?)
}
