//! Free-space path loss, thermal noise and mean SNR.

use crate::error::{ensure_finite, Error, Result, Violation};

pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;
pub const BOLTZMANN: f64 = 1.380_649e-23;
pub const ZERO_CELSIUS_K: f64 = 273.15;

/// Radio parameters of one transmitter and the fleet receiver it serves.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadioConfig {
    pub carrier_hz: f64,
    pub bandwidth_hz: f64,
    pub temperature_k: f64,
    pub tx_power_dbm: f64,
    pub rx_gain_dbi: f64,
    pub noise_figure_db: f64,
}

impl RadioConfig {
    /// 10 GHz carrier, 10 MHz bandwidth, 24 degC, with a 40 dBm transmitter.
    pub fn table1() -> Self {
        Self {
            carrier_hz: 10e9,
            bandwidth_hz: 10e6,
            temperature_k: 24.0 + ZERO_CELSIUS_K,
            tx_power_dbm: 40.0,
            rx_gain_dbi: 0.0,
            noise_figure_db: 0.0,
        }
    }

    pub fn with_tx_power(mut self, dbm: f64) -> Self {
        self.tx_power_dbm = dbm;
        self
    }

    pub fn violations(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        if !(self.carrier_hz > 0.0 && self.carrier_hz.is_finite()) {
            out.push(Violation::new(
                "carrier_ghz",
                "carrier frequency must be positive",
            ));
        }
        if !(self.bandwidth_hz > 0.0 && self.bandwidth_hz.is_finite()) {
            out.push(Violation::new(
                "bandwidth_mhz",
                "bandwidth must be positive",
            ));
        }
        if !(self.temperature_k > 0.0 && self.temperature_k.is_finite()) {
            out.push(Violation::new(
                "temperature_c",
                "temperature must be above absolute zero",
            ));
        }
        for (key, v) in [
            ("tx_power_dbm", self.tx_power_dbm),
            ("rx_gain_dbi", self.rx_gain_dbi),
            ("noise_figure_db", self.noise_figure_db),
        ] {
            if !v.is_finite() {
                out.push(Violation::new(key, "must be finite"));
            }
        }
        out
    }

    pub fn noise_dbm(&self) -> Result<f64> {
        noise_dbm(self.bandwidth_hz, self.temperature_k, self.noise_figure_db)
    }
}

/// `20 log10(4 pi d f / c)`.
pub fn fspl_db(distance_m: f64, freq_hz: f64) -> Result<f64> {
    if !(distance_m > 0.0 && distance_m.is_finite()) {
        return Err(Error::InvalidInput(format!(
            "path length must be positive, got {distance_m}"
        )));
    }
    if !(freq_hz > 0.0 && freq_hz.is_finite()) {
        return Err(Error::InvalidInput(format!(
            "frequency must be positive, got {freq_hz}"
        )));
    }
    Ok(20.0 * (4.0 * std::f64::consts::PI * distance_m * freq_hz / SPEED_OF_LIGHT).log10())
}

/// Thermal noise power `kTB` in dBm plus the receiver noise figure.
pub fn noise_dbm(bandwidth_hz: f64, temperature_k: f64, noise_figure_db: f64) -> Result<f64> {
    if !(bandwidth_hz > 0.0 && bandwidth_hz.is_finite()) {
        return Err(Error::InvalidInput(format!(
            "bandwidth must be positive, got {bandwidth_hz}"
        )));
    }
    if !(temperature_k > 0.0 && temperature_k.is_finite()) {
        return Err(Error::InvalidInput(format!(
            "temperature must be positive, got {temperature_k}"
        )));
    }
    ensure_finite("noise figure", noise_figure_db)?;
    Ok(10.0 * (BOLTZMANN * temperature_k * bandwidth_hz / 1e-3).log10() + noise_figure_db)
}

pub fn mean_snr_db(cfg: &RadioConfig, tx_gain_dbi: f64, distance_m: f64) -> Result<f64> {
    ensure_finite("tx power", cfg.tx_power_dbm)?;
    ensure_finite("rx gain", cfg.rx_gain_dbi)?;
    ensure_finite("tx gain", tx_gain_dbi)?;
    let path = fspl_db(distance_m, cfg.carrier_hz)?;
    let noise = cfg.noise_dbm()?;
    Ok(cfg.tx_power_dbm + tx_gain_dbi + cfg.rx_gain_dbi - path - noise)
}

pub fn db_to_linear(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

pub fn linear_to_db(lin: f64) -> f64 {
    10.0 * lin.log10()
}
