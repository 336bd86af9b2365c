//! Directional antenna gain versus off-axis angle.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result, Violation};

/// Main-lobe roll-off in dB at one beamwidth off boresight.
const MAIN_LOBE_DB: f64 = 12.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum PatternVariant {
    /// Quadratic main lobe clamped at a constant side-lobe floor.
    #[default]
    QuadraticFloor,
    /// ITU-R F.1336-5 peak side-lobe pattern for 6-70 GHz with equal
    /// azimuth and elevation beamwidths.
    ItuF1336Peak,
}

impl PatternVariant {
    pub fn name(&self) -> &'static str {
        match self {
            PatternVariant::QuadraticFloor => "quadratic-floor",
            PatternVariant::ItuF1336Peak => "itu-f1336-peak",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AntennaPattern {
    /// Boresight gain, dBi.
    pub g0: f64,
    /// Symmetric 3-dB beamwidth, degrees.
    pub theta3: f64,
    pub variant: PatternVariant,
    /// Side-lobe floor below `g0`, dB.
    pub floor_rel_db: f64,
}

impl Default for AntennaPattern {
    fn default() -> Self {
        Self {
            g0: 30.0,
            theta3: 5.0,
            variant: PatternVariant::QuadraticFloor,
            floor_rel_db: 30.0,
        }
    }
}

impl AntennaPattern {
    /// Gain in dBi at off-axis angle `theta` degrees, `theta` in [0, 180].
    pub fn gain_dbi(&self, theta: f64) -> Result<f64> {
        if !(0.0..=180.0).contains(&theta) {
            return Err(Error::InvalidInput(format!(
                "off-axis angle {theta} deg outside [0, 180]"
            )));
        }
        let x = theta / self.theta3;
        let main = self.g0 - MAIN_LOBE_DB * x * x;
        Ok(match self.variant {
            PatternVariant::QuadraticFloor => main.max(self.g0 - self.floor_rel_db),
            PatternVariant::ItuF1336Peak => {
                if x < 1.0 {
                    main
                } else {
                    self.g0 - MAIN_LOBE_DB - 15.0 * x.log10()
                }
            }
        })
    }

    /// Every invariant violation; empty when the pattern is usable.
    pub fn violations(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        if !self.g0.is_finite() {
            out.push(Violation::new("g0_dbi", "boresight gain must be finite"));
        }
        if !(self.theta3 > 0.0) {
            out.push(Violation::new("theta3_deg", "beamwidth must be positive"));
        } else if self.theta3 > 120.0 {
            out.push(Violation::new(
                "theta3_deg",
                "beamwidth must not exceed 120 deg",
            ));
        }
        if !(self.floor_rel_db > 0.0 && self.floor_rel_db.is_finite()) {
            out.push(Violation::new(
                "floor_rel_db",
                "side-lobe floor must be a positive number of dB below g0",
            ));
        }
        out
    }

    pub fn validate(&self) -> std::result::Result<(), Vec<Violation>> {
        let v = self.violations();
        if v.is_empty() {
            Ok(())
        } else {
            Err(v)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn pattern(variant: PatternVariant) -> AntennaPattern {
        AntennaPattern {
            variant,
            ..AntennaPattern::default()
        }
    }

    #[test]
    fn boresight_is_g0() {
        for v in [PatternVariant::QuadraticFloor, PatternVariant::ItuF1336Peak] {
            assert_eq!(pattern(v).gain_dbi(0.0).unwrap(), 30.0);
        }
    }

    #[test]
    fn one_beamwidth_off_is_12_db_down() {
        for v in [PatternVariant::QuadraticFloor, PatternVariant::ItuF1336Peak] {
            assert!((pattern(v).gain_dbi(5.0).unwrap() - 18.0).abs() < 1e-12);
        }
    }

    #[test]
    fn far_off_axis_hits_the_floor() {
        // 12 * (26.63 / 5)^2 = 340 dB, far past the 30 dB floor
        let g = pattern(PatternVariant::QuadraticFloor)
            .gain_dbi(26.63)
            .unwrap();
        assert_eq!(g, 0.0);
    }

    #[test]
    fn itu_side_lobe_slope() {
        let p = pattern(PatternVariant::ItuF1336Peak);
        // ten beamwidths: 30 - 12 - 15 log10(10)
        assert!((p.gain_dbi(50.0).unwrap() - 3.0).abs() < 1e-12);
    }

    #[test]
    fn angle_out_of_range() {
        let p = AntennaPattern::default();
        assert!(p.gain_dbi(-0.1).is_err());
        assert!(p.gain_dbi(180.5).is_err());
        assert!(p.gain_dbi(f64::NAN).is_err());
        assert!(p.gain_dbi(180.0).is_ok());
    }

    #[test]
    fn validation_messages() {
        assert!(AntennaPattern::default().validate().is_ok());
        let bad = AntennaPattern {
            theta3: 0.0,
            ..AntennaPattern::default()
        };
        let v = bad.validate().unwrap_err();
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].message, "beamwidth must be positive");

        let bad = AntennaPattern {
            floor_rel_db: -5.0,
            ..AntennaPattern::default()
        };
        assert_eq!(bad.validate().unwrap_err()[0].key, "floor_rel_db");

        let all_bad = AntennaPattern {
            g0: f64::INFINITY,
            theta3: 150.0,
            floor_rel_db: 0.0,
            ..AntennaPattern::default()
        };
        assert_eq!(all_bad.violations().len(), 3);
    }

    #[test]
    fn continuous_at_the_floor_knee() {
        let p = AntennaPattern::default();
        // knee where 12 (t/5)^2 = 30
        let knee = 5.0 * (30.0f64 / 12.0).sqrt();
        for eps in [1e-3, 1e-6, 1e-9] {
            let d = (p.gain_dbi(knee + eps).unwrap() - p.gain_dbi(knee - eps).unwrap()).abs();
            assert!(d < 30.0 * eps, "jump {d} at eps {eps}");
        }
        let itu = pattern(PatternVariant::ItuF1336Peak);
        let d = (itu.gain_dbi(5.0 + 1e-9).unwrap() - itu.gain_dbi(5.0 - 1e-9).unwrap()).abs();
        assert!(d < 1e-7);
    }

    proptest! {
        #[test]
        fn fallback_bounds_and_monotonicity(
            g0 in -10.0..50.0f64,
            theta3 in 0.5..120.0f64,
            floor in 1.0..80.0f64,
            a in 0.0..180.0f64,
            b in 0.0..180.0f64,
        ) {
            let p = AntennaPattern { g0, theta3, floor_rel_db: floor, variant: PatternVariant::QuadraticFloor };
            let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
            let (ga, gb) = (p.gain_dbi(lo).unwrap(), p.gain_dbi(hi).unwrap());
            prop_assert!(ga >= gb);
            prop_assert!(ga <= g0 && gb >= g0 - floor);
        }

        #[test]
        fn itu_never_exceeds_g0(theta3 in 0.5..120.0f64, a in 0.0..180.0f64) {
            let p = AntennaPattern { theta3, variant: PatternVariant::ItuF1336Peak, ..AntennaPattern::default() };
            prop_assert!(p.gain_dbi(a).unwrap() <= p.g0);
        }
    }
}
