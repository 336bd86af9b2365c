//! Validated simulation description.
//!
//! Inputs the reference setup leaves open (transmit power, antenna boresight
//! gain and beamwidth, K-factor list, ...) are filled with simulator defaults.
//! Every defaulted key is listed in [`Scenario::defaults_used`] and echoed
//! into run metadata.

mod json;

pub use json::{parse_scenario, to_json, ParsedScenario};

use crate::antenna::AntennaPattern;
use crate::coverage::{HapsNode, Network, Node, TerrestrialBs};
use crate::error::{Error, Result, Violation};
use crate::fleet::{MembershipEvent, Platoon, TraversalConfig};
use crate::geometry::{Highway3D, Lane, Point3};
use crate::linkbudget::RadioConfig;

pub const DEFAULT_TX_POWER_DBM: f64 = 40.0;
pub const DEFAULT_K_DB: [f64; 3] = [0.0, 5.0, 10.0];
pub const DEFAULT_TX_DBM: [f64; 5] = [30.0, 35.0, 40.0, 45.0, 50.0];
pub const DEFAULT_SEED: u64 = 1;
/// Lane speed limits, bottom band first.
pub const DEFAULT_LANE_SPEEDS: [f64; 3] = [5.0, 10.0, 15.0];

/// Which nodes a fleet traversal may associate with.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum FleetNetwork {
    #[default]
    Haps,
    Terrestrial,
    All,
}

impl FleetNetwork {
    pub fn name(&self) -> &'static str {
        match self {
            FleetNetwork::Haps => "haps",
            FleetNetwork::Terrestrial => "terrestrial",
            FleetNetwork::All => "all",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "haps" => Some(Self::Haps),
            "terrestrial" => Some(Self::Terrestrial),
            "all" => Some(Self::All),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FleetSpec {
    pub lane: usize,
    pub leader_start: Point3,
    pub speed: f64,
    pub followers: usize,
    pub spacing: f64,
    pub kp: f64,
    pub dt: f64,
    pub duration: f64,
    pub network: FleetNetwork,
    pub events: Vec<MembershipEvent>,
}

impl FleetSpec {
    pub fn platoon(&self, hw: &Highway3D) -> Result<Platoon> {
        let lane = hw.lanes.get(self.lane).ok_or_else(|| {
            Error::Config(format!("lane {} not defined on the highway", self.lane))
        })?;
        let mut p = Platoon::in_formation(
            self.leader_start,
            self.speed,
            self.followers,
            self.spacing,
            self.lane,
            lane.speed_limit,
        );
        p.kp = self.kp;
        Ok(p)
    }

    pub fn traversal(&self, k_db: f64, rate: f64) -> TraversalConfig {
        TraversalConfig {
            k_db,
            rate,
            dt: self.dt,
            duration: self.duration,
            events: self.events.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub haps: HapsNode,
    pub terrestrial: Option<Vec<TerrestrialBs>>,
    pub highway: Highway3D,
    pub k_db_list: Vec<f64>,
    pub tx_dbm_list: Vec<f64>,
    pub rate: f64,
    pub fleet: Option<FleetSpec>,
    pub seed: u64,
    /// Keys filled with simulator defaults, sorted.
    pub defaults_used: Vec<String>,
}

/// Outcome of [`validate_scenario`]: errors are fatal, warnings are not.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ValidationReport {
    pub errors: Vec<Violation>,
    pub warnings: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.errors.is_empty()
    }
}

/// Three equal altitude bands over the highway height.
pub fn default_lanes(origin_z: f64, height: f64) -> Vec<Lane> {
    let band = height / DEFAULT_LANE_SPEEDS.len() as f64;
    DEFAULT_LANE_SPEEDS
        .iter()
        .enumerate()
        .map(|(i, &v)| Lane {
            z_min: origin_z + i as f64 * band,
            z_max: origin_z + (i + 1) as f64 * band,
            speed_limit: v,
        })
        .collect()
}

/// The reference setup: 10 GHz carrier, 10 MHz bandwidth, 24 degC, rate
/// 1 b/s/Hz, a HAPS at 20 km aimed at (10 km, 500 m), and a 100 x 10 x 100 m
/// highway of 10 m voxels centered under the HAPS.
pub fn table1_default() -> Scenario {
    let extent = [100.0, 10.0, 100.0];
    let highway = Highway3D::centered(0.0, 0.0, 0.0, extent, [10.0; 3])
        .with_lanes(default_lanes(0.0, extent[2]));
    let mut defaults_used: Vec<String> = [
        "haps.antenna.floor_rel_db",
        "haps.antenna.g0_dbi",
        "haps.antenna.theta3_deg",
        "haps.antenna.variant",
        "haps.tx_power_dbm",
        "highway.ceiling_m",
        "highway.lanes",
        "highway.origin_m",
        "k_db",
        "radio.noise_figure_db",
        "radio.rx_gain_dbi",
        "seed",
        "tx_dbm",
    ]
    .iter()
    .map(|s| s.to_string())
    .collect();
    defaults_used.sort();
    Scenario {
        haps: HapsNode::new(
            20_000.0,
            RadioConfig::table1().with_tx_power(DEFAULT_TX_POWER_DBM),
            AntennaPattern::default(),
            Point3::new(10_000.0, 500.0, 0.0),
        ),
        terrestrial: None,
        highway,
        k_db_list: DEFAULT_K_DB.to_vec(),
        tx_dbm_list: DEFAULT_TX_DBM.to_vec(),
        rate: 1.0,
        fleet: None,
        seed: DEFAULT_SEED,
        defaults_used,
    }
}

/// Runs every module-level check plus the cross-module ones.
pub fn validate_scenario(s: &Scenario) -> ValidationReport {
    let mut r = ValidationReport::default();
    r.errors
        .extend(s.haps.violations().into_iter().map(|v| file_key(v, "haps")));
    r.warnings
        .extend(s.haps.warnings().into_iter().map(|v| v.nested("haps")));
    r.errors.extend(
        s.highway
            .violations()
            .into_iter()
            .map(|v| v.nested("highway")),
    );
    r.warnings.extend(
        s.highway
            .warnings()
            .into_iter()
            .map(|v| v.nested("highway")),
    );

    if let Some(ts) = &s.terrestrial {
        for (i, t) in ts.iter().enumerate() {
            let key = format!("terrestrial[{i}]");
            r.errors
                .extend(t.violations().into_iter().map(|v| file_key(v, &key)));
        }
    }
    if s.k_db_list.is_empty() {
        r.errors
            .push(Violation::new("k_db", "list must not be empty"));
    }
    if s.k_db_list
        .iter()
        .any(|k| k.is_nan() || *k == f64::INFINITY)
    {
        r.errors
            .push(Violation::new("k_db", "entries must be finite or -inf"));
    }
    if s.tx_dbm_list.is_empty() {
        r.errors
            .push(Violation::new("tx_dbm", "list must not be empty"));
    }
    if s.tx_dbm_list.iter().any(|t| !t.is_finite()) {
        r.errors
            .push(Violation::new("tx_dbm", "entries must be finite"));
    }
    if !(s.rate > 0.0 && s.rate.is_finite()) {
        r.errors
            .push(Violation::new("rate_bps_hz", "rate must be positive"));
    }
    if let Some(f) = &s.fleet {
        r.errors.extend(
            fleet_violations(s, f)
                .into_iter()
                .map(|v| v.nested("fleet")),
        );
    }
    r
}

/// Re-roots a node violation at its key in the scenario file. Radio settings
/// live in the shared top-level `radio` object, except the transmit power,
/// which each node carries itself.
fn file_key(v: Violation, node: &str) -> Violation {
    match v.key.strip_prefix("radio.") {
        Some("tx_power_dbm") => Violation::new(format!("{node}.tx_power_dbm"), v.message),
        Some(_) => v,
        None => v.nested(node),
    }
}

fn fleet_violations(s: &Scenario, f: &FleetSpec) -> Vec<Violation> {
    let mut out = Vec::new();
    if !(f.dt > 0.0 && f.dt.is_finite()) {
        out.push(Violation::new("dt_s", "time step must be positive"));
    } else if !(f.duration >= f.dt && f.duration.is_finite()) {
        out.push(Violation::new(
            "duration_s",
            "duration must be at least one time step",
        ));
    }
    let no_terrestrial = s.terrestrial.as_ref().is_none_or(|t| t.is_empty());
    if f.network == FleetNetwork::Terrestrial && no_terrestrial {
        out.push(Violation::new(
            "network",
            "terrestrial network requested but none configured",
        ));
    }
    match s.highway.lanes.get(f.lane) {
        None => out.push(Violation::new(
            "lane",
            format!("lane {} not defined on the highway", f.lane),
        )),
        Some(lane) => {
            let z = f.leader_start.z;
            if !(lane.z_min..=lane.z_max).contains(&z) {
                out.push(Violation::new(
                    "leader_start_m",
                    format!(
                        "altitude {z} m outside lane band [{}, {}] m",
                        lane.z_min, lane.z_max
                    ),
                ));
            }
            match f.platoon(&s.highway) {
                Ok(p) => {
                    if let Err(e) = p.check() {
                        out.push(Violation::new("", e.to_string()));
                    }
                    if p.vehicles().any(|v| !s.highway.contains(v.position)) {
                        out.push(Violation::new(
                            "leader_start_m",
                            "platoon must start inside the highway",
                        ));
                    }
                }
                Err(e) => out.push(Violation::new("lane", e.to_string())),
            }
        }
    }
    out
}

impl Scenario {
    pub fn validate(&self) -> Result<ValidationReport> {
        let r = validate_scenario(self);
        if r.is_ok() {
            Ok(r)
        } else {
            Err(Error::Validation(r.errors))
        }
    }

    /// Nodes a traversal may associate with, numbered in this order.
    pub fn fleet_network(&self, which: FleetNetwork) -> Vec<Node> {
        let haps = std::iter::once(Node::Haps(self.haps.clone()));
        let terr = self
            .terrestrial
            .iter()
            .flatten()
            .cloned()
            .map(Node::Terrestrial);
        match which {
            FleetNetwork::Haps => haps.collect(),
            FleetNetwork::Terrestrial => terr.collect(),
            FleetNetwork::All => haps.chain(terr).collect(),
        }
    }

    pub fn terrestrial_network(&self) -> Option<Network> {
        let nodes = self.fleet_network(FleetNetwork::Terrestrial);
        (!nodes.is_empty()).then_some(Network(nodes))
    }

    /// Canonical JSON text; two scenarios are the same iff this matches.
    pub fn canonical_json(&self) -> String {
        to_json(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table1_default_is_valid() {
        let s = table1_default();
        let r = validate_scenario(&s);
        assert!(r.is_ok(), "{:?}", r.errors);
        assert!(r.warnings.is_empty());
        assert_eq!(s.haps.radio.carrier_hz, 1.0e10);
        assert_eq!(s.haps.aim_point.x, 10_000.0);
        assert_eq!(s.highway.dims().unwrap().len(), 100);
    }

    #[test]
    fn bad_step_and_empty_lists() {
        let mut s = table1_default();
        s.highway.step[2] = 30.0;
        s.k_db_list.clear();
        let r = validate_scenario(&s);
        let keys: Vec<&str> = r.errors.iter().map(|v| v.key.as_str()).collect();
        assert_eq!(keys, vec!["highway.step_m.z", "k_db"]);
    }

    #[test]
    fn ceiling_and_altitude_warnings() {
        let mut s = table1_default();
        s.highway.origin.z = 40.0;
        s.highway.lanes = default_lanes(40.0, 100.0);
        s.haps.position.z = 18_500.0;
        let r = validate_scenario(&s);
        assert!(r.is_ok(), "{:?}", r.errors);
        assert_eq!(r.warnings.len(), 2);
    }

    #[test]
    fn fleet_checks() {
        let mut s = table1_default();
        s.fleet = Some(FleetSpec {
            lane: 5,
            leader_start: Point3::new(40.0, 0.0, 10.0),
            speed: 5.0,
            followers: 2,
            spacing: 10.0,
            kp: 0.5,
            dt: 1.0,
            duration: 5.0,
            network: FleetNetwork::Terrestrial,
            events: Vec::new(),
        });
        let keys: Vec<String> = validate_scenario(&s)
            .errors
            .into_iter()
            .map(|v| v.key)
            .collect();
        assert_eq!(keys, vec!["fleet.network", "fleet.lane"]);

        let f = s.fleet.as_mut().unwrap();
        f.lane = 0;
        f.network = FleetNetwork::Haps;
        assert!(validate_scenario(&s).is_ok());
        s.fleet.as_mut().unwrap().followers = 20;
        assert!(!validate_scenario(&s).is_ok());
    }
}
