//! JSON scenario files.
//!
//! Files use human units (GHz, MHz, degC, dB, dBm); conversion to SI happens
//! here and nowhere else. Unknown keys produce warnings so older binaries can
//! read newer files.

use serde_json::{json, Map, Value};

use super::{
    default_lanes, FleetNetwork, FleetSpec, Scenario, DEFAULT_K_DB, DEFAULT_SEED, DEFAULT_TX_DBM,
    DEFAULT_TX_POWER_DBM,
};
use crate::antenna::{AntennaPattern, PatternVariant};
use crate::coverage::{HapsNode, Sector, TerrestrialBs};
use crate::error::{Error, Result, Violation};
use crate::fleet::{MembershipChange, MembershipEvent, DEFAULT_KP};
use crate::geometry::{Highway3D, Lane, Point3, DEFAULT_CEILING_M};
use crate::linkbudget::{RadioConfig, ZERO_CELSIUS_K};

#[derive(Debug, Clone, PartialEq)]
pub struct ParsedScenario {
    pub scenario: Scenario,
    pub warnings: Vec<Violation>,
}

/// Parses and validates a scenario document. A blank document is treated as
/// `{}`.
pub fn parse_scenario(text: &str) -> Result<ParsedScenario> {
    let value: Value = if text.trim().is_empty() {
        Value::Object(Map::new())
    } else {
        serde_json::from_str(text).map_err(|e| Error::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?
    };
    let mut r = Reader::default();
    let scenario = r.scenario(&value);
    if !r.errors.is_empty() {
        return Err(Error::Validation(r.errors));
    }
    let scenario = scenario.expect("no errors implies a scenario");
    let report = super::validate_scenario(&scenario);
    if !report.is_ok() {
        return Err(Error::Validation(report.errors));
    }
    let mut warnings = r.warnings;
    warnings.extend(report.warnings);
    Ok(ParsedScenario { scenario, warnings })
}

#[derive(Default)]
struct Reader {
    errors: Vec<Violation>,
    warnings: Vec<Violation>,
    defaults: Vec<String>,
}

fn join(path: &str, key: &str) -> String {
    if path.is_empty() {
        key.to_string()
    } else {
        format!("{path}.{key}")
    }
}

impl Reader {
    fn object<'a>(
        &mut self,
        v: &'a Value,
        path: &str,
        known: &[&str],
    ) -> Option<&'a Map<String, Value>> {
        match v.as_object() {
            None if v.is_null() => None,
            Some(m) => {
                for k in m.keys() {
                    if !known.contains(&k.as_str()) {
                        self.warnings
                            .push(Violation::new(join(path, k), "unknown key ignored"));
                    }
                }
                Some(m)
            }
            None => {
                self.errors.push(Violation::new(path, "expected an object"));
                None
            }
        }
    }

    fn number(&mut self, v: &Value, path: &str) -> Option<f64> {
        match v {
            Value::Number(n) => n.as_f64(),
            Value::String(s) if s == "-inf" => Some(f64::NEG_INFINITY),
            _ => {
                self.errors.push(Violation::new(path, "expected a number"));
                None
            }
        }
    }

    fn req_f64(&mut self, m: Option<&Map<String, Value>>, path: &str, key: &str) -> Option<f64> {
        let p = join(path, key);
        match m.and_then(|m| m.get(key)) {
            Some(v) => self.number(v, &p),
            None => {
                self.errors.push(Violation::new(p, "required key missing"));
                None
            }
        }
    }

    /// Optional key; a missing value is recorded as a simulator default.
    fn opt<T>(
        &mut self,
        m: Option<&Map<String, Value>>,
        path: &str,
        key: &str,
        default: T,
        read: impl FnOnce(&mut Self, &Value, &str) -> Option<T>,
    ) -> Option<T> {
        let p = join(path, key);
        match m.and_then(|m| m.get(key)) {
            Some(v) => read(self, v, &p),
            None => {
                if m.is_some() {
                    self.defaults.push(p);
                }
                Some(default)
            }
        }
    }

    fn opt_f64(
        &mut self,
        m: Option<&Map<String, Value>>,
        path: &str,
        key: &str,
        default: f64,
    ) -> Option<f64> {
        self.opt(m, path, key, default, |r, v, p| r.number(v, p))
    }

    fn point(&mut self, v: &Value, path: &str) -> Option<Point3> {
        let [x, y, z] = self.triple(v, path)?;
        Some(Point3::new(x, y, z))
    }

    fn triple(&mut self, v: &Value, path: &str) -> Option<[f64; 3]> {
        match v.as_array().map(|a| a.as_slice()) {
            Some([x, y, z]) => {
                let (x, y, z) = (
                    self.number(x, path),
                    self.number(y, path),
                    self.number(z, path),
                );
                Some([x?, y?, z?])
            }
            _ => {
                self.errors
                    .push(Violation::new(path, "expected an array of three numbers"));
                None
            }
        }
    }

    fn req_point(
        &mut self,
        m: Option<&Map<String, Value>>,
        path: &str,
        key: &str,
    ) -> Option<Point3> {
        let p = join(path, key);
        match m.and_then(|m| m.get(key)) {
            Some(v) => self.point(v, &p),
            None => {
                self.errors.push(Violation::new(p, "required key missing"));
                None
            }
        }
    }

    fn req_triple(
        &mut self,
        m: Option<&Map<String, Value>>,
        path: &str,
        key: &str,
    ) -> Option<[f64; 3]> {
        let p = join(path, key);
        match m.and_then(|m| m.get(key)) {
            Some(v) => self.triple(v, &p),
            None => {
                self.errors.push(Violation::new(p, "required key missing"));
                None
            }
        }
    }

    fn numbers(&mut self, v: &Value, path: &str) -> Option<Vec<f64>> {
        let Some(a) = v.as_array() else {
            self.errors
                .push(Violation::new(path, "expected an array of numbers"));
            return None;
        };
        a.iter()
            .enumerate()
            .map(|(i, x)| self.number(x, &format!("{path}[{i}]")))
            .collect()
    }

    fn unsigned(&mut self, v: &Value, path: &str) -> Option<u64> {
        let n = v.as_u64();
        if n.is_none() {
            self.errors
                .push(Violation::new(path, "expected a non-negative integer"));
        }
        n
    }

    fn scenario(&mut self, v: &Value) -> Option<Scenario> {
        let root = self.object(
            v,
            "",
            &[
                "haps",
                "radio",
                "highway",
                "terrestrial",
                "k_db",
                "tx_dbm",
                "rate_bps_hz",
                "seed",
                "fleet",
                "simulator_defaults",
            ],
        );
        let sub = |key: &str| root.and_then(|m| m.get(key)).unwrap_or(&Value::Null);

        let radio = self.radio(sub("radio"));
        let haps = self.haps(sub("haps"), radio);
        let highway = self.highway(sub("highway"), haps.as_ref());
        let terrestrial = match root.and_then(|m| m.get("terrestrial")) {
            None | Some(Value::Null) => Some(None),
            Some(v) => self.terrestrial(v, radio).map(Some),
        };
        let k_db_list = self.opt(root, "", "k_db", DEFAULT_K_DB.to_vec(), |r, v, p| {
            r.numbers(v, p)
        });
        let tx_dbm_list = self.opt(root, "", "tx_dbm", DEFAULT_TX_DBM.to_vec(), |r, v, p| {
            r.numbers(v, p)
        });
        let rate = self.req_f64(root, "", "rate_bps_hz");
        let seed = self.opt(root, "", "seed", DEFAULT_SEED, |r, v, p| r.unsigned(v, p));
        let fleet = match root.and_then(|m| m.get("fleet")) {
            None | Some(Value::Null) => Some(None),
            Some(v) => self.fleet(v).map(Some),
        };
        if let Some(v) = root.and_then(|m| m.get("simulator_defaults")) {
            match v.as_array().and_then(|a| {
                a.iter()
                    .map(|s| s.as_str().map(String::from))
                    .collect::<Option<Vec<_>>>()
            }) {
                Some(keys) => self.defaults.extend(keys),
                None => self.errors.push(Violation::new(
                    "simulator_defaults",
                    "expected an array of strings",
                )),
            }
        }

        let mut defaults_used = std::mem::take(&mut self.defaults);
        defaults_used.sort();
        defaults_used.dedup();
        Some(Scenario {
            haps: haps?,
            terrestrial: terrestrial?,
            highway: highway?,
            k_db_list: k_db_list?,
            tx_dbm_list: tx_dbm_list?,
            rate: rate?,
            fleet: fleet?,
            seed: seed?,
            defaults_used,
        })
    }

    fn radio(&mut self, v: &Value) -> Option<RadioConfig> {
        let p = "radio";
        let m = self.object(
            v,
            p,
            &[
                "carrier_ghz",
                "bandwidth_mhz",
                "temperature_c",
                "rx_gain_dbi",
                "noise_figure_db",
            ],
        );
        let carrier = self.req_f64(m, p, "carrier_ghz");
        let bw = self.req_f64(m, p, "bandwidth_mhz");
        let temp = self.req_f64(m, p, "temperature_c");
        let rx = self.opt_f64(m, p, "rx_gain_dbi", 0.0);
        let nf = self.opt_f64(m, p, "noise_figure_db", 0.0);
        Some(RadioConfig {
            carrier_hz: carrier? * 1e9,
            bandwidth_hz: bw? * 1e6,
            temperature_k: temp? + ZERO_CELSIUS_K,
            tx_power_dbm: f64::NAN,
            rx_gain_dbi: rx?,
            noise_figure_db: nf?,
        })
    }

    fn antenna(
        &mut self,
        parent: Option<&Map<String, Value>>,
        path: &str,
    ) -> Option<AntennaPattern> {
        let p = join(path, "antenna");
        let v = parent.and_then(|m| m.get("antenna"));
        let m = match v {
            Some(v) => self.object(v, &p, &["g0_dbi", "theta3_deg", "variant", "floor_rel_db"]),
            None => None,
        };
        // a missing block defaults every field
        let fields = m.or(parent.map(|_| &*EMPTY_MAP));
        let d = AntennaPattern::default();
        let g0 = self.opt_f64(fields, &p, "g0_dbi", d.g0);
        let theta3 = self.opt_f64(fields, &p, "theta3_deg", d.theta3);
        let floor = self.opt_f64(fields, &p, "floor_rel_db", d.floor_rel_db);
        let variant = self.opt(fields, &p, "variant", d.variant, |r, v, p| {
            let parsed = v.as_str().and_then(|s| match s {
                "quadratic-floor" => Some(PatternVariant::QuadraticFloor),
                "itu-f1336-peak" => Some(PatternVariant::ItuF1336Peak),
                _ => None,
            });
            if parsed.is_none() {
                r.errors.push(Violation::new(
                    p,
                    "expected \"quadratic-floor\" or \"itu-f1336-peak\"",
                ));
            }
            parsed
        });
        Some(AntennaPattern {
            g0: g0?,
            theta3: theta3?,
            variant: variant?,
            floor_rel_db: floor?,
        })
    }

    fn haps(&mut self, v: &Value, radio: Option<RadioConfig>) -> Option<HapsNode> {
        let p = "haps";
        let m = self.object(
            v,
            p,
            &["position_m", "aim_point_m", "tx_power_dbm", "antenna"],
        );
        let position = self.req_point(m, p, "position_m");
        let aim = self.req_point(m, p, "aim_point_m");
        let tx = self.opt_f64(m, p, "tx_power_dbm", DEFAULT_TX_POWER_DBM);
        let pattern = self.antenna(m, p);
        Some(HapsNode {
            position: position?,
            radio: radio?.with_tx_power(tx?),
            pattern: pattern?,
            aim_point: aim?,
        })
    }

    fn highway(&mut self, v: &Value, haps: Option<&HapsNode>) -> Option<Highway3D> {
        let p = "highway";
        let m = self.object(
            v,
            p,
            &["origin_m", "extent_m", "step_m", "ceiling_m", "lanes"],
        );
        let extent = self.req_triple(m, p, "extent_m");
        let step = self.req_triple(m, p, "step_m");
        let nadir = haps.map_or(Point3::default(), |h| h.position);
        let centered = extent.map(|e| Point3::new(nadir.x - e[0] / 2.0, nadir.y - e[1] / 2.0, 0.0));
        let origin = self.opt(m, p, "origin_m", centered, |r, v, p| {
            r.point(v, p).map(Some)
        })?;
        let ceiling = self.opt_f64(m, p, "ceiling_m", DEFAULT_CEILING_M);
        let auto_lanes = match (origin, extent) {
            (Some(o), Some(e)) => default_lanes(o.z, e[2]),
            _ => Vec::new(),
        };
        let lanes = self.opt(m, p, "lanes", auto_lanes, |r, v, p| r.lanes(v, p));
        Some(Highway3D {
            origin: origin?,
            extent: extent?,
            step: step?,
            lanes: lanes?,
            ceiling: ceiling?,
        })
    }

    fn lanes(&mut self, v: &Value, path: &str) -> Option<Vec<Lane>> {
        let Some(a) = v.as_array() else {
            self.errors
                .push(Violation::new(path, "expected an array of lanes"));
            return None;
        };
        a.iter()
            .enumerate()
            .map(|(i, lane)| {
                let p = format!("{path}[{i}]");
                let m = self.object(lane, &p, &["z_min_m", "z_max_m", "speed_limit_mps"]);
                let lo = self.req_f64(m, &p, "z_min_m");
                let hi = self.req_f64(m, &p, "z_max_m");
                let v = self.req_f64(m, &p, "speed_limit_mps");
                Some(Lane {
                    z_min: lo?,
                    z_max: hi?,
                    speed_limit: v?,
                })
            })
            .collect::<Vec<_>>()
            .into_iter()
            .collect()
    }

    fn terrestrial(&mut self, v: &Value, radio: Option<RadioConfig>) -> Option<Vec<TerrestrialBs>> {
        let Some(a) = v.as_array() else {
            self.errors.push(Violation::new(
                "terrestrial",
                "expected an array of base stations",
            ));
            return None;
        };
        a.iter()
            .enumerate()
            .map(|(i, bs)| {
                let p = format!("terrestrial[{i}]");
                let m = self.object(
                    bs,
                    &p,
                    &[
                        "position_m",
                        "tx_power_dbm",
                        "antenna",
                        "sectors",
                        "radiates_skyward",
                    ],
                );
                let position = self.req_point(m, &p, "position_m");
                let tx = self.opt_f64(m, &p, "tx_power_dbm", DEFAULT_TX_POWER_DBM);
                let pattern = self.antenna(m, &p);
                let default_sectors = TerrestrialBs::three_sector(
                    0.0,
                    0.0,
                    RadioConfig::table1(),
                    AntennaPattern::default(),
                )
                .sectors;
                let sectors =
                    self.opt(m, &p, "sectors", default_sectors, |r, v, p| r.sectors(v, p));
                let skyward = self.opt(m, &p, "radiates_skyward", false, |r, v, p| {
                    let b = v.as_bool();
                    if b.is_none() {
                        r.errors.push(Violation::new(p, "expected a boolean"));
                    }
                    b
                });
                Some(TerrestrialBs {
                    position: position?,
                    pattern: pattern?,
                    sectors: sectors?,
                    radio: radio?.with_tx_power(tx?),
                    radiates_skyward: skyward?,
                })
            })
            .collect::<Vec<_>>()
            .into_iter()
            .collect()
    }

    fn sectors(&mut self, v: &Value, path: &str) -> Option<Vec<Sector>> {
        let Some(a) = v.as_array() else {
            self.errors
                .push(Violation::new(path, "expected an array of sectors"));
            return None;
        };
        a.iter()
            .enumerate()
            .map(|(i, s)| {
                let p = format!("{path}[{i}]");
                let m = self.object(s, &p, &["azimuth_deg", "downtilt_deg"]);
                let az = self.req_f64(m, &p, "azimuth_deg");
                let tilt = self.req_f64(m, &p, "downtilt_deg");
                Some(Sector {
                    azimuth_deg: az?,
                    downtilt_deg: tilt?,
                })
            })
            .collect::<Vec<_>>()
            .into_iter()
            .collect()
    }

    fn fleet(&mut self, v: &Value) -> Option<FleetSpec> {
        let p = "fleet";
        let m = self.object(
            v,
            p,
            &[
                "lane",
                "leader_start_m",
                "speed_mps",
                "followers",
                "spacing_m",
                "kp_per_s",
                "dt_s",
                "duration_s",
                "network",
                "events",
            ],
        );
        let lane = match m.and_then(|m| m.get("lane")) {
            Some(v) => self.unsigned(v, "fleet.lane"),
            None => {
                self.errors
                    .push(Violation::new("fleet.lane", "required key missing"));
                None
            }
        };
        let start = self.req_point(m, p, "leader_start_m");
        let speed = self.req_f64(m, p, "speed_mps");
        let followers = match m.and_then(|m| m.get("followers")) {
            Some(v) => self.unsigned(v, "fleet.followers"),
            None => {
                self.errors
                    .push(Violation::new("fleet.followers", "required key missing"));
                None
            }
        };
        let spacing = self.req_f64(m, p, "spacing_m");
        let kp = self.opt_f64(m, p, "kp_per_s", DEFAULT_KP);
        let dt = self.req_f64(m, p, "dt_s");
        let duration = self.req_f64(m, p, "duration_s");
        let network = self.opt(m, p, "network", FleetNetwork::Haps, |r, v, p| {
            let n = v.as_str().and_then(FleetNetwork::parse);
            if n.is_none() {
                r.errors.push(Violation::new(
                    p,
                    "expected \"haps\", \"terrestrial\" or \"all\"",
                ));
            }
            n
        });
        let events = match m.and_then(|m| m.get("events")) {
            None => Some(Vec::new()),
            Some(v) => self.events(v),
        };
        Some(FleetSpec {
            lane: lane? as usize,
            leader_start: start?,
            speed: speed?,
            followers: followers? as usize,
            spacing: spacing?,
            kp: kp?,
            dt: dt?,
            duration: duration?,
            network: network?,
            events: events?,
        })
    }

    fn events(&mut self, v: &Value) -> Option<Vec<MembershipEvent>> {
        let Some(a) = v.as_array() else {
            self.errors
                .push(Violation::new("fleet.events", "expected an array"));
            return None;
        };
        a.iter()
            .enumerate()
            .map(|(i, e)| {
                let p = format!("fleet.events[{i}]");
                let m = self.object(e, &p, &["at_x_m", "leave", "join"])?;
                let at = self.req_f64(Some(m), &p, "at_x_m");
                let change = match (m.get("leave"), m.get("join")) {
                    (Some(v), None) => self
                        .unsigned(v, &join(&p, "leave"))
                        .map(|id| MembershipChange::Leave(id as usize)),
                    (None, Some(v)) => self
                        .unsigned(v, &join(&p, "join"))
                        .map(|id| MembershipChange::Join(id as usize)),
                    _ => {
                        self.errors.push(Violation::new(
                            &p,
                            "exactly one of \"leave\" or \"join\" is required",
                        ));
                        None
                    }
                };
                Some(MembershipEvent {
                    at_x: at?,
                    change: change?,
                })
            })
            .collect::<Vec<_>>()
            .into_iter()
            .collect()
    }
}

static EMPTY_MAP: std::sync::LazyLock<Map<String, Value>> = std::sync::LazyLock::new(Map::new);

/// Rounds to 12 significant digits so unit conversions print cleanly.
fn tidy(v: f64) -> Value {
    if v == f64::NEG_INFINITY {
        return json!("-inf");
    }
    if !v.is_finite() || v == 0.0 {
        return json!(v);
    }
    let t: f64 = format!("{v:.11e}").parse().unwrap_or(v);
    json!(t)
}

fn point(p: Point3) -> Value {
    json!([tidy(p.x), tidy(p.y), tidy(p.z)])
}

fn antenna(a: &AntennaPattern) -> Value {
    json!({
        "g0_dbi": tidy(a.g0),
        "theta3_deg": tidy(a.theta3),
        "variant": a.variant.name(),
        "floor_rel_db": tidy(a.floor_rel_db),
    })
}

/// Serializes a scenario with every key explicit. Parsing the result gives
/// back the same scenario, defaults list included.
pub fn to_json(s: &Scenario) -> String {
    let r = &s.haps.radio;
    let hw = &s.highway;
    let mut root = Map::new();
    root.insert(
        "haps".into(),
        json!({
            "position_m": point(s.haps.position),
            "aim_point_m": point(s.haps.aim_point),
            "tx_power_dbm": tidy(r.tx_power_dbm),
            "antenna": antenna(&s.haps.pattern),
        }),
    );
    root.insert(
        "radio".into(),
        json!({
            "carrier_ghz": tidy(r.carrier_hz / 1e9),
            "bandwidth_mhz": tidy(r.bandwidth_hz / 1e6),
            "temperature_c": tidy(r.temperature_k - ZERO_CELSIUS_K),
            "rx_gain_dbi": tidy(r.rx_gain_dbi),
            "noise_figure_db": tidy(r.noise_figure_db),
        }),
    );
    root.insert(
        "highway".into(),
        json!({
            "origin_m": point(hw.origin),
            "extent_m": hw.extent.iter().map(|&v| tidy(v)).collect::<Vec<_>>(),
            "step_m": hw.step.iter().map(|&v| tidy(v)).collect::<Vec<_>>(),
            "ceiling_m": tidy(hw.ceiling),
            "lanes": hw.lanes.iter().map(|l| json!({
                "z_min_m": tidy(l.z_min),
                "z_max_m": tidy(l.z_max),
                "speed_limit_mps": tidy(l.speed_limit),
            })).collect::<Vec<_>>(),
        }),
    );
    if let Some(ts) = &s.terrestrial {
        root.insert(
            "terrestrial".into(),
            ts.iter()
                .map(|t| {
                    json!({
                        "position_m": point(t.position),
                        "tx_power_dbm": tidy(t.radio.tx_power_dbm),
                        "antenna": antenna(&t.pattern),
                        "sectors": t.sectors.iter().map(|s| json!({
                            "azimuth_deg": tidy(s.azimuth_deg),
                            "downtilt_deg": tidy(s.downtilt_deg),
                        })).collect::<Vec<_>>(),
                        "radiates_skyward": t.radiates_skyward,
                    })
                })
                .collect(),
        );
    }
    root.insert(
        "k_db".into(),
        s.k_db_list.iter().map(|&v| tidy(v)).collect(),
    );
    root.insert(
        "tx_dbm".into(),
        s.tx_dbm_list.iter().map(|&v| tidy(v)).collect(),
    );
    root.insert("rate_bps_hz".into(), tidy(s.rate));
    root.insert("seed".into(), json!(s.seed));
    if let Some(f) = &s.fleet {
        let events: Vec<Value> = f
            .events
            .iter()
            .map(|e| match e.change {
                MembershipChange::Leave(id) => json!({"at_x_m": tidy(e.at_x), "leave": id}),
                MembershipChange::Join(id) => json!({"at_x_m": tidy(e.at_x), "join": id}),
            })
            .collect();
        root.insert(
            "fleet".into(),
            json!({
                "lane": f.lane,
                "leader_start_m": point(f.leader_start),
                "speed_mps": tidy(f.speed),
                "followers": f.followers,
                "spacing_m": tidy(f.spacing),
                "kp_per_s": tidy(f.kp),
                "dt_s": tidy(f.dt),
                "duration_s": tidy(f.duration),
                "network": f.network.name(),
                "events": events,
            }),
        );
    }
    root.insert("simulator_defaults".into(), json!(s.defaults_used));
    let mut out = serde_json::to_string_pretty(&Value::Object(root)).expect("serializable");
    out.push('\n');
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scenario::table1_default;

    const MINIMAL: &str = r#"{
        "haps": {"position_m": [0, 0, 20000], "aim_point_m": [10000, 500, 0]},
        "radio": {"carrier_ghz": 10, "bandwidth_mhz": 10, "temperature_c": 24},
        "highway": {"extent_m": [100, 10, 100], "step_m": [10, 10, 10]},
        "rate_bps_hz": 1
    }"#;

    #[test]
    fn minimal_document_is_table1() {
        let parsed = parse_scenario(MINIMAL).unwrap();
        assert!(parsed.warnings.is_empty());
        assert_eq!(
            parsed.scenario.canonical_json(),
            table1_default().canonical_json()
        );
        assert_eq!(
            parsed.scenario.defaults_used,
            table1_default().defaults_used
        );
    }

    #[test]
    fn empty_document_lists_required_keys() {
        for text in ["", "{}"] {
            let Err(Error::Validation(v)) = parse_scenario(text) else {
                panic!("expected validation error");
            };
            let keys: Vec<&str> = v.iter().map(|v| v.key.as_str()).collect();
            for k in [
                "radio.carrier_ghz",
                "radio.bandwidth_mhz",
                "radio.temperature_c",
                "haps.position_m",
                "haps.aim_point_m",
                "highway.extent_m",
                "highway.step_m",
                "rate_bps_hz",
            ] {
                assert!(keys.contains(&k), "{k} missing from {keys:?}");
            }
        }
    }

    #[test]
    fn syntax_error_has_position() {
        match parse_scenario("{\n  \"haps\": [1,,]\n}") {
            Err(Error::Parse { line, column, .. }) => {
                assert_eq!(line, 2);
                assert!(column > 0);
            }
            r => panic!("unexpected {r:?}"),
        }
    }

    #[test]
    fn unknown_keys_warn() {
        let text = MINIMAL.replacen(
            "\"rate_bps_hz\": 1",
            "\"rate_bps_hz\": 1, \"colour\": \"blue\"",
            1,
        );
        let parsed = parse_scenario(&text).unwrap();
        assert_eq!(
            parsed.warnings,
            vec![Violation::new("colour", "unknown key ignored")]
        );
    }

    #[test]
    fn type_errors_carry_key_paths() {
        let text = MINIMAL.replace("\"carrier_ghz\": 10", "\"carrier_ghz\": \"ten\"");
        let Err(Error::Validation(v)) = parse_scenario(&text) else {
            panic!()
        };
        assert_eq!(v[0].key, "radio.carrier_ghz");
    }

    #[test]
    fn semantic_errors_are_reported() {
        let text = MINIMAL.replace("\"step_m\": [10, 10, 10]", "\"step_m\": [30, 10, 10]");
        let Err(Error::Validation(v)) = parse_scenario(&text) else {
            panic!()
        };
        assert_eq!(v[0].key, "highway.step_m.x");
    }

    #[test]
    fn rayleigh_k_round_trips() {
        let mut s = table1_default();
        s.k_db_list = vec![f64::NEG_INFINITY, 3.0];
        let back = parse_scenario(&to_json(&s)).unwrap().scenario;
        assert_eq!(back.k_db_list, s.k_db_list);
    }
}
