use hapslink::scenario::{parse_scenario, table1_default, to_json, FleetNetwork};
use hapslink::Error;
use proptest::prelude::*;

const TABLE1: &str = include_str!("../scenarios/table1.json");
const CORRIDOR: &str = include_str!("../scenarios/corridor.json");
const GOLDEN: &str = include_str!("golden/table1_default.json");

#[test]
fn shipped_table1_equals_defaults() {
    let parsed = parse_scenario(TABLE1).unwrap();
    assert!(parsed.warnings.is_empty(), "{:?}", parsed.warnings);
    assert_eq!(parsed.scenario, table1_default());
}

#[test]
fn table1_golden_file() {
    assert_eq!(to_json(&table1_default()), GOLDEN);
    assert_eq!(to_json(&parse_scenario(TABLE1).unwrap().scenario), GOLDEN);
}

#[test]
fn canonical_form_round_trips() {
    for text in [TABLE1, CORRIDOR] {
        let s = parse_scenario(text).unwrap().scenario;
        let again = parse_scenario(&s.canonical_json()).unwrap().scenario;
        assert_eq!(again.canonical_json(), s.canonical_json());
        assert_eq!(again.defaults_used, s.defaults_used);
    }
}

#[test]
fn corridor_shape() {
    let s = parse_scenario(CORRIDOR).unwrap().scenario;
    assert_eq!(s.terrestrial.as_ref().map(Vec::len), Some(11));
    assert_eq!(s.fleet_network(FleetNetwork::All).len(), 12);
    let fleet = s.fleet.as_ref().unwrap();
    assert_eq!(fleet.followers, 3);
    let top = s.highway.lanes[fleet.lane].z_max;
    let mast = s.terrestrial.as_ref().unwrap()[0].position.z;
    assert!(fleet.leader_start.z < mast && mast <= top);
}

#[test]
fn errors_name_their_keys() {
    let text = TABLE1.replace("\"carrier_ghz\": 10", "\"carrier_ghz\": -1");
    let Err(Error::Validation(v)) = parse_scenario(&text) else {
        panic!("negative carrier must be rejected");
    };
    assert!(v.iter().any(|v| v.key == "radio.carrier_ghz"), "{v:?}");

    let Err(Error::Parse { line, .. }) = parse_scenario("{\n  \"haps\": ,\n}") else {
        panic!("syntax error expected");
    };
    assert_eq!(line, 2);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn edited_scenarios_round_trip(
        rate in 0.05f64..8.0,
        tx in -10.0f64..60.0,
        alt in 18_000.0f64..50_000.0,
        seed in any::<u64>(),
        k in prop::collection::vec(-20.0f64..30.0, 1..5),
    ) {
        let mut s = table1_default();
        s.rate = rate;
        s.haps.radio.tx_power_dbm = tx;
        s.haps.position.z = alt;
        s.seed = seed;
        s.k_db_list = k;
        let text = s.canonical_json();
        let back = parse_scenario(&text).unwrap().scenario;
        prop_assert_eq!(back.canonical_json(), text);
    }
}
