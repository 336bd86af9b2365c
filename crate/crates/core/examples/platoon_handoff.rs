// A platoon flies a 10 km corridor, first under one HAPS and then under a
// row of terrestrial sites one kilometre apart.

use std::error::Error;

use hapslink::fleet::{handoff_count, run_traversal};
use hapslink::scenario::{parse_scenario, FleetNetwork};

const CORRIDOR: &str = include_str!("../scenarios/corridor.json");

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let s = parse_scenario(CORRIDOR)?.scenario;
    let spec = s.fleet.as_ref().ok_or("corridor scenario has a fleet")?;
    let platoon = spec.platoon(&s.highway)?;
    let cfg = spec.traversal(s.k_db_list[0], s.rate);

    for which in [FleetNetwork::Haps, FleetNetwork::Terrestrial] {
        let trace = run_traversal(&s.fleet_network(which), &s.highway, &platoon, &cfg)?;
        let worst = trace.records.iter().map(|r| r.outage).fold(0.0, f64::max);
        println!("{} network, {:?}", which.name(), trace.end);
        for id in trace.vehicle_ids() {
            println!("  vehicle {id}: {} handoffs", handoff_count(&trace, id)?);
        }
        println!("  worst outage along the route: {worst:.6}");
    }
    Ok(())
}

fn main() {
    run_example().unwrap();
}
