#[allow(dead_code)]
mod link_budget {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/link_budget.rs"
    ));
}

#[test]
fn link_budget_example_runs() {
    link_budget::run_example().expect("link_budget example should run");
}

#[allow(dead_code)]
mod marcum_outage {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/marcum_outage.rs"
    ));
}

#[test]
fn marcum_outage_example_runs() {
    marcum_outage::run_example().expect("marcum_outage example should run");
}

#[allow(dead_code)]
mod coverage_map {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/coverage_map.rs"
    ));
}

#[test]
fn coverage_map_example_runs() {
    coverage_map::run_example().expect("coverage_map example should run");
}

#[allow(dead_code)]
mod k_sweep {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/k_sweep.rs"));
}

#[test]
fn k_sweep_example_runs() {
    k_sweep::run_example().expect("k_sweep example should run");
}

#[allow(dead_code)]
mod gain_cross_section {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/gain_cross_section.rs"
    ));
}

#[test]
fn gain_cross_section_example_runs() {
    gain_cross_section::run_example().expect("gain_cross_section example should run");
}

#[allow(dead_code)]
mod platoon_handoff {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/platoon_handoff.rs"
    ));
}

#[test]
fn platoon_handoff_example_runs() {
    platoon_handoff::run_example().expect("platoon_handoff example should run");
}

#[allow(dead_code)]
mod terrestrial_vs_haps {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/terrestrial_vs_haps.rs"
    ));
}

#[test]
fn terrestrial_vs_haps_example_runs() {
    terrestrial_vs_haps::run_example().expect("terrestrial_vs_haps example should run");
}
