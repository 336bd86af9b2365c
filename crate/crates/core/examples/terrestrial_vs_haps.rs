// One downtilted three-sector mast against the HAPS on the default highway.

use std::error::Error;

use hapslink::coverage::{
    outage_map, tx_power_for_min_snr, volumetric_average, TerrestrialBs, Transmitter,
};
use hapslink::scenario::table1_default;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let s = table1_default();
    let mut haps = s.haps.clone();
    let tx = tx_power_for_min_snr(&haps, &s.highway, 3.0)?;
    haps.set_tx_power_dbm(tx);
    let mut mast = TerrestrialBs::three_sector(0.0, 250.0, haps.radio, haps.pattern);
    mast.set_tx_power_dbm(tx);

    println!(
        "both transmitters at {tx:.3} dBm, g0 = {} dBi",
        haps.pattern.g0
    );
    println!("{:>6} {:>12} {:>12}", "k_db", "haps", "terrestrial");
    for k_db in [0.0, 5.0, 10.0] {
        let h = volumetric_average(&outage_map(&haps, &s.highway, k_db, s.rate)?)?;
        let t = volumetric_average(&outage_map(&mast, &s.highway, k_db, s.rate)?)?;
        println!("{k_db:>6} {h:>12.6} {t:>12.6}");
    }
    Ok(())
}

fn main() {
    run_example().unwrap();
}
