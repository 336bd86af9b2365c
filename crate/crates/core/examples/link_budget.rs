// Link budget from the HAPS to the aim point and to the highway voxels.

use std::error::Error;

use hapslink::geometry::slant_range;
use hapslink::linkbudget::{fspl_db, mean_snr_db};
use hapslink::scenario::table1_default;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let s = table1_default();
    let haps = &s.haps;
    let radio = &haps.radio;

    let d = slant_range(haps.position, haps.aim_point)?;
    println!("slant range to aim point   {:>10.1} m", d);
    println!(
        "free-space path loss       {:>10.3} dB",
        fspl_db(d, radio.carrier_hz)?
    );
    println!(
        "noise floor                {:>10.3} dBm",
        radio.noise_dbm()?
    );
    println!(
        "mean SNR at boresight      {:>10.3} dB",
        mean_snr_db(radio, haps.pattern.g0, d)?
    );

    let grid = hapslink::coverage::outage_map(haps, &s.highway, 0.0, s.rate)?;
    let (lo, hi) = grid
        .records
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), r| {
            (lo.min(r.mean_snr_db), hi.max(r.mean_snr_db))
        });
    println!(
        "highway mean SNR           [{lo:.3}, {hi:.3}] dB over {} voxels",
        grid.records.len()
    );
    Ok(())
}

fn main() {
    run_example().unwrap();
}
