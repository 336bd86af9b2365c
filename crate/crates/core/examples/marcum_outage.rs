// Marcum Q, the Ricean outage closed form, and a Monte Carlo cross-check.

use std::error::Error;

use hapslink::fading::{marcum_q1, mc_outage, ricean_outage, RiceanLink};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    for (a, b) in [(0.0, 1.0), (1.0, 1.0), (2.0, 1.0), (5.0, 6.0), (10.0, 3.0)] {
        println!("Q1({a:>4}, {b:>4}) = {:.12}", marcum_q1(a, b)?);
    }

    println!();
    println!(
        "{:>8} {:>8} {:>12} {:>12}",
        "snr_db", "k_db", "closed", "monte_carlo"
    );
    for snr_db in [0.0, 5.0, 10.0] {
        for k_db in [f64::NEG_INFINITY, 0.0, 10.0] {
            let link = RiceanLink::from_db(snr_db, k_db, 1.0)?;
            let p = ricean_outage(&link)?;
            let mc = mc_outage(&link, 200_000, 42)?;
            println!("{snr_db:>8} {k_db:>8} {p:>12.6} {mc:>12.6}");
        }
    }
    Ok(())
}

fn main() {
    run_example().unwrap();
}
