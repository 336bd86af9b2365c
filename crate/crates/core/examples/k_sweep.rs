// Average outage over K factor and transmit power.

use std::error::Error;

use hapslink::coverage::{sweep, tx_power_for_min_snr};
use hapslink::scenario::table1_default;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let s = table1_default();
    let rows = sweep(&s.haps, &s.highway, &s.k_db_list, &s.tx_dbm_list, s.rate)?;
    print!("{:>8}", "k_db");
    for tx in &s.tx_dbm_list {
        print!(" {:>11}", format!("{tx} dBm"));
    }
    println!();
    for chunk in rows.chunks(s.tx_dbm_list.len()) {
        print!("{:>8}", chunk[0].k_db);
        for r in chunk {
            print!(" {:>11.6}", r.avg_outage);
        }
        println!();
    }

    let tx = tx_power_for_min_snr(&s.haps, &s.highway, 3.0)?;
    println!("tx power for a 3 dB worst-voxel SNR: {tx:.3} dBm");
    Ok(())
}

fn main() {
    run_example().unwrap();
}
