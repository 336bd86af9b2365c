// Outage over the default highway, written as CSV and PGM into a temp dir.

use std::error::Error;

use hapslink::coverage::{outage_map, volumetric_average};
use hapslink::report::{coverage_csv, render_heatmap, RunMetadata};
use hapslink::scenario::table1_default;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let s = table1_default();
    let grid = outage_map(&s.haps, &s.highway, 5.0, s.rate)?;
    println!(
        "volumetric average outage at K = 5 dB: {:.6}",
        volumetric_average(&grid)?
    );

    let d = grid.dims;
    for k in (0..d.nz).rev() {
        let row: Vec<String> = (0..d.nx)
            .map(|i| format!("{:.3}", grid.record(i, 0, k).outage))
            .collect();
        println!(
            "z = {:>5.1} m  {}",
            grid.record(0, 0, k).center.z,
            row.join(" ")
        );
    }

    let dir = std::env::temp_dir().join("hapslink-examples");
    std::fs::create_dir_all(&dir)?;
    let comments = RunMetadata::for_scenario(&s).comment_lines();
    std::fs::write(dir.join("coverage.csv"), coverage_csv(&grid, &comments))?;
    let image = render_heatmap(&grid, "y:0".parse()?)?;
    std::fs::write(dir.join("coverage_y0.pgm"), image.to_p2(&comments))?;
    println!("wrote {}", dir.display());
    Ok(())
}

fn main() {
    run_example().unwrap();
}
