// HAPS antenna gain across a 20 km square at three heights.

use std::error::Error;

use hapslink::coverage::{gain_cross_section, PlaneWindow};
use hapslink::scenario::table1_default;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let s = table1_default();
    let window = PlaneWindow {
        x_range: (-10_000.0, 10_000.0),
        y_range: (-10_000.0, 10_000.0),
        step: 500.0,
    };
    let heights = [0.0, 50.0, 100.0];
    let samples = gain_cross_section(&s.haps, &heights, &window, s.highway.ceiling)?;
    let per_plane = samples.len() / heights.len();
    for (h, plane) in heights.iter().zip(samples.chunks(per_plane)) {
        let lo = plane
            .iter()
            .map(|g| g.gain_dbi)
            .fold(f64::INFINITY, f64::min);
        let hi = plane
            .iter()
            .map(|g| g.gain_dbi)
            .fold(f64::NEG_INFINITY, f64::max);
        println!(
            "z = {h:>5} m  gain in [{lo:.3}, {hi:.3}] dBi over {} points",
            plane.len()
        );
    }

    let footprint = gain_cross_section(
        &s.haps,
        &[0.0, 100.0],
        &PlaneWindow {
            x_range: (s.highway.origin.x, s.highway.origin.x + s.highway.extent[0]),
            y_range: (s.highway.origin.y, s.highway.origin.y + s.highway.extent[1]),
            step: 10.0,
        },
        s.highway.ceiling,
    )?;
    let spread = footprint
        .iter()
        .map(|g| g.gain_dbi)
        .fold(f64::NEG_INFINITY, f64::max)
        - footprint
            .iter()
            .map(|g| g.gain_dbi)
            .fold(f64::INFINITY, f64::min);
    println!("gain spread over the highway footprint: {spread:.6} dB");
    Ok(())
}

fn main() {
    run_example().unwrap();
}
