//! CSV tables, PGM heatmaps and run metadata.
//!
//! Numbers are printed with six significant digits in the style of C's
//! `%g`, with `\n` line endings. Output bytes depend only on the inputs.

use std::fmt::Write as _;

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::coverage::{GainSample, OutageGrid, SweepRow};
use crate::error::{Error, Result};
use crate::fleet::{ConnectivityTrace, EndReason};
use crate::scenario::Scenario;

/// `%g` with six significant digits.
pub fn fmt_g6(v: f64) -> String {
    if v.is_nan() {
        return "nan".into();
    }
    if v.is_infinite() {
        return if v > 0.0 { "inf" } else { "-inf" }.into();
    }
    if v == 0.0 {
        return "0".into();
    }
    let sci = format!("{v:.5e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-4..6).contains(&exp) {
        let m = strip_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{m}e{sign}{:02}", exp.abs())
    } else {
        strip_zeros(&format!("{v:.*}", (5 - exp) as usize)).to_string()
    }
}

fn strip_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// Provenance embedded in every output file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RunMetadata {
    pub tool_version: String,
    pub scenario_sha256: String,
    pub seed: u64,
    /// Unix seconds. Only written to the `run.json` sidecar so that tables and
    /// images stay byte-identical across runs.
    pub timestamp: Option<u64>,
    pub simulator_defaults: Vec<String>,
}

impl RunMetadata {
    pub fn for_scenario(s: &Scenario) -> Self {
        let digest = Sha256::digest(s.canonical_json().as_bytes());
        Self {
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            scenario_sha256: digest.iter().map(|b| format!("{b:02x}")).collect(),
            seed: s.seed,
            timestamp: None,
            simulator_defaults: s.defaults_used.clone(),
        }
    }

    pub fn with_timestamp(mut self, unix_secs: u64) -> Self {
        self.timestamp = Some(unix_secs);
        self
    }

    /// Comment lines without the leading `#`, timestamp excluded.
    pub fn comment_lines(&self) -> Vec<String> {
        let defaults = if self.simulator_defaults.is_empty() {
            "none".to_string()
        } else {
            self.simulator_defaults.join(";")
        };
        vec![
            format!("tool: hapslink {}", self.tool_version),
            format!("scenario_sha256: {}", self.scenario_sha256),
            format!("seed: {}", self.seed),
            format!("simulator_defaults: {defaults}"),
        ]
    }
}

fn header(out: &mut String, comments: &[String], columns: &str) {
    for c in comments {
        let _ = writeln!(out, "# {c}");
    }
    out.push_str(columns);
    out.push('\n');
}

pub fn coverage_csv(grid: &OutageGrid, comments: &[String]) -> String {
    let mut out = String::new();
    header(
        &mut out,
        comments,
        "x_m,y_m,z_m,gain_dbi,mean_snr_db,outage",
    );
    for r in &grid.records {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{}",
            fmt_g6(r.center.x),
            fmt_g6(r.center.y),
            fmt_g6(r.center.z),
            fmt_g6(r.gain_dbi),
            fmt_g6(r.mean_snr_db),
            fmt_g6(r.outage)
        );
    }
    out
}

pub fn sweep_csv(rows: &[SweepRow], comments: &[String]) -> String {
    let mut out = String::new();
    header(&mut out, comments, "k_db,tx_dbm,avg_outage");
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{}",
            fmt_g6(r.k_db),
            fmt_g6(r.tx_dbm),
            fmt_g6(r.avg_outage)
        );
    }
    out
}

pub fn crosssection_csv(samples: &[GainSample], comments: &[String]) -> String {
    let mut out = String::new();
    header(&mut out, comments, "x_m,y_m,z_m,gain_dbi");
    for s in samples {
        let p = s.position;
        let _ = writeln!(
            out,
            "{},{},{},{}",
            fmt_g6(p.x),
            fmt_g6(p.y),
            fmt_g6(p.z),
            fmt_g6(s.gain_dbi)
        );
    }
    out
}

pub fn fleet_csv(trace: &ConnectivityTrace, comments: &[String]) -> String {
    let mut out = String::new();
    header(
        &mut out,
        comments,
        "t_s,vehicle_id,x_m,y_m,z_m,serving_id,mean_snr_db,outage",
    );
    for r in &trace.records {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{}",
            fmt_g6(r.t),
            r.vehicle_id,
            fmt_g6(r.position.x),
            fmt_g6(r.position.y),
            fmt_g6(r.position.z),
            r.serving_id,
            fmt_g6(r.mean_snr_db),
            fmt_g6(r.outage)
        );
    }
    out
}

pub fn handoffs_csv(counts: &[(usize, usize)], comments: &[String]) -> String {
    let mut out = String::new();
    header(&mut out, comments, "vehicle_id,handoff_count");
    for (id, n) in counts {
        let _ = writeln!(out, "{id},{n}");
    }
    out
}

pub fn end_reason(end: &EndReason) -> String {
    match end {
        EndReason::Completed => "completed".into(),
        EndReason::ExitedHighway { t, vehicle_id } => {
            format!(
                "vehicle {vehicle_id} left the highway at t = {} s",
                fmt_g6(*t)
            )
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    X,
    Y,
    Z,
}

/// A slice of the voxel grid normal to `axis` at voxel `index`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Plane {
    pub axis: Axis,
    pub index: usize,
}

impl std::str::FromStr for Plane {
    type Err = Error;

    /// `"y:0"` style.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidInput(format!("plane must look like \"z:3\", got {s:?}"));
        let (a, i) = s.split_once(':').ok_or_else(bad)?;
        let axis = match a.trim() {
            "x" => Axis::X,
            "y" => Axis::Y,
            "z" => Axis::Z,
            _ => return Err(bad()),
        };
        let index = i.trim().parse().map_err(|_| bad())?;
        Ok(Plane { axis, index })
    }
}

impl std::fmt::Display for Plane {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let a = match self.axis {
            Axis::X => "x",
            Axis::Y => "y",
            Axis::Z => "z",
        };
        write!(f, "{a}{}", self.index)
    }
}

/// 8-bit grayscale image.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graymap {
    pub width: usize,
    pub height: usize,
    /// Row-major, top row first.
    pub pixels: Vec<u8>,
}

impl Graymap {
    /// Plain-text P2 encoding. Comment lines go between the magic number
    /// and the dimensions.
    pub fn to_p2(&self, comments: &[String]) -> String {
        let mut out = String::from("P2");
        if comments.is_empty() {
            out.push(' ');
        } else {
            out.push('\n');
            for c in comments {
                let _ = writeln!(out, "# {c}");
            }
        }
        let _ = writeln!(out, "{} {} 255", self.width, self.height);
        for row in self.pixels.chunks(self.width) {
            let line: Vec<String> = row.iter().map(|p| p.to_string()).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }
}

/// Coverage image of one grid plane, `round(255 (1 - outage))` per voxel so
/// covered voxels are bright.
///
/// A z-plane is drawn with +x to the right and +y up; x- and y-planes have
/// the horizontal axis to the right and altitude up.
pub fn render_heatmap(grid: &OutageGrid, plane: Plane) -> Result<Graymap> {
    let d = grid.dims;
    let limit = match plane.axis {
        Axis::X => d.nx,
        Axis::Y => d.ny,
        Axis::Z => d.nz,
    };
    if plane.index >= limit {
        return Err(Error::InvalidInput(format!(
            "plane {plane} outside the grid ({limit} voxels along that axis)"
        )));
    }
    let (width, height) = match plane.axis {
        Axis::X => (d.ny, d.nz),
        Axis::Y => (d.nx, d.nz),
        Axis::Z => (d.nx, d.ny),
    };
    let mut pixels = Vec::with_capacity(width * height);
    for row in 0..height {
        let up = height - 1 - row;
        for col in 0..width {
            let (i, j, k) = match plane.axis {
                Axis::X => (plane.index, col, up),
                Axis::Y => (col, plane.index, up),
                Axis::Z => (col, up, plane.index),
            };
            let p = grid.record(i, j, k).outage;
            pixels.push((255.0 * (1.0 - p)).round().clamp(0.0, 255.0) as u8);
        }
    }
    Ok(Graymap {
        width,
        height,
        pixels,
    })
}
