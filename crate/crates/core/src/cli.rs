//! The `hapslink` command line.
//!
//! Every subcommand reads one scenario file (or the built-in defaults when
//! `--scenario` is omitted), writes its tables and images into `--out`, and
//! drops a `run.json` sidecar with the run metadata and a wall-clock
//! timestamp.

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::coverage::{
    gain_cross_section, outage_map, sweep, volumetric_average, OutageGrid, PlaneWindow, Transmitter,
};
use crate::error::{Error, Result};
use crate::fleet::{handoff_count, run_traversal};
use crate::report::{
    coverage_csv, crosssection_csv, end_reason, fleet_csv, fmt_g6, handoffs_csv, render_heatmap,
    sweep_csv, Plane, RunMetadata,
};
use crate::scenario::{parse_scenario, table1_default, FleetNetwork, Scenario};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_RUNTIME: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "hapslink",
    version,
    about = "HAPS connectivity for 3D aerial highways"
)]
pub struct Cli {
    /// Scenario file (JSON). Built-in defaults when omitted.
    #[arg(long, global = true)]
    pub scenario: Option<PathBuf>,
    /// Output directory, created if missing.
    #[arg(long, global = true, default_value = ".")]
    pub out: PathBuf,
    /// Overrides the scenario seed.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Worker threads for the voxel fan-out.
    #[arg(long, global = true, env = "HAPSLINK_WORKERS",
          value_parser = clap::value_parser!(u32).range(1..))]
    pub workers: Option<u32>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Serving {
    Haps,
    Terrestrial,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FleetServing {
    Haps,
    Terrestrial,
    All,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Per-voxel outage map, heatmap and volumetric average.
    Coverage {
        /// Ricean K factor in dB; first scenario entry by default.
        #[arg(long, allow_hyphen_values = true)]
        k_db: Option<f64>,
        /// Transmit power in dBm; scenario value by default.
        #[arg(long, allow_hyphen_values = true)]
        tx_dbm: Option<f64>,
        /// Heatmap plane as axis:index, e.g. z:0 or y:5.
        #[arg(long, default_value = "z:0")]
        plane: String,
        #[arg(long, value_enum, default_value = "haps")]
        network: Serving,
    },
    /// Volumetric average outage over the K x transmit-power grid.
    Sweep {
        #[arg(long, value_enum, default_value = "haps")]
        network: Serving,
    },
    /// HAPS antenna gain on horizontal planes.
    Crosssection {
        /// Comma-separated heights in metres; lane floors and the top by default.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        heights: Vec<f64>,
        /// xmin,xmax,ymin,ymax in metres; the highway footprint by default.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        window: Vec<f64>,
        /// Sample spacing in metres; the smaller horizontal voxel step by default.
        #[arg(long)]
        step: Option<f64>,
    },
    /// Platoon traversal trace and handoff counts.
    Fleet {
        /// Overrides the scenario's fleet network.
        #[arg(long, value_enum)]
        network: Option<FleetServing>,
    },
    /// Parse and validate the scenario, then print it in canonical form.
    Validate,
}

/// Exit code for an error: 2 for bad input, 3 for failures while running.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse { .. } | Error::Validation(_) | Error::Config(_) => EXIT_INPUT,
        _ => EXIT_RUNTIME,
    }
}

/// Runs the command line and returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
        }
    };
    match execute(&cli) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

pub fn execute(cli: &Cli) -> Result<()> {
    let mut scenario = load(cli.scenario.as_deref())?;
    if let Some(seed) = cli.seed {
        scenario.seed = seed;
    }
    match cli.workers {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n as usize)
            .build()
            .map_err(|e| Error::InvalidState(format!("cannot start worker pool: {e}")))?
            .install(|| dispatch(cli, &scenario)),
        None => dispatch(cli, &scenario),
    }
}

fn load(path: Option<&Path>) -> Result<Scenario> {
    let Some(path) = path else {
        return Ok(table1_default());
    };
    let text = fs::read_to_string(path)
        .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
    let parsed = parse_scenario(&text)?;
    for w in &parsed.warnings {
        eprintln!("warning: {w}");
    }
    Ok(parsed.scenario)
}

fn dispatch(cli: &Cli, s: &Scenario) -> Result<()> {
    if let Command::Validate = cli.command {
        print!("{}", s.canonical_json());
        return Ok(());
    }
    let meta = RunMetadata::for_scenario(s);
    let out = Output::new(&cli.out, meta)?;
    match &cli.command {
        Command::Coverage {
            k_db,
            tx_dbm,
            plane,
            network,
        } => coverage(&out, s, *k_db, *tx_dbm, plane, *network),
        Command::Sweep { network } => run_sweep(&out, s, *network),
        Command::Crosssection {
            heights,
            window,
            step,
        } => crosssection(&out, s, heights, window, *step),
        Command::Fleet { network } => fleet(&out, s, *network),
        Command::Validate => unreachable!("handled above"),
    }
}

struct Output {
    dir: PathBuf,
    meta: RunMetadata,
}

impl Output {
    fn new(dir: &Path, meta: RunMetadata) -> Result<Self> {
        fs::create_dir_all(dir)?;
        Ok(Self {
            dir: dir.to_path_buf(),
            meta,
        })
    }

    fn comments(&self, extra: &[(&str, String)]) -> Vec<String> {
        let mut c = self.meta.comment_lines();
        c.extend(extra.iter().map(|(k, v)| format!("{k}: {v}")));
        c
    }

    fn write(&self, name: &str, contents: &str) -> Result<()> {
        fs::write(self.dir.join(name), contents)?;
        Ok(())
    }

    fn sidecar(&self, command: &str, files: &[&str], summary: serde_json::Value) -> Result<()> {
        let now = SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        let doc = json!({
            "command": command,
            "metadata": self.meta.clone().with_timestamp(now),
            "outputs": files,
            "summary": summary,
        });
        let mut text = serde_json::to_string_pretty(&doc).expect("serializable");
        text.push('\n');
        self.write("run.json", &text)
    }
}

fn serving_node(s: &Scenario, which: Serving, tx_dbm: Option<f64>) -> Result<Box<dyn SyncTx>> {
    let mut node: Box<dyn SyncTx> = match which {
        Serving::Haps => Box::new(s.haps.clone()),
        Serving::Terrestrial => Box::new(
            s.terrestrial_network()
                .ok_or_else(|| Error::Config("scenario has no terrestrial base stations".into()))?,
        ),
    };
    if let Some(tx) = tx_dbm {
        node.set_tx_power_dbm(tx);
    }
    Ok(node)
}

trait SyncTx: Transmitter + Sync {
    fn grid(&self, s: &Scenario, k_db: f64) -> Result<OutageGrid>;
    fn table(&self, s: &Scenario) -> Result<Vec<crate::coverage::SweepRow>>;
}

impl<T: Transmitter + Clone + Sync> SyncTx for T {
    fn grid(&self, s: &Scenario, k_db: f64) -> Result<OutageGrid> {
        outage_map(self, &s.highway, k_db, s.rate)
    }

    fn table(&self, s: &Scenario) -> Result<Vec<crate::coverage::SweepRow>> {
        sweep(self, &s.highway, &s.k_db_list, &s.tx_dbm_list, s.rate)
    }
}

fn network_name(which: Serving) -> &'static str {
    match which {
        Serving::Haps => "haps",
        Serving::Terrestrial => "terrestrial",
    }
}

fn coverage(
    out: &Output,
    s: &Scenario,
    k_db: Option<f64>,
    tx_dbm: Option<f64>,
    plane: &str,
    which: Serving,
) -> Result<()> {
    let plane: Plane = plane
        .parse()
        .map_err(|e: Error| Error::Config(e.to_string()))?;
    let k_db = k_db.unwrap_or(s.k_db_list[0]);
    let node = serving_node(s, which, tx_dbm)?;
    let grid = node.grid(s, k_db)?;
    let image = render_heatmap(&grid, plane).map_err(|e| Error::Config(e.to_string()))?;
    let avg = volumetric_average(&grid)?;

    let extra = [
        ("network", network_name(which).to_string()),
        ("k_db", fmt_g6(k_db)),
        ("tx_dbm", fmt_g6(node.tx_power_dbm())),
        ("rate_bps_hz", fmt_g6(s.rate)),
    ];
    let comments = out.comments(&extra);
    let pgm_name = format!("coverage_{plane}.pgm");
    out.write("coverage.csv", &coverage_csv(&grid, &comments))?;
    let mut pgm_comments = comments;
    pgm_comments.push(format!("plane: {plane}"));
    out.write(&pgm_name, &image.to_p2(&pgm_comments))?;

    let (lo, hi) = grid.outage_range();
    println!("voxels: {}", grid.records.len());
    println!("volumetric average outage: {}", fmt_g6(avg));
    println!("outage range: [{}, {}]", fmt_g6(lo), fmt_g6(hi));
    println!("minimum mean snr: {} dB", fmt_g6(grid.min_snr_db()));
    out.sidecar(
        "coverage",
        &["coverage.csv", &pgm_name],
        json!({
            "voxels": grid.records.len(),
            "volumetric_average_outage": avg,
            "min_mean_snr_db": finite_or_null(grid.min_snr_db()),
        }),
    )
}

fn finite_or_null(v: f64) -> serde_json::Value {
    if v.is_finite() {
        json!(v)
    } else {
        serde_json::Value::Null
    }
}

fn run_sweep(out: &Output, s: &Scenario, which: Serving) -> Result<()> {
    let node = serving_node(s, which, None)?;
    let rows = node.table(s)?;
    let extra = [
        ("network", network_name(which).to_string()),
        ("rate_bps_hz", fmt_g6(s.rate)),
    ];
    out.write("sweep.csv", &sweep_csv(&rows, &out.comments(&extra)))?;
    for r in &rows {
        println!(
            "K {} dB, tx {} dBm: {}",
            fmt_g6(r.k_db),
            fmt_g6(r.tx_dbm),
            fmt_g6(r.avg_outage)
        );
    }
    out.sidecar("sweep", &["sweep.csv"], json!({ "rows": rows.len() }))
}

fn crosssection(
    out: &Output,
    s: &Scenario,
    heights: &[f64],
    window: &[f64],
    step: Option<f64>,
) -> Result<()> {
    let hw = &s.highway;
    let heights = if heights.is_empty() {
        let mut h: Vec<f64> = hw.lanes.iter().map(|l| l.z_min).collect();
        h.push(hw.top());
        h.dedup();
        h
    } else {
        heights.to_vec()
    };
    let window = match window {
        [] => PlaneWindow {
            x_range: (hw.origin.x, hw.origin.x + hw.extent[0]),
            y_range: (hw.origin.y, hw.origin.y + hw.extent[1]),
            step: step.unwrap_or(hw.step[0].min(hw.step[1])),
        },
        [x0, x1, y0, y1] => PlaneWindow {
            x_range: (*x0, *x1),
            y_range: (*y0, *y1),
            step: step.unwrap_or(hw.step[0].min(hw.step[1])),
        },
        _ => return Err(Error::Config("--window takes xmin,xmax,ymin,ymax".into())),
    };
    let samples = gain_cross_section(&s.haps, &heights, &window, hw.ceiling)
        .map_err(|e| Error::Config(e.to_string()))?;
    let heights_text: Vec<String> = heights.iter().map(|h| fmt_g6(*h)).collect();
    let extra = [("heights_m", heights_text.join(";"))];
    out.write(
        "crosssection.csv",
        &crosssection_csv(&samples, &out.comments(&extra)),
    )?;

    let (lo, hi) = samples
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), g| {
            (lo.min(g.gain_dbi), hi.max(g.gain_dbi))
        });
    println!("samples: {}", samples.len());
    println!("gain range: [{}, {}] dBi", fmt_g6(lo), fmt_g6(hi));
    out.sidecar(
        "crosssection",
        &["crosssection.csv"],
        json!({ "samples": samples.len(), "gain_min_dbi": lo, "gain_max_dbi": hi }),
    )
}

fn fleet(out: &Output, s: &Scenario, which: Option<FleetServing>) -> Result<()> {
    let spec = s
        .fleet
        .as_ref()
        .ok_or_else(|| Error::Config("scenario has no fleet section".into()))?;
    let which = match which {
        Some(FleetServing::Haps) => FleetNetwork::Haps,
        Some(FleetServing::Terrestrial) => FleetNetwork::Terrestrial,
        Some(FleetServing::All) => FleetNetwork::All,
        None => spec.network,
    };
    let network = s.fleet_network(which);
    if network.is_empty() {
        return Err(Error::Config(format!(
            "fleet network {:?} has no nodes",
            which.name()
        )));
    }
    let k_db = s.k_db_list[0];
    let platoon = spec.platoon(&s.highway)?;
    let trace = run_traversal(
        &network,
        &s.highway,
        &platoon,
        &spec.traversal(k_db, s.rate),
    )?;
    let counts = trace
        .vehicle_ids()
        .into_iter()
        .map(|id| Ok((id, handoff_count(&trace, id)?)))
        .collect::<Result<Vec<_>>>()?;

    let extra = [
        ("network", which.name().to_string()),
        ("k_db", fmt_g6(k_db)),
        ("end", end_reason(&trace.end)),
    ];
    let comments = out.comments(&extra);
    out.write("fleet.csv", &fleet_csv(&trace, &comments))?;
    out.write("handoffs.csv", &handoffs_csv(&counts, &comments))?;

    println!("records: {}", trace.records.len());
    println!("end: {}", end_reason(&trace.end));
    for (id, n) in &counts {
        println!("vehicle {id}: {n} handoffs");
    }
    let per_vehicle: serde_json::Map<String, serde_json::Value> = counts
        .iter()
        .map(|(id, n)| (id.to_string(), json!(n)))
        .collect();
    out.sidecar(
        "fleet",
        &["fleet.csv", "handoffs.csv"],
        json!({ "records": trace.records.len(), "handoffs": per_vehicle }),
    )
}
