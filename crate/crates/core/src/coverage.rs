//! Per-voxel coverage over the aerial highway, volumetric averaging, sweeps
//! and antenna-gain cross-sections.

use rayon::prelude::*;

use crate::antenna::AntennaPattern;
use crate::error::{Error, Result, Violation};
use crate::fading::outage_from_db;
use crate::geometry::{
    boresight_from_aimpoint, off_axis_angle, slant_range, voxel_centers, Direction, GridDims,
    Highway3D, Point3,
};
use crate::linkbudget::{mean_snr_db, RadioConfig};

/// Hard altitude bounds for a HAPS, meters.
pub const HAPS_ALTITUDE_RANGE: (f64, f64) = (18_000.0, 50_000.0);
/// Altitude band outside of which a HAPS only draws a warning.
pub const HAPS_NOMINAL_BAND: (f64, f64) = (20_000.0, 50_000.0);

/// Antenna gain and mean SNR seen at one receiver location.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinkSample {
    pub gain_dbi: f64,
    pub mean_snr_db: f64,
}

/// Anything that can serve a receiver at a point.
pub trait Transmitter {
    fn link_at(&self, p: Point3) -> Result<LinkSample>;
    fn tx_power_dbm(&self) -> f64;
    fn set_tx_power_dbm(&mut self, dbm: f64);
}

#[derive(Debug, Clone, PartialEq)]
pub struct HapsNode {
    pub position: Point3,
    pub radio: RadioConfig,
    pub pattern: AntennaPattern,
    pub aim_point: Point3,
}

impl HapsNode {
    /// A platform at `altitude` meters above the origin, aimed at `aim_point`.
    pub fn new(
        altitude: f64,
        radio: RadioConfig,
        pattern: AntennaPattern,
        aim_point: Point3,
    ) -> Self {
        Self {
            position: Point3::new(0.0, 0.0, altitude),
            radio,
            pattern,
            aim_point,
        }
    }

    pub fn boresight(&self) -> Result<Direction> {
        boresight_from_aimpoint(self.position, self.aim_point)
    }

    pub fn gain_at(&self, p: Point3) -> Result<f64> {
        let theta = off_axis_angle(self.position, self.boresight()?, p)?;
        self.pattern.gain_dbi(theta)
    }

    pub fn violations(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let z = self.position.z;
        if !self.position.is_finite() {
            out.push(Violation::new("position_m", "coordinates must be finite"));
        } else if !(HAPS_ALTITUDE_RANGE.0..=HAPS_ALTITUDE_RANGE.1).contains(&z) {
            out.push(Violation::new(
                "position_m",
                format!(
                    "altitude {z} m outside [{}, {}] m",
                    HAPS_ALTITUDE_RANGE.0, HAPS_ALTITUDE_RANGE.1
                ),
            ));
        }
        if !self.aim_point.is_finite() {
            out.push(Violation::new("aim_point_m", "coordinates must be finite"));
        } else if self.aim_point == self.position {
            out.push(Violation::new(
                "aim_point_m",
                "aim point coincides with the platform",
            ));
        }
        out.extend(
            self.pattern
                .violations()
                .into_iter()
                .map(|v| v.nested("antenna")),
        );
        out.extend(
            self.radio
                .violations()
                .into_iter()
                .map(|v| v.nested("radio")),
        );
        out
    }

    pub fn warnings(&self) -> Vec<Violation> {
        let z = self.position.z;
        if z.is_finite()
            && (HAPS_ALTITUDE_RANGE.0..=HAPS_ALTITUDE_RANGE.1).contains(&z)
            && !(HAPS_NOMINAL_BAND.0..=HAPS_NOMINAL_BAND.1).contains(&z)
        {
            vec![Violation::new(
                "position_m",
                format!("altitude {z} m is below the 20-50 km HAPS band"),
            )]
        } else {
            Vec::new()
        }
    }
}

impl Transmitter for HapsNode {
    fn link_at(&self, p: Point3) -> Result<LinkSample> {
        let gain = self.gain_at(p)?;
        let d = slant_range(self.position, p)?;
        Ok(LinkSample {
            gain_dbi: gain,
            mean_snr_db: mean_snr_db(&self.radio, gain, d)?,
        })
    }

    fn tx_power_dbm(&self) -> f64 {
        self.radio.tx_power_dbm
    }

    fn set_tx_power_dbm(&mut self, dbm: f64) {
        self.radio.tx_power_dbm = dbm;
    }
}

/// Boresight of one sector: azimuth counter-clockwise from +x, downtilt
/// below the horizontal, both in degrees.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sector {
    pub azimuth_deg: f64,
    pub downtilt_deg: f64,
}

/// Sectorized terrestrial base station.
#[derive(Debug, Clone, PartialEq)]
pub struct TerrestrialBs {
    pub position: Point3,
    pub pattern: AntennaPattern,
    pub sectors: Vec<Sector>,
    pub radio: RadioConfig,
    /// When false, nothing is radiated above the antenna's horizontal plane:
    /// receivers higher than the mast see no signal at all.
    pub radiates_skyward: bool,
}

impl TerrestrialBs {
    /// 30 m mast, three sectors at 120 deg spacing with 6 deg downtilt.
    pub fn three_sector(x: f64, y: f64, radio: RadioConfig, pattern: AntennaPattern) -> Self {
        Self {
            position: Point3::new(x, y, 30.0),
            pattern,
            sectors: [0.0, 120.0, 240.0]
                .iter()
                .map(|&az| Sector {
                    azimuth_deg: az,
                    downtilt_deg: 6.0,
                })
                .collect(),
            radio,
            radiates_skyward: false,
        }
    }

    /// Gain of the best sector toward `p`.
    pub fn gain_at(&self, p: Point3) -> Result<f64> {
        if !self.radiates_skyward && p.z > self.position.z {
            return Ok(f64::NEG_INFINITY);
        }
        let mut best = f64::NEG_INFINITY;
        for s in &self.sectors {
            let dir = Direction::from_azimuth_downtilt(s.azimuth_deg, s.downtilt_deg);
            let g = self
                .pattern
                .gain_dbi(off_axis_angle(self.position, dir, p)?)?;
            best = best.max(g);
        }
        Ok(best)
    }

    pub fn violations(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        if !self.position.is_finite() || self.position.z < 0.0 {
            out.push(Violation::new(
                "position_m",
                "coordinates must be finite with a non-negative height",
            ));
        }
        if self.sectors.is_empty() {
            out.push(Violation::new("sectors", "at least one sector is required"));
        }
        for (i, s) in self.sectors.iter().enumerate() {
            if !(s.downtilt_deg >= 0.0 && s.downtilt_deg <= 90.0) {
                out.push(Violation::new(
                    format!("sectors[{i}].downtilt_deg"),
                    "downtilt must be in [0, 90] deg",
                ));
            }
            if !s.azimuth_deg.is_finite() {
                out.push(Violation::new(
                    format!("sectors[{i}].azimuth_deg"),
                    "azimuth must be finite",
                ));
            }
        }
        out.extend(
            self.pattern
                .violations()
                .into_iter()
                .map(|v| v.nested("antenna")),
        );
        out.extend(
            self.radio
                .violations()
                .into_iter()
                .map(|v| v.nested("radio")),
        );
        out
    }
}

impl Transmitter for TerrestrialBs {
    fn link_at(&self, p: Point3) -> Result<LinkSample> {
        let gain = self.gain_at(p)?;
        let snr = if gain == f64::NEG_INFINITY {
            f64::NEG_INFINITY
        } else {
            mean_snr_db(&self.radio, gain, slant_range(self.position, p)?)?
        };
        Ok(LinkSample {
            gain_dbi: gain,
            mean_snr_db: snr,
        })
    }

    fn tx_power_dbm(&self) -> f64 {
        self.radio.tx_power_dbm
    }

    fn set_tx_power_dbm(&mut self, dbm: f64) {
        self.radio.tx_power_dbm = dbm;
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Node {
    Haps(HapsNode),
    Terrestrial(TerrestrialBs),
}

impl Node {
    pub fn position(&self) -> Point3 {
        match self {
            Node::Haps(h) => h.position,
            Node::Terrestrial(t) => t.position,
        }
    }
}

impl Transmitter for Node {
    fn link_at(&self, p: Point3) -> Result<LinkSample> {
        match self {
            Node::Haps(h) => h.link_at(p),
            Node::Terrestrial(t) => t.link_at(p),
        }
    }

    fn tx_power_dbm(&self) -> f64 {
        match self {
            Node::Haps(h) => h.tx_power_dbm(),
            Node::Terrestrial(t) => t.tx_power_dbm(),
        }
    }

    fn set_tx_power_dbm(&mut self, dbm: f64) {
        match self {
            Node::Haps(h) => h.set_tx_power_dbm(dbm),
            Node::Terrestrial(t) => t.set_tx_power_dbm(dbm),
        }
    }
}

/// Index and link of the node with the highest mean SNR at `p`. Ties go to
/// the lowest index.
pub fn best_server<T: Transmitter>(nodes: &[T], p: Point3) -> Result<(usize, LinkSample)> {
    let mut best: Option<(usize, LinkSample)> = None;
    for (id, node) in nodes.iter().enumerate() {
        let s = node.link_at(p)?;
        match best {
            Some((_, b)) if s.mean_snr_db <= b.mean_snr_db => {}
            _ => best = Some((id, s)),
        }
    }
    best.ok_or_else(|| Error::InvalidInput("network has no nodes".into()))
}

/// A set of nodes acting as one transmitter through best-server selection.
#[derive(Debug, Clone, PartialEq)]
pub struct Network(pub Vec<Node>);

impl Transmitter for Network {
    fn link_at(&self, p: Point3) -> Result<LinkSample> {
        best_server(&self.0, p).map(|(_, s)| s)
    }

    /// Power of the first node.
    fn tx_power_dbm(&self) -> f64 {
        self.0.first().map_or(f64::NAN, |n| n.tx_power_dbm())
    }

    /// Sets every node to the same power.
    fn set_tx_power_dbm(&mut self, dbm: f64) {
        for n in &mut self.0 {
            n.set_tx_power_dbm(dbm);
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VoxelRecord {
    pub center: Point3,
    pub gain_dbi: f64,
    pub mean_snr_db: f64,
    pub outage: f64,
}

/// Per-voxel link results in [`voxel_centers`] order.
#[derive(Debug, Clone, PartialEq)]
pub struct OutageGrid {
    pub highway: Highway3D,
    pub dims: GridDims,
    pub records: Vec<VoxelRecord>,
}

impl OutageGrid {
    pub fn record(&self, i: usize, j: usize, k: usize) -> &VoxelRecord {
        &self.records[self.dims.index(i, j, k)]
    }

    pub fn min_snr_db(&self) -> f64 {
        self.records
            .iter()
            .map(|r| r.mean_snr_db)
            .fold(f64::INFINITY, f64::min)
    }

    pub fn outage_range(&self) -> (f64, f64) {
        self.records
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), r| {
                (lo.min(r.outage), hi.max(r.outage))
            })
    }
}

/// Gain, mean SNR and outage at every voxel center. Voxels are evaluated in
/// parallel on the current rayon pool; the result does not depend on the
/// pool size.
pub fn outage_map<T: Transmitter + Sync>(
    node: &T,
    hw: &Highway3D,
    k_db: f64,
    rate: f64,
) -> Result<OutageGrid> {
    let dims = hw.dims()?;
    let centers = voxel_centers(hw)?;
    let records = centers
        .par_iter()
        .map(|&center| {
            let s = node.link_at(center)?;
            Ok(VoxelRecord {
                center,
                gain_dbi: s.gain_dbi,
                mean_snr_db: s.mean_snr_db,
                outage: outage_from_db(s.mean_snr_db, k_db, rate)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(OutageGrid {
        highway: hw.clone(),
        dims,
        records,
    })
}

/// Unweighted mean of the per-voxel outage. Voxels all have the same
/// volume; a non-uniform grid would need volume weights here.
pub fn volumetric_average(grid: &OutageGrid) -> Result<f64> {
    if grid.records.is_empty() {
        return Err(Error::InvalidInput("outage grid is empty".into()));
    }
    Ok(grid.records.iter().map(|r| r.outage).sum::<f64>() / grid.records.len() as f64)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow {
    pub k_db: f64,
    pub tx_dbm: f64,
    pub avg_outage: f64,
}

/// Volumetric average outage over the product of K factors and transmit
/// powers, K outer and power inner, both in input order.
pub fn sweep<T: Transmitter + Clone + Sync>(
    node: &T,
    hw: &Highway3D,
    k_db_list: &[f64],
    tx_dbm_list: &[f64],
    rate: f64,
) -> Result<Vec<SweepRow>> {
    if k_db_list.is_empty() || tx_dbm_list.is_empty() {
        return Err(Error::InvalidInput("sweep lists must be non-empty".into()));
    }
    let mut rows = Vec::with_capacity(k_db_list.len() * tx_dbm_list.len());
    for &k_db in k_db_list {
        for &tx_dbm in tx_dbm_list {
            let mut n = node.clone();
            n.set_tx_power_dbm(tx_dbm);
            let grid = outage_map(&n, hw, k_db, rate)?;
            rows.push(SweepRow {
                k_db,
                tx_dbm,
                avg_outage: volumetric_average(&grid)?,
            });
        }
    }
    Ok(rows)
}

/// Transmit power at which the weakest voxel's mean SNR equals `target_db`.
pub fn tx_power_for_min_snr<T: Transmitter + Clone + Sync>(
    node: &T,
    hw: &Highway3D,
    target_db: f64,
) -> Result<f64> {
    let mut n = node.clone();
    n.set_tx_power_dbm(0.0);
    let grid = outage_map(&n, hw, 0.0, 1.0)?;
    let min = grid.min_snr_db();
    if !min.is_finite() {
        return Err(Error::InvalidInput(
            "some voxel receives no power at any transmit power".into(),
        ));
    }
    Ok(target_db - min)
}

/// Horizontal sampling window for a gain cross-section. Both bounds are
/// sampled.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlaneWindow {
    pub x_range: (f64, f64),
    pub y_range: (f64, f64),
    pub step: f64,
}

impl PlaneWindow {
    fn axis(range: (f64, f64), step: f64) -> Result<Vec<f64>> {
        let (lo, hi) = range;
        if !(lo.is_finite() && hi.is_finite() && lo <= hi) {
            return Err(Error::InvalidInput(format!(
                "bad sampling range [{lo}, {hi}]"
            )));
        }
        let n = ((hi - lo) / step + 1e-9).floor() as usize;
        Ok((0..=n).map(|i| lo + i as f64 * step).collect())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GainSample {
    pub position: Point3,
    pub gain_dbi: f64,
}

/// HAPS antenna gain on a horizontal grid at each of `heights`, height
/// outermost, then x, then y.
pub fn gain_cross_section(
    node: &HapsNode,
    heights: &[f64],
    window: &PlaneWindow,
    ceiling: f64,
) -> Result<Vec<GainSample>> {
    if !(window.step > 0.0 && window.step.is_finite()) {
        return Err(Error::InvalidInput("sampling step must be positive".into()));
    }
    for &h in heights {
        if !(0.0..=ceiling).contains(&h) {
            return Err(Error::InvalidInput(format!(
                "height {h} m outside [0, {ceiling}] m"
            )));
        }
    }
    let xs = PlaneWindow::axis(window.x_range, window.step)?;
    let ys = PlaneWindow::axis(window.y_range, window.step)?;
    let mut out = Vec::with_capacity(heights.len() * xs.len() * ys.len());
    for &z in heights {
        for &x in &xs {
            for &y in &ys {
                let p = Point3::new(x, y, z);
                out.push(GainSample {
                    position: p,
                    gain_dbi: node.gain_at(p)?,
                });
            }
        }
    }
    Ok(out)
}
