//! Local flat-Earth ENU geometry.
//!
//! Coordinates are meters: `x` east, `y` north, `z` altitude above ground.
//! At a 20 km platform altitude and horizontal offsets of a few tens of
//! kilometers the curvature error on slant range stays below 0.02 %, so no
//! geodetic model is used.

use std::ops::{Add, Mul, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{ensure_finite, Error, Result, Violation};

/// Default highway ceiling, 400 ft.
pub const DEFAULT_CEILING_M: f64 = 121.0;

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Point3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Point3 {
    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    pub fn dot(&self, other: &Point3) -> f64 {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    pub fn norm(&self) -> f64 {
        self.dot(self).sqrt()
    }

    fn check(&self, name: &str) -> Result<()> {
        ensure_finite(&format!("{name}.x"), self.x)?;
        ensure_finite(&format!("{name}.y"), self.y)?;
        ensure_finite(&format!("{name}.z"), self.z)
    }
}

impl Add for Point3 {
    type Output = Point3;
    fn add(self, rhs: Point3) -> Point3 {
        Point3::new(self.x + rhs.x, self.y + rhs.y, self.z + rhs.z)
    }
}

impl Sub for Point3 {
    type Output = Point3;
    fn sub(self, rhs: Point3) -> Point3 {
        Point3::new(self.x - rhs.x, self.y - rhs.y, self.z - rhs.z)
    }
}

impl Mul<f64> for Point3 {
    type Output = Point3;
    fn mul(self, rhs: f64) -> Point3 {
        Point3::new(self.x * rhs, self.y * rhs, self.z * rhs)
    }
}

/// A unit-norm direction vector.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Direction(Point3);

impl Direction {
    /// Normalizes `v`; fails on a zero or non-finite vector.
    pub fn new(v: Point3) -> Result<Self> {
        v.check("direction")?;
        let n = v.norm();
        if n == 0.0 {
            return Err(Error::DegenerateGeometry("zero-length direction".into()));
        }
        Ok(Self(v * (1.0 / n)))
    }

    /// Direction from azimuth (degrees counter-clockwise from +x toward +y)
    /// and downtilt (degrees below the horizontal).
    pub fn from_azimuth_downtilt(azimuth_deg: f64, downtilt_deg: f64) -> Self {
        let (az, tilt) = (azimuth_deg.to_radians(), downtilt_deg.to_radians());
        Self(Point3::new(
            tilt.cos() * az.cos(),
            tilt.cos() * az.sin(),
            -tilt.sin(),
        ))
    }

    pub fn vector(&self) -> Point3 {
        self.0
    }
}

pub fn slant_range(a: Point3, b: Point3) -> Result<f64> {
    a.check("a")?;
    b.check("b")?;
    Ok((a - b).norm())
}

/// Unit boresight vector from a platform position toward its aim point.
pub fn boresight_from_aimpoint(haps: Point3, aim: Point3) -> Result<Direction> {
    haps.check("haps")?;
    aim.check("aim")?;
    if haps == aim {
        return Err(Error::DegenerateGeometry(
            "aim point coincides with platform position".into(),
        ));
    }
    Direction::new(aim - haps)
}

/// Angle in degrees between `boresight` and the ray from `origin` to `target`.
pub fn off_axis_angle(origin: Point3, boresight: Direction, target: Point3) -> Result<f64> {
    origin.check("origin")?;
    target.check("target")?;
    let d = target - origin;
    let n = d.norm();
    if n == 0.0 {
        return Err(Error::DegenerateGeometry(
            "target coincides with antenna position".into(),
        ));
    }
    let cos = (boresight.vector().dot(&d) / n).clamp(-1.0, 1.0);
    Ok(cos.acos().to_degrees())
}

/// An altitude band of the highway with its regulated speed limit.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Lane {
    pub z_min: f64,
    pub z_max: f64,
    pub speed_limit: f64,
}

/// Discretized 3D aerial corridor.
#[derive(Debug, Clone, PartialEq)]
pub struct Highway3D {
    /// Corner with the minimum coordinates.
    pub origin: Point3,
    pub extent: [f64; 3],
    pub step: [f64; 3],
    pub lanes: Vec<Lane>,
    pub ceiling: f64,
}

/// Voxel counts along each axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GridDims {
    pub nx: usize,
    pub ny: usize,
    pub nz: usize,
}

impl GridDims {
    pub fn len(&self) -> usize {
        self.nx * self.ny * self.nz
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Row-major index with x varying slowest and z fastest.
    pub fn index(&self, i: usize, j: usize, k: usize) -> usize {
        (i * self.ny + j) * self.nz + k
    }
}

const AXES: [&str; 3] = ["x", "y", "z"];

impl Highway3D {
    /// Box of the given extents centered horizontally on `(cx, cy)` with its
    /// floor at `base_z`.
    pub fn centered(cx: f64, cy: f64, base_z: f64, extent: [f64; 3], step: [f64; 3]) -> Self {
        Self {
            origin: Point3::new(cx - extent[0] / 2.0, cy - extent[1] / 2.0, base_z),
            extent,
            step,
            lanes: Vec::new(),
            ceiling: DEFAULT_CEILING_M,
        }
    }

    pub fn with_lanes(mut self, lanes: Vec<Lane>) -> Self {
        self.lanes = lanes;
        self
    }

    pub fn top(&self) -> f64 {
        self.origin.z + self.extent[2]
    }

    /// Hard invariant violations. The ceiling is reported separately by
    /// [`Highway3D::warnings`].
    pub fn violations(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        if !self.origin.is_finite() {
            out.push(Violation::new("origin_m", "coordinates must be finite"));
        }
        for (axis, (&ext, &step)) in AXES.iter().zip(self.extent.iter().zip(&self.step)) {
            if !(ext.is_finite() && ext > 0.0) {
                out.push(Violation::new(
                    format!("extent_m.{axis}"),
                    "extent must be positive",
                ));
                continue;
            }
            if !(step.is_finite() && step > 0.0) {
                out.push(Violation::new(
                    format!("step_m.{axis}"),
                    "step must be positive",
                ));
                continue;
            }
            if step > ext {
                out.push(Violation::new(
                    format!("step_m.{axis}"),
                    "step must not exceed the extent",
                ));
            } else if axis_count(ext, step).is_none() {
                out.push(Violation::new(
                    format!("step_m.{axis}"),
                    format!("extent {ext} m is not an integer multiple of step {step} m"),
                ));
            }
        }
        let (lo, hi) = (self.origin.z, self.top());
        for (i, lane) in self.lanes.iter().enumerate() {
            let key = format!("lanes[{i}]");
            if !(lane.z_min <= lane.z_max) {
                out.push(Violation::new(&key, "lane band must have z_min <= z_max"));
            }
            if lane.z_min < lo || lane.z_max > hi {
                out.push(Violation::new(
                    &key,
                    format!(
                        "lane band [{}, {}] m lies outside the highway [{lo}, {hi}] m",
                        lane.z_min, lane.z_max
                    ),
                ));
            }
            if !(lane.speed_limit.is_finite() && lane.speed_limit > 0.0) {
                out.push(Violation::new(&key, "speed limit must be positive"));
            }
        }
        if !(self.ceiling.is_finite() && self.ceiling > 0.0) {
            out.push(Violation::new("ceiling_m", "ceiling must be positive"));
        }
        out
    }

    pub fn warnings(&self) -> Vec<Violation> {
        if self.top() > self.ceiling {
            vec![Violation::new(
                "extent_m.z",
                format!(
                    "highway top {} m exceeds the {} m ceiling",
                    self.top(),
                    self.ceiling
                ),
            )]
        } else {
            Vec::new()
        }
    }

    pub fn dims(&self) -> Result<GridDims> {
        let v = self.violations();
        if !v.is_empty() {
            return Err(Error::Validation(v));
        }
        let n = |a: usize| axis_count(self.extent[a], self.step[a]).expect("validated");
        Ok(GridDims {
            nx: n(0),
            ny: n(1),
            nz: n(2),
        })
    }

    pub fn contains(&self, p: Point3) -> bool {
        let lo = self.origin;
        p.x >= lo.x
            && p.x <= lo.x + self.extent[0]
            && p.y >= lo.y
            && p.y <= lo.y + self.extent[1]
            && p.z >= lo.z
            && p.z <= lo.z + self.extent[2]
    }

    pub fn voxel_center(&self, i: usize, j: usize, k: usize) -> Point3 {
        self.origin
            + Point3::new(
                (i as f64 + 0.5) * self.step[0],
                (j as f64 + 0.5) * self.step[1],
                (k as f64 + 0.5) * self.step[2],
            )
    }
}

/// Centers of every voxel, x slowest and z fastest.
pub fn voxel_centers(hw: &Highway3D) -> Result<Vec<Point3>> {
    let d = hw.dims()?;
    let mut out = Vec::with_capacity(d.len());
    for i in 0..d.nx {
        for j in 0..d.ny {
            for k in 0..d.nz {
                out.push(hw.voxel_center(i, j, k));
            }
        }
    }
    Ok(out)
}

/// `extent / step` when it is an integer to within 1e-9 relative.
fn axis_count(extent: f64, step: f64) -> Option<usize> {
    let ratio = extent / step;
    let n = ratio.round();
    if n >= 1.0 && (ratio - n).abs() <= 1e-9 * n {
        Some(n as usize)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const HAPS: Point3 = Point3::new(0.0, 0.0, 20_000.0);

    fn table1_highway() -> Highway3D {
        Highway3D::centered(0.0, 0.0, 0.0, [100.0, 10.0, 100.0], [10.0, 10.0, 10.0])
    }

    #[test]
    fn slant_range_examples() {
        assert_eq!(slant_range(HAPS, Point3::default()).unwrap(), 20_000.0);
        assert_eq!(
            slant_range(Point3::default(), Point3::default()).unwrap(),
            0.0
        );
        let d = slant_range(HAPS, Point3::new(10_000.0, 500.0, 0.0)).unwrap();
        assert!((d - 22_366.27).abs() < 0.01, "{d}");
    }

    #[test]
    fn slant_range_rejects_nan() {
        let err = slant_range(Point3::new(f64::NAN, 0.0, 0.0), HAPS).unwrap_err();
        assert!(matches!(err, Error::InvalidInput(_)));
    }

    #[test]
    fn boresight_examples() {
        let nadir = boresight_from_aimpoint(HAPS, Point3::default()).unwrap();
        assert_eq!(nadir.vector(), Point3::new(0.0, 0.0, -1.0));

        let v = boresight_from_aimpoint(HAPS, Point3::new(20_000.0, 0.0, 0.0))
            .unwrap()
            .vector();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert!((v.x - h).abs() < 1e-15 && v.y == 0.0 && (v.z + h).abs() < 1e-15);

        let v = boresight_from_aimpoint(HAPS, Point3::new(10_000.0, 500.0, 0.0))
            .unwrap()
            .vector();
        assert!((v.norm() - 1.0).abs() < 1e-12);
        assert!((v.x - 10_000.0 / 22_366.269_246_345).abs() < 1e-12);
    }

    #[test]
    fn boresight_coincident_is_degenerate() {
        assert!(matches!(
            boresight_from_aimpoint(HAPS, HAPS),
            Err(Error::DegenerateGeometry(_))
        ));
    }

    #[test]
    fn off_axis_examples() {
        let nadir = boresight_from_aimpoint(HAPS, Point3::default()).unwrap();
        assert_eq!(off_axis_angle(HAPS, nadir, Point3::default()).unwrap(), 0.0);
        let t = off_axis_angle(HAPS, nadir, Point3::new(20_000.0, 0.0, 0.0)).unwrap();
        assert!((t - 45.0).abs() < 1e-12);

        // arccos((10000, 500, -20000)/22366.27 . (0, 0, -1)) = arccos(0.894203669)
        let aimed = boresight_from_aimpoint(HAPS, Point3::new(10_000.0, 500.0, 0.0)).unwrap();
        let t = off_axis_angle(HAPS, aimed, Point3::default()).unwrap();
        assert!((t - 26.593_674).abs() < 1e-5, "{t}");

        assert!(matches!(
            off_axis_angle(HAPS, aimed, HAPS),
            Err(Error::DegenerateGeometry(_))
        ));
    }

    #[test]
    fn table1_voxels() {
        let c = voxel_centers(&table1_highway()).unwrap();
        assert_eq!(c.len(), 100);
        assert_eq!(c[0], table1_highway().origin + Point3::new(5.0, 5.0, 5.0));
        // z varies fastest
        assert_eq!(c[1].z, 15.0);
        assert_eq!(c[10].x, c[0].x + 10.0);
    }

    #[test]
    fn single_and_pair_voxels() {
        let one = Highway3D::centered(0.0, 0.0, 0.0, [10.0, 10.0, 10.0], [10.0, 10.0, 10.0]);
        assert_eq!(
            voxel_centers(&one).unwrap(),
            vec![Point3::new(0.0, 0.0, 5.0)]
        );

        let mut two = one.clone();
        two.origin = Point3::default();
        two.extent[0] = 20.0;
        let xs: Vec<f64> = voxel_centers(&two).unwrap().iter().map(|p| p.x).collect();
        assert_eq!(xs, vec![5.0, 15.0]);
    }

    #[test]
    fn non_integer_voxel_count_is_rejected() {
        let mut hw = table1_highway();
        hw.step[0] = 30.0;
        let err = voxel_centers(&hw).unwrap_err();
        match err {
            Error::Validation(v) => assert_eq!(v[0].key, "step_m.x"),
            e => panic!("unexpected {e:?}"),
        }
        hw.step[0] = 200.0;
        assert!(voxel_centers(&hw).is_err());
    }

    #[test]
    fn lanes_outside_band_are_violations() {
        let hw = table1_highway().with_lanes(vec![Lane {
            z_min: 90.0,
            z_max: 130.0,
            speed_limit: 10.0,
        }]);
        assert_eq!(hw.violations().len(), 1);
    }

    #[test]
    fn ceiling_is_a_warning() {
        let mut hw = table1_highway();
        hw.origin.z = 50.0;
        assert!(hw.violations().is_empty());
        assert_eq!(hw.warnings().len(), 1);
    }

    fn point() -> impl Strategy<Value = Point3> {
        (-1e4..1e4f64, -1e4..1e4f64, 0.0..3e4f64).prop_map(|(x, y, z)| Point3::new(x, y, z))
    }

    proptest! {
        #[test]
        fn slant_range_is_a_metric(a in point(), b in point(), c in point()) {
            let ab = slant_range(a, b).unwrap();
            prop_assert_eq!(ab, slant_range(b, a).unwrap());
            prop_assert!(ab >= 0.0);
            let ac = slant_range(a, c).unwrap();
            let cb = slant_range(c, b).unwrap();
            prop_assert!(ab <= ac + cb + 1e-9 * (ac + cb));
        }

        #[test]
        fn off_axis_is_scale_invariant(h in point(), aim in point(), t in point(), s in 0.01..100.0f64) {
            prop_assume!((aim - h).norm() > 1.0 && (t - h).norm() > 1.0);
            let b = boresight_from_aimpoint(h, aim).unwrap();
            let a1 = off_axis_angle(h, b, t).unwrap();
            let a2 = off_axis_angle(h, b, h + (t - h) * s).unwrap();
            prop_assert!((a1 - a2).abs() < 1e-6);
            prop_assert!((0.0..=180.0).contains(&a1));
        }

        #[test]
        fn voxel_centers_fill_the_box(
            n in (1usize..6, 1usize..6, 1usize..6),
            step in (0.5..20.0f64, 0.5..20.0f64, 0.5..20.0f64),
        ) {
            let extent = [n.0 as f64 * step.0, n.1 as f64 * step.1, n.2 as f64 * step.2];
            let hw = Highway3D::centered(3.0, -7.0, 0.0, extent, [step.0, step.1, step.2]);
            let c = voxel_centers(&hw).unwrap();
            prop_assert_eq!(c.len(), n.0 * n.1 * n.2);
            let lo = hw.origin;
            for p in c {
                prop_assert!(p.x > lo.x && p.x < lo.x + extent[0]);
                prop_assert!(p.y > lo.y && p.y < lo.y + extent[1]);
                prop_assert!(p.z > lo.z && p.z < lo.z + extent[2]);
            }
        }
    }
}
