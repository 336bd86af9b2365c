//! Reference implementations used only by the tests. They share no code with
//! the library.

#![allow(dead_code, clippy::excessive_precision)]

const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

/// One Gauss-Kronrod 7/15 panel: (Kronrod estimate, |Kronrod - Gauss|).
pub fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut k = WGK[7] * fc;
    let mut g = WG[3] * fc;
    for j in 0..7 {
        let dx = h * XGK[j];
        let s = f(c - dx) + f(c + dx);
        k += WGK[j] * s;
        if j % 2 == 1 {
            g += WG[j / 2] * s;
        }
    }
    (k * h, ((k - g) * h).abs())
}

/// Adaptive G7K15 with interval bisection until each panel's error estimate
/// is below its share of `tol`.
pub fn integrate<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> f64 {
    fn rec<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64, depth: u32) -> f64 {
        let (v, err) = gk15(f, a, b);
        if err <= tol || depth == 0 {
            return v;
        }
        let m = 0.5 * (a + b);
        rec(f, a, m, 0.5 * tol, depth - 1) + rec(f, m, b, 0.5 * tol, depth - 1)
    }
    rec(f, a, b, tol, 40)
}

/// e^-z I0(z) from the power series, summed in log space.
pub fn scaled_i0_series(z: f64) -> f64 {
    if z == 0.0 {
        return 1.0;
    }
    let log_q = 2.0 * (0.5 * z).ln();
    let mut log_t = -z;
    let mut sum = 0.0;
    let mut k = 0.0_f64;
    loop {
        let t = log_t.exp();
        sum += t;
        k += 1.0;
        log_t += log_q - 2.0 * k.ln();
        if k > 0.5 * z + 5.0 && log_t.exp() < 1e-18 * sum {
            return sum;
        }
    }
}

/// Q1(a, b) as the integral of the Rice density from b to infinity.
pub fn marcum_q1_quadrature(a: f64, b: f64) -> f64 {
    let f = |x: f64| x * (-0.5 * (x - a).powi(2)).exp() * scaled_i0_series(a * x);
    let upper = a.max(b) + 40.0;
    let mut lo = b;
    let mut total = 0.0;
    while lo < upper {
        let hi = (lo + 1.0).min(upper);
        total += integrate(&f, lo, hi, 1e-14);
        lo = hi;
    }
    total
}

#[test]
fn gk15_is_exact_for_degree_22() {
    let f = |x: f64| x.powi(22) - 3.0 * x.powi(9) + 1.0;
    let (v, _) = gk15(&f, 0.0, 1.0);
    let exact = 1.0 / 23.0 - 0.3 + 1.0;
    assert!((v - exact).abs() < 1e-14, "{v} vs {exact}");
    let (_, err) = gk15(&|x: f64| x.powi(13), -0.3, 1.0);
    assert!(
        err < 1e-14,
        "Gauss panel must be exact for degree 13, err {err}"
    );
}

#[test]
fn i0_series_known_values() {
    // I0(1) = 1.2660658777520082, I0(10) = 2815.716628466254
    assert!((scaled_i0_series(1.0) * 1f64.exp() - 1.266_065_877_752_008_2).abs() < 1e-14);
    assert!((scaled_i0_series(10.0) * 10f64.exp() / 2_815.716_628_466_254 - 1.0).abs() < 1e-13);
    let z: f64 = 400.0;
    let asym =
        (1.0 + 1.0 / (8.0 * z) + 9.0 / (128.0 * z * z)) / (2.0 * std::f64::consts::PI * z).sqrt();
    assert!((scaled_i0_series(z) / asym - 1.0).abs() < 1e-7);
}

#[test]
fn quadrature_rayleigh_and_symmetry_points() {
    for b in [0.0, 0.5, 1.0, 3.0, 6.0] {
        let q = marcum_q1_quadrature(0.0, b);
        assert!((q - (-0.5 * b * b).exp()).abs() < 1e-12);
    }
    assert!((marcum_q1_quadrature(1.0, 1.0) - 0.732_879_803_796_820_2).abs() < 1e-12);
}
