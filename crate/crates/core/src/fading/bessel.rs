//! Exponentially scaled modified Bessel functions of the first kind.

/// Values above this are rescaled during the backward recurrence.
const RESCALE_AT: f64 = 1e250;

/// `exp(-x) I_k(x)` for `k = 0..=n_max`, `x > 0`.
///
/// Miller's backward recurrence `I_{k-1} = I_{k+1} + (2k / x) I_k`, started
/// well past the last requested order and normalized with
/// `I_0(x) + 2 sum_{k>=1} I_k(x) = exp(x)`.
pub fn scaled_bessel_i_seq(x: f64, n_max: usize) -> Vec<f64> {
    assert!(
        x > 0.0 && x.is_finite(),
        "scaled_bessel_i_seq needs finite x > 0"
    );
    let root = x.sqrt();
    // The normalization sum needs every order with non-negligible weight,
    // which extends to roughly 10 sqrt(x) for large x.
    let needed = n_max.max((10.0 * root).ceil() as usize + 40);
    let start = needed + 60 + (2.0 * root).ceil() as usize;

    let mut vals = vec![0.0; start + 2];
    vals[start] = 1e-300;
    for k in (1..=start).rev() {
        vals[k - 1] = vals[k + 1] + (2.0 * k as f64 / x) * vals[k];
        if vals[k - 1] > RESCALE_AT {
            for v in &mut vals[k - 1..=start] {
                *v /= RESCALE_AT;
            }
        }
    }
    let norm = vals[0] + 2.0 * vals[1..=start].iter().rev().sum::<f64>();
    vals.truncate(n_max + 1);
    for v in &mut vals {
        *v /= norm;
    }
    vals
}

/// `exp(-x) I_0(x)`.
pub fn scaled_bessel_i0(x: f64) -> f64 {
    if x == 0.0 {
        1.0
    } else {
        scaled_bessel_i_seq(x.abs(), 0)[0]
    }
}
