//! Linear fit of the greedy spread curve and the saturation ratio.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::maximize::GreedyCurve;

pub const DEFAULT_K_MIN: usize = 5;
pub const DEFAULT_K_MAX: usize = 50;

/// Slopes at or below this count as a flat curve.
pub const FLAT_SLOPE: f64 = 1e-9;

/// `tau(k) ~ sigma1 * k + sigma0` over `k_min..=k_max`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SaturationFit {
    pub sigma1: f64,
    pub sigma0: f64,
    pub k_min: usize,
    pub k_max: usize,
}

pub fn fit_saturation(curve: &GreedyCurve, k_min: usize, k_max: usize) -> Result<SaturationFit> {
    fit_saturation_values(&curve.spread_values(), k_min, k_max)
}

/// Least-squares line through `(k, values[k - 1])` for integer `k` in the window.
pub fn fit_saturation_values(values: &[f64], k_min: usize, k_max: usize) -> Result<SaturationFit> {
    if k_min == 0 || k_min >= k_max {
        return Err(Error::invalid(format!(
            "fit window needs 1 <= k_min < k_max, got [{k_min}, {k_max}]"
        )));
    }
    if values.len() < k_max {
        return Err(Error::invalid(format!(
            "curve reaches k = {}, fit needs k = {k_max}",
            values.len()
        )));
    }
    let points = &values[k_min - 1..k_max];
    let count = points.len() as f64;
    let k_mean = (k_min + k_max) as f64 / 2.0;
    let y_mean = points.iter().sum::<f64>() / count;
    let (mut sxx, mut sxy) = (0.0, 0.0);
    for (i, &y) in points.iter().enumerate() {
        let dk = (k_min + i) as f64 - k_mean;
        sxx += dk * dk;
        sxy += dk * (y - y_mean);
    }
    let sigma1 = sxy / sxx;
    Ok(SaturationFit {
        sigma1,
        sigma0: y_mean - sigma1 * k_mean,
        k_min,
        k_max,
    })
}

/// `(sigma1 + sigma0) / sigma1`, or `None` for a flat curve.
pub fn influence_saturation(fit: &SaturationFit) -> Option<f64> {
    if fit.sigma1 <= FLAT_SLOPE {
        None
    } else {
        Some((fit.sigma1 + fit.sigma0) / fit.sigma1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn curve(f: impl Fn(f64) -> f64, len: usize) -> Vec<f64> {
        (1..=len).map(|k| f(k as f64)).collect()
    }

    #[test]
    fn exact_line() {
        let fit = fit_saturation_values(&curve(|k| 2.0 * k + 10.0, 50), 5, 50).unwrap();
        assert!((fit.sigma1 - 2.0).abs() < 1e-12);
        assert!((fit.sigma0 - 10.0).abs() < 1e-12);
        assert!((influence_saturation(&fit).unwrap() - 6.0).abs() < 1e-12);
    }

    #[test]
    fn constant_curve_is_undefined() {
        let fit = fit_saturation_values(&curve(|_| 100.0, 50), 5, 50).unwrap();
        assert_eq!(fit.sigma1, 0.0);
        assert_eq!(fit.sigma0, 100.0);
        assert_eq!(influence_saturation(&fit), None);
    }

    #[test]
    fn residuals_orthogonal_to_design_leave_slope() {
        // (k - 27.5)^2 minus its window mean sums to zero, and being
        // symmetric about the window centre it is orthogonal to k too.
        let centered: Vec<f64> = (5..=50).map(|k| (k as f64 - 27.5).powi(2)).collect();
        let mean = centered.iter().sum::<f64>() / centered.len() as f64;
        let eps = |k: f64| (k - 27.5).powi(2) - mean;
        let sum_eps: f64 = (5..=50).map(|k| eps(k as f64)).sum();
        let sum_keps: f64 = (5..=50).map(|k| k as f64 * eps(k as f64)).sum();
        assert!(sum_eps.abs() < 1e-9 && sum_keps.abs() < 1e-9);

        let fit = fit_saturation_values(&curve(|k| 3.0 * k + eps(k), 50), 5, 50).unwrap();
        assert!((fit.sigma1 - 3.0).abs() < 1e-12);
        assert!(fit.sigma0.abs() < 1e-9);
    }

    #[test]
    fn window_errors() {
        assert!(fit_saturation_values(&[1.0; 10], 5, 50).is_err());
        assert!(fit_saturation_values(&[1.0; 60], 50, 5).is_err());
        assert!(fit_saturation_values(&[1.0; 60], 0, 5).is_err());
    }

    proptest! {
        #[test]
        fn recovers_any_line(slope in -50.0f64..50.0, intercept in -1e3f64..1e3, k_min in 1usize..20, width in 1usize..60) {
            let k_max = k_min + width;
            let fit = fit_saturation_values(&curve(|k| slope * k + intercept, k_max), k_min, k_max).unwrap();
            prop_assert!((fit.sigma1 - slope).abs() <= 1e-9 * slope.abs().max(1.0));
            prop_assert!((fit.sigma0 - intercept).abs() <= 1e-9 * intercept.abs().max(1.0) * (k_max as f64));
            if let Some(is) = influence_saturation(&fit) {
                prop_assert!((is * fit.sigma1 - (fit.sigma1 + fit.sigma0)).abs() <= 1e-9 * (fit.sigma1 + fit.sigma0).abs().max(1.0));
            }
        }

        #[test]
        fn residuals_are_orthogonal(values in prop::collection::vec(0.0f64..1e4, 50)) {
            let fit = fit_saturation_values(&values, 5, 50).unwrap();
            let (mut s, mut sk, mut scale) = (0.0, 0.0, 0.0f64);
            for k in 5..=50 {
                let r = values[k - 1] - (fit.sigma1 * k as f64 + fit.sigma0);
                s += r;
                sk += k as f64 * r;
                scale = scale.max(values[k - 1].abs());
            }
            let scale = scale.max(1.0) * 50.0 * 50.0;
            prop_assert!(s.abs() <= 1e-6 * scale);
            prop_assert!(sk.abs() <= 1e-6 * scale);
        }
    }
}
