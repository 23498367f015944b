//! Boxplot statistics with linear-interpolation quartiles and 1.5·IQR fences.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoxplotSummary {
    pub count: usize,
    pub median: f64,
    pub q25: f64,
    pub q75: f64,
    /// Smallest observation not below `q25 - 1.5·IQR`.
    pub lower_whisker: f64,
    /// Largest observation not above `q75 + 1.5·IQR`.
    pub upper_whisker: f64,
    /// Observations outside the fences, ascending.
    pub outliers: Vec<f64>,
}

impl BoxplotSummary {
    pub fn iqr(&self) -> f64 {
        self.q75 - self.q25
    }
}

/// Quantile of sorted data by interpolating between order statistics at
/// position `(n-1)·p`.
pub fn quantile_sorted(sorted: &[f64], p: f64) -> f64 {
    let h = (sorted.len() - 1) as f64 * p;
    let lo = h.floor() as usize;
    let hi = (lo + 1).min(sorted.len() - 1);
    sorted[lo] + (h - lo as f64) * (sorted[hi] - sorted[lo])
}

pub fn boxplot_summary(errors: &[f64]) -> Result<BoxplotSummary> {
    if errors.is_empty() {
        return Err(Error::Argument("boxplot of an empty sample".into()));
    }
    if errors.iter().any(|x| x.is_nan()) {
        return Err(Error::Argument("boxplot sample contains NaN".into()));
    }
    let mut sorted = errors.to_vec();
    sorted.sort_by(f64::total_cmp);

    let q25 = quantile_sorted(&sorted, 0.25);
    let median = quantile_sorted(&sorted, 0.5);
    let q75 = quantile_sorted(&sorted, 0.75);
    let iqr = q75 - q25;
    let (lo_fence, hi_fence) = (q25 - 1.5 * iqr, q75 + 1.5 * iqr);

    let inside = || {
        sorted
            .iter()
            .copied()
            .filter(|&x| x >= lo_fence && x <= hi_fence)
    };
    // The median always lies inside the fences, so `inside` is nonempty.
    let lower_whisker = inside().next().unwrap_or(median);
    let upper_whisker = inside().next_back().unwrap_or(median);
    let outliers = sorted
        .iter()
        .copied()
        .filter(|&x| x < lo_fence || x > hi_fence)
        .collect();

    Ok(BoxplotSummary {
        count: sorted.len(),
        median,
        q25,
        q75,
        lower_whisker,
        upper_whisker,
        outliers,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn constant_sample() {
        let s = boxplot_summary(&[1.0; 4]).unwrap();
        assert_eq!((s.median, s.iqr()), (1.0, 0.0));
        assert!(s.outliers.is_empty());
    }

    #[test]
    fn far_point_is_an_outlier() {
        // q25 = 1, q75 = 3, upper fence 6.
        let s = boxplot_summary(&[0.0, 1.0, 2.0, 3.0, 100.0]).unwrap();
        assert_eq!((s.q25, s.median, s.q75), (1.0, 2.0, 3.0));
        assert_eq!(s.outliers, vec![100.0]);
        assert_eq!((s.lower_whisker, s.upper_whisker), (0.0, 3.0));
    }

    #[test]
    fn singleton() {
        let s = boxplot_summary(&[5.0]).unwrap();
        for v in [s.median, s.q25, s.q75, s.lower_whisker, s.upper_whisker] {
            assert_eq!(v, 5.0);
        }
    }

    #[test]
    fn interpolated_quartiles() {
        let s = boxplot_summary(&[4.0, 1.0, 3.0, 2.0]).unwrap();
        assert_eq!((s.q25, s.median, s.q75), (1.75, 2.5, 3.25));
    }

    #[test]
    fn rejects_empty_and_nan() {
        assert!(boxplot_summary(&[]).is_err());
        assert!(boxplot_summary(&[1.0, f64::NAN]).is_err());
    }

    proptest! {
        #[test]
        fn summary_invariants(xs in proptest::collection::vec(-1e3f64..1e3, 1..60)) {
            let s = boxplot_summary(&xs).unwrap();
            prop_assert!(s.q25 <= s.median && s.median <= s.q75);
            prop_assert!(s.lower_whisker <= s.upper_whisker);
            let (lo, hi) = (s.q25 - 1.5 * s.iqr(), s.q75 + 1.5 * s.iqr());
            let expected: usize = xs.iter().filter(|&&x| x < lo || x > hi).count();
            prop_assert_eq!(s.outliers.len(), expected);
            prop_assert!(s.lower_whisker >= lo && s.upper_whisker <= hi);
            prop_assert_eq!(s.count, xs.len());
        }
    }
}
