//! Map a measured witness value to a certified lower bound on stellar rank.
//!
//! A value strictly below the rank-m threshold excludes every state of
//! stellar rank at most m, so the measured state has rank at least m + 1.
//! Ties certify nothing: computed thresholds are upper bounds on the true
//! infima, so only the strict inequality is conservative.

use serde::{Deserialize, Serialize};

use crate::engine::ThresholdTable;
use crate::error::{Error, Result};

/// Which threshold scale a measured value is compared against.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Scale {
    /// Raw thresholds W_m or V_m.
    Raw,
    /// Thresholds normalized by the Gaussian limit (zeta_m or xi_m).
    Normalized,
}

/// Outcome of certifying one measured witness value.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CertificationResult {
    /// The state has stellar rank at least this; 0 certifies nothing.
    pub certified_min_rank: usize,
    /// The measured value that was compared.
    pub witness_value: f64,
    /// The largest threshold the value crossed, present iff rank >= 1.
    pub crossed_threshold: Option<f64>,
    /// True when the comparison used the normalized scale.
    pub normalized: bool,
}

/// Certify a measured witness value against a threshold table.
///
/// Returns rank `1 + max{m : value < table[m]}` under strict comparison,
/// or 0 when the value does not even beat the Gaussian limit.
pub fn certify(value: f64, table: &ThresholdTable, scale: Scale) -> Result<CertificationResult> {
    if value < -1e-9 {
        return Err(Error::InvalidMeasurement(value));
    }
    let value = value.max(0.0);
    let thresholds = match scale {
        Scale::Raw => &table.raw,
        Scale::Normalized => &table.normalized,
    };
    if thresholds.is_empty() {
        return Err(Error::ScaleMismatch("threshold table is empty".into()));
    }
    if thresholds.windows(2).any(|w| w[1] > w[0] + 1e-9) {
        return Err(Error::ScaleMismatch(format!(
            "{:?}-scale thresholds are not non-increasing",
            scale
        )));
    }
    let mut certified = 0usize;
    let mut crossed = None;
    for (m, &t) in thresholds.iter().enumerate() {
        if value < t {
            certified = m + 1;
            crossed = Some(t);
        }
    }
    Ok(CertificationResult {
        certified_min_rank: certified,
        witness_value: value,
        crossed_threshold: crossed,
        normalized: matches!(scale, Scale::Normalized),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::{ThresholdTable, WitnessKind};
    use crate::families::WitnessFamily;

    fn table_from(raw: Vec<f64>, family: WitnessFamily, kind: WitnessKind) -> ThresholdTable {
        let normalized = if raw[0] > 0.0 {
            raw.iter().map(|v| v / raw[0]).collect()
        } else {
            let mut n = vec![0.0; raw.len()];
            n[0] = 1.0;
            n
        };
        ThresholdTable {
            family,
            max_rank: raw.len() - 1,
            witness_kind: kind,
            raw,
            normalized,
            entries: Vec::new(),
        }
    }

    #[test]
    fn certifies_rank_two_on_cubic_scale() {
        let xi = vec![1.0, 0.7169, 0.5912, 0.5172];
        let table = table_from(xi, WitnessFamily::cubic(), WitnessKind::Variance);
        let res = certify(0.70, &table, Scale::Normalized).unwrap();
        assert_eq!(res.certified_min_rank, 2);
        assert!((res.crossed_threshold.unwrap() - 0.7169).abs() < 1e-12);
        assert!(res.normalized);
    }

    #[test]
    fn value_above_gaussian_limit_certifies_nothing() {
        let table =
            table_from(vec![1.0, 0.9, 0.8], WitnessFamily::gkp(), WitnessKind::Expectation);
        let res = certify(1.5, &table, Scale::Normalized).unwrap();
        assert_eq!(res.certified_min_rank, 0);
        assert_eq!(res.crossed_threshold, None);
    }

    #[test]
    fn zero_against_fock_table_stops_at_zero_thresholds() {
        // Strict inequality fails on the zero tail, so rank equals k.
        let table = table_from(
            vec![1.612, 0.927, 0.516, 0.0, 0.0],
            WitnessFamily::fock(3),
            WitnessKind::Expectation,
        );
        let res = certify(0.0, &table, Scale::Raw).unwrap();
        assert_eq!(res.certified_min_rank, 3);
        assert!((res.crossed_threshold.unwrap() - 0.516).abs() < 1e-12);
    }

    #[test]
    fn equality_at_threshold_does_not_certify_past_it() {
        let table =
            table_from(vec![1.0, 0.5, 0.25], WitnessFamily::fock(5), WitnessKind::Expectation);
        let res = certify(0.5, &table, Scale::Raw).unwrap();
        assert_eq!(res.certified_min_rank, 1);
    }

    #[test]
    fn negative_measurement_is_rejected() {
        let table = table_from(vec![1.0, 0.5], WitnessFamily::gkp(), WitnessKind::Expectation);
        assert!(matches!(
            certify(-0.5, &table, Scale::Raw),
            Err(Error::InvalidMeasurement(_))
        ));
        // A tiny negative within tolerance is clamped, not rejected.
        assert!(certify(-1e-12, &table, Scale::Raw).is_ok());
    }

    #[test]
    fn non_monotone_table_is_rejected() {
        let mut table =
            table_from(vec![1.0, 0.5, 0.25], WitnessFamily::gkp(), WitnessKind::Expectation);
        table.raw = vec![1.0, 0.5, 0.75];
        assert!(matches!(certify(0.4, &table, Scale::Raw), Err(Error::ScaleMismatch(_))));
    }

    #[test]
    fn certification_is_monotone_in_the_value() {
        let table = table_from(
            vec![1.0, 0.8, 0.6, 0.4, 0.2],
            WitnessFamily::gkp(),
            WitnessKind::Expectation,
        );
        let mut prev_rank = usize::MAX;
        for i in 0..=60 {
            let v = i as f64 * 0.02;
            let rank = certify(v, &table, Scale::Raw).unwrap().certified_min_rank;
            assert!(rank <= prev_rank, "rank must not increase with the value");
            prev_rank = rank;
        }
    }

    #[test]
    fn raw_and_normalized_scales_agree() {
        let table = table_from(
            vec![2.0, 1.5, 0.9, 0.3],
            WitnessFamily::fock(4),
            WitnessKind::Expectation,
        );
        for v in [0.05, 0.4, 1.0, 1.7, 2.5] {
            let raw = certify(v, &table, Scale::Raw).unwrap().certified_min_rank;
            let norm =
                certify(v / table.raw[0], &table, Scale::Normalized).unwrap().certified_min_rank;
            assert_eq!(raw, norm, "scales disagree at value {v}");
        }
    }
}
