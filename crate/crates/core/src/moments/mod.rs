//! Folding-test data reduction: angle/force sweeps to per-length moments,
//! peak extraction, replicate aggregation, and directionality ratios.
//!
//! A sweep rotates the actuated panel from 0 to 180 degrees in 10 degree
//! steps while a force sensor reads the normal force; the moment per unit
//! crease length is `M = F * d / L` with `d` the arm from the rotation axis
//! to the sensor and `L` the crease length. The forward direction is the
//! programmed fold direction. The directionality ratio R compares the two
//! peak moments; see [`RatioConvention`] for the numerator choice.

mod io;
mod reference;
mod report;

pub use io::{parse_bundle_metadata, read_sweep_csv, BundleMetadata, SweepMetadata};
pub use reference::{synthetic_condition_records, ReferenceCondition, REFERENCE_CONDITIONS};
pub use report::{render_report_csv, render_report_text, summarize_table};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::compiler::Orientation;
use crate::pattern::FoldKind;

#[derive(Debug, Error, PartialEq)]
pub enum MomentError {
    #[error("domain: {0}")]
    Domain(String),
    #[error("group {0} has no {1:?} records")]
    MissingDirection(String, Direction),
    #[error("records in one aggregation group carry different labels")]
    MixedLabels,
    #[error("csv: {0}")]
    Csv(String),
    #[error("metadata: {0}")]
    Metadata(String),
}

/// Sweep direction relative to the programmed fold.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    Forward,
    Backward,
}

/// Yarn make-up of the specimen.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Material {
    /// Acrylic yarn everywhere.
    Acrylic,
    /// Acrylic on the folds, acrylic plus heat-fusible yarn on the panels.
    AcrylicFusible,
}

/// Stitch make-up of the specimen.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FabricPattern {
    /// Plain knit everywhere; no programmed fold.
    Jersey,
    /// Crease line translated into stitch programming.
    Patterned,
}

/// Experimental condition labels; also the report grouping and sort key.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionLabels {
    pub pattern: FabricPattern,
    pub material: Material,
    pub fold: FoldKind,
    pub orientation: Orientation,
}

impl ConditionLabels {
    pub fn sort_key(&self) -> (FabricPattern, Material, FoldKind, Orientation) {
        (self.pattern, self.material, self.fold, self.orientation)
    }
}

/// One sensor reading.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepSample {
    pub angle_deg: f64,
    pub force_n: f64,
}

/// One replicate: a full 0-180 degree sweep with its geometry and labels.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRecord {
    pub samples: Vec<SweepSample>,
    /// Perpendicular arm from the rotation axis to the sensor center (mm).
    pub moment_arm_mm: f64,
    /// Crease length aligned with the rotation axis (mm).
    pub crease_len_mm: f64,
    pub direction: Direction,
    pub labels: ConditionLabels,
    pub replicate: u32,
}

impl SweepRecord {
    /// Validates the record invariants: positive geometry, non-empty samples,
    /// angles within [0, 180] and non-decreasing. Out-of-range angles are
    /// rejected rather than clamped.
    pub fn new(
        samples: Vec<SweepSample>,
        moment_arm_mm: f64,
        crease_len_mm: f64,
        direction: Direction,
        labels: ConditionLabels,
        replicate: u32,
    ) -> Result<Self, MomentError> {
        if !(moment_arm_mm > 0.0) || !(crease_len_mm > 0.0) {
            return Err(MomentError::Domain(format!(
                "moment arm and crease length must be positive (got d={moment_arm_mm}, L={crease_len_mm})"
            )));
        }
        if samples.is_empty() {
            return Err(MomentError::Domain("sweep has no samples".into()));
        }
        for pair in samples.windows(2) {
            if pair[1].angle_deg < pair[0].angle_deg {
                return Err(MomentError::Domain(format!(
                    "sweep angles must be non-decreasing ({} after {})",
                    pair[1].angle_deg, pair[0].angle_deg
                )));
            }
        }
        if let Some(s) = samples
            .iter()
            .find(|s| !(0.0..=180.0).contains(&s.angle_deg))
        {
            return Err(MomentError::Domain(format!(
                "sweep angle {} is outside [0, 180]",
                s.angle_deg
            )));
        }
        Ok(SweepRecord {
            samples,
            moment_arm_mm,
            crease_len_mm,
            direction,
            labels,
            replicate,
        })
    }
}

/// Numerator convention for the directionality ratio.
///
/// Under `BackwardOverForward` (the default) a ratio above one means the
/// programmed direction folds more easily, which is how the reference
/// dataset's printed ratios read. `ForwardOverBackward` is the reciprocal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RatioConvention {
    #[default]
    BackwardOverForward,
    ForwardOverBackward,
}

/// Per-length folding moment `F * d / L`.
pub fn moment_per_length(force_n: f64, d_mm: f64, l_mm: f64) -> Result<f64, MomentError> {
    if !(d_mm > 0.0) || !(l_mm > 0.0) {
        return Err(MomentError::Domain(format!(
            "moment arm and crease length must be positive (got d={d_mm}, L={l_mm})"
        )));
    }
    Ok(force_n * d_mm / l_mm)
}

/// Elementwise moment series `(angle, M)` with the sweep's angle order kept.
pub fn sweep_to_moments(record: &SweepRecord) -> Result<Vec<(f64, f64)>, MomentError> {
    record
        .samples
        .iter()
        .map(|s| {
            moment_per_length(s.force_n, record.moment_arm_mm, record.crease_len_mm)
                .map(|m| (s.angle_deg, m))
        })
        .collect()
}

/// Peak moment over a sweep, taken on the raw samples without interpolation.
pub fn peak_moment(series: &[(f64, f64)]) -> f64 {
    series.iter().map(|&(_, m)| m).fold(f64::MIN, f64::max)
}

/// Directionality ratio of two peak moments under the given convention.
pub fn directionality_ratio(
    m_forward: f64,
    m_backward: f64,
    convention: RatioConvention,
) -> Result<f64, MomentError> {
    let (num, den) = match convention {
        RatioConvention::BackwardOverForward => (m_backward, m_forward),
        RatioConvention::ForwardOverBackward => (m_forward, m_backward),
    };
    if !(den > 0.0) {
        return Err(MomentError::Domain(format!(
            "directionality ratio denominator must be positive (got {den})"
        )));
    }
    Ok(num / den)
}

/// Aggregate of one condition: per-direction mean peaks, min/max envelopes,
/// and the directionality ratio of the means.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentSummary {
    pub labels: ConditionLabels,
    pub m_forward: f64,
    pub m_backward: f64,
    pub ratio: f64,
    pub n_forward: usize,
    pub n_backward: usize,
    pub forward_env: (f64, f64),
    pub backward_env: (f64, f64),
}

/// Reduces one condition's replicates (both directions) to a summary.
pub fn aggregate_replicates(
    records: &[SweepRecord],
    convention: RatioConvention,
) -> Result<MomentSummary, MomentError> {
    let first = records
        .first()
        .ok_or_else(|| MomentError::Domain("no records to aggregate".into()))?;
    let labels = first.labels;
    if records.iter().any(|r| r.labels != labels) {
        return Err(MomentError::MixedLabels);
    }

    let peaks_of = |direction: Direction| -> Result<Vec<f64>, MomentError> {
        records
            .iter()
            .filter(|r| r.direction == direction)
            .map(|r| Ok(peak_moment(&sweep_to_moments(r)?)))
            .collect()
    };
    let group_name = format!("{labels:?}");
    let fwd = peaks_of(Direction::Forward)?;
    let bwd = peaks_of(Direction::Backward)?;
    if fwd.is_empty() {
        return Err(MomentError::MissingDirection(group_name, Direction::Forward));
    }
    if bwd.is_empty() {
        return Err(MomentError::MissingDirection(group_name, Direction::Backward));
    }

    let mean = |v: &[f64]| v.iter().sum::<f64>() / v.len() as f64;
    let envelope = |v: &[f64]| {
        (
            v.iter().copied().fold(f64::MAX, f64::min),
            v.iter().copied().fold(f64::MIN, f64::max),
        )
    };
    let m_forward = mean(&fwd);
    let m_backward = mean(&bwd);
    Ok(MomentSummary {
        labels,
        m_forward,
        m_backward,
        ratio: directionality_ratio(m_forward, m_backward, convention)?,
        n_forward: fwd.len(),
        n_backward: bwd.len(),
        forward_env: envelope(&fwd),
        backward_env: envelope(&bwd),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn labels() -> ConditionLabels {
        ConditionLabels {
            pattern: FabricPattern::Patterned,
            material: Material::Acrylic,
            fold: FoldKind::Mountain,
            orientation: Orientation::Horizontal,
        }
    }

    fn sine_sweep(peak_force: f64) -> Vec<SweepSample> {
        (0..=18)
            .map(|i| {
                let angle = 10.0 * i as f64;
                SweepSample {
                    angle_deg: angle,
                    force_n: peak_force * (angle / 2.0).to_radians().sin(),
                }
            })
            .collect()
    }

    #[test]
    fn moment_per_length_examples() {
        assert_eq!(moment_per_length(1.0, 10.0, 10.0).unwrap(), 1.0);
        assert_eq!(moment_per_length(0.0, 10.0, 10.0).unwrap(), 0.0);
        assert!((moment_per_length(0.23, 20.0, 40.0).unwrap() - 0.115).abs() < 1e-15);
        assert!(moment_per_length(1.0, 0.0, 10.0).is_err());
        assert!(moment_per_length(1.0, 10.0, -1.0).is_err());
    }

    #[test]
    fn constant_force_gives_constant_moments() {
        let samples: Vec<SweepSample> = (0..=18)
            .map(|i| SweepSample {
                angle_deg: 10.0 * i as f64,
                force_n: 1.0,
            })
            .collect();
        let r = SweepRecord::new(samples, 20.0, 40.0, Direction::Forward, labels(), 1).unwrap();
        let ms = sweep_to_moments(&r).unwrap();
        assert!(ms.iter().all(|&(_, m)| m == 0.5));
    }

    #[test]
    fn sine_sweep_matches_closed_form() {
        let (k, d, l) = (2.0, 20.0, 40.0);
        let r = SweepRecord::new(sine_sweep(k), d, l, Direction::Forward, labels(), 1).unwrap();
        let ms = sweep_to_moments(&r).unwrap();
        for &(angle, m) in &ms {
            let expected = k * d / l * (angle / 2.0).to_radians().sin();
            let rel = if expected == 0.0 {
                m.abs()
            } else {
                ((m - expected) / expected).abs()
            };
            assert!(rel <= 1e-12, "angle {angle}: {m} vs {expected}");
        }
        assert_eq!(peak_moment(&ms), ms[18].1);
    }

    #[test]
    fn peak_of_monotone_series_is_last() {
        let series: Vec<(f64, f64)> = (0..5).map(|i| (i as f64, i as f64 * 0.1)).collect();
        assert_eq!(peak_moment(&series), 0.4);
        assert_eq!(peak_moment(&[(0.0, 0.0), (10.0, 0.0)]), 0.0);
    }

    #[test]
    fn ratio_conventions() {
        let r = directionality_ratio(0.046, 0.053, RatioConvention::BackwardOverForward).unwrap();
        assert!((r - 1.16).abs() <= 0.1);
        let r = directionality_ratio(0.045, 0.17, RatioConvention::BackwardOverForward).unwrap();
        assert!((r - 3.86).abs() <= 0.1);
        let same = directionality_ratio(0.5, 0.5, RatioConvention::BackwardOverForward).unwrap();
        assert_eq!(same, 1.0);
        let same = directionality_ratio(0.5, 0.5, RatioConvention::ForwardOverBackward).unwrap();
        assert_eq!(same, 1.0);
        assert!(directionality_ratio(0.0, 1.0, RatioConvention::BackwardOverForward).is_err());
    }

    #[test]
    fn convention_duality() {
        for (f, b) in [(0.3, 0.7), (1.0, 1.0), (0.046, 0.053)] {
            let a = directionality_ratio(f, b, RatioConvention::BackwardOverForward).unwrap();
            let c = directionality_ratio(f, b, RatioConvention::ForwardOverBackward).unwrap();
            assert!((a * c - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn aggregate_identical_replicates() {
        let mut records = Vec::new();
        for direction in [Direction::Forward, Direction::Backward] {
            for rep in 1..=3 {
                records.push(
                    SweepRecord::new(sine_sweep(1.0), 20.0, 40.0, direction, labels(), rep).unwrap(),
                );
            }
        }
        let s = aggregate_replicates(&records, RatioConvention::BackwardOverForward).unwrap();
        assert_eq!(s.m_forward, 0.5);
        assert_eq!(s.m_backward, 0.5);
        assert_eq!(s.ratio, 1.0);
        assert_eq!((s.n_forward, s.n_backward), (3, 3));
        assert_eq!(s.forward_env, (0.5, 0.5));
    }

    #[test]
    fn aggregate_envelope_spans_replicates() {
        let mut records = Vec::new();
        for (rep, scale) in [(1u32, 0.9), (2, 1.0), (3, 1.1)] {
            records.push(
                SweepRecord::new(sine_sweep(2.0 * scale), 20.0, 40.0, Direction::Forward, labels(), rep)
                    .unwrap(),
            );
            records.push(
                SweepRecord::new(sine_sweep(2.0 * scale), 20.0, 40.0, Direction::Backward, labels(), rep)
                    .unwrap(),
            );
        }
        let s = aggregate_replicates(&records, RatioConvention::BackwardOverForward).unwrap();
        assert!((s.m_forward - 1.0).abs() < 1e-12);
        assert!((s.forward_env.0 - 0.9).abs() < 1e-12);
        assert!((s.forward_env.1 - 1.1).abs() < 1e-12);
    }

    #[test]
    fn aggregate_requires_both_directions() {
        let records = vec![
            SweepRecord::new(sine_sweep(1.0), 20.0, 40.0, Direction::Forward, labels(), 1).unwrap(),
        ];
        assert!(matches!(
            aggregate_replicates(&records, RatioConvention::BackwardOverForward),
            Err(MomentError::MissingDirection(_, Direction::Backward))
        ));
    }

    #[test]
    fn record_rejects_bad_sweeps() {
        assert!(SweepRecord::new(vec![], 20.0, 40.0, Direction::Forward, labels(), 1).is_err());
        let out_of_range = vec![SweepSample {
            angle_deg: 190.0,
            force_n: 0.0,
        }];
        assert!(SweepRecord::new(out_of_range, 20.0, 40.0, Direction::Forward, labels(), 1).is_err());
        let unsorted = vec![
            SweepSample { angle_deg: 10.0, force_n: 0.0 },
            SweepSample { angle_deg: 0.0, force_n: 0.0 },
        ];
        assert!(SweepRecord::new(unsorted, 20.0, 40.0, Direction::Forward, labels(), 1).is_err());
    }

    #[test]
    fn force_scaling_is_linear_and_ratio_invariant() {
        for k in [0.5, 2.0, 10.0] {
            let base =
                SweepRecord::new(sine_sweep(1.0), 20.0, 40.0, Direction::Forward, labels(), 1).unwrap();
            let scaled =
                SweepRecord::new(sine_sweep(k), 20.0, 40.0, Direction::Forward, labels(), 1).unwrap();
            let pb = peak_moment(&sweep_to_moments(&base).unwrap());
            let ps = peak_moment(&sweep_to_moments(&scaled).unwrap());
            assert_eq!(ps, k * pb);
            let r1 = directionality_ratio(pb, 2.0 * pb, RatioConvention::BackwardOverForward).unwrap();
            let r2 = directionality_ratio(ps, 2.0 * ps, RatioConvention::BackwardOverForward).unwrap();
            assert!((r1 - r2).abs() < 1e-12);
        }
    }

    #[test]
    fn doubling_crease_length_halves_moments() {
        let a = SweepRecord::new(sine_sweep(1.0), 20.0, 40.0, Direction::Forward, labels(), 1).unwrap();
        let b = SweepRecord::new(sine_sweep(1.0), 20.0, 80.0, Direction::Forward, labels(), 1).unwrap();
        let pa = peak_moment(&sweep_to_moments(&a).unwrap());
        let pb = peak_moment(&sweep_to_moments(&b).unwrap());
        assert_eq!(pa, 2.0 * pb);
    }
}
