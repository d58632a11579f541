//! Reference folding-moment dataset for knitted origami specimens, and
//! synthetic sweep builders that reproduce it.
//!
//! The dataset covers the 20 distinct experimental conditions after
//! symmetry de-duplication: a single representative for plain jersey in
//! acrylic (no programmed fold, so mountain forward equals valley backward),
//! three for jersey with fusible panels (the two diagonal slants measure
//! identically), and all eight (fold, orientation) combinations for each of
//! the two patterned materials. Each entry carries the published peak
//! moments in N*mm/mm and the published directionality ratio
//! (backward over forward).

use super::{
    ConditionLabels, Direction, FabricPattern, Material, MomentError, SweepRecord, SweepSample,
};
use crate::compiler::Orientation;
use crate::pattern::FoldKind;

/// One reference condition: labels, peak moments, and printed ratio.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReferenceCondition {
    pub labels: ConditionLabels,
    pub m_forward: f64,
    pub m_backward: f64,
    /// Published ratio, backward peak over forward peak.
    pub ratio: f64,
}

const fn cond(
    pattern: FabricPattern,
    material: Material,
    fold: FoldKind,
    orientation: Orientation,
    m_forward: f64,
    m_backward: f64,
    ratio: f64,
) -> ReferenceCondition {
    ReferenceCondition {
        labels: ConditionLabels {
            pattern,
            material,
            fold,
            orientation,
        },
        m_forward,
        m_backward,
        ratio,
    }
}

use FabricPattern::{Jersey, Patterned};
use FoldKind::{Mountain, Valley};
use Material::{Acrylic, AcrylicFusible};
use Orientation::{DiagBwd, DiagFwd, Horizontal, Vertical};

/// The 20 distinct reference conditions.
pub const REFERENCE_CONDITIONS: [ReferenceCondition; 20] = [
    cond(Jersey, Acrylic, Mountain, Horizontal, 0.046, 0.053, 1.16),
    cond(Jersey, AcrylicFusible, Mountain, Horizontal, 0.081, 0.070, 0.87),
    cond(Jersey, AcrylicFusible, Valley, Vertical, 0.120, 0.029, 0.23),
    cond(Jersey, AcrylicFusible, Mountain, DiagFwd, 0.065, 0.057, 0.87),
    cond(Patterned, Acrylic, Mountain, Horizontal, 0.032, 0.041, 1.29),
    cond(Patterned, Acrylic, Mountain, Vertical, 0.045, 0.17, 3.86),
    cond(Patterned, Acrylic, Mountain, DiagFwd, 0.025, 0.051, 2.04),
    cond(Patterned, Acrylic, Mountain, DiagBwd, 0.027, 0.04, 1.50),
    cond(Patterned, Acrylic, Valley, Horizontal, 0.057, 0.16, 2.83),
    cond(Patterned, Acrylic, Valley, Vertical, 0.065, 0.092, 1.41),
    cond(Patterned, Acrylic, Valley, DiagFwd, 0.028, 0.029, 1.02),
    cond(Patterned, Acrylic, Valley, DiagBwd, 0.034, 0.052, 1.54),
    cond(Patterned, AcrylicFusible, Mountain, Horizontal, 0.060, 0.16, 2.69),
    cond(Patterned, AcrylicFusible, Mountain, Vertical, 0.067, 0.21, 3.18),
    cond(Patterned, AcrylicFusible, Mountain, DiagFwd, 0.041, 0.047, 1.13),
    cond(Patterned, AcrylicFusible, Mountain, DiagBwd, 0.031, 0.066, 2.17),
    cond(Patterned, AcrylicFusible, Valley, Horizontal, 0.028, 0.056, 1.99),
    cond(Patterned, AcrylicFusible, Valley, Vertical, 0.068, 0.071, 1.05),
    cond(Patterned, AcrylicFusible, Valley, DiagFwd, 0.028, 0.13, 4.56),
    cond(Patterned, AcrylicFusible, Valley, DiagBwd, 0.050, 0.085, 1.71),
];

/// Per-replicate peak-force scales. Their mean is one, so the mean of the
/// replicate peaks equals the condition's reference moment and the envelope
/// spans -10% to +10%.
pub const REPLICATE_SCALES: [f64; 3] = [0.9, 1.0, 1.1];

/// Builds the synthetic replicate sweeps for one reference condition:
/// three replicates per direction with force profile
/// `F(angle) = F_peak * sin(angle / 2)` sampled every 10 degrees, where
/// `F_peak = M * L / d` pins the replicate-mean peak moment to the
/// condition's reference value.
pub fn synthetic_condition_records(
    condition: &ReferenceCondition,
    d_mm: f64,
    l_mm: f64,
) -> Result<Vec<SweepRecord>, MomentError> {
    let mut records = Vec::with_capacity(2 * REPLICATE_SCALES.len());
    for (direction, m_peak) in [
        (Direction::Forward, condition.m_forward),
        (Direction::Backward, condition.m_backward),
    ] {
        for (i, scale) in REPLICATE_SCALES.iter().enumerate() {
            let f_peak = m_peak * l_mm / d_mm * scale;
            let samples = (0..=18)
                .map(|k| {
                    let angle_deg = 10.0 * k as f64;
                    SweepSample {
                        angle_deg,
                        force_n: f_peak * (angle_deg / 2.0).to_radians().sin(),
                    }
                })
                .collect();
            records.push(SweepRecord::new(
                samples,
                d_mm,
                l_mm,
                direction,
                condition.labels,
                i as u32 + 1,
            )?);
        }
    }
    Ok(records)
}
