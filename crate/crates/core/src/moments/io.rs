//! Sweep CSV reading and the bundle metadata sidecar.
//!
//! Sweep files are CSV with the exact header `angle_deg,force_N`, one file
//! per replicate. A JSON sidecar describes the bundle: shared geometry plus
//! per-file direction, labels, and replicate id keyed by file name.

use std::collections::BTreeMap;

use serde::Deserialize;

use super::{ConditionLabels, Direction, FabricPattern, Material, MomentError, SweepRecord, SweepSample};
use crate::compiler::Orientation;
use crate::pattern::FoldKind;

/// Reads one sweep CSV into samples. Record invariants (angle range and
/// ordering) are enforced when the samples become a [`SweepRecord`].
pub fn read_sweep_csv(text: &str) -> Result<Vec<SweepSample>, MomentError> {
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    let headers = reader
        .headers()
        .map_err(|e| MomentError::Csv(e.to_string()))?;
    if headers.iter().collect::<Vec<_>>() != ["angle_deg", "force_N"] {
        return Err(MomentError::Csv(format!(
            "expected header angle_deg,force_N, got {}",
            headers.iter().collect::<Vec<_>>().join(",")
        )));
    }
    let mut samples = Vec::new();
    for (i, row) in reader.records().enumerate() {
        let row = row.map_err(|e| MomentError::Csv(e.to_string()))?;
        let field = |j: usize| -> Result<f64, MomentError> {
            row.get(j)
                .and_then(|s| s.trim().parse::<f64>().ok())
                .ok_or_else(|| MomentError::Csv(format!("row {}: malformed number", i + 1)))
        };
        samples.push(SweepSample {
            angle_deg: field(0)?,
            force_n: field(1)?,
        });
    }
    Ok(samples)
}

/// Per-file entry in the bundle metadata.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepMetadata {
    pub direction: Direction,
    pub replicate: u32,
    pub fold: FoldKind,
    pub orientation: Orientation,
    pub material: Material,
    pub pattern: FabricPattern,
    /// Per-file override of the bundle-level moment arm.
    pub d_mm: Option<f64>,
    /// Per-file override of the bundle-level crease length.
    #[serde(rename = "L_mm")]
    pub l_mm: Option<f64>,
}

/// The bundle sidecar: shared geometry plus one entry per sweep file name.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BundleMetadata {
    pub d_mm: Option<f64>,
    #[serde(rename = "L_mm")]
    pub l_mm: Option<f64>,
    pub sweeps: BTreeMap<String, SweepMetadata>,
}

pub fn parse_bundle_metadata(text: &str) -> Result<BundleMetadata, MomentError> {
    serde_json::from_str(text).map_err(|e| MomentError::Metadata(e.to_string()))
}

impl BundleMetadata {
    /// Builds the validated record for one sweep file.
    pub fn record_for(
        &self,
        file_name: &str,
        samples: Vec<SweepSample>,
    ) -> Result<SweepRecord, MomentError> {
        let meta = self.sweeps.get(file_name).ok_or_else(|| {
            MomentError::Metadata(format!("no sweeps entry for file {file_name:?}"))
        })?;
        let d_mm = meta.d_mm.or(self.d_mm).ok_or_else(|| {
            MomentError::Metadata(format!("no d_mm given for {file_name:?} or the bundle"))
        })?;
        let l_mm = meta.l_mm.or(self.l_mm).ok_or_else(|| {
            MomentError::Metadata(format!("no L_mm given for {file_name:?} or the bundle"))
        })?;
        SweepRecord::new(
            samples,
            d_mm,
            l_mm,
            meta.direction,
            ConditionLabels {
                pattern: meta.pattern,
                material: meta.material,
                fold: meta.fold,
                orientation: meta.orientation,
            },
            meta.replicate,
        )
    }
}
