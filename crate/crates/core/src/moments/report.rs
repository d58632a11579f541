//! Condition grouping and report rendering.

use std::collections::BTreeMap;

use super::{aggregate_replicates, MomentError, MomentSummary, RatioConvention, SweepRecord};
use crate::compiler::Orientation;
use crate::moments::{FabricPattern, Material};
use crate::pattern::FoldKind;

/// Groups records by their condition labels, aggregates each group, and
/// returns one summary row per condition, ordered by label sort.
pub fn summarize_table(
    records: &[SweepRecord],
    convention: RatioConvention,
) -> Result<Vec<MomentSummary>, MomentError> {
    let mut groups: BTreeMap<_, Vec<&SweepRecord>> = BTreeMap::new();
    for r in records {
        groups.entry(r.labels.sort_key()).or_default().push(r);
    }
    groups
        .into_values()
        .map(|group| {
            let owned: Vec<SweepRecord> = group.into_iter().cloned().collect();
            aggregate_replicates(&owned, convention)
        })
        .collect()
}

/// Formats `v` with `sig` significant figures.
pub(crate) fn format_sig(v: f64, sig: i32) -> String {
    if v == 0.0 {
        return "0".to_string();
    }
    let decimals = (sig - 1 - v.abs().log10().floor() as i32).max(0) as usize;
    format!("{v:.decimals$}")
}

fn label_strings(s: &MomentSummary) -> [String; 4] {
    [
        match s.labels.pattern {
            FabricPattern::Jersey => "jersey",
            FabricPattern::Patterned => "patterned",
        }
        .to_string(),
        match s.labels.material {
            Material::Acrylic => "acrylic",
            Material::AcrylicFusible => "acrylic+fusible",
        }
        .to_string(),
        match s.labels.fold {
            FoldKind::Mountain => "mountain",
            FoldKind::Valley => "valley",
        }
        .to_string(),
        match s.labels.orientation {
            Orientation::Horizontal => "horizontal",
            Orientation::Vertical => "vertical",
            Orientation::DiagFwd => "diag_fwd",
            Orientation::DiagBwd => "diag_bwd",
        }
        .to_string(),
    ]
}

fn convention_footer(convention: RatioConvention) -> &'static str {
    match convention {
        RatioConvention::BackwardOverForward => {
            "# R = peak(backward) / peak(forward); R > 1 favors the programmed fold direction"
        }
        RatioConvention::ForwardOverBackward => {
            "# R = peak(forward) / peak(backward); R < 1 favors the programmed fold direction"
        }
    }
}

const HEADERS: [&str; 10] = [
    "pattern",
    "material",
    "fold",
    "orientation",
    "n",
    "M_fwd[N*mm/mm]",
    "M_bwd[N*mm/mm]",
    "R",
    "fwd_env",
    "bwd_env",
];

fn row_strings(s: &MomentSummary) -> [String; 10] {
    let [pattern, material, fold, orientation] = label_strings(s);
    [
        pattern,
        material,
        fold,
        orientation,
        format!("{}/{}", s.n_forward, s.n_backward),
        format_sig(s.m_forward, 2),
        format_sig(s.m_backward, 2),
        format_sig(s.ratio, 3),
        format!("{}..{}", format_sig(s.forward_env.0, 2), format_sig(s.forward_env.1, 2)),
        format!("{}..{}", format_sig(s.backward_env.0, 2), format_sig(s.backward_env.1, 2)),
    ]
}

/// Renders the aligned plain-text report. Moments print with two
/// significant figures and ratios with three; the footer names the active
/// ratio convention.
pub fn render_report_text(rows: &[MomentSummary], convention: RatioConvention) -> String {
    let table: Vec<[String; 10]> = rows.iter().map(row_strings).collect();
    let mut widths: Vec<usize> = HEADERS.iter().map(|h| h.len()).collect();
    for row in &table {
        for (w, cell) in widths.iter_mut().zip(row.iter()) {
            *w = (*w).max(cell.len());
        }
    }

    let mut out = String::new();
    let mut push_row = |cells: &[String]| {
        let line = cells
            .iter()
            .zip(&widths)
            .map(|(cell, w)| format!("{cell:<w$}"))
            .collect::<Vec<_>>()
            .join("  ");
        out.push_str(line.trim_end());
        out.push('\n');
    };
    push_row(&HEADERS.map(String::from));
    for row in &table {
        push_row(row);
    }
    out.push_str(convention_footer(convention));
    out.push('\n');
    out
}

/// Renders the report as CSV with the same columns and formatting.
pub fn render_report_csv(rows: &[MomentSummary], convention: RatioConvention) -> String {
    let mut out = String::new();
    out.push_str(&HEADERS.join(","));
    out.push('\n');
    for s in rows {
        out.push_str(&row_strings(s).join(","));
        out.push('\n');
    }
    let _ = convention; // named in the text report footer; CSV stays bare rows
    out
}
