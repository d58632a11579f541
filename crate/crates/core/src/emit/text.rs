//! Plain-text chart rendering and its inverse parser.
//!
//! Layout: header comments, the stitch block, a blank line, the yarn block.
//! Chart rows print in knitting-chart order, last-knitted row on top, so the
//! bottom line of each block is machine row 0. One character per cell:
//! `.` knit, `-` purl, `^` tuck, `/` left twist, `\` right twist; in the
//! yarn block `#` marks acrylic plus fusible and `o` acrylic only.

use thiserror::Error;

use super::{stitch_from_symbol, stitch_symbol};
use crate::compiler::{StitchChart, StitchType};
use crate::gauge::Gauge;

#[derive(Debug, Error, PartialEq)]
#[error("chart text: {0}")]
pub struct ChartTextError(pub String);

/// Renders the chart as UTF-8 text with LF endings and a trailing newline.
pub fn render_text_chart(chart: &StitchChart) -> String {
    let (rows, cols) = (chart.rows(), chart.cols());
    let mut out = String::new();
    out.push_str(&format!(
        "# rows={rows} cols={cols} gauge={}x{}\n",
        chart.grid.gauge.stitch_w, chart.grid.gauge.stitch_h
    ));
    out.push_str("# stitches: .=knit -=purl ^=tuck /=twist_left \\=twist_right\n");
    out.push_str("# yarn: #=acrylic+fusible o=acrylic_only\n");
    for r in (0..rows).rev() {
        for c in 0..cols {
            out.push(stitch_symbol(chart.cell(r, c).stitch));
        }
        out.push('\n');
    }
    out.push('\n');
    for r in (0..rows).rev() {
        for c in 0..cols {
            out.push(if chart.cell(r, c).yarn.with_fusible { '#' } else { 'o' });
        }
        out.push('\n');
    }
    out
}

/// The stitch and yarn matrices recovered from a chart text. Row 0 is the
/// first knitted (bottom) row, as in [`StitchChart`].
#[derive(Debug, Clone, PartialEq)]
pub struct ParsedTextChart {
    pub rows: usize,
    pub cols: usize,
    pub gauge: Gauge,
    pub stitches: Vec<Vec<StitchType>>,
    pub fusible: Vec<Vec<bool>>,
}

/// Parses a rendered chart back into its stitch and yarn matrices.
/// `parse_text_chart(render_text_chart(c))` reproduces both matrices.
pub fn parse_text_chart(text: &str) -> Result<ParsedTextChart, ChartTextError> {
    let mut lines = text.lines();
    let header = lines
        .next()
        .ok_or_else(|| ChartTextError("empty document".into()))?;
    let header = header
        .strip_prefix("# ")
        .ok_or_else(|| ChartTextError("first line must be the `# rows=...` header".into()))?;

    let mut rows = None;
    let mut cols = None;
    let mut gauge = None;
    for field in header.split_whitespace() {
        let (key, value) = field
            .split_once('=')
            .ok_or_else(|| ChartTextError(format!("malformed header field {field:?}")))?;
        match key {
            "rows" => rows = Some(parse_num::<usize>(value, "rows")?),
            "cols" => cols = Some(parse_num::<usize>(value, "cols")?),
            "gauge" => {
                let (w, h) = value
                    .split_once('x')
                    .ok_or_else(|| ChartTextError("gauge must look like WxH".into()))?;
                gauge = Some(
                    Gauge::new(parse_num(w, "gauge width")?, parse_num(h, "gauge height")?)
                        .map_err(|e| ChartTextError(e.to_string()))?,
                );
            }
            other => return Err(ChartTextError(format!("unknown header field {other:?}"))),
        }
    }
    let rows = rows.ok_or_else(|| ChartTextError("header missing rows".into()))?;
    let cols = cols.ok_or_else(|| ChartTextError("header missing cols".into()))?;
    let gauge = gauge.ok_or_else(|| ChartTextError("header missing gauge".into()))?;

    // Remaining comment lines (the symbol legend) are skipped; the block
    // sizes come from the header, so `#` cells are never ambiguous.
    let mut body = lines.peekable();
    while body.peek().is_some_and(|l| l.starts_with("# ")) {
        body.next();
    }

    let mut stitches = vec![Vec::new(); rows];
    for r in (0..rows).rev() {
        let line = body
            .next()
            .ok_or_else(|| ChartTextError(format!("missing stitch row {r}")))?;
        if line.chars().count() != cols {
            return Err(ChartTextError(format!(
                "stitch row {r} has {} cells, expected {cols}",
                line.chars().count()
            )));
        }
        stitches[r] = line
            .chars()
            .map(|ch| {
                stitch_from_symbol(ch)
                    .ok_or_else(|| ChartTextError(format!("unknown stitch symbol {ch:?}")))
            })
            .collect::<Result<_, _>>()?;
    }

    match body.next() {
        Some("") => {}
        _ => return Err(ChartTextError("expected blank line before the yarn block".into())),
    }

    let mut fusible = vec![Vec::new(); rows];
    for r in (0..rows).rev() {
        let line = body
            .next()
            .ok_or_else(|| ChartTextError(format!("missing yarn row {r}")))?;
        if line.chars().count() != cols {
            return Err(ChartTextError(format!(
                "yarn row {r} has {} cells, expected {cols}",
                line.chars().count()
            )));
        }
        fusible[r] = line
            .chars()
            .map(|ch| match ch {
                '#' => Ok(true),
                'o' => Ok(false),
                other => Err(ChartTextError(format!("unknown yarn symbol {other:?}"))),
            })
            .collect::<Result<_, _>>()?;
    }
    if body.any(|l| !l.is_empty()) {
        return Err(ChartTextError("trailing content after the yarn block".into()));
    }

    Ok(ParsedTextChart {
        rows,
        cols,
        gauge,
        stitches,
        fusible,
    })
}

fn parse_num<T: std::str::FromStr>(s: &str, what: &str) -> Result<T, ChartTextError> {
    s.parse()
        .map_err(|_| ChartTextError(format!("cannot parse {what} from {s:?}")))
}
