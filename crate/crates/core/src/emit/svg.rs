//! SVG chart rendering in the standard chart palette.

use crate::compiler::{StitchChart, StitchType};

/// Cell size in SVG user units.
const CELL: usize = 10;

/// Fill color for a cell: gray for plain knit carrying fusible yarn, white
/// for acrylic-only knit, yellow purl, blue tuck, red left twist, green
/// right twist.
pub fn cell_color(stitch: StitchType, with_fusible: bool) -> &'static str {
    match stitch {
        StitchType::Knit if with_fusible => "#B0B0B0",
        StitchType::Knit => "white",
        StitchType::Purl => "yellow",
        StitchType::Tuck => "blue",
        StitchType::TwistLeft => "red",
        StitchType::TwistRight => "green",
    }
}

/// Renders the chart as a standalone SVG 1.1 document, one rectangle per
/// cell in row-major order, no external references. Byte-identical across
/// renders of the same chart.
pub fn render_svg_chart(chart: &StitchChart) -> String {
    let (rows, cols) = (chart.rows(), chart.cols());
    let (width, height) = (cols * CELL, rows * CELL);
    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{width}\" \
         height=\"{height}\" viewBox=\"0 0 {width} {height}\">\n"
    ));
    for r in 0..rows {
        for c in 0..cols {
            let cell = chart.cell(r, c);
            // Row 0 is knitted first and sits at the bottom of the image.
            let y = (rows - 1 - r) * CELL;
            let x = c * CELL;
            out.push_str(&format!(
                "<rect x=\"{x}\" y=\"{y}\" width=\"{CELL}\" height=\"{CELL}\" fill=\"{}\" \
                 stroke=\"black\" stroke-width=\"0.5\"/>\n",
                cell_color(cell.stitch, cell.yarn.with_fusible)
            ));
        }
    }
    out.push_str("</svg>\n");
    out
}
