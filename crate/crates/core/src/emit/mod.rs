//! Chart renderers: ASCII text, SVG, and a row-by-row machine program for a
//! flat-bed machine with ribber and intarsia carriage.

mod machine;
mod svg;
mod text;

pub use machine::{
    emit_machine_program, render_machine_program, Carrier, EmitError, MachineProgram,
    NeedleAction, NeedleOp, PassDirection, RowPass,
};
pub use svg::{cell_color, render_svg_chart};
pub use text::{parse_text_chart, render_text_chart, ChartTextError, ParsedTextChart};

use super::compiler::StitchType;

/// ASCII stand-ins for the chart symbols; the glyph fonts used on printed
/// charts are not machine-readable. The mapping is repeated in the chart
/// header comment.
pub fn stitch_symbol(stitch: StitchType) -> char {
    match stitch {
        StitchType::Knit => '.',
        StitchType::Purl => '-',
        StitchType::Tuck => '^',
        StitchType::TwistLeft => '/',
        StitchType::TwistRight => '\\',
    }
}

pub fn stitch_from_symbol(symbol: char) -> Option<StitchType> {
    match symbol {
        '.' => Some(StitchType::Knit),
        '-' => Some(StitchType::Purl),
        '^' => Some(StitchType::Tuck),
        '/' => Some(StitchType::TwistLeft),
        '\\' => Some(StitchType::TwistRight),
        _ => None,
    }
}
