//! Row-by-row machine program for a flat-bed machine with ribber and
//! intarsia carriage.
//!
//! The format is a neutral documented line protocol, not a vendor format:
//! the target machine is manually operated and has no public instruction
//! set. One pass per chart row, direction alternating from left-to-right,
//! exactly one primary needle op per cell. Carrier `A` is acrylic alone,
//! `AF` acrylic plus the heat-fusible strand; the intarsia carriage permits
//! carrier changes inside a pass.

use thiserror::Error;

use crate::compiler::{StitchChart, StitchType};
use crate::gauge::Gauge;

#[derive(Debug, Error, PartialEq)]
pub enum EmitError {
    /// A twist needs both loops of its pair on the same pass; a pair cut off
    /// at the end of a row cannot be knitted. Valid charts never produce
    /// this.
    #[error("row {row}: twist pair split at needle {needle}")]
    TwistPairSplit { row: usize, needle: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PassDirection {
    LeftToRight,
    RightToLeft,
}

/// One needle instruction.
///
/// `KnitFront`/`KnitBack` knit on the main/ribber bed. `TuckHold` holds the
/// loop for the row above to knit through. A twist pair crosses two adjacent
/// loops before knitting: the pair leads with `CrossLeft` on the lower
/// needle for a left twist and with `CrossRight` for a right twist.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NeedleAction {
    KnitFront,
    KnitBack,
    TuckHold,
    CrossLeft,
    CrossRight,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Carrier {
    /// Acrylic yarn only.
    Acrylic,
    /// Acrylic plus heat-fusible yarn.
    AcrylicFusible,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NeedleOp {
    pub needle: usize,
    pub action: NeedleAction,
    pub carrier: Carrier,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RowPass {
    pub row: usize,
    pub direction: PassDirection,
    pub ops: Vec<NeedleOp>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MachineProgram {
    pub gauge: Gauge,
    pub carriers: Vec<Carrier>,
    pub passes: Vec<RowPass>,
}

/// Lowers a chart to needle operations.
///
/// Tuck footprints alternate hold/knit up each vertical run starting at the
/// run's bottom cell, which realizes "hold one loop, knit two rows" for any
/// stack height. A twist cell whose partner was overridden at an
/// intersection knits plain: a cross needs both loops.
pub fn emit_machine_program(chart: &StitchChart) -> Result<MachineProgram, EmitError> {
    let (rows, cols) = (chart.rows(), chart.cols());
    let mut passes = Vec::with_capacity(rows);
    for row in 0..rows {
        let mut actions = vec![NeedleAction::KnitFront; cols];
        let mut col = 0;
        while col < cols {
            match chart.cell(row, col).stitch {
                StitchType::Knit => actions[col] = NeedleAction::KnitFront,
                StitchType::Purl => actions[col] = NeedleAction::KnitBack,
                StitchType::Tuck => {
                    let mut run_start = row;
                    while run_start > 0 && chart.cell(run_start - 1, col).stitch == StitchType::Tuck
                    {
                        run_start -= 1;
                    }
                    actions[col] = if (row - run_start) % 2 == 0 {
                        NeedleAction::TuckHold
                    } else {
                        NeedleAction::KnitFront
                    };
                }
                twist @ (StitchType::TwistLeft | StitchType::TwistRight) => {
                    let paired = col + 1 < cols && chart.cell(row, col + 1).stitch == twist;
                    if paired {
                        let (lead, trail) = if twist == StitchType::TwistLeft {
                            (NeedleAction::CrossLeft, NeedleAction::CrossRight)
                        } else {
                            (NeedleAction::CrossRight, NeedleAction::CrossLeft)
                        };
                        actions[col] = lead;
                        actions[col + 1] = trail;
                        col += 2;
                        continue;
                    } else if col + 1 == cols {
                        return Err(EmitError::TwistPairSplit { row, needle: col });
                    } else {
                        // Partner overridden at an intersection.
                        actions[col] = NeedleAction::KnitFront;
                    }
                }
            }
            col += 1;
        }

        let direction = if row % 2 == 0 {
            PassDirection::LeftToRight
        } else {
            PassDirection::RightToLeft
        };
        let needle_order: Vec<usize> = match direction {
            PassDirection::LeftToRight => (0..cols).collect(),
            PassDirection::RightToLeft => (0..cols).rev().collect(),
        };
        let ops = needle_order
            .into_iter()
            .map(|needle| NeedleOp {
                needle,
                action: actions[needle],
                carrier: if chart.cell(row, needle).yarn.with_fusible {
                    Carrier::AcrylicFusible
                } else {
                    Carrier::Acrylic
                },
            })
            .collect();
        passes.push(RowPass { row, direction, ops });
    }

    Ok(MachineProgram {
        gauge: chart.grid.gauge,
        carriers: vec![Carrier::Acrylic, Carrier::AcrylicFusible],
        passes,
    })
}

fn carrier_token(c: Carrier) -> &'static str {
    match c {
        Carrier::Acrylic => "A",
        Carrier::AcrylicFusible => "AF",
    }
}

fn action_token(a: NeedleAction) -> &'static str {
    match a {
        NeedleAction::KnitFront => "knit_front",
        NeedleAction::KnitBack => "knit_back",
        NeedleAction::TuckHold => "tuck_hold",
        NeedleAction::CrossLeft => "cross_left",
        NeedleAction::CrossRight => "cross_right",
    }
}

/// Serializes the program: header line, then one `ROW` line per pass with
/// `needle:action:carrier` ops in needle order of travel.
pub fn render_machine_program(program: &MachineProgram) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "# carriers: {} gauge={}x{}\n",
        program
            .carriers
            .iter()
            .map(|&c| carrier_token(c))
            .collect::<Vec<_>>()
            .join(","),
        program.gauge.stitch_w,
        program.gauge.stitch_h
    ));
    for pass in &program.passes {
        let dir = match pass.direction {
            PassDirection::LeftToRight => "LTR",
            PassDirection::RightToLeft => "RTL",
        };
        let ops = pass
            .ops
            .iter()
            .map(|op| format!("{}:{}:{}", op.needle, action_token(op.action), carrier_token(op.carrier)))
            .collect::<Vec<_>>()
            .join(" ");
        out.push_str(&format!("ROW {} DIR {dir} | {ops}\n", pass.row));
    }
    out
}
