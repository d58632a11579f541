//! Knitfold turns flat origami crease patterns into machine-knittable stitch
//! charts and reduces folding-test data to per-length moment summaries.
//!
//! The pipeline: load or generate a [`pattern::CreasePattern`], map it onto a
//! stitch grid with a measured [`gauge::Gauge`], and [`compiler::compile`] it
//! into a [`compiler::StitchChart`]. Fold direction is encoded by stitch type
//! (purl rows/columns, tuck rows/columns, twists on diagonals) and panels are
//! stiffened by carrying heat-fusible yarn everywhere except the creases and
//! their wale neighbors. The [`emit`] module renders charts as text, SVG, and
//! a row-by-row machine program; [`moments`] handles angle/force sweep data.

pub mod compiler;
pub mod emit;
pub mod gauge;
pub mod geom;
pub mod moments;
pub mod pattern;
pub mod tess;

pub use compiler::{compile, RuleConfig, StitchChart};
pub use gauge::{build_grid, Gauge, GridSpec};
pub use geom::Point2;
pub use pattern::{parse_pattern, serialize_pattern, validate_pattern, CreasePattern};
