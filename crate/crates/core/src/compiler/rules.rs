//! The (orientation, fold) to stitch mapping.
//!
//! Purl rows make horizontal mountains and purl columns vertical valleys;
//! tuck rows make horizontal valleys and tuck columns vertical mountains.
//! Diagonals fold either way depending on twist handedness, so the four
//! diagonal entries are fully configurable.

use serde::{Deserialize, Serialize};

use super::{Orientation, RuleConfig, StitchType};
use crate::pattern::FoldKind;

/// Twist handedness.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TwistHand {
    Left,
    Right,
}

impl TwistHand {
    fn stitch(self) -> StitchType {
        match self {
            TwistHand::Left => StitchType::TwistLeft,
            TwistHand::Right => StitchType::TwistRight,
        }
    }
}

/// Total map from (diagonal orientation, fold kind) to twist handedness.
/// All four fields are required when configured, so the map can never be
/// partial.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwistMap {
    pub diag_fwd_mountain: TwistHand,
    pub diag_fwd_valley: TwistHand,
    pub diag_bwd_mountain: TwistHand,
    pub diag_bwd_valley: TwistHand,
}

impl Default for TwistMap {
    fn default() -> Self {
        TwistMap {
            diag_fwd_mountain: TwistHand::Right,
            diag_fwd_valley: TwistHand::Left,
            diag_bwd_mountain: TwistHand::Right,
            diag_bwd_valley: TwistHand::Left,
        }
    }
}

impl TwistMap {
    pub fn hand(&self, orientation: Orientation, fold: FoldKind) -> TwistHand {
        match (orientation, fold) {
            (Orientation::DiagFwd, FoldKind::Mountain) => self.diag_fwd_mountain,
            (Orientation::DiagFwd, FoldKind::Valley) => self.diag_fwd_valley,
            (Orientation::DiagBwd, FoldKind::Mountain) => self.diag_bwd_mountain,
            (Orientation::DiagBwd, FoldKind::Valley) => self.diag_bwd_valley,
            _ => panic!("twist map queried for non-diagonal orientation"),
        }
    }

    /// The entry for the horizontally mirrored crease (forward and backward
    /// slants swap).
    pub fn mirrored_hand(&self, orientation: Orientation, fold: FoldKind) -> TwistHand {
        let mirrored = match orientation {
            Orientation::DiagFwd => Orientation::DiagBwd,
            Orientation::DiagBwd => Orientation::DiagFwd,
            o => o,
        };
        self.hand(mirrored, fold)
    }
}

/// A stitch and the cell footprint it occupies per anchor.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StitchPlan {
    pub stitch: StitchType,
    /// Footprint height in cells. A tuck is two cells tall: a held loop plus
    /// the row that knits through it.
    pub rows: usize,
    /// Footprint width in cells. A twist is two cells wide: the crossed pair.
    pub cols: usize,
}

/// Total stitch rule over all eight (orientation, fold) combinations.
pub fn stitch_rule(orientation: Orientation, fold: FoldKind, cfg: &RuleConfig) -> StitchPlan {
    match (orientation, fold) {
        (Orientation::Horizontal, FoldKind::Mountain) | (Orientation::Vertical, FoldKind::Valley) => {
            StitchPlan {
                stitch: StitchType::Purl,
                rows: 1,
                cols: 1,
            }
        }
        (Orientation::Horizontal, FoldKind::Valley) | (Orientation::Vertical, FoldKind::Mountain) => {
            StitchPlan {
                stitch: StitchType::Tuck,
                rows: 2,
                cols: 1,
            }
        }
        (o, f) => StitchPlan {
            stitch: cfg.twist_map.hand(o, f).stitch(),
            rows: 1,
            cols: 2,
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn full_rule_table() {
        let cfg = RuleConfig::default();
        let cases = [
            (Orientation::Horizontal, FoldKind::Mountain, StitchType::Purl, 1, 1),
            (Orientation::Vertical, FoldKind::Valley, StitchType::Purl, 1, 1),
            (Orientation::Horizontal, FoldKind::Valley, StitchType::Tuck, 2, 1),
            (Orientation::Vertical, FoldKind::Mountain, StitchType::Tuck, 2, 1),
            (Orientation::DiagFwd, FoldKind::Mountain, StitchType::TwistRight, 1, 2),
            (Orientation::DiagFwd, FoldKind::Valley, StitchType::TwistLeft, 1, 2),
            (Orientation::DiagBwd, FoldKind::Mountain, StitchType::TwistRight, 1, 2),
            (Orientation::DiagBwd, FoldKind::Valley, StitchType::TwistLeft, 1, 2),
        ];
        for (o, f, stitch, rows, cols) in cases {
            let plan = stitch_rule(o, f, &cfg);
            assert_eq!(plan.stitch, stitch, "{o:?} {f:?}");
            assert_eq!((plan.rows, plan.cols), (rows, cols), "{o:?} {f:?}");
        }
    }

    #[test]
    fn custom_twist_map_is_honored() {
        let cfg = RuleConfig {
            twist_map: TwistMap {
                diag_fwd_mountain: TwistHand::Left,
                diag_fwd_valley: TwistHand::Right,
                diag_bwd_mountain: TwistHand::Left,
                diag_bwd_valley: TwistHand::Right,
            },
            ..Default::default()
        };
        assert_eq!(
            stitch_rule(Orientation::DiagFwd, FoldKind::Mountain, &cfg).stitch,
            StitchType::TwistLeft
        );
        assert_eq!(
            stitch_rule(Orientation::DiagBwd, FoldKind::Valley, &cfg).stitch,
            StitchType::TwistRight
        );
    }
}
