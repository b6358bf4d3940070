use serde::{Deserialize, Serialize};

/// Absolute length tolerance for gluing residuals.
pub const EPS_LEN: f64 = 1e-9;
/// Incidence tolerance (point on edge, vertex hits, collinearity).
pub const EPS_INC: f64 = 1e-9;
/// Angle tolerance in radians.
pub const EPS_ANG: f64 = 1e-9;
/// Relative tolerance for equal-length ties.
pub const EPS_TIE: f64 = 1e-7;
/// Relative stopping threshold for loop shortening.
pub const EPS_STOP: f64 = 1e-10;
/// Default cap on developed cells.
pub const MAX_CELLS: usize = 1_000_000;
/// Default cap on shortening sweeps.
pub const MAX_ITERATIONS: usize = 100_000;
/// Cap on enumerated class representatives.
pub const MAX_REPRESENTATIVES: usize = 1 << 14;

/// Tolerance set that can be overridden from the command line.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    pub len: f64,
    pub inc: f64,
    pub ang: f64,
    pub tie: f64,
    pub stop: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            len: EPS_LEN,
            inc: EPS_INC,
            ang: EPS_ANG,
            tie: EPS_TIE,
            stop: EPS_STOP,
        }
    }
}
