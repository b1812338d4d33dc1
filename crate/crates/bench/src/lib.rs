//! Shared inputs for the criterion benches.

use jcspec_core::{uniform_grid, SystemParams};

/// The three published configurations, labelled for bench ids.
pub fn configurations() -> [(&'static str, SystemParams); 3] {
    [
        ("equal_loss", SystemParams::equal_loss()),
        ("high_coherence", SystemParams::high_coherence()),
        ("weak_coupling", SystemParams::weak_coupling()),
    ]
}

pub fn detuning_grid(points: usize) -> Vec<f64> {
    uniform_grid(-0.3, 0.3, points).expect("valid grid")
}
