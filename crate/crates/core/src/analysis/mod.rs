//! Peak, linewidth and lineshape extraction from sampled spectra.

mod fit;
mod peaks;
mod sweep;

pub use fit::{fit_lorentzian, fit_lorentzian_with, initial_guess, FitOptions, LorentzianFit};
pub use peaks::{
    extract_fwhm, find_peaks, find_peaks_above, shoulder_contaminated, PeakQuality, PeakReport,
    DEFAULT_NOISE_FLOOR, SHOULDER_FRACTION,
};
pub use sweep::{branch_peak, mode_summary_sweep, BranchPeak, ModeSummaryRow, RowFlag, SweepOptions};
