//! Weak-probe transmission of a two-level system coupled to a single photonic
//! mode, together with the effective-resonator description of the hybridized
//! states.
//!
//! All frequencies and rates are expressed in units of the bare resonator
//! frequency, so `omega_r = 1.0` unless stated otherwise.
//!
//! The crate is organised bottom-up:
//!
//! * [`params`]: the six physical rates of one configuration.
//! * [`eigen`]: closed-form eigenstructure of the lowest doublet, plus an
//!   independent numerical diagonalization used for cross-checks.
//! * [`response`]: the exact transmission amplitude and sampled spectra.
//! * [`modes`]: each hybridized state as an effective Lorentzian mode.
//! * [`weak`]: induced loss and dispersive shift when the qubit is lossy.
//! * [`analysis`]: peak/linewidth extraction, Lorentzian fitting and sweeps.

pub mod analysis;
pub mod eigen;
mod error;
pub mod lorentzian;
pub mod modes;
pub mod params;
pub mod response;
pub mod weak;

pub use analysis::{
    branch_peak, initial_guess, BranchPeak,
    extract_fwhm, find_peaks, fit_lorentzian, mode_summary_sweep, FitOptions, LorentzianFit,
    ModeSummaryRow, PeakQuality, PeakReport, RowFlag, SweepOptions,
};
pub use eigen::{diagonalize_oracle, eigenstructure, EigenStructure};
pub use error::{Error, Result};
pub use lorentzian::Lorentzian;
pub use modes::{
    bare_transmission, crossover_detuning, intermediate_amplitude, lorentzian_transmission,
    mode_descriptors, peak_transmission, Branch, Crossover, ModeDescriptor, ModePair,
};
pub use num_complex::Complex64;
pub use params::SystemParams;
pub use response::{amplitude, sample_spectrum, transmission, uniform_grid, Spectrum};
pub use weak::{
    dispersive_shift, induced_loss, single_mode_amplitude, single_mode_transmission,
    susceptibility, weak_coupling_response, WeakCouplingResponse,
};
