//! Exact peak height and linewidth of each hybridized branch across a detuning
//! sweep, tabulated against the effective-mode prediction.

use std::fmt;

use rayon::prelude::*;

use super::peaks::{extract_fwhm, find_peaks, PeakQuality};
use crate::error::{Error, Result};
use crate::modes::{mode_descriptors, peak_transmission, Branch, ModeDescriptor};
use crate::params::SystemParams;
use crate::response::sample_spectrum;

#[derive(Debug, Clone, PartialEq)]
pub struct SweepOptions {
    pub branches: Vec<Branch>,
    /// Half-width of the sampled window around each branch, in units of its
    /// effective linewidth.
    pub window_linewidths: f64,
    pub points: usize,
}

impl Default for SweepOptions {
    fn default() -> Self {
        Self { branches: vec![Branch::Plus], window_linewidths: 5.0, points: 801 }
    }
}

impl SweepOptions {
    pub fn both_branches() -> Self {
        Self { branches: vec![Branch::Plus, Branch::Minus], ..Self::default() }
    }
}

/// Why a row's exact values should not be compared with the model.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RowFlag {
    Clean,
    /// The other branch's tail dominates the response near this one.
    Shoulder,
    /// Branches closer than ten linewidths.
    OutsideValidity,
    /// No interior maximum in the window.
    NoPeak,
    /// Half maximum not reached inside the window.
    HalfMaxOutside,
}

impl RowFlag {
    pub fn as_str(self) -> &'static str {
        match self {
            RowFlag::Clean => "clean",
            RowFlag::Shoulder => "shoulder",
            RowFlag::OutsideValidity => "outside_validity",
            RowFlag::NoPeak => "no_peak",
            RowFlag::HalfMaxOutside => "half_max_outside",
        }
    }

    pub fn is_clean(self) -> bool {
        self == RowFlag::Clean
    }
}

impl fmt::Display for RowFlag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BranchPeak {
    pub omega_peak: f64,
    pub t_peak: f64,
    pub fwhm: f64,
    pub flag: RowFlag,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeSummaryRow {
    pub delta: f64,
    pub branch: Branch,
    pub omega_mode: f64,
    pub kappa_c_eff: f64,
    pub kappa_eff: f64,
    pub t_peak_model: f64,
    pub omega_peak_exact: f64,
    pub t_peak_exact: f64,
    pub fwhm_exact: f64,
    pub flag: RowFlag,
}

/// Measures one branch on the exact response, the way a trace would be read:
/// sample around the predicted mode, take the tallest maximum, and bisect for
/// the half-maximum points. Failed extractions come back flagged with NaNs.
pub fn branch_peak(params: &SystemParams, mode: &ModeDescriptor, options: &SweepOptions) -> BranchPeak {
    let failed = |flag| BranchPeak { omega_peak: f64::NAN, t_peak: f64::NAN, fwhm: f64::NAN, flag };
    let half_width = options.window_linewidths * mode.kappa_eff;
    let Ok(spectrum) = sample_spectrum(
        params,
        mode.omega_mode - half_width,
        mode.omega_mode + half_width,
        options.points,
    ) else {
        return failed(RowFlag::NoPeak);
    };
    let Ok(peaks) = find_peaks(&spectrum) else {
        return failed(RowFlag::NoPeak);
    };
    let peak = peaks[0];
    let (fwhm, mut flag) = match extract_fwhm(&spectrum, &peak) {
        Ok(w) => (w, RowFlag::Clean),
        Err(_) => (f64::NAN, RowFlag::HalfMaxOutside),
    };
    if flag.is_clean() {
        if peak.quality == PeakQuality::ShoulderContaminated {
            flag = RowFlag::Shoulder;
        } else if crate::eigen::eigenstructure(params).omega_rabi < 10.0 * mode.kappa_eff * (1.0 - 1e-9) {
            flag = RowFlag::OutsideValidity;
        }
    }
    BranchPeak { omega_peak: peak.omega_peak, t_peak: peak.t_peak, fwhm, flag }
}

/// One row per detuning and requested branch, ordered by the input grid. The
/// qubit of `template` is moved to `omega_r + delta` for each row.
pub fn mode_summary_sweep(
    template: &SystemParams,
    deltas: &[f64],
    options: &SweepOptions,
) -> Result<Vec<ModeSummaryRow>> {
    if deltas.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::BadGrid("detuning grid must be strictly increasing".into()));
    }
    let rows = deltas
        .par_iter()
        .flat_map_iter(|&delta| {
            let params = template.with_delta(delta);
            let modes = mode_descriptors(&params);
            options.branches.iter().map(move |&branch| {
                let mode = *modes.get(branch);
                let exact = branch_peak(&params, &mode, options);
                ModeSummaryRow {
                    delta,
                    branch,
                    omega_mode: mode.omega_mode,
                    kappa_c_eff: mode.kappa_c_eff,
                    kappa_eff: mode.kappa_eff,
                    t_peak_model: peak_transmission(&mode),
                    omega_peak_exact: exact.omega_peak,
                    t_peak_exact: exact.t_peak,
                    fwhm_exact: exact.fwhm,
                    flag: exact.flag,
                }
            })
        })
        .collect();
    Ok(rows)
}
