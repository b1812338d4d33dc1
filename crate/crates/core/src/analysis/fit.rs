//! Damped least-squares fit of a single Lorentzian to a spectral window.

use nalgebra::{Matrix3, Vector3};

use super::peaks::{extract_fwhm, find_peaks_above};
use crate::error::{Error, Result};
use crate::lorentzian::Lorentzian;
use crate::response::Spectrum;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FitOptions {
    pub max_iterations: usize,
    /// Converged once every parameter moves by less than this fraction of itself.
    pub relative_tolerance: f64,
    pub initial_damping: f64,
    pub damping_increase: f64,
    pub damping_decrease: f64,
}

impl Default for FitOptions {
    fn default() -> Self {
        Self {
            max_iterations: 200,
            relative_tolerance: 1e-10,
            initial_damping: 1e-3,
            damping_increase: 10.0,
            damping_decrease: 10.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LorentzianFit {
    pub omega_0: f64,
    pub kappa_fit: f64,
    pub kappa_c_fit: f64,
    /// Root-mean-square of `model - data` over the window.
    pub rms_residual: f64,
    pub iterations: usize,
    /// False when the iteration budget ran out; the parameters are then the
    /// best found so far.
    pub converged: bool,
}

impl LorentzianFit {
    pub fn lorentzian(&self) -> Lorentzian {
        Lorentzian::new(self.omega_0, self.kappa_fit, self.kappa_c_fit)
    }
}

pub fn fit_lorentzian(spectrum: &Spectrum, window: (f64, f64), init: &Lorentzian) -> Result<LorentzianFit> {
    fit_lorentzian_with(spectrum, window, init, &FitOptions::default())
}

/// Starting point from the tallest peak in the window and its half-maximum width.
pub fn initial_guess(spectrum: &Spectrum, window: (f64, f64)) -> Result<Lorentzian> {
    let data = windowed(spectrum, window)?;
    let peak = find_peaks_above(&data, 0.0)?[0];
    let linewidth = extract_fwhm(&data, &peak)
        .unwrap_or_else(|_| 0.25 * (data.omega_max() - data.omega_min()));
    Ok(Lorentzian::new(peak.omega_peak, linewidth, 0.5 * linewidth * peak.t_peak.sqrt()))
}

pub fn fit_lorentzian_with(
    spectrum: &Spectrum,
    window: (f64, f64),
    init: &Lorentzian,
    options: &FitOptions,
) -> Result<LorentzianFit> {
    let data = windowed(spectrum, window)?;
    let (xs, ys) = (&data.frequencies, &data.transmissions);

    let cost = |m: &Lorentzian| -> f64 {
        xs.iter().zip(ys).map(|(&x, &y)| (m.eval(x) - y).powi(2)).sum()
    };

    let mut model = Lorentzian::new(init.centre, init.linewidth.abs(), init.coupling.abs());
    let mut current = cost(&model);
    let mut damping = options.initial_damping;
    let mut converged = false;
    let mut iterations = 0;

    while iterations < options.max_iterations && !converged {
        iterations += 1;

        let mut jtj = Matrix3::<f64>::zeros();
        let mut jtr = Vector3::<f64>::zeros();
        for (&x, &y) in xs.iter().zip(ys) {
            let g = Vector3::from(model.gradient(x));
            jtj += g * g.transpose();
            jtr += g * (model.eval(x) - y);
        }
        let diag = Matrix3::from_diagonal(&jtj.diagonal());

        // raise the damping until a step lowers the cost
        loop {
            let step = (jtj + diag * damping).lu().solve(&(-jtr));
            let Some(step) = step else {
                damping *= options.damping_increase;
                if damping > 1e30 {
                    break;
                }
                continue;
            };
            let trial = Lorentzian::new(
                model.centre + step[0],
                model.linewidth + step[1],
                model.coupling + step[2],
            );
            let small = small_step(&model, &step, options.relative_tolerance);
            let trial_cost = if trial.linewidth > 0.0 { cost(&trial) } else { f64::INFINITY };

            if trial_cost <= current {
                model = trial;
                current = trial_cost;
                damping /= options.damping_decrease;
                converged = small;
                break;
            }
            if small || damping > 1e30 {
                // no representable improvement left
                converged = small;
                break;
            }
            damping *= options.damping_increase;
        }
        if damping > 1e30 {
            break;
        }
    }

    Ok(LorentzianFit {
        omega_0: model.centre,
        kappa_fit: model.linewidth,
        kappa_c_fit: model.coupling.abs(),
        rms_residual: (current / xs.len() as f64).sqrt(),
        iterations,
        converged,
    })
}

fn small_step(model: &Lorentzian, step: &Vector3<f64>, tol: f64) -> bool {
    let p = [model.centre, model.linewidth, model.coupling];
    p.iter().zip(step.iter()).all(|(p, s)| s.abs() <= tol * p.abs())
}

fn windowed(spectrum: &Spectrum, (lo, hi): (f64, f64)) -> Result<Spectrum> {
    if !(lo < hi) {
        return Err(Error::DegenerateWindow(format!("empty interval [{lo}, {hi}]")));
    }
    let data = spectrum.window(lo, hi);
    if data.len() < 5 {
        return Err(Error::DegenerateWindow(format!(
            "{} samples in [{lo}, {hi}], need at least 5",
            data.len()
        )));
    }
    Ok(data)
}
