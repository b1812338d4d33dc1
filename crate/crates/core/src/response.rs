//! Exact weak-probe transmission from input-output theory.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::params::SystemParams;

/// Transmission amplitude `A(omega)` (units of `1/omega_r`):
///
/// ```text
///                  Gamma/2 - i(w - w_q)
/// A = --------------------------------------------------
///     [kappa/2 - i(w - w_r)] [Gamma/2 - i(w - w_q)] + g^2
/// ```
///
/// Finite for every real `omega` when `kappa > 0`. Also valid for `g = 0`,
/// where it reduces to the bare resonator.
pub fn amplitude(params: &SystemParams, omega: f64) -> Complex64 {
    let qubit = Complex64::new(0.5 * params.gamma, -(omega - params.omega_q));
    let cavity = Complex64::new(0.5 * params.kappa, -(omega - params.omega_r));
    qubit / (cavity * qubit + params.g * params.g)
}

/// `T(omega) = |kappa_c A(omega)|^2`, bounded by `(2 kappa_c / kappa)^2 <= 1`.
pub fn transmission(params: &SystemParams, omega: f64) -> f64 {
    params.kappa_c * params.kappa_c * amplitude(params, omega).norm_sqr()
}

/// A transmission trace on a strictly increasing frequency grid.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    pub frequencies: Vec<f64>,
    pub transmissions: Vec<f64>,
    pub amplitudes: Option<Vec<Complex64>>,
    /// Generating configuration, when the trace came from the exact response.
    /// Analysis routines use it to refine on the continuous function.
    pub params: Option<SystemParams>,
}

impl Spectrum {
    /// Wraps measured or externally computed samples.
    pub fn from_samples(frequencies: Vec<f64>, transmissions: Vec<f64>) -> Result<Self> {
        if frequencies.len() != transmissions.len() {
            return Err(Error::BadGrid(format!(
                "{} frequencies but {} transmission values",
                frequencies.len(),
                transmissions.len()
            )));
        }
        if frequencies.len() < 2 {
            return Err(Error::BadGrid("need at least two samples".into()));
        }
        if frequencies.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::BadGrid("frequencies must be strictly increasing".into()));
        }
        Ok(Self { frequencies, transmissions, amplitudes: None, params: None })
    }

    /// Samples an arbitrary lineshape on a uniform grid.
    pub fn from_fn<F>(omega_min: f64, omega_max: f64, n_points: usize, f: F) -> Result<Self>
    where
        F: Fn(f64) -> f64 + Sync,
    {
        let frequencies = uniform_grid(omega_min, omega_max, n_points)?;
        let transmissions = frequencies.par_iter().map(|&w| f(w)).collect();
        Ok(Self { frequencies, transmissions, amplitudes: None, params: None })
    }

    pub fn len(&self) -> usize {
        self.frequencies.len()
    }

    pub fn is_empty(&self) -> bool {
        self.frequencies.is_empty()
    }

    pub fn omega_min(&self) -> f64 {
        self.frequencies[0]
    }

    pub fn omega_max(&self) -> f64 {
        self.frequencies[self.len() - 1]
    }

    /// Continuous transmission at `omega`, if the generating params are known.
    pub fn response_at(&self, omega: f64) -> Option<f64> {
        self.params.as_ref().map(|p| transmission(p, omega))
    }

    /// Samples whose frequency lies in `[lo, hi]`.
    pub fn window(&self, lo: f64, hi: f64) -> Spectrum {
        let (frequencies, transmissions): (Vec<_>, Vec<_>) = self
            .frequencies
            .iter()
            .zip(&self.transmissions)
            .filter(|(w, _)| **w >= lo && **w <= hi)
            .map(|(w, t)| (*w, *t))
            .unzip();
        Spectrum { frequencies, transmissions, amplitudes: None, params: self.params }
    }

    pub fn iter(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.frequencies.iter().copied().zip(self.transmissions.iter().copied())
    }
}

/// Uniform grid of `n_points` values including both endpoints.
pub fn uniform_grid(min: f64, max: f64, n_points: usize) -> Result<Vec<f64>> {
    if !(min < max) || !min.is_finite() || !max.is_finite() {
        return Err(Error::BadGrid(format!("need min < max, got [{min}, {max}]")));
    }
    if n_points < 2 {
        return Err(Error::BadGrid(format!("need at least 2 points, got {n_points}")));
    }
    let step = (max - min) / (n_points - 1) as f64;
    let mut grid: Vec<f64> = (0..n_points).map(|i| min + step * i as f64).collect();
    grid[n_points - 1] = max;
    Ok(grid)
}

/// Exact spectrum on a uniform grid. Points are evaluated in parallel; the
/// result is ordered by the grid regardless.
pub fn sample_spectrum(
    params: &SystemParams,
    omega_min: f64,
    omega_max: f64,
    n_points: usize,
) -> Result<Spectrum> {
    let frequencies = uniform_grid(omega_min, omega_max, n_points)?;
    let amplitudes: Vec<Complex64> =
        frequencies.par_iter().map(|&w| amplitude(params, w)).collect();
    let k2 = params.kappa_c * params.kappa_c;
    let transmissions = amplitudes.iter().map(|a| k2 * a.norm_sqr()).collect();
    Ok(Spectrum {
        frequencies,
        transmissions,
        amplitudes: Some(amplitudes),
        params: Some(*params),
    })
}
