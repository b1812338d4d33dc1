use std::cmp::Ordering;

use crate::eigen::eigenstructure;
use crate::error::{Error, Result};
use crate::params::SystemParams;
use crate::response::{transmission, Spectrum};

/// Local maxima at or below this transmission are ignored.
pub const DEFAULT_NOISE_FLOOR: f64 = 1e-6;

/// A branch is shoulder-contaminated when the transmission halfway between the
/// two hybridized frequencies exceeds this fraction of its own peak.
pub const SHOULDER_FRACTION: f64 = 0.1;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PeakQuality {
    Clean,
    ShoulderContaminated,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PeakReport {
    pub omega_peak: f64,
    pub t_peak: f64,
    /// Filled in by [`extract_fwhm`] callers; `find_peaks` leaves it empty.
    pub fwhm: Option<f64>,
    pub quality: PeakQuality,
}

pub fn find_peaks(spectrum: &Spectrum) -> Result<Vec<PeakReport>> {
    find_peaks_above(spectrum, DEFAULT_NOISE_FLOOR)
}

/// Interior local maxima above `floor`, refined by a three-point parabola and,
/// when the spectrum carries its generating parameters, polished on the
/// continuous response. Sorted by descending height.
pub fn find_peaks_above(spectrum: &Spectrum, floor: f64) -> Result<Vec<PeakReport>> {
    let (w, t) = (&spectrum.frequencies, &spectrum.transmissions);
    if w.len() < 3 {
        return Err(Error::BadGrid("peak search needs at least three samples".into()));
    }

    let mut peaks: Vec<PeakReport> = (1..w.len() - 1)
        .filter(|&i| t[i] > floor && t[i] > t[i - 1] && t[i] >= t[i + 1])
        .map(|i| {
            let (mut omega, mut height) =
                parabola_vertex([w[i - 1], w[i], w[i + 1]], [t[i - 1], t[i], t[i + 1]]);
            if let Some(p) = &spectrum.params {
                (omega, height) = golden_max(|x| transmission(p, x), w[i - 1], w[i + 1]);
                if height < t[i] {
                    (omega, height) = (w[i], t[i]);
                }
            }
            let quality = match &spectrum.params {
                Some(p) if shoulder_contaminated(p, height) => PeakQuality::ShoulderContaminated,
                _ => PeakQuality::Clean,
            };
            PeakReport { omega_peak: omega, t_peak: height, fwhm: None, quality }
        })
        .collect();

    if peaks.is_empty() {
        return Err(Error::NoPeaks);
    }
    peaks.sort_by(|a, b| b.t_peak.partial_cmp(&a.t_peak).unwrap_or(Ordering::Equal));
    Ok(peaks)
}

/// Tails of the other hybridized branch dominate when the response between
/// the branches is comparable to this peak. Only meaningful in strong coupling.
pub fn shoulder_contaminated(params: &SystemParams, t_peak: f64) -> bool {
    if !params.is_strong_coupling() {
        return false;
    }
    let e = eigenstructure(params);
    let midpoint = 0.5 * (e.omega_plus + e.omega_minus);
    transmission(params, midpoint) > SHOULDER_FRACTION * t_peak
}

/// Full width at half maximum of `peak`. The half-maximum crossings are
/// bracketed on the grid and then bisected on the continuous response when
/// the spectrum knows its parameters, or linearly interpolated otherwise.
pub fn extract_fwhm(spectrum: &Spectrum, peak: &PeakReport) -> Result<f64> {
    let half = 0.5 * peak.t_peak;
    let upper = crossing(spectrum, peak, half, Side::Upper)?;
    let lower = crossing(spectrum, peak, half, Side::Lower)?;
    Ok(upper - lower)
}

#[derive(Clone, Copy)]
enum Side {
    Lower,
    Upper,
}

fn crossing(spectrum: &Spectrum, peak: &PeakReport, level: f64, side: Side) -> Result<f64> {
    let (w, t) = (&spectrum.frequencies, &spectrum.transmissions);
    let indices: Box<dyn Iterator<Item = usize>> = match side {
        Side::Upper => Box::new((0..w.len()).filter(|&i| w[i] > peak.omega_peak)),
        Side::Lower => Box::new((0..w.len()).rev().filter(|&i| w[i] < peak.omega_peak)),
    };

    let (mut inner_w, mut inner_t) = (peak.omega_peak, peak.t_peak);
    for i in indices {
        if t[i] < level {
            return Ok(match &spectrum.params {
                Some(p) => bisect(|x| transmission(p, x) - level, inner_w, w[i]),
                None => inner_w + (level - inner_t) * (w[i] - inner_w) / (t[i] - inner_t),
            });
        }
        (inner_w, inner_t) = (w[i], t[i]);
    }
    Err(Error::HalfMaxOutsideWindow)
}

/// Root of `f` between `inside` (f >= 0) and `outside` (f < 0).
fn bisect<F: Fn(f64) -> f64>(f: F, mut inside: f64, mut outside: f64) -> f64 {
    for _ in 0..200 {
        let mid = 0.5 * (inside + outside);
        if mid == inside || mid == outside {
            break;
        }
        if f(mid) >= 0.0 {
            inside = mid;
        } else {
            outside = mid;
        }
    }
    0.5 * (inside + outside)
}

/// Vertex of the parabola through three points with a maximum at the middle one.
fn parabola_vertex(x: [f64; 3], y: [f64; 3]) -> (f64, f64) {
    let (h0, h2) = (x[0] - x[1], x[2] - x[1]);
    let (s0, s2) = ((y[0] - y[1]) / h0, (y[2] - y[1]) / h2);
    let a = (s2 - s0) / (h2 - h0);
    if !(a < 0.0) {
        return (x[1], y[1]);
    }
    let b = s0 - a * h0;
    let u = (-b / (2.0 * a)).clamp(h0, h2);
    (x[1] + u, y[1] + b * u + a * u * u)
}

/// Golden-section search for the maximum of a unimodal `f` on `[lo, hi]`.
fn golden_max<F: Fn(f64) -> f64>(f: F, mut lo: f64, mut hi: f64) -> (f64, f64) {
    let inv_phi = 0.5 * (5f64.sqrt() - 1.0);
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let (mut f1, mut f2) = (f(x1), f(x2));
    for _ in 0..200 {
        if hi - lo <= 4.0 * f64::EPSILON * hi.abs().max(lo.abs()) {
            break;
        }
        if f1 < f2 {
            lo = x1;
            (x1, f1) = (x2, f2);
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            (x2, f2) = (x1, f1);
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1);
        }
    }
    let x = 0.5 * (lo + hi);
    (x, f(x))
}
