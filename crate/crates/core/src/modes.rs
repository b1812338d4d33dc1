//! Hybridized states as effective photonic modes.
//!
//! Near each eigenfrequency the exact response reduces to the Lorentzian of a
//! bare resonator whose port coupling and linewidth are weighted by the
//! photonic (`|1g>`) and electronic (`|0e>`) content of the state:
//!
//! ```text
//! kappa_c,+- = kappa_c |c_-+|^2
//! kappa_+-   = kappa |c_-+|^2 + Gamma |c_+-|^2
//! ```

use std::fmt;

use num_complex::Complex64;

use crate::eigen::eigenstructure;
use crate::error::{Error, Result};
use crate::lorentzian::Lorentzian;
use crate::params::SystemParams;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Branch {
    Plus,
    Minus,
}

impl Branch {
    pub fn sign(self) -> f64 {
        match self {
            Branch::Plus => 1.0,
            Branch::Minus => -1.0,
        }
    }

    pub fn other(self) -> Branch {
        match self {
            Branch::Plus => Branch::Minus,
            Branch::Minus => Branch::Plus,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Branch::Plus => "plus",
            Branch::Minus => "minus",
        }
    }
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One hybridized state seen as a resonator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeDescriptor {
    pub branch: Branch,
    pub omega_mode: f64,
    pub kappa_c_eff: f64,
    pub kappa_eff: f64,
    pub photonic_weight: f64,
    pub electronic_weight: f64,
}

impl ModeDescriptor {
    pub fn lorentzian(&self) -> Lorentzian {
        Lorentzian::new(self.omega_mode, self.kappa_eff, self.kappa_c_eff)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModePair {
    pub plus: ModeDescriptor,
    pub minus: ModeDescriptor,
    /// False when `g <= max(kappa, Gamma)`: the peaks are not resolved and the
    /// descriptors are outside their range of validity.
    pub strong_coupling: bool,
}

impl ModePair {
    pub fn get(&self, branch: Branch) -> &ModeDescriptor {
        match branch {
            Branch::Plus => &self.plus,
            Branch::Minus => &self.minus,
        }
    }
}

pub fn mode_descriptors(params: &SystemParams) -> ModePair {
    let e = eigenstructure(params);
    let build = |branch, omega_mode, photonic: f64, electronic: f64| ModeDescriptor {
        branch,
        omega_mode,
        kappa_c_eff: params.kappa_c * photonic,
        kappa_eff: params.kappa * photonic + params.gamma * electronic,
        photonic_weight: photonic,
        electronic_weight: electronic,
    };
    ModePair {
        plus: build(Branch::Plus, e.omega_plus, e.c_minus_sq(), e.c_plus_sq()),
        minus: build(Branch::Minus, e.omega_minus, e.c_plus_sq(), e.c_minus_sq()),
        strong_coupling: params.is_strong_coupling(),
    }
}

pub fn lorentzian_transmission(mode: &ModeDescriptor, omega: f64) -> f64 {
    mode.lorentzian().eval(omega)
}

/// Visibility of a mode, `(2 kappa_c_eff / kappa_eff)^2`.
pub fn peak_transmission(mode: &ModeDescriptor) -> f64 {
    mode.lorentzian().peak()
}

/// Response near one branch with the qubit numerator frozen at the branch
/// frequency and the `kappa Gamma / 4` term dropped. Algebraically identical
/// in modulus to the effective-mode Lorentzian.
pub fn intermediate_amplitude(params: &SystemParams, omega: f64, branch: Branch) -> Complex64 {
    let e = eigenstructure(params);
    let (omega_b, s) = match branch {
        Branch::Plus => (e.omega_plus, 1.0),
        Branch::Minus => (e.omega_minus, -1.0),
    };
    let from_qubit = omega_b - params.omega_q;
    let from_resonator = omega_b - params.omega_r;
    let den = Complex64::new(
        0.5 * params.kappa * from_qubit + 0.5 * params.gamma * from_resonator,
        -s * e.omega_rabi * (omega - omega_b),
    );
    Complex64::new(from_qubit, 0.0) / den
}

/// The uncoupled resonator, `kappa_c^2 / ((kappa/2)^2 + (omega - omega_r)^2)`.
pub fn bare_transmission(params: &SystemParams, omega: f64) -> f64 {
    Lorentzian::new(params.omega_r, params.kappa, params.kappa_c).eval(omega)
}

/// Detuning at which photonic and electronic loss contribute equally to the
/// upper branch linewidth, `kappa |c_-|^2 = Gamma |c_+|^2`. The lower branch
/// crosses over at the negated detuning.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Crossover {
    /// `sqrt(kappa / Gamma) g`, valid for `Gamma << kappa`.
    pub approx: f64,
    /// `g (kappa - Gamma) / sqrt(kappa Gamma)`, no assumption on the ratio.
    pub exact: f64,
    /// False unless `Gamma < kappa / 10`, i.e. the approximate form is not trustworthy.
    pub approx_valid: bool,
}

pub fn crossover_detuning(params: &SystemParams) -> Result<Crossover> {
    let (kappa, gamma, g) = (params.kappa, params.gamma, params.g);
    if gamma <= 0.0 {
        return Err(Error::DegenerateCondition(
            "lossless qubit: the photonic part always dominates the linewidth".into(),
        ));
    }
    if kappa == gamma {
        return Err(Error::DegenerateCondition(
            "kappa = Gamma: contributions are equal only at zero detuning".into(),
        ));
    }
    Ok(Crossover {
        approx: (kappa / gamma).sqrt() * g,
        exact: g * (kappa - gamma) / (kappa * gamma).sqrt(),
        approx_valid: gamma < 0.1 * kappa,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::response::transmission;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    #[test]
    fn resonant_equal_loss() {
        let m = mode_descriptors(&SystemParams::equal_loss());
        assert!(m.strong_coupling);
        for d in [m.plus, m.minus] {
            assert_relative_eq!(d.kappa_c_eff, 0.0025, max_relative = 1e-14);
            assert_relative_eq!(d.kappa_eff, 0.01, max_relative = 1e-14);
            assert_relative_eq!(peak_transmission(&d), 0.25, max_relative = 1e-13);
        }
    }

    #[test]
    fn resonant_linewidth_is_average() {
        let p = SystemParams::high_coherence();
        let m = mode_descriptors(&p);
        assert_relative_eq!(m.plus.kappa_eff, 0.00505, max_relative = 1e-14);
        assert_relative_eq!(m.plus.kappa_c_eff, 0.0025, max_relative = 1e-14);
        assert_relative_eq!(m.minus.kappa_eff, (p.kappa + p.gamma) / 2.0, max_relative = 1e-14);
        assert_relative_eq!(peak_transmission(&m.plus), (0.005f64 / 0.00505).powi(2), max_relative = 1e-13);
        assert_relative_eq!(peak_transmission(&m.plus), 0.980296049406921, max_relative = 1e-12);
    }

    #[test]
    fn high_coherence_at_crossover() {
        let m = mode_descriptors(&SystemParams::high_coherence().with_delta(0.5));
        // |c_-|^2 = (1 - 0.5/sqrt(0.26)) / 2
        assert_relative_eq!(m.plus.photonic_weight, 0.009709662154539944, max_relative = 1e-10);
        assert_relative_eq!(m.plus.kappa_eff, 1.9612565532994543e-4, max_relative = 1e-10);
        assert_relative_eq!(m.plus.kappa_c_eff, 4.854831077269972e-5, max_relative = 1e-10);
    }

    #[test]
    fn lorentzian_shape() {
        let m = mode_descriptors(&SystemParams::equal_loss().with_delta(0.07)).plus;
        let peak = lorentzian_transmission(&m, m.omega_mode);
        assert_relative_eq!(peak, peak_transmission(&m), max_relative = 1e-14);
        for s in [-1.0, 1.0] {
            let half = lorentzian_transmission(&m, m.omega_mode + s * m.kappa_eff / 2.0);
            assert_relative_eq!(half, peak / 2.0, max_relative = 1e-10);
        }
    }

    #[test]
    fn bare_photonic_limit_is_unity() {
        let p = SystemParams::equal_loss().with_g(1e-6).with_delta(-0.5);
        let m = mode_descriptors(&p);
        assert_relative_eq!(peak_transmission(&m.plus), 1.0, max_relative = 1e-10);
    }

    #[test]
    fn intermediate_form_at_resonance() {
        let p = SystemParams::equal_loss();
        let e = eigenstructure(&p);
        let a = intermediate_amplitude(&p, e.omega_plus, Branch::Plus);
        assert_eq!(a.im, 0.0);
        let expected = 1.0
            / (p.kappa / 2.0
                + p.gamma / 2.0 * (e.omega_plus - p.omega_r) / (e.omega_plus - p.omega_q));
        assert_relative_eq!(a.re, expected, max_relative = 1e-13);
        assert_relative_eq!(p.kappa_c.powi(2) * a.norm_sqr(), 0.25, max_relative = 1e-12);
    }

    #[test]
    fn intermediate_form_equals_lorentzian() {
        for (p, dw) in [
            (SystemParams::equal_loss(), 0.005),
            (SystemParams::high_coherence().with_delta(0.2), 3e-4),
            (SystemParams::equal_loss().with_delta(-0.15), -0.004),
        ] {
            let m = mode_descriptors(&p);
            for mode in [m.plus, m.minus] {
                let w = mode.omega_mode + dw;
                let a = intermediate_amplitude(&p, w, mode.branch);
                assert_relative_eq!(
                    p.kappa_c.powi(2) * a.norm_sqr(),
                    lorentzian_transmission(&mode, w),
                    max_relative = 1e-12
                );
            }
        }
    }

    #[test]
    fn intermediate_form_tracks_exact_response() {
        let p = SystemParams::equal_loss();
        let e = eigenstructure(&p);
        for (dw, tol) in [(0.0, 3e-3), (0.005, 0.02), (-0.005, 0.02)] {
            let w = e.omega_plus + dw;
            let approx = p.kappa_c.powi(2) * intermediate_amplitude(&p, w, Branch::Plus).norm_sqr();
            assert!((approx - transmission(&p, w)).abs() < tol, "dw={dw}");
        }
    }

    #[test]
    fn bare_lineshape() {
        let p = SystemParams::equal_loss();
        assert_relative_eq!(bare_transmission(&p, 1.0), 1.0, max_relative = 1e-15);
        assert_relative_eq!(bare_transmission(&p, 1.0 + p.kappa / 2.0), 0.5, max_relative = 1e-12);
        assert_relative_eq!(bare_transmission(&p, 1.0 - p.kappa / 2.0), 0.5, max_relative = 1e-12);
        // 0.005^2 / (0.005^2 + 0.02^2) = 1/17
        assert_relative_eq!(bare_transmission(&p, 1.02), 1.0 / 17.0, max_relative = 1e-12);
    }

    #[test]
    fn crossover_values() {
        let c = crossover_detuning(&SystemParams::high_coherence()).unwrap();
        assert_relative_eq!(c.approx, 0.5, max_relative = 1e-14);
        assert_relative_eq!(c.exact, 0.495, max_relative = 1e-13);
        assert!(c.approx_valid);

        // the exact crossover satisfies the equal-contribution condition
        let m = mode_descriptors(&SystemParams::high_coherence().with_delta(c.exact)).plus;
        assert_relative_eq!(0.01 * m.photonic_weight, 1e-4 * m.electronic_weight, max_relative = 1e-10);

        let p = SystemParams::equal_loss();
        assert!(matches!(crossover_detuning(&p), Err(Error::DegenerateCondition(_))));
        assert!(matches!(crossover_detuning(&p.with_gamma(0.0)), Err(Error::DegenerateCondition(_))));
        // approaching kappa = Gamma the crossover moves to resonance
        let near = crossover_detuning(&p.with_gamma(0.01 * (1.0 - 1e-9))).unwrap();
        assert!(near.exact.abs() < 1e-9);
        assert!(!near.approx_valid);
    }

    proptest! {
        #[test]
        fn sum_rules_and_bounds(
            kc in 1e-4f64..0.05, extra in 0.0f64..0.05, g in 1e-4f64..0.2,
            gamma in 0.0f64..0.3, delta in -0.9f64..2.0,
        ) {
            let p = SystemParams::new(1.0, 1.0 + delta, kc, 2.0 * kc + extra, g, gamma);
            let m = mode_descriptors(&p);
            prop_assert!((m.plus.kappa_c_eff + m.minus.kappa_c_eff - p.kappa_c).abs() < 1e-12);
            prop_assert!((m.plus.kappa_eff + m.minus.kappa_eff - p.kappa - p.gamma).abs() < 1e-12);
            for d in [m.plus, m.minus] {
                prop_assert!((d.photonic_weight + d.electronic_weight - 1.0).abs() < 1e-12);
                prop_assert!(d.kappa_c_eff <= p.kappa_c * (1.0 + 1e-15));
                let (lo, hi) = (p.kappa.min(p.gamma), p.kappa.max(p.gamma));
                prop_assert!(d.kappa_eff >= lo * (1.0 - 1e-12) && d.kappa_eff <= hi * (1.0 + 1e-12));
            }
        }
    }
}
