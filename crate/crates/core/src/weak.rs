//! Single-mode description when the qubit dephases faster than it couples
//! (`Gamma > g`). The qubit enters only through its susceptibility, which adds
//! loss `kappa_q` to the resonator and pulls its frequency by `delta_omega_q`.

use num_complex::Complex64;

use crate::params::SystemParams;

/// Qubit susceptibility `chi = g / [Gamma/2 - i(omega - omega_q)]`.
pub fn susceptibility(params: &SystemParams, omega: f64) -> Complex64 {
    Complex64::new(params.g, 0.0) / Complex64::new(0.5 * params.gamma, -(omega - params.omega_q))
}

/// `(4 g^2 / Gamma) / (1 + (2 delta / Gamma)^2)`
pub fn induced_loss(params: &SystemParams) -> f64 {
    let x = 2.0 * params.delta() / params.gamma;
    4.0 * params.g * params.g / params.gamma / (1.0 + x * x)
}

/// `-(2 g^2 / Gamma) (2 delta / Gamma) / (1 + (2 delta / Gamma)^2)`
pub fn dispersive_shift(params: &SystemParams) -> f64 {
    let x = 2.0 * params.delta() / params.gamma;
    -2.0 * params.g * params.g / params.gamma * x / (1.0 + x * x)
}

/// Resonator response with the qubit folded into an extra loss and a shift:
/// `A = 1 / [(kappa + kappa_q)/2 - i(omega - omega_r - delta_omega_q)]`.
pub fn single_mode_amplitude(params: &SystemParams, omega: f64) -> Complex64 {
    let kappa_q = induced_loss(params);
    let shift = dispersive_shift(params);
    Complex64::new(1.0, 0.0)
        / Complex64::new(0.5 * (params.kappa + kappa_q), -(omega - params.omega_r - shift))
}

pub fn single_mode_transmission(params: &SystemParams, omega: f64) -> f64 {
    params.kappa_c * params.kappa_c * single_mode_amplitude(params, omega).norm_sqr()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeakCouplingResponse {
    /// Susceptibility at the bare resonator frequency.
    pub chi_re: f64,
    pub chi_im: f64,
    pub kappa_q: f64,
    pub delta_omega_q: f64,
    /// `Gamma > g`; outside it the two hybridized peaks reappear.
    pub valid: bool,
}

impl WeakCouplingResponse {
    pub fn shifted_frequency(&self, params: &SystemParams) -> f64 {
        params.omega_r + self.delta_omega_q
    }

    /// Peak of the shifted Lorentzian, `(2 kappa_c / (kappa + kappa_q))^2`.
    pub fn peak_transmission(&self, params: &SystemParams) -> f64 {
        (2.0 * params.kappa_c / (params.kappa + self.kappa_q)).powi(2)
    }
}

pub fn weak_coupling_response(params: &SystemParams) -> WeakCouplingResponse {
    let chi = susceptibility(params, params.omega_r);
    WeakCouplingResponse {
        chi_re: chi.re,
        chi_im: chi.im,
        kappa_q: induced_loss(params),
        delta_omega_q: dispersive_shift(params),
        valid: params.is_weak_coupling(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eigen::eigenstructure;
    use crate::response::transmission;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    #[test]
    fn susceptibility_values() {
        let p = SystemParams::weak_coupling();
        let chi = susceptibility(&p, p.omega_q);
        assert_relative_eq!(chi.re, 0.2, max_relative = 1e-14);
        assert_eq!(chi.im, 0.0);
        let chi = susceptibility(&p, p.omega_q + p.gamma / 2.0);
        assert_relative_eq!(chi.norm(), 0.2 / 2f64.sqrt(), max_relative = 1e-12);
        // |chi|/2 < 1 whenever Gamma > g
        assert!(chi.norm() / 2.0 < 1.0);
    }

    #[test]
    fn induced_loss_values() {
        let p = SystemParams::weak_coupling();
        assert_relative_eq!(induced_loss(&p), 0.008, max_relative = 1e-14);
        assert_relative_eq!(induced_loss(&p.with_delta(p.gamma / 2.0)), 0.004, max_relative = 1e-14);
        assert_eq!(induced_loss(&p.with_g(0.0)), 0.0);
    }

    #[test]
    fn dispersive_shift_values() {
        let p = SystemParams::weak_coupling();
        assert_eq!(dispersive_shift(&p), 0.0);
        assert_relative_eq!(dispersive_shift(&p.with_delta(0.1)), -0.002, max_relative = 1e-13);
        assert_relative_eq!(dispersive_shift(&p.with_delta(-0.1)), 0.002, max_relative = 1e-13);
    }

    #[test]
    fn loss_and_shift_are_the_susceptibility_at_the_resonator() {
        for delta in [-0.4, -0.1, 0.0, 0.03, 0.25] {
            let p = SystemParams::weak_coupling().with_delta(delta);
            let r = weak_coupling_response(&p);
            assert_relative_eq!(r.kappa_q, 2.0 * p.g * r.chi_re, max_relative = 1e-12);
            assert!((r.delta_omega_q - p.g * r.chi_im).abs() < 1e-15);
        }
    }

    #[test]
    fn single_mode_peak() {
        let p = SystemParams::weak_coupling().with_delta(0.07);
        let r = weak_coupling_response(&p);
        let a = single_mode_amplitude(&p, r.shifted_frequency(&p));
        assert_relative_eq!(a.norm(), 2.0 / (p.kappa + r.kappa_q), max_relative = 1e-14);

        let p = SystemParams::weak_coupling();
        let t = single_mode_transmission(&p, 1.0);
        assert_relative_eq!(t, (0.01f64 / 0.018).powi(2), max_relative = 1e-13);
        assert!((t - transmission(&p, 1.0)).abs() < 0.02);
    }

    #[test]
    fn regime_flag() {
        assert!(weak_coupling_response(&SystemParams::weak_coupling()).valid);
        assert!(!weak_coupling_response(&SystemParams::equal_loss()).valid);
    }

    #[test]
    fn shifted_peak_sits_between_branches() {
        // holds for every detuning once Gamma >= 2g; for g < Gamma < 2g the
        // pull overshoots the perturbative branch at large |delta|
        for gamma in [0.1, 0.12] {
            for i in 0..=160 {
                let delta = -0.8 + 0.01 * i as f64;
                let p = SystemParams::resonant(5e-3, 1e-2, 0.05, gamma).with_delta(delta);
                let e = eigenstructure(&p);
                let w = weak_coupling_response(&p).shifted_frequency(&p);
                assert!(w > e.omega_minus && w < e.omega_plus, "gamma={gamma} delta={delta}");
            }
        }
    }

    proptest! {
        #[test]
        fn bounds_and_sign(g in 1e-4f64..0.1, gamma in 1e-3f64..0.5, delta in -0.9f64..0.9) {
            let p = SystemParams::resonant(5e-3, 1e-2, g, gamma).with_delta(delta);
            let r = weak_coupling_response(&p);
            let scale = g * g / gamma;
            prop_assert!(r.kappa_q >= 0.0 && r.kappa_q <= 4.0 * scale * (1.0 + 1e-12));
            prop_assert!(r.delta_omega_q.abs() <= scale * (1.0 + 1e-12));
            if delta != 0.0 {
                prop_assert_eq!(r.delta_omega_q.signum(), -delta.signum());
            }
        }
    }
}
