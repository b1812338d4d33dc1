use crate::error::{Error, Result};

/// One Jaynes-Cummings configuration: resonator, qubit and their loss channels.
///
/// Frequencies are absolute (not rotating-frame) transition frequencies from
/// the ground state `|0g>`, which sits at zero energy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SystemParams {
    pub omega_r: f64,
    pub omega_q: f64,
    /// Coupling of the resonator to each of the two ports.
    pub kappa_c: f64,
    /// Total photon loss rate, ports included.
    pub kappa: f64,
    pub g: f64,
    /// Total qubit decoherence rate. Zero is accepted as a lossless qubit.
    pub gamma: f64,
}

impl SystemParams {
    pub fn new(omega_r: f64, omega_q: f64, kappa_c: f64, kappa: f64, g: f64, gamma: f64) -> Self {
        Self { omega_r, omega_q, kappa_c, kappa, g, gamma }
    }

    /// Resonant configuration with `omega_r = 1` and the given rates.
    pub fn resonant(kappa_c: f64, kappa: f64, g: f64, gamma: f64) -> Self {
        Self::new(1.0, 1.0, kappa_c, kappa, g, gamma)
    }

    /// Strong coupling with equal photonic and electronic loss
    /// (`kappa_c = 5e-3`, `kappa = 2 kappa_c`, `g = 0.05`, `gamma = 1e-2`).
    pub fn equal_loss() -> Self {
        Self::resonant(5e-3, 1e-2, 0.05, 1e-2)
    }

    /// Strong coupling with a qubit far more coherent than the resonator
    /// (`gamma = 1e-4`, otherwise as [`SystemParams::equal_loss`]).
    pub fn high_coherence() -> Self {
        Self::resonant(5e-3, 1e-2, 0.05, 1e-4)
    }

    /// Weak coupling: a strongly dephased qubit (`g = 0.02`, `gamma = 0.2`).
    pub fn weak_coupling() -> Self {
        Self::resonant(5e-3, 1e-2, 0.02, 0.2)
    }

    /// Qubit-resonator detuning `omega_q - omega_r`.
    pub fn delta(&self) -> f64 {
        self.omega_q - self.omega_r
    }

    /// Copy with the qubit moved to `omega_r + delta`.
    pub fn with_delta(mut self, delta: f64) -> Self {
        self.omega_q = self.omega_r + delta;
        self
    }

    pub fn with_gamma(mut self, gamma: f64) -> Self {
        self.gamma = gamma;
        self
    }

    pub fn with_g(mut self, g: f64) -> Self {
        self.g = g;
        self
    }

    /// Both hybridized peaks are resolved when the coupling exceeds every loss.
    pub fn is_strong_coupling(&self) -> bool {
        self.g > self.kappa.max(self.gamma)
    }

    /// Single-mode (dispersive loss) description applies once `gamma > g`.
    pub fn is_weak_coupling(&self) -> bool {
        self.gamma > self.g
    }

    /// Largest transmission any passive configuration can reach, `(2 kappa_c / kappa)^2`.
    pub fn bare_peak_transmission(&self) -> f64 {
        (2.0 * self.kappa_c / self.kappa).powi(2)
    }

    pub fn validate(self) -> Result<Self> {
        for (name, value) in [
            ("omega_r", self.omega_r),
            ("omega_q", self.omega_q),
            ("kappa_c", self.kappa_c),
            ("kappa", self.kappa),
            ("g", self.g),
        ] {
            // written so that NaN is rejected too
            if !(value > 0.0) || !value.is_finite() {
                return Err(Error::NonPositiveRate { name, value });
            }
        }
        if !(self.gamma >= 0.0) || !self.gamma.is_finite() {
            return Err(Error::NegativeGamma(self.gamma));
        }
        if self.kappa < 2.0 * self.kappa_c {
            return Err(Error::PortExceedsTotal { kappa: self.kappa, kappa_c: self.kappa_c });
        }
        Ok(self)
    }
}
