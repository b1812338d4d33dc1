/// Transmission lineshape of a single resonator mode,
/// `T = coupling^2 / ((linewidth/2)^2 + (omega - centre)^2)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Lorentzian {
    pub centre: f64,
    /// Full width at half maximum.
    pub linewidth: f64,
    /// Port coupling rate.
    pub coupling: f64,
}

impl Lorentzian {
    pub fn new(centre: f64, linewidth: f64, coupling: f64) -> Self {
        Self { centre, linewidth, coupling }
    }

    pub fn eval(&self, omega: f64) -> f64 {
        let half = 0.5 * self.linewidth;
        let x = omega - self.centre;
        self.coupling * self.coupling / (half * half + x * x)
    }

    pub fn peak(&self) -> f64 {
        (2.0 * self.coupling / self.linewidth).powi(2)
    }

    /// Partial derivatives of [`Lorentzian::eval`] with respect to
    /// `(centre, linewidth, coupling)`.
    pub fn gradient(&self, omega: f64) -> [f64; 3] {
        let half = 0.5 * self.linewidth;
        let x = omega - self.centre;
        let den = half * half + x * x;
        let c2 = self.coupling * self.coupling;
        [
            2.0 * c2 * x / (den * den),
            -c2 * half / (den * den),
            2.0 * self.coupling / den,
        ]
    }
}
