//! Eigenstructure of the single-excitation doublet `{|0e>, |1g>}`.
//!
//! In that basis the Hamiltonian is the symmetric matrix
//! `[[omega_q, g], [g, omega_r]]` and the upper and lower eigenstates are
//!
//! ```text
//! |psi_+> = c_+ |0e> + c_- |1g>
//! |psi_-> = c_- |0e> - c_+ |1g>
//! ```

use crate::params::SystemParams;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenStructure {
    /// Splitting of the doublet, `sqrt(delta^2 + 4 g^2)`.
    pub omega_rabi: f64,
    pub omega_plus: f64,
    pub omega_minus: f64,
    /// Amplitude of `|0e>` in `|psi_+>` (and of `|1g>` in `|psi_->`).
    pub c_plus: f64,
    /// Amplitude of `|1g>` in `|psi_+>` (and of `|0e>` in `|psi_->`).
    pub c_minus: f64,
    /// Mixing angle in `(0, pi)`; `c_+ = cos(phi/2)`, `c_- = sin(phi/2)`.
    pub phi: f64,
}

impl EigenStructure {
    /// `|c_+|^2`, the electronic weight of `|psi_+>`.
    pub fn c_plus_sq(&self) -> f64 {
        self.c_plus * self.c_plus
    }

    /// `|c_-|^2`, the photonic weight of `|psi_+>`.
    pub fn c_minus_sq(&self) -> f64 {
        self.c_minus * self.c_minus
    }
}

/// Closed-form eigenstructure. Requires `g > 0` so that the weights are defined
/// at zero detuning.
pub fn eigenstructure(params: &SystemParams) -> EigenStructure {
    let delta = params.delta();
    let g = params.g;
    let omega_rabi = delta.hypot(2.0 * g);
    let centre = 0.5 * (params.omega_q + params.omega_r);

    // c_{+/-}^2 = (Omega +/- delta) / (2 Omega); the smaller of the two is
    // formed from Omega - |delta| = 4 g^2 / (Omega + |delta|) to avoid cancellation.
    let large = 0.5 * (omega_rabi + delta.abs()) / omega_rabi;
    let small = 2.0 * g * g / ((omega_rabi + delta.abs()) * omega_rabi);
    let (c_plus_sq, c_minus_sq) = if delta >= 0.0 { (large, small) } else { (small, large) };

    EigenStructure {
        omega_rabi,
        omega_plus: centre + 0.5 * omega_rabi,
        omega_minus: centre - 0.5 * omega_rabi,
        c_plus: c_plus_sq.sqrt(),
        c_minus: c_minus_sq.sqrt(),
        phi: (2.0 * g).atan2(delta),
    }
}

/// Numerical diagonalization of the 2x2 doublet Hamiltonian by a Jacobi
/// rotation. Shares no arithmetic with [`eigenstructure`] and exists to
/// cross-check it.
pub fn diagonalize_oracle(params: &SystemParams) -> EigenStructure {
    let (a, b, d) = (params.omega_q, params.g, params.omega_r);
    let (evals, evecs) = jacobi_2x2(a, b, d);

    let (upper, lower, mut vec) = if evals[0] >= evals[1] {
        (evals[0], evals[1], evecs[0])
    } else {
        (evals[1], evals[0], evecs[1])
    };
    // sign convention: non-negative |0e> amplitude in |psi_+>
    if vec[0] < 0.0 || (vec[0] == 0.0 && vec[1] < 0.0) {
        vec = [-vec[0], -vec[1]];
    }
    let (c_plus, c_minus) = (vec[0], vec[1]);

    EigenStructure {
        omega_rabi: upper - lower,
        omega_plus: upper,
        omega_minus: lower,
        c_plus,
        c_minus,
        phi: 2.0 * c_minus.atan2(c_plus),
    }
}

/// Eigenpairs of `[[a, b], [b, d]]`. For a 2x2 block one Jacobi rotation
/// annihilates the off-diagonal element exactly.
fn jacobi_2x2(a: f64, b: f64, d: f64) -> ([f64; 2], [[f64; 2]; 2]) {
    if b == 0.0 {
        return ([a, d], [[1.0, 0.0], [0.0, 1.0]]);
    }
    let theta = (d - a) / (2.0 * b);
    let t = if theta == 0.0 {
        1.0
    } else {
        theta.signum() / (theta.abs() + theta.hypot(1.0))
    };
    let c = 1.0 / t.hypot(1.0);
    let s = t * c;
    ([a - t * b, d + t * b], [[c, -s], [s, c]])
}
