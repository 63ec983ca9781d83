//! Hamiltonian of a two-level system coupled to a single oscillator mode,
//!
//! ```text
//! H = (Omega/2) sigma_x + omega0 a^dag a + lambda sigma_z (a^dag + a)
//! ```
//!
//! in units hbar = omega0 = 1, together with the discrete symmetry
//! `P = (-1)^{a^dag a} sigma_x` that commutes with it. The matrix basis
//! interleaves qubit components: index `2n` is `|n, +z>`, `2n+1` is
//! `|n, -z>`.

use crate::error::{Error, Result};
use ndarray::Array2;

/// Model parameters in oscillator units: qubit gap `omega_q` (Omega) and
/// coupling strength `lambda`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ModelParams {
    pub omega_q: f64,
    pub coupling: f64,
}

impl ModelParams {
    pub fn new(omega_q: f64, coupling: f64) -> Result<Self> {
        if !omega_q.is_finite() || omega_q <= 0.0 {
            return Err(Error::InvalidInput(format!(
                "qubit gap must be finite and positive, got {omega_q}"
            )));
        }
        if !coupling.is_finite() {
            return Err(Error::InvalidInput(format!(
                "coupling must be finite, got {coupling}"
            )));
        }
        Ok(Self { omega_q, coupling })
    }

    /// Well-shape parameter `epsilon = Omega / (4 lambda^2)`; the effective
    /// potential has two minima iff this is below 1.
    pub fn epsilon(&self) -> f64 {
        self.omega_q / (4.0 * self.coupling * self.coupling)
    }
}

/// Qubit component along z.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Spin {
    Up,
    Down,
}

/// Truncated product basis `{|n, s>} = {|0,+z>, |0,-z>, |1,+z>, ...}` with
/// `n < n_max`; total dimension `2 n_max`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BasisSpec {
    n_max: usize,
}

impl BasisSpec {
    pub fn new(n_max: usize) -> Result<Self> {
        if n_max < 2 {
            return Err(Error::InvalidInput(format!(
                "basis needs at least 2 oscillator levels, got {n_max}"
            )));
        }
        Ok(Self { n_max })
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn dim(&self) -> usize {
        2 * self.n_max
    }

    pub fn index(&self, n: usize, spin: Spin) -> usize {
        debug_assert!(n < self.n_max);
        2 * n + usize::from(spin == Spin::Down)
    }
}

/// Hamiltonian matrix together with the parameters and basis it was built
/// from. The matrix is real symmetric.
pub struct HamiltonianMatrix {
    pub params: ModelParams,
    pub basis: BasisSpec,
    pub matrix: Array2<f64>,
}

/// Assembles the Hamiltonian in the interleaved product basis. The qubit
/// gap term couples `|n,+z> <-> |n,-z>`; the interaction couples
/// `|n,s> <-> |n+1,s>` with amplitude `+/- lambda sqrt(n+1)` depending on
/// the qubit component; the oscillator term is diagonal.
pub fn build_hamiltonian(params: ModelParams, basis: BasisSpec) -> HamiltonianMatrix {
    let n_max = basis.n_max();
    let mut h = Array2::<f64>::zeros((basis.dim(), basis.dim()));
    for n in 0..n_max {
        let up = basis.index(n, Spin::Up);
        let down = basis.index(n, Spin::Down);
        h[(up, up)] = n as f64;
        h[(down, down)] = n as f64;
        h[(up, down)] = params.omega_q / 2.0;
        h[(down, up)] = params.omega_q / 2.0;
        if n + 1 < n_max {
            let up1 = basis.index(n + 1, Spin::Up);
            let down1 = basis.index(n + 1, Spin::Down);
            let g = params.coupling * ((n + 1) as f64).sqrt();
            h[(up, up1)] = g;
            h[(up1, up)] = g;
            h[(down, down1)] = -g;
            h[(down1, down)] = -g;
        }
    }
    HamiltonianMatrix {
        params,
        basis,
        matrix: h,
    }
}

/// The conserved symmetry `P = (-1)^{a^dag a} sigma_x`: flips the qubit
/// along z and weights each Fock level by its sign. Involutory and real.
pub fn parity_matrix(basis: BasisSpec) -> Array2<f64> {
    let mut p = Array2::<f64>::zeros((basis.dim(), basis.dim()));
    for n in 0..basis.n_max() {
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        let up = basis.index(n, Spin::Up);
        let down = basis.index(n, Spin::Down);
        p[(up, down)] = sign;
        p[(down, up)] = sign;
    }
    p
}
