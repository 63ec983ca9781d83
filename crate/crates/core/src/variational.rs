//! Variational treatment of the slow-oscillator double-well regime.
//!
//! A product ansatz of a coherent oscillator state and a qubit rotation,
//! minimized over displacement `alpha` and mixing angle `theta`, yields two
//! degenerate minima at `(+-alpha0, theta0)` when `epsilon = Omega /
//! (4 lambda^2) < 1`. Displacing number states to either minimum and
//! symmetrizing produces near-degenerate pairs split by tunneling through
//! the central barrier.

use crate::error::{Error, Result};
use crate::model::{BasisSpec, ModelParams, Spin};
use crate::specfun::{displaced_number_state, displaced_overlap};
use ndarray::Array1;
use num_complex::Complex64;

/// Joint qubit-oscillator state as complex coefficients over the
/// interleaved product basis. Always unit-normalized.
#[derive(Clone, Debug)]
pub struct JointState {
    basis: BasisSpec,
    pub coeffs: Array1<Complex64>,
}

impl JointState {
    /// Wraps a coefficient vector, renormalizing exactly; rejects vectors
    /// whose norm is off by more than 1e-6 (a sign of a construction bug
    /// or an inadequate basis, not of roundoff).
    pub fn new(basis: BasisSpec, coeffs: Array1<Complex64>) -> Result<Self> {
        if coeffs.len() != basis.dim() {
            return Err(Error::BasisMismatch {
                left: basis.dim() / 2,
                right: coeffs.len() / 2,
            });
        }
        let norm = coeffs.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        if !(norm.is_finite() && (norm - 1.0).abs() < 1e-6) {
            return Err(Error::NotNormalized { norm });
        }
        let coeffs = coeffs.mapv(|c| c / norm);
        Ok(Self { basis, coeffs })
    }

    pub fn from_real(basis: BasisSpec, real: &[f64]) -> Result<Self> {
        let coeffs = Array1::from_iter(real.iter().map(|&x| Complex64::new(x, 0.0)));
        Self::new(basis, coeffs)
    }

    pub fn basis(&self) -> BasisSpec {
        self.basis
    }

    pub fn norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn overlap(&self, other: &JointState) -> Result<Complex64> {
        if self.basis != other.basis {
            return Err(Error::BasisMismatch {
                left: self.basis.n_max(),
                right: other.basis.n_max(),
            });
        }
        Ok(self
            .coeffs
            .iter()
            .zip(other.coeffs.iter())
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// Coefficient of `|n, s>`.
    pub fn amplitude(&self, n: usize, spin: Spin) -> Complex64 {
        self.coeffs[self.basis.index(n, spin)]
    }
}

/// Location and value of the variational minimum for a double-well point.
#[derive(Clone, Copy, Debug)]
pub struct VariationalSolution {
    pub params: ModelParams,
    /// `Omega / (4 lambda^2)`, in (0, 1) here.
    pub epsilon: f64,
    /// Qubit mixing angle, in (pi/2, pi); `cos(theta0) = -epsilon`.
    pub theta0: f64,
    /// Oscillator displacement of the left minimum; `alpha0 <= 0`.
    pub alpha0: f64,
    /// Mean energy at the minimum, `-(lambda^2)(1 + epsilon^2)`.
    pub energy: f64,
}

/// Mean energy of the product ansatz at displacement `alpha` and qubit
/// angle `theta` (units of the oscillator quantum).
pub fn mean_energy(params: ModelParams, alpha: f64, theta: f64) -> f64 {
    0.5 * params.omega_q * theta.cos() + 2.0 * params.coupling * alpha * theta.sin()
        + alpha * alpha
}

/// Minimizes the product ansatz. Errors out of the double-well regime
/// (`epsilon >= 1`), where the single minimum sits at `alpha = 0`.
pub fn variational_params(params: ModelParams) -> Result<VariationalSolution> {
    let epsilon = params.epsilon();
    if !(epsilon < 1.0) {
        return Err(Error::SingleMinimumRegime { epsilon });
    }
    let theta0 = (-epsilon).acos();
    let spread = (1.0 - epsilon * epsilon).sqrt();
    let alpha0 = -params.coupling.abs() * spread;
    let energy = -params.coupling * params.coupling * (1.0 + epsilon * epsilon);
    Ok(VariationalSolution {
        params,
        epsilon,
        theta0,
        alpha0,
        energy,
    })
}

/// Which well the oscillator part is displaced into.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Well {
    Left,
    Right,
}

/// Which member of a tunneling pair: `Plus` and `Minus` label the
/// symmetrized combinations `(|L> +- |R>)`, with symmetry eigenvalue
/// `+-(-1)^N`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DoubletSign {
    Minus,
    Plus,
}

impl DoubletSign {
    pub fn parity(&self, level: usize) -> i8 {
        let base = if level % 2 == 0 { 1 } else { -1 };
        match self {
            DoubletSign::Plus => base,
            DoubletSign::Minus => -base,
        }
    }
}

/// Number state `|level>` displaced into one well, times the minimizing
/// qubit superposition: the localized (non-stationary) basis of the
/// tunneling description.
pub fn displaced_joint_state(
    sol: &VariationalSolution,
    level: usize,
    well: Well,
    basis: BasisSpec,
) -> Result<JointState> {
    let half = 0.5 * sol.theta0;
    let (ch, sh) = (half.cos(), half.sin());
    let inv_sqrt2 = std::f64::consts::FRAC_1_SQRT_2;
    let (alpha, a_up, a_down) = match well {
        Well::Left => (sol.alpha0, (ch + sh) * inv_sqrt2, (ch - sh) * inv_sqrt2),
        Well::Right => (-sol.alpha0, (ch - sh) * inv_sqrt2, (ch + sh) * inv_sqrt2),
    };
    let osc = displaced_number_state(alpha, level, basis.n_max())?;
    let mut coeffs = Array1::from_elem(basis.dim(), Complex64::new(0.0, 0.0));
    for (n, c) in osc.iter().enumerate() {
        coeffs[basis.index(n, Spin::Up)] = Complex64::new(a_up * c, 0.0);
        coeffs[basis.index(n, Spin::Down)] = Complex64::new(a_down * c, 0.0);
    }
    JointState::new(basis, coeffs)
}

/// Normalization constant of the symmetrized pair member,
/// `sqrt(1 -+ epsilon exp(-2 alpha0^2) L_N(4 alpha0^2))`.
pub fn doublet_norm(sol: &VariationalSolution, level: usize, sign: DoubletSign) -> f64 {
    let u = displaced_overlap(level, sol.alpha0);
    match sign {
        DoubletSign::Plus => (1.0 - sol.epsilon * u).sqrt(),
        DoubletSign::Minus => (1.0 + sol.epsilon * u).sqrt(),
    }
}

/// Symmetrized tunneling pair member `(|L,N> +- |R,N>) / (sqrt(2) norm)`.
/// An eigenstate of the symmetry `P` with eigenvalue `+-(-1)^N`.
pub fn parity_doublet_state(
    sol: &VariationalSolution,
    level: usize,
    sign: DoubletSign,
    basis: BasisSpec,
) -> Result<JointState> {
    let left = displaced_joint_state(sol, level, Well::Left, basis)?;
    let right = displaced_joint_state(sol, level, Well::Right, basis)?;
    let s = match sign {
        DoubletSign::Plus => 1.0,
        DoubletSign::Minus => -1.0,
    };
    let scale = 1.0 / (std::f64::consts::SQRT_2 * doublet_norm(sol, level, sign));
    let coeffs = (&left.coeffs + &right.coeffs.mapv(|c| c * s)).mapv(|c| c * scale);
    JointState::new(basis, coeffs)
}

/// Mean energies `(E_minus, E_plus)` of the two pair members built on
/// `|level>`. The full form carries the normalization denominators; the
/// simplified form drops overlap corrections beyond first order:
///
/// ```text
/// E_+- = -(Omega/2) eps + N - lambda^2 (1 - eps^2) +- (Omega/2)(1 - eps^2) u_N
/// ```
pub fn doublet_energies(sol: &VariationalSolution, level: usize, simplified: bool) -> (f64, f64) {
    let u = displaced_overlap(level, sol.alpha0);
    let eps = sol.epsilon;
    let omega = sol.params.omega_q;
    let lam2 = sol.params.coupling * sol.params.coupling;
    let base = level as f64 - lam2 * (1.0 - eps * eps);
    if simplified {
        let split = 0.5 * omega * (1.0 - eps * eps) * u;
        let centre = -0.5 * omega * eps + base;
        (centre - split, centre + split)
    } else {
        let e_plus = -0.5 * omega * (eps - u) / (1.0 - eps * u) + base;
        let e_minus = -0.5 * omega * (eps + u) / (1.0 + eps * u) + base;
        (e_minus, e_plus)
    }
}

/// Tunneling splitting of the lowest pair,
/// `Omega (1-eps^2) e^{-2 alpha0^2} / (1 - eps^2 e^{-4 alpha0^2})`
/// (denominator dropped in the simplified form). Equals
/// `E_plus - E_minus` from [`doublet_energies`] at `level = 0`.
pub fn tunneling_splitting(sol: &VariationalSolution, simplified: bool) -> f64 {
    let u0 = (-2.0 * sol.alpha0 * sol.alpha0).exp();
    let eps2 = sol.epsilon * sol.epsilon;
    let num = sol.params.omega_q * (1.0 - eps2) * u0;
    if simplified {
        num
    } else {
        num / (1.0 - eps2 * u0 * u0)
    }
}

/// One tunneling pair: symmetry-labelled energies plus derived ordering.
#[derive(Clone, Copy, Debug)]
pub struct DoubletRow {
    pub level: usize,
    pub e_minus: f64,
    pub e_plus: f64,
    pub norm_minus: f64,
    pub norm_plus: f64,
}

impl DoubletRow {
    pub fn e_lower(&self) -> f64 {
        self.e_minus.min(self.e_plus)
    }

    pub fn e_upper(&self) -> f64 {
        self.e_minus.max(self.e_plus)
    }

    pub fn splitting(&self) -> f64 {
        (self.e_plus - self.e_minus).abs()
    }

    /// Symmetry eigenvalue of the lower member.
    pub fn lower_parity(&self) -> i8 {
        let sign = if self.e_minus <= self.e_plus {
            DoubletSign::Minus
        } else {
            DoubletSign::Plus
        };
        sign.parity(self.level)
    }
}

#[derive(Clone, Debug)]
pub struct DoubletTable {
    pub params: ModelParams,
    pub simplified: bool,
    pub rows: Vec<DoubletRow>,
}

/// Energies of the first `count` tunneling pairs.
pub fn doublet_table(sol: &VariationalSolution, count: usize, simplified: bool) -> DoubletTable {
    let rows = (0..count)
        .map(|level| {
            let (e_minus, e_plus) = doublet_energies(sol, level, simplified);
            DoubletRow {
                level,
                e_minus,
                e_plus,
                norm_minus: doublet_norm(sol, level, DoubletSign::Minus),
                norm_plus: doublet_norm(sol, level, DoubletSign::Plus),
            }
        })
        .collect();
    DoubletTable {
        params: sol.params,
        simplified,
        rows,
    }
}

/// Overlap magnitude `|<a|b>|`.
pub fn fidelity(a: &JointState, b: &JointState) -> Result<f64> {
    Ok(a.overlap(b)?.norm())
}
