//! Effective-potential views of the coupled system: the lower adiabatic
//! band felt by the slow oscillator, a curvature-based reconstruction of
//! the potential from stationary-state densities, and the closed-form
//! barrier statistics with the bound-on-number-of-doublets estimates.

use crate::error::{Error, Result};
use crate::model::ModelParams;
use crate::spectra::{DensityProfile, Grid};
use crate::variational::{variational_params, DoubletSign, VariationalSolution};
use ndarray::Array1;

/// Default fraction of the density peak below which the curvature
/// reconstruction is masked out.
pub const DEFAULT_DENSITY_FLOOR: f64 = 1e-4;

/// A potential sampled on a grid; `mask[i]` marks values that are valid
/// (curvature reconstructions mask low-density and edge points).
#[derive(Clone, Debug)]
pub struct PotentialCurve {
    pub grid: Grid,
    pub values: Array1<f64>,
    pub mask: Vec<bool>,
}

/// Lower adiabatic band of the coupled system on the dimensionless
/// position axis (zero-point term included):
/// `E_b(q) = q^2 - sqrt(4 lambda^2 q^2 + Omega^2/4) - 1/2`.
pub fn lower_band(params: ModelParams, grid: &Grid) -> PotentialCurve {
    let lam2 = params.coupling * params.coupling;
    let gap2 = params.omega_q * params.omega_q / 4.0;
    let values = Array1::from_iter((0..grid.len()).map(|i| {
        let q = grid.value(i);
        q * q - (4.0 * lam2 * q * q + gap2).sqrt() - 0.5
    }));
    PotentialCurve {
        grid: *grid,
        values,
        mask: vec![true; grid.len()],
    }
}

/// Reconstructs the potential a stationary state of energy `energy` lives
/// in from its position density, using
/// `V(q) = (1/4) [rho''/(2 rho) - (rho'/(2 rho))^2] + E`
/// with five-point central differences. Points where the density falls
/// below `floor` times its peak, and the two points at each grid edge, are
/// masked.
pub fn curvature_potential(
    density: &DensityProfile,
    energy: f64,
    floor: f64,
) -> Result<PotentialCurve> {
    let m = density.values.len();
    if m < 5 {
        return Err(Error::InvalidDensity(format!(
            "need at least 5 grid points for the stencil, got {m}"
        )));
    }
    if !(floor > 0.0 && floor < 1.0) {
        return Err(Error::InvalidDensity(format!(
            "floor must lie in (0, 1), got {floor}"
        )));
    }
    if let Some((i, &v)) = density
        .values
        .iter()
        .enumerate()
        .find(|(_, &v)| v < 0.0 || !v.is_finite())
    {
        return Err(Error::InvalidDensity(format!(
            "density value {v} at grid point {i}"
        )));
    }
    let peak = density.peak();
    if peak <= 0.0 {
        return Err(Error::InvalidDensity("density is identically zero".into()));
    }
    let cut = floor * peak;
    let h = density.grid.step();
    let rho = &density.values;
    let mut values = Array1::<f64>::zeros(m);
    let mut mask = vec![false; m];
    for i in 2..m - 2 {
        if rho[i] <= cut {
            continue;
        }
        let d1 = (-rho[i + 2] + 8.0 * rho[i + 1] - 8.0 * rho[i - 1] + rho[i - 2]) / (12.0 * h);
        let d2 = (-rho[i + 2] + 16.0 * rho[i + 1] - 30.0 * rho[i] + 16.0 * rho[i - 1]
            - rho[i - 2])
            / (12.0 * h * h);
        let a = d2 / (2.0 * rho[i]);
        let b = d1 / (2.0 * rho[i]);
        values[i] = 0.25 * (a - b * b) + energy;
        mask[i] = true;
    }
    Ok(PotentialCurve {
        grid: density.grid,
        values,
        mask,
    })
}

/// Closed-form geometry of the lower band in the double-well regime.
#[derive(Clone, Copy, Debug)]
pub struct BarrierStats {
    /// The minima sit at `q = +- minima_location`.
    pub minima_location: f64,
    /// Band value at the minima: `-lambda^2 (1 + eps^2) - 1/2`.
    pub minimum_value: f64,
    /// Band value at the barrier top: `-(Omega + 1)/2`.
    pub barrier_value: f64,
    /// Barrier height `lambda^2 (1 + eps^2) - Omega/2`.
    pub barrier_height: f64,
}

pub fn barrier_stats(params: ModelParams) -> Result<BarrierStats> {
    let sol = variational_params(params)?;
    let lam2 = params.coupling * params.coupling;
    let eps2 = sol.epsilon * sol.epsilon;
    Ok(BarrierStats {
        minima_location: sol.alpha0.abs(),
        minimum_value: -lam2 * (1.0 + eps2) - 0.5,
        barrier_value: -(params.omega_q + 1.0) / 2.0,
        barrier_height: lam2 * (1.0 + eps2) - params.omega_q / 2.0,
    })
}

/// Height of the band barrier top above a symmetrized pair member's mean
/// energy: `(1/2) (4 alpha0^2 / (1 -+ eps) - 1)`.
pub fn variational_barrier_gap(sol: &VariationalSolution, sign: DoubletSign) -> f64 {
    let four_alpha2 = 4.0 * sol.alpha0 * sol.alpha0;
    let denom = match sign {
        DoubletSign::Plus => 1.0 - sol.epsilon,
        DoubletSign::Minus => 1.0 + sol.epsilon,
    };
    0.5 * (four_alpha2 / denom - 1.0)
}

/// Whether the barrier is high enough to hold at least the lowest pair
/// below it by the simple estimate `2 lambda > sqrt(1 + Omega)`.
pub fn bound_state_condition(params: ModelParams) -> bool {
    2.0 * params.coupling.abs() > (1.0 + params.omega_q).sqrt()
}

/// Left-hand side of the overlap-smallness condition for pair `n`:
/// `2n - 1 + 2 sqrt(2n^2 - 2n + 1)`.
pub fn overlap_condition_lhs(n: usize) -> f64 {
    let nf = n as f64;
    2.0 * nf - 1.0 + 2.0 * (2.0 * nf * nf - 2.0 * nf + 1.0).sqrt()
}

/// Estimates of how many tunneling pairs the barrier supports.
#[derive(Clone, Copy, Debug)]
pub struct DoubletCounts {
    /// Pairs with mean energy below the barrier top satisfy
    /// `N < lambda^2 (1 + eps^2) - Omega/2 + 1/2`.
    pub energy_bound: f64,
    /// Largest `N` whose inter-well overlap factor is still suppressed:
    /// `overlap_condition_lhs(N) < 4 alpha0^2`.
    pub overlap_count: usize,
    /// Large-`N` closed form of the overlap criterion,
    /// `0.83 lambda^2 (1 - eps^2) + 1/2`.
    pub large_n_bound: f64,
}

pub fn doublet_counts(params: ModelParams) -> Result<DoubletCounts> {
    let sol = variational_params(params)?;
    let lam2 = params.coupling * params.coupling;
    let eps2 = sol.epsilon * sol.epsilon;
    let four_alpha2 = 4.0 * sol.alpha0 * sol.alpha0;
    let mut overlap_count = 0;
    let mut n = 1;
    while overlap_condition_lhs(n) < four_alpha2 {
        overlap_count = n;
        n += 1;
    }
    Ok(DoubletCounts {
        energy_bound: lam2 * (1.0 + eps2) - params.omega_q / 2.0 + 0.5,
        overlap_count,
        large_n_bound: 0.83 * lam2 * (1.0 - eps2) + 0.5,
    })
}
