//! Two-level system coupled to a slow harmonic oscillator.
//!
//! When the coupling is strong enough (`4 lambda^2 > omega_q`, in units
//! where the oscillator quantum is 1), the oscillator's effective potential
//! develops two wells and the low-lying spectrum organizes into near-degenerate
//! doublets of opposite parity. This crate provides:
//!
//! - a variational ansatz built from displaced oscillator states entangled
//!   with qubit superpositions, with closed-form well parameters, doublet
//!   energies, and tunneling splittings ([`variational`]);
//! - exact dense diagonalization of the coupled Hamiltonian in a truncated
//!   number basis, with parity labeling and convergence control ([`spectra`]);
//! - time evolution of wavepackets started in one well, both exact and in the
//!   two-level doublet approximation ([`dynamics`]);
//! - effective-potential diagnostics: the adiabatic lower band, barrier
//!   geometry, and doublet-counting bounds ([`potential`]);
//! - feasibility estimates in laboratory units: tunneling times, thermal
//!   hopping rates, and crossover temperatures ([`feasibility`]).
//!
//! Everything is dimensionless (oscillator units) except [`feasibility`].

pub mod dynamics;
pub mod eigen;
pub mod error;
pub mod feasibility;
pub mod model;
pub mod potential;
pub mod specfun;
pub mod spectra;
pub mod variational;

pub use error::{Error, Result};
pub use model::{build_hamiltonian, parity_matrix, BasisSpec, HamiltonianMatrix, ModelParams, Spin};
pub use spectra::{converged_spectrum, diagonalize, DensityProfile, Grid, SpectralResult};
pub use variational::{
    doublet_energies, doublet_table, parity_doublet_state, tunneling_splitting,
    variational_params, DoubletSign, DoubletTable, JointState, VariationalSolution, Well,
};
