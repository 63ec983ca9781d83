//! Python bindings: thin functional wrappers over the core library, one
//! call per headline quantity (variational solution, spectra, dynamics,
//! effective potential, feasibility estimates).

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;
use qrabi::dynamics::{approx_observables_closed, evolve_exact, initial_left_state};
use qrabi::feasibility::PhysicalContext;
use qrabi::spectra::{converged_spectrum, Grid};
use qrabi::variational::DoubletSign;
use qrabi::ModelParams;

const TRACKED: usize = 20;
const CONV_TOL: f64 = 1e-10;

fn to_py_err(e: qrabi::Error) -> PyErr {
    if e.is_regime() || e.is_numeric() {
        PyRuntimeError::new_err(e.to_string())
    } else {
        PyValueError::new_err(e.to_string())
    }
}

fn params(omega_q: f64, coupling: f64) -> PyResult<ModelParams> {
    ModelParams::new(omega_q, coupling).map_err(to_py_err)
}

/// Variational two-well solution: epsilon, theta0, alpha0, energy.
#[pyfunction]
fn variational_params<'py>(
    py: Python<'py>,
    omega_q: f64,
    coupling: f64,
) -> PyResult<Bound<'py, PyDict>> {
    let sol = qrabi::variational::variational_params(params(omega_q, coupling)?)
        .map_err(to_py_err)?;
    let d = PyDict::new(py);
    d.set_item("epsilon", sol.epsilon)?;
    d.set_item("theta0", sol.theta0)?;
    d.set_item("alpha0", sol.alpha0)?;
    d.set_item("energy", sol.energy)?;
    Ok(d)
}

/// Ground-doublet tunneling splitting in oscillator units.
#[pyfunction]
#[pyo3(signature = (omega_q, coupling, simplified = false))]
fn tunneling_splitting(omega_q: f64, coupling: f64, simplified: bool) -> PyResult<f64> {
    let sol = qrabi::variational::variational_params(params(omega_q, coupling)?)
        .map_err(to_py_err)?;
    Ok(qrabi::variational::tunneling_splitting(&sol, simplified))
}

/// Symmetrized pair energies (lower, upper) for doublet `level`.
#[pyfunction]
#[pyo3(signature = (omega_q, coupling, level, simplified = false))]
fn doublet_energies(
    omega_q: f64,
    coupling: f64,
    level: usize,
    simplified: bool,
) -> PyResult<(f64, f64)> {
    let sol = qrabi::variational::variational_params(params(omega_q, coupling)?)
        .map_err(to_py_err)?;
    Ok(qrabi::variational::doublet_energies(&sol, level, simplified))
}

/// Lowest exact levels with parity labels and the converged basis size.
#[pyfunction]
#[pyo3(signature = (omega_q, coupling, count = 20))]
fn exact_levels<'py>(
    py: Python<'py>,
    omega_q: f64,
    coupling: f64,
    count: usize,
) -> PyResult<Bound<'py, PyDict>> {
    let spec = converged_spectrum(params(omega_q, coupling)?, count.max(1), CONV_TOL)
        .map_err(to_py_err)?;
    let d = PyDict::new(py);
    d.set_item("energies", spec.energies.iter().take(count).copied().collect::<Vec<_>>())?;
    d.set_item(
        "parities",
        spec.parities.iter().take(count).map(|&p| p as i64).collect::<Vec<_>>(),
    )?;
    d.set_item("n_max", spec.basis.n_max())?;
    Ok(d)
}

/// Overlaps of the two lowest pair states with the exact ground doublet.
#[pyfunction]
fn ground_fidelities(omega_q: f64, coupling: f64) -> PyResult<(f64, f64)> {
    let p = params(omega_q, coupling)?;
    let sol = qrabi::variational::variational_params(p).map_err(to_py_err)?;
    let spec = converged_spectrum(p, 2, CONV_TOL).map_err(to_py_err)?;
    let minus = qrabi::variational::parity_doublet_state(&sol, 0, DoubletSign::Minus, spec.basis)
        .map_err(to_py_err)?;
    let plus = qrabi::variational::parity_doublet_state(&sol, 0, DoubletSign::Plus, spec.basis)
        .map_err(to_py_err)?;
    let f0 = qrabi::variational::fidelity(&minus, &spec.state(0)).map_err(to_py_err)?;
    let f1 = qrabi::variational::fidelity(&plus, &spec.state(1)).map_err(to_py_err)?;
    Ok((f0, f1))
}

/// Lower adiabatic band sampled on a uniform position grid.
#[pyfunction]
#[pyo3(signature = (omega_q, coupling, q_min = -6.0, q_max = 6.0, points = 601))]
fn lower_band<'py>(
    py: Python<'py>,
    omega_q: f64,
    coupling: f64,
    q_min: f64,
    q_max: f64,
    points: usize,
) -> PyResult<Bound<'py, PyDict>> {
    let grid = Grid::new(q_min, q_max, points).map_err(to_py_err)?;
    let curve = qrabi::potential::lower_band(params(omega_q, coupling)?, &grid);
    let d = PyDict::new(py);
    d.set_item("q", (0..grid.len()).map(|i| grid.value(i)).collect::<Vec<_>>())?;
    d.set_item("e_b", curve.values.to_vec())?;
    Ok(d)
}

/// Closed-form geometry of the lower band (minima, barrier top, height).
#[pyfunction]
fn barrier_stats<'py>(
    py: Python<'py>,
    omega_q: f64,
    coupling: f64,
) -> PyResult<Bound<'py, PyDict>> {
    let s = qrabi::potential::barrier_stats(params(omega_q, coupling)?).map_err(to_py_err)?;
    let d = PyDict::new(py);
    d.set_item("minima_location", s.minima_location)?;
    d.set_item("minimum_value", s.minimum_value)?;
    d.set_item("barrier_value", s.barrier_value)?;
    d.set_item("barrier_height", s.barrier_height)?;
    Ok(d)
}

/// Estimated number of tunneling doublets the barrier supports.
#[pyfunction]
fn doublet_counts<'py>(
    py: Python<'py>,
    omega_q: f64,
    coupling: f64,
) -> PyResult<Bound<'py, PyDict>> {
    let c = qrabi::potential::doublet_counts(params(omega_q, coupling)?).map_err(to_py_err)?;
    let d = PyDict::new(py);
    d.set_item("energy_bound", c.energy_bound)?;
    d.set_item("overlap_count", c.overlap_count)?;
    d.set_item("large_n_bound", c.large_n_bound)?;
    Ok(d)
}

/// Laboratory-unit tunneling estimates for one device scenario.
#[pyfunction]
#[pyo3(signature = (omega_q, coupling, omega0, temperature, quality_factor = None))]
fn feasibility<'py>(
    py: Python<'py>,
    omega_q: f64,
    coupling: f64,
    omega0: f64,
    temperature: f64,
    quality_factor: Option<f64>,
) -> PyResult<Bound<'py, PyDict>> {
    let ctx = PhysicalContext::new(omega0, temperature, quality_factor).map_err(to_py_err)?;
    let rep = qrabi::feasibility::feasibility_report(params(omega_q, coupling)?, &ctx)
        .map_err(to_py_err)?;
    let d = PyDict::new(py);
    d.set_item("tunneling_time_s", rep.tunneling_time)?;
    d.set_item("arrhenius_rate_per_s", rep.arrhenius_rate)?;
    d.set_item("crossover_temperature_k", rep.crossover_temperature)?;
    d.set_item("barrier_height_j", rep.barrier_joules)?;
    d.set_item("barrier_height_quanta", rep.barrier_quanta)?;
    d.set_item("thermal_decoherence_time_s", rep.thermal_decoherence_time)?;
    d.set_item("quantum_tunneling_dominated", rep.quantum_dominated)?;
    Ok(d)
}

/// Exact qubit observables along the left-well evolution at the given
/// absolute times, next to the closed-form two-level prediction.
#[pyfunction]
fn dynamics_observables<'py>(
    py: Python<'py>,
    omega_q: f64,
    coupling: f64,
    times: Vec<f64>,
) -> PyResult<Bound<'py, PyDict>> {
    let p = params(omega_q, coupling)?;
    let sol = qrabi::variational::variational_params(p).map_err(to_py_err)?;
    let spec = converged_spectrum(p, TRACKED, CONV_TOL).map_err(to_py_err)?;
    let psi0 = initial_left_state(&sol, spec.basis).map_err(to_py_err)?;
    let traj = evolve_exact(&psi0, &spec, &times, None).map_err(to_py_err)?;
    let closed: Vec<_> = times.iter().map(|&t| approx_observables_closed(&sol, t)).collect();
    let d = PyDict::new(py);
    d.set_item("t", times)?;
    d.set_item("sz_exact", traj.observables.iter().map(|o| o.sz).collect::<Vec<_>>())?;
    d.set_item("sx_exact", traj.observables.iter().map(|o| o.sx).collect::<Vec<_>>())?;
    d.set_item("sy_exact", traj.observables.iter().map(|o| o.sy).collect::<Vec<_>>())?;
    d.set_item("sz_closed", closed.iter().map(|c| c.sz).collect::<Vec<_>>())?;
    d.set_item("sx_closed", closed.iter().map(|c| c.sx).collect::<Vec<_>>())?;
    Ok(d)
}

/// Position density of exact eigenstate `k` on a uniform grid.
#[pyfunction]
#[pyo3(signature = (omega_q, coupling, k, q_min = -6.0, q_max = 6.0, points = 601))]
fn eigenstate_density<'py>(
    py: Python<'py>,
    omega_q: f64,
    coupling: f64,
    k: usize,
    q_min: f64,
    q_max: f64,
    points: usize,
) -> PyResult<Bound<'py, PyDict>> {
    let grid = Grid::new(q_min, q_max, points).map_err(to_py_err)?;
    let spec = converged_spectrum(params(omega_q, coupling)?, TRACKED.max(k + 1), CONV_TOL)
        .map_err(to_py_err)?;
    if k >= spec.energies.len() {
        return Err(PyValueError::new_err(format!("state {k} out of range")));
    }
    let dens = qrabi::dynamics::density_profile(&spec.state(k), &grid).map_err(to_py_err)?;
    let d = PyDict::new(py);
    d.set_item("q", (0..grid.len()).map(|i| grid.value(i)).collect::<Vec<_>>())?;
    d.set_item("rho", dens.values.to_vec())?;
    d.set_item("energy", spec.energies[k])?;
    Ok(d)
}

/// Oscillator eigenfunction `n` at dimensionless position `q`.
#[pyfunction]
fn ho_wavefunction(n: usize, q: f64) -> f64 {
    qrabi::specfun::ho_wavefunction(n, q)
}

/// Overlap of the `n`-th displaced-well states of two wells at `+-alpha`.
#[pyfunction]
fn displaced_overlap(n: usize, alpha: f64) -> f64 {
    qrabi::specfun::displaced_overlap(n, alpha)
}

#[pymodule]
fn qrabi_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(variational_params, m)?)?;
    m.add_function(wrap_pyfunction!(tunneling_splitting, m)?)?;
    m.add_function(wrap_pyfunction!(doublet_energies, m)?)?;
    m.add_function(wrap_pyfunction!(exact_levels, m)?)?;
    m.add_function(wrap_pyfunction!(ground_fidelities, m)?)?;
    m.add_function(wrap_pyfunction!(lower_band, m)?)?;
    m.add_function(wrap_pyfunction!(barrier_stats, m)?)?;
    m.add_function(wrap_pyfunction!(doublet_counts, m)?)?;
    m.add_function(wrap_pyfunction!(feasibility, m)?)?;
    m.add_function(wrap_pyfunction!(dynamics_observables, m)?)?;
    m.add_function(wrap_pyfunction!(eigenstate_density, m)?)?;
    m.add_function(wrap_pyfunction!(ho_wavefunction, m)?)?;
    m.add_function(wrap_pyfunction!(displaced_overlap, m)?)?;
    Ok(())
}
