//! Experimental feasibility estimates in physical units: tunneling time,
//! thermally activated hopping rate, the temperature below which coherent
//! tunneling beats thermal activation, and a thermal decoherence time.
//!
//! Frequencies in [`PhysicalContext`] are angular (rad/s). Dimensionless
//! model quantities are converted with `E = hbar * omega0 * e_dimensionless`.

use crate::error::{Error, Result};
use crate::model::ModelParams;
use crate::potential::barrier_stats;
use crate::variational::{tunneling_splitting, variational_params};

/// Reduced Planck constant, J s (2018 CODATA exact value).
pub const HBAR: f64 = 1.054_571_817e-34;
/// Boltzmann constant, J/K (2018 CODATA exact value).
pub const K_B: f64 = 1.380_649e-23;

/// Physical embedding of the dimensionless model.
#[derive(Clone, Copy, Debug)]
pub struct PhysicalContext {
    /// Oscillator angular frequency, rad/s.
    pub omega0: f64,
    /// Environment temperature, K (0 is allowed).
    pub temperature: f64,
    /// Oscillator quality factor, if known.
    pub quality_factor: Option<f64>,
}

impl PhysicalContext {
    pub fn new(omega0: f64, temperature: f64, quality_factor: Option<f64>) -> Result<Self> {
        if !(omega0.is_finite() && omega0 > 0.0) {
            return Err(Error::InvalidInput(format!(
                "oscillator frequency must be positive, got {omega0}"
            )));
        }
        if !(temperature.is_finite() && temperature >= 0.0) {
            return Err(Error::InvalidInput(format!(
                "temperature must be non-negative, got {temperature}"
            )));
        }
        if let Some(q) = quality_factor {
            if !(q.is_finite() && q > 0.0) {
                return Err(Error::InvalidInput(format!(
                    "quality factor must be positive, got {q}"
                )));
            }
        }
        Ok(Self {
            omega0,
            temperature,
            quality_factor,
        })
    }
}

/// Half tunneling period in seconds: `pi / (splitting * omega0)`, the time
/// for the oscillator to move from one well to the other.
pub fn tunneling_time(params: ModelParams, ctx: &PhysicalContext) -> Result<f64> {
    let sol = variational_params(params)?;
    let dw = tunneling_splitting(&sol, false);
    Ok(std::f64::consts::PI / (dw * ctx.omega0))
}

/// Thermally activated hopping rate over the barrier, 1/s:
/// `Gamma = omega0/(2 pi) exp(-delta_V / k_B T)`. Zero temperature gives
/// a zero rate.
pub fn arrhenius_rate(params: ModelParams, ctx: &PhysicalContext) -> Result<f64> {
    let stats = barrier_stats(params)?;
    if ctx.temperature == 0.0 {
        return Ok(0.0);
    }
    let delta_v = stats.barrier_height * HBAR * ctx.omega0;
    Ok(ctx.omega0 / (2.0 * std::f64::consts::PI)
        * (-delta_v / (K_B * ctx.temperature)).exp())
}

/// Temperature at which thermal hopping overtakes coherent tunneling,
/// `T_c = -(delta_V / k_B) / ln(2 dw / omega0)`. Requires the splitting to
/// be small, `2 dw < omega0` in oscillator units.
pub fn crossover_temperature(params: ModelParams, ctx: &PhysicalContext) -> Result<f64> {
    let sol = variational_params(params)?;
    let stats = barrier_stats(params)?;
    let ratio = 2.0 * tunneling_splitting(&sol, false);
    if ratio >= 1.0 {
        return Err(Error::NoCrossover { ratio });
    }
    let delta_v = stats.barrier_height * HBAR * ctx.omega0;
    Ok(-(delta_v / K_B) / ratio.ln())
}

/// Thermal decoherence time `hbar Q / (k_B T)`, when a quality factor is
/// known and the temperature is nonzero.
pub fn thermal_decoherence_time(ctx: &PhysicalContext) -> Option<f64> {
    let q = ctx.quality_factor?;
    if ctx.temperature == 0.0 {
        return None;
    }
    Some(HBAR * q / (K_B * ctx.temperature))
}

/// Collected feasibility numbers for one physical scenario.
#[derive(Clone, Copy, Debug)]
pub struct FeasibilityReport {
    pub params: ModelParams,
    pub context: PhysicalContext,
    /// Half tunneling period, s.
    pub tunneling_time: f64,
    /// Thermal hopping rate at the context temperature, 1/s.
    pub arrhenius_rate: f64,
    /// Crossover temperature, K.
    pub crossover_temperature: f64,
    /// Barrier height, J.
    pub barrier_joules: f64,
    /// Barrier height, oscillator quanta.
    pub barrier_quanta: f64,
    /// `hbar Q / (k_B T)`, s, when a quality factor is given.
    pub thermal_decoherence_time: Option<f64>,
    /// True when the environment is colder than the crossover temperature,
    /// so coherent tunneling dominates thermal hopping.
    pub quantum_dominated: bool,
}

pub fn feasibility_report(params: ModelParams, ctx: &PhysicalContext) -> Result<FeasibilityReport> {
    let stats = barrier_stats(params)?;
    let t_q = tunneling_time(params, ctx)?;
    let rate = arrhenius_rate(params, ctx)?;
    let t_c = crossover_temperature(params, ctx)?;
    Ok(FeasibilityReport {
        params,
        context: *ctx,
        tunneling_time: t_q,
        arrhenius_rate: rate,
        crossover_temperature: t_c,
        barrier_joules: stats.barrier_height * HBAR * ctx.omega0,
        barrier_quanta: stats.barrier_height,
        thermal_decoherence_time: thermal_decoherence_time(ctx),
        quantum_dominated: ctx.temperature < t_c,
    })
}
