use std::fmt;

pub type Result<T> = std::result::Result<T, Error>;

/// Failure modes of the library, grouped so callers can distinguish bad
/// input, physical-regime violations, and numerical breakdown.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Parameter validation failed (non-finite, wrong sign, empty grid, ...).
    InvalidInput(String),
    /// The effective potential has a single minimum (epsilon >= 1); the
    /// two-well construction does not exist there.
    SingleMinimumRegime { epsilon: f64 },
    /// No thermal/quantum crossover: the splitting is too large relative
    /// to the attempt frequency (2 * delta_omega >= omega0).
    NoCrossover { ratio: f64 },
    /// Fock-space truncation dropped more probability than allowed.
    TruncationTail { tail: f64, n_levels: usize },
    /// The iterative eigensolver exhausted its iteration budget.
    EigenIterations { index: usize, budget: usize },
    /// Doubling the basis hit the cap before the tracked levels stabilized.
    SpectrumNotConverged {
        level: usize,
        shift: f64,
        n_max: usize,
    },
    /// Operation requires a converged spectrum but got an unvalidated one.
    SpectrumUnvalidated,
    /// Two states (or a state and an operator) live in different bases.
    BasisMismatch { left: usize, right: usize },
    /// A state that must be normalized is not.
    NotNormalized { norm: f64 },
    /// The position grid misses too much probability mass.
    GridTooNarrow { captured: f64 },
    /// Density input to the curvature reconstruction is invalid.
    InvalidDensity(String),
}

impl Error {
    /// True for errors caused by the physical regime rather than by bad
    /// input or numerical trouble.
    pub fn is_regime(&self) -> bool {
        matches!(
            self,
            Error::SingleMinimumRegime { .. } | Error::NoCrossover { .. }
        )
    }

    /// True for numerical-convergence failures.
    pub fn is_numeric(&self) -> bool {
        matches!(
            self,
            Error::TruncationTail { .. }
                | Error::EigenIterations { .. }
                | Error::SpectrumNotConverged { .. }
                | Error::SpectrumUnvalidated
                | Error::NotNormalized { .. }
                | Error::GridTooNarrow { .. }
        )
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidInput(msg) => write!(f, "invalid input: {msg}"),
            Error::SingleMinimumRegime { epsilon } => write!(
                f,
                "single-minimum regime: epsilon = {epsilon} >= 1, no double well"
            ),
            Error::NoCrossover { ratio } => write!(
                f,
                "no crossover temperature: 2*splitting/omega0 = {ratio} >= 1"
            ),
            Error::TruncationTail { tail, n_levels } => write!(
                f,
                "truncated Fock expansion drops {tail:.3e} probability at {n_levels} levels"
            ),
            Error::EigenIterations { index, budget } => write!(
                f,
                "eigenvalue {index} failed to converge within {budget} QL iterations"
            ),
            Error::SpectrumNotConverged {
                level,
                shift,
                n_max,
            } => write!(
                f,
                "level {level} still shifts by {shift:.3e} at the n_max cap {n_max}"
            ),
            Error::SpectrumUnvalidated => {
                write!(f, "operation requires a convergence-checked spectrum")
            }
            Error::BasisMismatch { left, right } => write!(
                f,
                "basis size mismatch: {left} vs {right} oscillator levels"
            ),
            Error::NotNormalized { norm } => {
                write!(f, "state norm is {norm}, expected 1")
            }
            Error::GridTooNarrow { captured } => write!(
                f,
                "grid captures only {captured:.6} probability mass"
            ),
            Error::InvalidDensity(msg) => write!(f, "invalid density: {msg}"),
        }
    }
}

impl std::error::Error for Error {}
