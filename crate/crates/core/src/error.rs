use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("operator is not Hermitian (max |H - H^dagger| = {deviation:e})")]
    NonHermitianInput { deviation: f64 },

    #[error("rotation axis is not a unit vector (|n| = {norm})")]
    NonUnitAxis { norm: f64 },

    #[error("Zeeman field on dot {dot} vanishes, local spin frame undefined")]
    ZeroZeemanField { dot: usize },

    #[error("Zeeman fields are not aligned with z; gauge-align them first")]
    UnalignedZeeman,

    #[error("dot {dot} violates the single-occupation window 0 < -eps +/- h/2 < U")]
    OccupationWindowViolated { dot: usize },

    #[error("degenerate crossing between subspace state {inside} and outside state {outside}")]
    DegenerateCrossing { inside: usize, outside: usize },

    #[error("resonant denominator: {factor} vanishes")]
    ResonantDenominator { factor: &'static str },

    #[error("effective two-qubit coupling vanishes, gate time is infinite")]
    ZeroCoupling,

    #[error("eigensolver did not converge after {sweeps} sweeps")]
    NoConvergence { sweeps: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("subspace has no overlap with the low-energy eigenvectors")]
    SubspaceDisconnected,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

impl Error {
    /// Errors caused by the physics of the requested point (resonances,
    /// broken occupation windows, vanishing couplings) rather than by
    /// malformed input.
    pub fn is_physics_domain(&self) -> bool {
        matches!(
            self,
            Error::ResonantDenominator { .. }
                | Error::OccupationWindowViolated { .. }
                | Error::DegenerateCrossing { .. }
                | Error::ZeroCoupling
                | Error::ZeroZeemanField { .. }
        )
    }
}
