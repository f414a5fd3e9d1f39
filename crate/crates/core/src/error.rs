use thiserror::Error;

use crate::quadratic::StabilityReport;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("structural error: {0}")]
    Structural(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("unstable dynamics (max Re ε = {:.3e})", .0.max_real_part)]
    UnstableDynamics(Box<StabilityReport>),

    #[error("unstable Hamiltonian: not diagonalizable by a Bogoliubov transformation")]
    UnstableHamiltonian,

    #[error("unsupported form: {0}")]
    UnsupportedForm(String),

    #[error("selector out of range: {0}")]
    SelectorOutOfRange(String),

    #[error("grid too narrow: {0}")]
    GridTooNarrow(String),

    #[error("not squeezed: on-resonance noise {0:.6} is not below half the shot noise")]
    NotSqueezed(f64),

    #[error("no amplification: gain {0:.6} ≤ 1")]
    NoAmplification(f64),

    #[error("unstable regime: {0}")]
    UnstableRegime(String),

    #[error("depleted past instability: χ·𝒞 = {0:.6} ≥ 1")]
    DepletedPastInstability(f64),

    #[error("no compression measurable: {0}")]
    NoCompression(String),

    #[error("solver did not converge: {0}")]
    NonConvergence(String),

    #[error("singular linear system at ω = {0}")]
    Singular(f64),
}
