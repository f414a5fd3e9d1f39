//! Quadratic bosonic Hamiltonians with port couplings: dynamics, stability,
//! Bogoliubov normal forms, scattering and output noise.

mod bogoliubov;
mod dynamics;
mod model;
mod scattering;
mod spectrum;

pub use bogoliubov::{bogoliubov_diagonalize, BogoliubovForm, BogoliubovKind};
pub use dynamics::{
    build_dynamical_matrix, hamiltonian_diagonalizable, particle_hole_residual, stability, DynamicalMatrix,
    StabilityReport, STABILITY_TOL,
};
pub use model::{HamiltonianBuilder, LossPort, QuadraticModel, STRUCTURE_TOL};
pub use scattering::{
    scattering_matrix, scattering_matrix_with, IoConvention, Quadrature, Scatterer, ScatteringMatrix, Selector,
};
pub use spectrum::{output_spectrum, spectrum_from_scattering, NoiseSpectrumPoint, SHOT_NOISE};
