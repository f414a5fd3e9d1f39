use nalgebra::{linalg::Schur, DMatrix};
use num_complex::Complex64;

use super::model::{swap_blocks, QuadraticModel};

/// Eigenvalues with real part at or above `-STABILITY_TOL` (in units of the
/// model's rate scale) make the dynamics unstable.
pub const STABILITY_TOL: f64 = 1e-12;

/// Generator of the mean-field dynamics, `d⟨v⟩/dt = A⟨v⟩`, in the rotating frame.
#[derive(Debug, Clone, PartialEq)]
pub struct DynamicalMatrix {
    pub a_matrix: DMatrix<Complex64>,
}

impl DynamicalMatrix {
    pub fn eigenvalues(&self) -> Vec<Complex64> {
        eigenvalues(&self.a_matrix)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct StabilityReport {
    pub eigenvalues: Vec<Complex64>,
    pub max_real_part: f64,
    pub stable: bool,
    /// The dissipation-free Hamiltonian has a real, non-defective normal-mode
    /// spectrum, i.e. it can be brought to a sum of Bogoliubov-mode terms.
    pub hamiltonian_diagonalizable: bool,
}

/// `A = -i τ₃ M - diag(Γ/2, Γ/2)`, where `Γ` is the total damping of each mode.
pub fn build_dynamical_matrix(model: &QuadraticModel) -> DynamicalMatrix {
    let n = model.n_modes();
    let m = model.h_matrix();
    let damping = model.total_damping();
    let a_matrix = DMatrix::from_fn(2 * n, 2 * n, |i, j| {
        let sign = if i < n { 1.0 } else { -1.0 };
        let mut z = Complex64::new(0.0, -sign) * m[(i, j)];
        if i == j {
            z -= damping[i % n] / 2.0;
        }
        z
    });
    DynamicalMatrix { a_matrix }
}

pub fn stability(model: &QuadraticModel) -> StabilityReport {
    let dynamical = build_dynamical_matrix(model);
    let mut eigenvalues = dynamical.eigenvalues();
    eigenvalues.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    let max_real_part = eigenvalues.iter().map(|z| z.re).fold(f64::NEG_INFINITY, f64::max);
    let scale = model.rate_scale().max(1.0);
    StabilityReport {
        stable: max_real_part < -STABILITY_TOL * scale,
        max_real_part,
        hamiltonian_diagonalizable: hamiltonian_diagonalizable(model),
        eigenvalues,
    }
}

/// Symplectic eigenproblem of `τ₃M`: the Hamiltonian is Bogoliubov-diagonalizable
/// iff every eigenvalue is real and each eigenvalue cluster has a full eigenspace.
pub fn hamiltonian_diagonalizable(model: &QuadraticModel) -> bool {
    let n = model.n_modes();
    let m = model.h_matrix();
    let k = DMatrix::from_fn(2 * n, 2 * n, |i, j| if i < n { m[(i, j)] } else { -m[(i, j)] });
    let scale = m.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if scale == 0.0 {
        return true;
    }
    // Defective blocks split numerically by ~sqrt(eps)·scale.
    let cluster_tol = 1e-6 * scale;
    let null_tol = 1e-7 * scale;
    let eig = eigenvalues(&k);
    if eig.iter().any(|z| z.im.abs() > cluster_tol) {
        return false;
    }
    let mut reals: Vec<f64> = eig.iter().map(|z| z.re).collect();
    reals.sort_by(f64::total_cmp);
    let mut start = 0;
    while start < reals.len() {
        let mut end = start + 1;
        while end < reals.len() && reals[end] - reals[end - 1] <= cluster_tol {
            end += 1;
        }
        let multiplicity = end - start;
        let center = reals[start..end].iter().sum::<f64>() / multiplicity as f64;
        let shifted = &k - DMatrix::from_diagonal_element(2 * n, 2 * n, Complex64::new(center, 0.0));
        let nullity = shifted
            .svd(false, false)
            .singular_values
            .iter()
            .filter(|s| **s <= null_tol)
            .count();
        if nullity < multiplicity {
            return false;
        }
        start = end;
    }
    true
}

pub(crate) fn eigenvalues(m: &DMatrix<Complex64>) -> Vec<Complex64> {
    let (_, t) = Schur::new(m.clone()).unpack();
    t.diagonal().iter().copied().collect()
}

/// `τ₁ A τ₁ = A*` deviation, useful for checking a hand-built generator.
pub fn particle_hole_residual(a: &DynamicalMatrix) -> f64 {
    let n = a.a_matrix.nrows() / 2;
    let lhs = swap_blocks(&a.a_matrix, n);
    let rhs = a.a_matrix.map(|z| z.conj());
    super::model::max_abs_diff(&lhs, &rhs)
}
