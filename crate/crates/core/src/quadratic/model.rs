use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Absolute elementwise tolerance for the Hermiticity and particle-hole checks.
pub const STRUCTURE_TOL: f64 = 1e-12;

/// An extra, unmonitored decay channel attached to one mode.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LossPort {
    pub mode: usize,
    pub rate: f64,
    pub occupation: f64,
}

/// Few-mode quadratic bosonic Hamiltonian with one monitored port per mode.
///
/// The Hamiltonian is stored in the doubled basis `v = (a_1 … a_N, a_1† … a_N†)`
/// as the `2N × 2N` matrix `M` with `H = ½ v† M v` (up to a constant). `M` has
/// the block form `[[A, B], [B*, A*]]` with `A` Hermitian (number-conserving
/// terms) and `B` symmetric (pairing terms).
#[derive(Debug, Clone, PartialEq)]
pub struct QuadraticModel {
    n_modes: usize,
    h_matrix: DMatrix<Complex64>,
    kappas: Vec<f64>,
    thermal_occupations: Vec<f64>,
    losses: Vec<LossPort>,
}

impl QuadraticModel {
    /// Builds a model from the doubled-basis matrix and external decay rates.
    ///
    /// Thermal occupations default to zero (vacuum inputs).
    pub fn new(h_matrix: DMatrix<Complex64>, kappas: Vec<f64>) -> Result<Self> {
        let n = kappas.len();
        if n == 0 {
            return Err(Error::Structural("a model needs at least one mode".into()));
        }
        if h_matrix.nrows() != 2 * n || h_matrix.ncols() != 2 * n {
            return Err(Error::Structural(format!(
                "h_matrix is {}×{} but {} decay rates imply {}×{}",
                h_matrix.nrows(),
                h_matrix.ncols(),
                n,
                2 * n,
                2 * n
            )));
        }
        if let Some(k) = kappas.iter().find(|k| !(k.is_finite() && **k >= 0.0)) {
            return Err(Error::InvalidParameter(format!("decay rate {k} must be finite and ≥ 0")));
        }
        if h_matrix.iter().any(|z| !(z.re.is_finite() && z.im.is_finite())) {
            return Err(Error::InvalidParameter("h_matrix has non-finite entries".into()));
        }
        let herm = max_abs_diff(&h_matrix, &h_matrix.adjoint());
        if herm > STRUCTURE_TOL {
            return Err(Error::Structural(format!("h_matrix is not Hermitian (deviation {herm:.3e})")));
        }
        let ph = max_abs_diff(&swap_blocks(&h_matrix, n), &h_matrix.map(|z| z.conj()));
        if ph > STRUCTURE_TOL {
            return Err(Error::Structural(format!(
                "h_matrix violates particle-hole symmetry (deviation {ph:.3e})"
            )));
        }
        Ok(Self {
            n_modes: n,
            h_matrix,
            thermal_occupations: vec![0.0; n],
            kappas,
            losses: Vec::new(),
        })
    }

    /// Builds `M = [[A, B], [B*, A*]]` from the number-conserving block `A`
    /// and the pairing block `B`.
    pub fn from_blocks(
        normal: &DMatrix<Complex64>,
        pairing: &DMatrix<Complex64>,
        kappas: Vec<f64>,
    ) -> Result<Self> {
        let n = normal.nrows();
        if normal.ncols() != n || pairing.nrows() != n || pairing.ncols() != n {
            return Err(Error::Structural("normal and pairing blocks must be square and equal-sized".into()));
        }
        let mut m = DMatrix::zeros(2 * n, 2 * n);
        m.view_mut((0, 0), (n, n)).copy_from(normal);
        m.view_mut((0, n), (n, n)).copy_from(pairing);
        m.view_mut((n, 0), (n, n)).copy_from(&pairing.map(|z| z.conj()));
        m.view_mut((n, n), (n, n)).copy_from(&normal.map(|z| z.conj()));
        Self::new(m, kappas)
    }

    pub fn with_thermal_occupations(mut self, occupations: Vec<f64>) -> Result<Self> {
        if occupations.len() != self.n_modes {
            return Err(Error::Structural(format!(
                "{} thermal occupations for {} modes",
                occupations.len(),
                self.n_modes
            )));
        }
        if let Some(n) = occupations.iter().find(|n| !(n.is_finite() && **n >= 0.0)) {
            return Err(Error::InvalidParameter(format!("thermal occupation {n} must be finite and ≥ 0")));
        }
        self.thermal_occupations = occupations;
        Ok(self)
    }

    /// Sets the bath occupation seen through the external port of one mode.
    pub fn with_thermal_occupation(mut self, mode: usize, occupation: f64) -> Result<Self> {
        if mode >= self.n_modes {
            return Err(Error::Structural(format!("mode {mode} out of range")));
        }
        let mut occ = self.thermal_occupations.clone();
        occ[mode] = occupation;
        self = self.with_thermal_occupations(occ)?;
        Ok(self)
    }

    /// Attaches an internal-loss channel; it enlarges the scattering matrix by
    /// one unmonitored port.
    pub fn with_internal_loss(mut self, mode: usize, rate: f64, occupation: f64) -> Result<Self> {
        if mode >= self.n_modes {
            return Err(Error::Structural(format!("mode {mode} out of range")));
        }
        if !(rate.is_finite() && rate >= 0.0 && occupation.is_finite() && occupation >= 0.0) {
            return Err(Error::InvalidParameter("loss rate and occupation must be finite and ≥ 0".into()));
        }
        self.losses.push(LossPort { mode, rate, occupation });
        Ok(self)
    }

    pub fn n_modes(&self) -> usize {
        self.n_modes
    }

    pub fn h_matrix(&self) -> &DMatrix<Complex64> {
        &self.h_matrix
    }

    pub fn kappas(&self) -> &[f64] {
        &self.kappas
    }

    pub fn thermal_occupations(&self) -> &[f64] {
        &self.thermal_occupations
    }

    pub fn losses(&self) -> &[LossPort] {
        &self.losses
    }

    /// External ports first (one per mode), then loss ports in insertion order.
    pub fn n_ports(&self) -> usize {
        self.n_modes + self.losses.len()
    }

    /// Total energy damping rate of each mode.
    pub fn total_damping(&self) -> Vec<f64> {
        let mut total = self.kappas.clone();
        for l in &self.losses {
            total[l.mode] += l.rate;
        }
        total
    }

    /// Bath occupation of every port, in port order.
    pub fn port_occupations(&self) -> Vec<f64> {
        self.thermal_occupations
            .iter()
            .copied()
            .chain(self.losses.iter().map(|l| l.occupation))
            .collect()
    }

    /// Number-conserving block `A` of the Hamiltonian matrix.
    pub fn normal_block(&self) -> DMatrix<Complex64> {
        let n = self.n_modes;
        self.h_matrix.view((0, 0), (n, n)).into_owned()
    }

    /// Pairing block `B` of the Hamiltonian matrix.
    pub fn pairing_block(&self) -> DMatrix<Complex64> {
        let n = self.n_modes;
        self.h_matrix.view((0, n), (n, n)).into_owned()
    }

    /// Largest decay rate of the external ports; the natural rate unit.
    pub fn rate_scale(&self) -> f64 {
        self.kappas.iter().copied().fold(0.0, f64::max)
    }
}

/// Incremental construction of the doubled-basis Hamiltonian.
#[derive(Debug, Clone)]
pub struct HamiltonianBuilder {
    normal: DMatrix<Complex64>,
    pairing: DMatrix<Complex64>,
}

impl HamiltonianBuilder {
    pub fn new(n_modes: usize) -> Self {
        Self {
            normal: DMatrix::zeros(n_modes, n_modes),
            pairing: DMatrix::zeros(n_modes, n_modes),
        }
    }

    /// `Δ a†a`
    pub fn detuning(mut self, mode: usize, delta: f64) -> Self {
        self.normal[(mode, mode)] += Complex64::new(delta, 0.0);
        self
    }

    /// `(ν/2) a†a† + (ν*/2) a a`
    pub fn single_mode_squeezing(mut self, mode: usize, nu: Complex64) -> Self {
        self.pairing[(mode, mode)] += nu;
        self
    }

    /// `G a_i† a_j† + G* a_i a_j`
    pub fn two_mode_squeezing(mut self, i: usize, j: usize, g: Complex64) -> Self {
        assert_ne!(i, j, "two-mode squeezing needs distinct modes");
        self.pairing[(i, j)] += g;
        self.pairing[(j, i)] += g;
        self
    }

    /// `G a_i† a_j + G* a_j† a_i`
    pub fn hopping(mut self, i: usize, j: usize, g: Complex64) -> Self {
        assert_ne!(i, j, "hopping needs distinct modes");
        self.normal[(i, j)] += g;
        self.normal[(j, i)] += g.conj();
        self
    }

    pub fn build(self, kappas: Vec<f64>) -> Result<QuadraticModel> {
        QuadraticModel::from_blocks(&self.normal, &self.pairing, kappas)
    }
}

/// `τ₁ X τ₁` for a doubled-basis matrix with `n` modes per block.
pub(crate) fn swap_blocks(m: &DMatrix<Complex64>, n: usize) -> DMatrix<Complex64> {
    let dim = m.nrows();
    DMatrix::from_fn(dim, dim, |i, j| m[((i + n) % dim, (j + n) % dim)])
}

pub(crate) fn max_abs_diff(a: &DMatrix<Complex64>, b: &DMatrix<Complex64>) -> f64 {
    a.iter().zip(b.iter()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}
