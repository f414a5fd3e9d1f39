use std::f64::consts::FRAC_1_SQRT_2;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::dynamics::{build_dynamical_matrix, stability};
use super::model::QuadraticModel;
use crate::error::{Error, Result};

/// Quadrature `cos θ X̂ + sin θ P̂` of one port, with `X = (a + a†)/√2` and
/// `P = -i(a - a†)/√2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Quadrature {
    pub mode: usize,
    pub angle: f64,
}

impl Quadrature {
    pub fn x(mode: usize) -> Self {
        Self { mode, angle: 0.0 }
    }

    pub fn p(mode: usize) -> Self {
        Self { mode, angle: std::f64::consts::FRAC_PI_2 }
    }

    pub fn at(mode: usize, angle: f64) -> Self {
        Self { mode, angle }
    }

    /// Row vector picking the quadrature out of a doubled-basis field vector
    /// with `n_ports` ports.
    pub(crate) fn row(&self, n_ports: usize) -> DVector<Complex64> {
        let mut r = DVector::zeros(2 * n_ports);
        r[self.mode] = Complex64::from_polar(FRAC_1_SQRT_2, -self.angle);
        r[self.mode + n_ports] = Complex64::from_polar(FRAC_1_SQRT_2, self.angle);
        r
    }
}

/// Which scattering-matrix element a gain refers to.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Selector {
    /// Doubled-basis element `s[out, input]`; indices `< n_ports` are
    /// annihilation operators, the rest creation operators.
    Field { out: usize, input: usize },
    /// Quadrature-to-quadrature element.
    Quadrature { out: Quadrature, input: Quadrature },
}

impl Selector {
    pub fn quadrature(out: Quadrature, input: Quadrature) -> Self {
        Selector::Quadrature { out, input }
    }

    pub fn field(out: usize, input: usize) -> Self {
        Selector::Field { out, input }
    }

    pub(crate) fn check(&self, n_ports: usize) -> Result<()> {
        let ok = match self {
            Selector::Field { out, input } => *out < 2 * n_ports && *input < 2 * n_ports,
            Selector::Quadrature { out, input } => out.mode < n_ports && input.mode < n_ports,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::SelectorOutOfRange(format!("{self:?} with {n_ports} ports")))
        }
    }
}

/// Sign of the input-output relation. Only the standard sign is physical;
/// the flipped sign exists as a negative control for the invariant suite.
#[doc(hidden)]
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum IoConvention {
    #[default]
    Standard,
    Flipped,
}

/// Frequency-domain map from doubled-basis input fields to output fields.
///
/// Conventions: `dv/dt = A v - L v_in`, `v_out = v_in + Lᵀ v`, and
/// `v(t) = ∫ dω e^{-iωt} v[ω]`, so `s[ω] = 1 + Lᵀ (A + iω)⁻¹ L`. A bare cavity
/// reflects with `(iω + κ/2)/(iω - κ/2)`, i.e. `-1` on resonance. The
/// creation-operator entries are `a†[ω] ≡ (a[-ω])†`.
#[derive(Debug, Clone, PartialEq)]
pub struct ScatteringMatrix {
    pub omega: f64,
    pub n_ports: usize,
    pub s: DMatrix<Complex64>,
}

impl ScatteringMatrix {
    pub fn field(&self, out: usize, input: usize) -> Complex64 {
        self.s[(out, input)]
    }

    /// Quadrature basis `(X₁, P₁, X₂, P₂, …)`.
    pub fn quadrature_matrix(&self) -> DMatrix<Complex64> {
        let u = quadrature_transform(self.n_ports);
        &u * &self.s * u.adjoint()
    }

    pub fn quadrature_element(&self, out: Quadrature, input: Quadrature) -> Complex64 {
        let r_out = out.row(self.n_ports);
        let r_in = input.row(self.n_ports);
        (r_out.transpose() * &self.s * r_in.map(|z| z.conj()))[(0, 0)]
    }

    pub fn element(&self, selector: &Selector) -> Result<Complex64> {
        selector.check(self.n_ports)?;
        Ok(match *selector {
            Selector::Field { out, input } => self.field(out, input),
            Selector::Quadrature { out, input } => self.quadrature_element(out, input),
        })
    }

    /// `max |s τ₃ s† − τ₃|`; zero when commutators are preserved.
    pub fn bogoliubov_residual(&self) -> f64 {
        let tau3 = tau3(self.n_ports);
        let lhs = &self.s * &tau3 * self.s.adjoint();
        super::model::max_abs_diff(&lhs, &tau3)
    }

    /// `max |s[ω] − τ₁ s*[−ω] τ₁|` given the matrix at `−ω`.
    pub fn particle_hole_residual(&self, at_minus_omega: &ScatteringMatrix) -> f64 {
        let mirrored = super::model::swap_blocks(&at_minus_omega.s.map(|z| z.conj()), self.n_ports);
        super::model::max_abs_diff(&self.s, &mirrored)
    }
}

pub(crate) fn tau3(n: usize) -> DMatrix<Complex64> {
    DMatrix::from_fn(2 * n, 2 * n, |i, j| match (i == j, i < n) {
        (true, true) => Complex64::new(1.0, 0.0),
        (true, false) => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, 0.0),
    })
}

/// Unitary taking doubled-basis fields to `(X₁, P₁, …)`.
pub(crate) fn quadrature_transform(n: usize) -> DMatrix<Complex64> {
    let mut u = DMatrix::zeros(2 * n, 2 * n);
    for k in 0..n {
        for (row, q) in [(2 * k, Quadrature::x(k)), (2 * k + 1, Quadrature::p(k))] {
            let r = q.row(n);
            u.set_row(row, &r.transpose());
        }
    }
    u
}

/// Coupling matrix `L` (`2N × 2P`, real) between modes and ports.
fn coupling_matrix(model: &QuadraticModel) -> DMatrix<Complex64> {
    let n = model.n_modes();
    let p = model.n_ports();
    let mut l = DMatrix::zeros(2 * n, 2 * p);
    for (mode, kappa) in model.kappas().iter().enumerate() {
        let g = Complex64::new(kappa.sqrt(), 0.0);
        l[(mode, mode)] = g;
        l[(mode + n, mode + p)] = g;
    }
    for (i, loss) in model.losses().iter().enumerate() {
        let g = Complex64::new(loss.rate.sqrt(), 0.0);
        l[(loss.mode, n + i)] = g;
        l[(loss.mode + n, n + i + p)] = g;
    }
    l
}

/// Scattering matrix at frequency `omega`. Unstable models are refused.
pub fn scattering_matrix(model: &QuadraticModel, omega: f64) -> Result<ScatteringMatrix> {
    scattering_matrix_with(model, omega, IoConvention::Standard)
}

#[doc(hidden)]
pub fn scattering_matrix_with(
    model: &QuadraticModel,
    omega: f64,
    convention: IoConvention,
) -> Result<ScatteringMatrix> {
    let report = stability(model);
    if !report.stable {
        return Err(Error::UnstableDynamics(Box::new(report)));
    }
    scattering_unchecked(model, omega, convention)
}

/// Scattering without the stability gate; callers sweeping many frequencies
/// of one model check stability once.
pub(crate) fn scattering_unchecked(
    model: &QuadraticModel,
    omega: f64,
    convention: IoConvention,
) -> Result<ScatteringMatrix> {
    let n = model.n_modes();
    let p = model.n_ports();
    let a = build_dynamical_matrix(model).a_matrix;
    let shifted = a + DMatrix::from_diagonal_element(2 * n, 2 * n, Complex64::new(0.0, omega));
    let l = coupling_matrix(model);
    let x = shifted.lu().solve(&l).ok_or(Error::Singular(omega))?;
    let sign = match convention {
        IoConvention::Standard => 1.0,
        IoConvention::Flipped => -1.0,
    };
    let s = DMatrix::identity(2 * p, 2 * p) + l.transpose() * x * Complex64::new(sign, 0.0);
    Ok(ScatteringMatrix { omega, n_ports: p, s })
}

/// Stateless sweeper that checks stability once and then evaluates `s[ω]`.
#[derive(Debug, Clone)]
pub struct Scatterer<'a> {
    model: &'a QuadraticModel,
    convention: IoConvention,
}

impl<'a> Scatterer<'a> {
    pub fn new(model: &'a QuadraticModel) -> Result<Self> {
        Self::with_convention(model, IoConvention::Standard)
    }

    #[doc(hidden)]
    pub fn with_convention(model: &'a QuadraticModel, convention: IoConvention) -> Result<Self> {
        let report = stability(model);
        if !report.stable {
            return Err(Error::UnstableDynamics(Box::new(report)));
        }
        Ok(Self { model, convention })
    }

    pub fn at(&self, omega: f64) -> Result<ScatteringMatrix> {
        scattering_unchecked(self.model, omega, self.convention)
    }

    pub fn model(&self) -> &QuadraticModel {
        self.model
    }
}
