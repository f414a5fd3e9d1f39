//! Normal forms of the stable one- and two-mode Hamiltonians.
//!
//! Every recognized Hamiltonian is a single Bogoliubov-mode term (`Λ β†β`,
//! summed over modes for the two-mode detuned case) or a hopping term
//! `G̃ (β₁†β₂ + h.c.)` between locally squeezed modes.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

use super::dynamics::hamiltonian_diagonalizable;
use super::model::QuadraticModel;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BogoliubovKind {
    /// `Δ a†a + (ν/2)(a†a† + h.c.)`
    SingleModeDetuned,
    /// `Δ (a₁†a₁ + a₂†a₂) + G (a₁†a₂† + h.c.)`
    TwoModeDetuned,
    /// `G₁ (a₁†a₂† + h.c.) + G₂ (a₁†a₂ + h.c.)`
    ImbalancedHopping,
    /// `(G₁/2) Σₙ (aₙ†aₙ† + h.c.) + G₂ (a₁†a₂ + h.c.)`
    ImbalancedHoppingLocal,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BogoliubovForm {
    pub kind: BogoliubovKind,
    pub squeeze_r: f64,
    /// `Λ` for the detuned kinds, `G̃` for the hopping kinds.
    pub mode_energy: f64,
    /// Phase of the pairing coupling.
    pub squeeze_phase: f64,
    /// Phase of the hopping coupling (zero for the detuned kinds).
    pub hopping_phase: f64,
}

impl BogoliubovForm {
    /// Rebuilds the doubled-basis Hamiltonian matrix from the normal form.
    pub fn hamiltonian(&self) -> DMatrix<Complex64> {
        let cosh = self.mode_energy * (2.0 * self.squeeze_r).cosh();
        let sinh = self.mode_energy * (2.0 * self.squeeze_r).sinh();
        let pair = Complex64::from_polar(sinh, self.squeeze_phase);
        let hop = Complex64::from_polar(cosh, self.hopping_phase);
        let (n, normal, pairing) = match self.kind {
            BogoliubovKind::SingleModeDetuned => {
                (1, DMatrix::from_element(1, 1, Complex64::new(cosh, 0.0)), DMatrix::from_element(1, 1, pair))
            }
            BogoliubovKind::TwoModeDetuned => (
                2,
                DMatrix::from_diagonal_element(2, 2, Complex64::new(cosh, 0.0)),
                offdiag(pair, pair),
            ),
            BogoliubovKind::ImbalancedHopping => (2, offdiag(hop, hop.conj()), offdiag(pair, pair)),
            BogoliubovKind::ImbalancedHoppingLocal => (
                2,
                offdiag(hop, hop.conj()),
                DMatrix::from_diagonal_element(2, 2, pair),
            ),
        };
        let mut m = DMatrix::zeros(2 * n, 2 * n);
        m.view_mut((0, 0), (n, n)).copy_from(&normal);
        m.view_mut((0, n), (n, n)).copy_from(&pairing);
        m.view_mut((n, 0), (n, n)).copy_from(&pairing.map(|z| z.conj()));
        m.view_mut((n, n), (n, n)).copy_from(&normal.map(|z| z.conj()));
        m
    }
}

fn offdiag(upper: Complex64, lower: Complex64) -> DMatrix<Complex64> {
    let mut m = DMatrix::zeros(2, 2);
    m[(0, 1)] = upper;
    m[(1, 0)] = lower;
    m
}

pub fn bogoliubov_diagonalize(model: &QuadraticModel) -> Result<BogoliubovForm> {
    let normal = model.normal_block();
    let pairing = model.pairing_block();
    let scale = model.h_matrix().iter().map(|z| z.norm()).fold(0.0, f64::max);
    let tol = 1e-12 * scale.max(1.0);
    let is_zero = |z: Complex64| z.norm() <= tol;

    match model.n_modes() {
        1 => {
            let delta = normal[(0, 0)].re;
            let nu = pairing[(0, 0)];
            if delta < -tol {
                return Err(Error::UnsupportedForm("negative detuning".into()));
            }
            detuned(BogoliubovKind::SingleModeDetuned, model, delta, nu)
        }
        2 => {
            let diag_equal = (normal[(0, 0)] - normal[(1, 1)]).norm() <= tol;
            let hop = normal[(0, 1)];
            let pair_diag_equal = (pairing[(0, 0)] - pairing[(1, 1)]).norm() <= tol;
            if is_zero(hop) && diag_equal && is_zero(pairing[(0, 0)]) && is_zero(pairing[(1, 1)]) {
                let delta = normal[(0, 0)].re;
                if delta < -tol {
                    return Err(Error::UnsupportedForm("negative detuning".into()));
                }
                return detuned(BogoliubovKind::TwoModeDetuned, model, delta, pairing[(0, 1)]);
            }
            if !(is_zero(normal[(0, 0)]) && is_zero(normal[(1, 1)])) {
                return Err(Error::UnsupportedForm(
                    "hopping with detuning is not a recognized Bogoliubov form".into(),
                ));
            }
            let (kind, pair) = if is_zero(pairing[(0, 0)]) && is_zero(pairing[(1, 1)]) {
                (BogoliubovKind::ImbalancedHopping, pairing[(0, 1)])
            } else if pair_diag_equal && is_zero(pairing[(0, 1)]) {
                (BogoliubovKind::ImbalancedHoppingLocal, pairing[(0, 0)])
            } else {
                return Err(Error::UnsupportedForm("mixed pairing structure".into()));
            };
            if !hamiltonian_diagonalizable(model) || pair.norm() >= hop.norm() {
                return Err(Error::UnstableHamiltonian);
            }
            let (g1, g2) = (pair.norm(), hop.norm());
            Ok(BogoliubovForm {
                kind,
                squeeze_r: 0.5 * (g1 / g2).atanh(),
                mode_energy: ((g2 - g1) * (g2 + g1)).sqrt(),
                squeeze_phase: pair.arg(),
                hopping_phase: hop.arg(),
            })
        }
        n => Err(Error::UnsupportedForm(format!("{n}-mode Hamiltonians have no built-in normal form"))),
    }
}

fn detuned(kind: BogoliubovKind, model: &QuadraticModel, delta: f64, pair: Complex64) -> Result<BogoliubovForm> {
    let nu = pair.norm();
    if delta == 0.0 && nu == 0.0 {
        return Ok(BogoliubovForm {
            kind,
            squeeze_r: 0.0,
            mode_energy: 0.0,
            squeeze_phase: 0.0,
            hopping_phase: 0.0,
        });
    }
    if nu >= delta || !hamiltonian_diagonalizable(model) {
        return Err(Error::UnstableHamiltonian);
    }
    Ok(BogoliubovForm {
        kind,
        squeeze_r: 0.5 * (nu / delta).atanh(),
        mode_energy: ((delta - nu) * (delta + nu)).sqrt(),
        squeeze_phase: if nu == 0.0 { 0.0 } else { pair.arg() },
        hopping_phase: 0.0,
    })
}
