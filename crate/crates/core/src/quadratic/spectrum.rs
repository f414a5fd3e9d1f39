use serde::Serialize;

use super::model::QuadraticModel;
use super::scattering::{scattering_matrix, Quadrature, ScatteringMatrix};
use crate::error::{Error, Result};

/// Shot-noise level of a symmetrized quadrature spectrum.
pub const SHOT_NOISE: f64 = 0.5;

/// Symmetrized output noise in units of the shot noise.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NoiseSpectrumPoint {
    pub omega: f64,
    pub value: f64,
}

/// Symmetrized output spectrum of `quadrature` given the scattering matrix and
/// the bath occupation of every port, in shot-noise units.
///
/// Each doubled-basis input component carries `n̄ + 1/2` of symmetrized noise and
/// distinct components are uncorrelated, so `S̄ = Σₖ |cₖ|² (n̄ₖ + 1/2)` with
/// `c = r s` for the quadrature row `r`.
pub fn spectrum_from_scattering(s: &ScatteringMatrix, occupations: &[f64], quadrature: Quadrature) -> Result<f64> {
    if quadrature.mode >= s.n_ports {
        return Err(Error::SelectorOutOfRange(format!("quadrature of port {}", quadrature.mode)));
    }
    let p = s.n_ports;
    let row = quadrature.row(p).transpose() * &s.s;
    let absolute: f64 = row
        .iter()
        .enumerate()
        .map(|(k, c)| c.norm_sqr() * (occupations[k % p] + 0.5))
        .sum();
    Ok(absolute / SHOT_NOISE)
}

pub fn output_spectrum(model: &QuadraticModel, quadrature: Quadrature, omega: f64) -> Result<NoiseSpectrumPoint> {
    if quadrature.mode >= model.n_modes() {
        return Err(Error::SelectorOutOfRange(format!(
            "mode {} of a {}-mode model",
            quadrature.mode,
            model.n_modes()
        )));
    }
    let s = scattering_matrix(model, omega)?;
    let value = spectrum_from_scattering(&s, &model.port_occupations(), quadrature)?;
    Ok(NoiseSpectrumPoint { omega, value })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadratic::HamiltonianBuilder;

    #[test]
    fn bare_cavity_outputs_shot_noise() {
        let m = HamiltonianBuilder::new(1).build(vec![1.0]).unwrap();
        for (w, theta) in [(0.0, 0.0), (0.4, 1.0), (-3.0, 2.5)] {
            let v = output_spectrum(&m, Quadrature::at(0, theta), w).unwrap().value;
            assert!((v - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn thermal_bare_cavity_outputs_bath() {
        let m = HamiltonianBuilder::new(1)
            .build(vec![1.0])
            .unwrap()
            .with_thermal_occupations(vec![2.0])
            .unwrap();
        let v = output_spectrum(&m, Quadrature::x(0), 0.3).unwrap().value;
        assert!((v - 5.0).abs() < 1e-13);
    }

    #[test]
    fn mode_out_of_range() {
        let m = HamiltonianBuilder::new(1).build(vec![1.0]).unwrap();
        assert!(output_spectrum(&m, Quadrature::x(1), 0.0).is_err());
    }
}
