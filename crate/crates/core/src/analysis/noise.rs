use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::quadratic::{
    spectrum_from_scattering, NoiseSpectrumPoint, Quadrature, QuadraticModel, Scatterer, ScatteringMatrix, Selector,
    SHOT_NOISE,
};

/// Quadrature of `mode` with the smallest zero-frequency output noise.
///
/// The noise of `cos θ X + sin θ P` is `A + Re(e^{-2iθ} Z)` with
/// `Z = Σₖ s_{m,k} s*_{m+N,k} (n̄ₖ + ½)`, minimized at `2θ = arg Z + π`.
pub fn squeezed_quadrature(model: &QuadraticModel, mode: usize) -> Result<Quadrature> {
    if mode >= model.n_modes() {
        return Err(Error::SelectorOutOfRange(format!("mode {mode}")));
    }
    let s = Scatterer::new(model)?.at(0.0)?;
    let p = s.n_ports;
    let occ = model.port_occupations();
    let z: num_complex::Complex64 = (0..2 * p)
        .map(|k| s.s[(mode, k)] * s.s[(mode + p, k)].conj() * (occ[k % p] + 0.5))
        .sum();
    let angle = if z.norm() == 0.0 { 0.0 } else { 0.5 * (z.arg() + std::f64::consts::PI) };
    // Fold into (−π/2, π/2]; θ and θ + π are the same quadrature up to sign.
    let angle = if angle > std::f64::consts::FRAC_PI_2 { angle - std::f64::consts::PI } else { angle };
    Ok(Quadrature::at(mode, angle))
}

pub fn quadrature_spectrum(
    model: &QuadraticModel,
    quadrature: Quadrature,
    omegas: &[f64],
) -> Result<Vec<NoiseSpectrumPoint>> {
    if quadrature.mode >= model.n_modes() {
        return Err(Error::SelectorOutOfRange(format!("mode {}", quadrature.mode)));
    }
    let scatterer = Scatterer::new(model)?;
    let occ = model.port_occupations();
    omegas
        .par_iter()
        .map(|w| {
            let value = spectrum_from_scattering(&scatterer.at(*w)?, &occ, quadrature)?;
            Ok(NoiseSpectrumPoint { omega: *w, value })
        })
        .collect()
}

/// Output spectrum of the squeezed quadrature of mode 0 (shot-noise units).
pub fn squeezing_spectrum(model: &QuadraticModel, omegas: &[f64]) -> Result<Vec<NoiseSpectrumPoint>> {
    quadrature_spectrum(model, squeezed_quadrature(model, 0)?, omegas)
}

/// Full width of the frequency range around `ω = 0` where the squeezed-quadrature
/// noise stays within 3 dB (a factor of two) of its on-resonance value.
///
/// The sampled spectrum brackets each edge; the edge itself is refined by
/// bisection on the model.
pub fn squeezing_bandwidth(model: &QuadraticModel, spectrum: &[NoiseSpectrumPoint]) -> Result<f64> {
    let quad = squeezed_quadrature(model, 0)?;
    let scatterer = Scatterer::new(model)?;
    let occ = model.port_occupations();
    let noise = |w: f64| -> Result<f64> { spectrum_from_scattering(&scatterer.at(w)?, &occ, quad) };
    let s0 = noise(0.0)?;
    // Below 3 dB of squeezing the window would extend to infinite frequency.
    if !(s0 < 0.5) {
        return Err(Error::NotSqueezed(s0));
    }
    let limit = 2.0 * s0;
    let mut pts: Vec<&NoiseSpectrumPoint> = spectrum.iter().collect();
    pts.sort_by(|a, b| a.omega.total_cmp(&b.omega));
    let edge = |side: &mut dyn Iterator<Item = &&NoiseSpectrumPoint>| -> Result<f64> {
        let mut inside = 0.0;
        for p in side {
            if p.value > limit {
                let mut outside = p.omega;
                for _ in 0..200 {
                    let mid = 0.5 * (inside + outside);
                    if mid == inside || mid == outside {
                        break;
                    }
                    if noise(mid)? <= limit {
                        inside = mid;
                    } else {
                        outside = mid;
                    }
                }
                return Ok(0.5 * (inside + outside));
            }
            inside = p.omega;
        }
        Err(Error::GridTooNarrow("3 dB edge not bracketed".into()))
    };
    let upper = edge(&mut pts.iter().filter(|p| p.omega > 0.0))?;
    let lower = edge(&mut pts.iter().rev().filter(|p| p.omega < 0.0))?;
    Ok(upper - lower)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AddedNoiseReport {
    pub gain: f64,
    /// Input-referred noise quanta beyond the amplified input noise.
    pub added_photons: f64,
    pub quantum_limited: bool,
}

/// Tolerance on the quantum-limit comparison, in noise quanta.
pub const QUANTUM_LIMIT_TOL: f64 = 1e-9;

/// Symmetrized output noise (absolute units) of the selected output and the
/// gain from the selected input.
fn selected_noise(s: &ScatteringMatrix, occ: &[f64], selector: &Selector) -> Result<(f64, f64, f64)> {
    selector.check(s.n_ports)?;
    let p = s.n_ports;
    match *selector {
        Selector::Quadrature { out, input } => {
            let total = spectrum_from_scattering(s, occ, out)? * SHOT_NOISE;
            let gain = s.quadrature_element(out, input).norm_sqr();
            Ok((total, gain, occ[input.mode]))
        }
        Selector::Field { out, input } => {
            let total: f64 = (0..2 * p).map(|k| s.s[(out, k)].norm_sqr() * (occ[k % p] + 0.5)).sum();
            Ok((total, s.s[(out, input)].norm_sqr(), occ[input % p]))
        }
    }
}

/// Added noise at zero frequency.
pub fn added_noise(model: &QuadraticModel, selector: Selector) -> Result<AddedNoiseReport> {
    added_noise_at(model, selector, 0.0)
}

/// `n̄_add = [S̄_out − 𝒢 (n̄_in + ½)]/𝒢`. The quantum limit is zero for a
/// quadrature-to-quadrature selector and `½(1 − 1/𝒢)` for a field selector.
pub fn added_noise_at(model: &QuadraticModel, selector: Selector, omega: f64) -> Result<AddedNoiseReport> {
    let s = Scatterer::new(model)?.at(omega)?;
    let (total, gain, n_in) = selected_noise(&s, &model.port_occupations(), &selector)?;
    if !(gain > 1.0) {
        return Err(Error::NoAmplification(gain));
    }
    let added_photons = (total - gain * (n_in + 0.5)) / gain;
    let limit = match selector {
        Selector::Quadrature { .. } => 0.0,
        Selector::Field { .. } => 0.5 * (1.0 - 1.0 / gain),
    };
    Ok(AddedNoiseReport { gain, added_photons, quantum_limited: added_photons <= limit + QUANTUM_LIMIT_TOL })
}

/// `n̄_eff = √(S̄_{X₁X₁}[0] S̄_{P₁P₁}[0]) − ½` with cavity 2 driven by a bath of
/// occupation `n2_thermal`.
pub fn purity_occupancy(model: &QuadraticModel, n2_thermal: f64) -> Result<f64> {
    if model.n_modes() != 2 {
        return Err(Error::UnsupportedForm("purity is defined for two-mode amplifiers".into()));
    }
    let model = model.clone().with_thermal_occupation(1, n2_thermal)?;
    let s = Scatterer::new(&model)?.at(0.0)?;
    let occ = model.port_occupations();
    let sx = spectrum_from_scattering(&s, &occ, Quadrature::x(0))? * SHOT_NOISE;
    let sp = spectrum_from_scattering(&s, &occ, Quadrature::p(0))? * SHOT_NOISE;
    Ok((sx * sp).sqrt() - 0.5)
}

/// Largest on-resonance quadrature reflection magnitude.
pub fn reflection_on_resonance(model: &QuadraticModel) -> Result<f64> {
    let q = Scatterer::new(model)?.at(0.0)?.quadrature_matrix();
    Ok(q.diagonal().iter().map(|z| z.norm()).fold(0.0, f64::max))
}
