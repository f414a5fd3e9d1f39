//! Mean-field pump depletion of the two-mode Bogoliubov amplifier and of a
//! standard (single-pump, phase-insensitive) paramp.
//!
//! Each pump mode `aₙ` has damping `γₙ` and 3-wave coupling `gₙ` to the signal
//! modes. In steady state `⟨aₙ⟩ = −√γₙ aₙ,in/(γₙ/2 + Σₙ,eff)` with the
//! backaction self-energy `Σₙ,eff = γₙ,eff/2 + iΩₙ,eff`, so the drive seen by the
//! signal modes is `Gₙ,eff = Gₙ/(1 + γ̄ₙ + 2iΩₙ/γₙ)` and
//! `𝒞ₙ,eff = 𝒞ₙ/|1 + γ̄ₙ + 2iΩₙ/γₙ|²`, `γ̄ₙ = γₙ,eff/γₙ`.
//!
//! Pump photon fluxes: the undepleted pump amplitude is `|⟨aₙ⟩|² = 4n̄ₙ,in/γₙ`,
//! hence `n̄ₙ,in = 𝒞ₙ γₙ κ²/(16 gₙ²)` for the target cooperativity `𝒞ₙ`.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::closed_form;
use crate::error::{Error, Result};
use crate::models::{db_to_linear, linear_to_db, make_oiba, OibaParams};
use crate::quadratic::{Scatterer, ScatteringMatrix};

pub const RELAXATION: f64 = 0.5;
pub const TOLERANCE: f64 = 1e-12;
pub const MAX_ITERATIONS: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PumpScheme {
    /// Two pumps at matching, `𝒞₂ − 𝒞₁ = 1`.
    Oiba,
    /// Single two-mode-squeezing pump, `𝒞₂ = 0`.
    StandardPa,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PumpParams {
    pub scheme: PumpScheme,
    pub gamma1: f64,
    pub gamma2: f64,
    pub g1: f64,
    pub g2: f64,
    pub kappa: f64,
    pub target_gain_db: f64,
}

impl PumpParams {
    /// `γₙ = 12κ`, `gₙ = 0.014κ`, 20 dB.
    pub fn reference(scheme: PumpScheme) -> Self {
        Self { scheme, gamma1: 12.0, gamma2: 12.0, g1: 0.014, g2: 0.014, kappa: 1.0, target_gain_db: 20.0 }
    }

    pub fn with_scheme(self, scheme: PumpScheme) -> Self {
        Self { scheme, ..self }
    }

    fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("gamma1", self.gamma1),
            ("gamma2", self.gamma2),
            ("g1", self.g1),
            ("g2", self.g2),
            ("kappa", self.kappa),
        ] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::InvalidParameter(format!("{name} = {v} must be finite and > 0")));
            }
        }
        if !(self.target_gain_db.is_finite() && self.target_gain_db >= 0.0) {
            return Err(Error::InvalidParameter(format!("target_gain_db = {}", self.target_gain_db)));
        }
        Ok(())
    }

    /// Undepleted cooperativities giving the target gain.
    pub fn cooperativities(&self) -> (f64, f64) {
        let g = db_to_linear(self.target_gain_db);
        match self.scheme {
            PumpScheme::Oiba => {
                let two_r = 0.5 * g.ln();
                (two_r.sinh().powi(2), two_r.cosh().powi(2))
            }
            PumpScheme::StandardPa => {
                let a = g.sqrt();
                ((a - 1.0) / (a + 1.0), 0.0)
            }
        }
    }

    /// Pump photon fluxes `n̄ₙ,in` for the undepleted cooperativities.
    pub fn pump_photons(&self) -> (f64, f64) {
        let (c1, c2) = self.cooperativities();
        let k2 = self.kappa * self.kappa;
        (
            c1 * self.gamma1 * k2 / (16.0 * self.g1 * self.g1),
            c2 * self.gamma2 * k2 / (16.0 * self.g2 * self.g2),
        )
    }

    /// Total pump photon flux needed for the target gain; the unit of the
    /// input-power axis.
    pub fn reference_photons(&self) -> f64 {
        let (n1, n2) = self.pump_photons();
        n1 + n2
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InputPort {
    Cavity1,
    Cavity2,
}

impl InputPort {
    fn index(self) -> usize {
        match self {
            InputPort::Cavity1 => 0,
            InputPort::Cavity2 => 1,
        }
    }
}

/// Coherent signal amplitudes `X_in`, `P_in` (square root of photon flux).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SignalInput {
    pub x_in: f64,
    pub p_in: f64,
    pub input_port: InputPort,
}

impl SignalInput {
    pub fn x(power: f64, input_port: InputPort) -> Self {
        Self { x_in: power.sqrt(), p_in: 0.0, input_port }
    }

    /// Same direction in quadrature space, rescaled to the given power.
    pub fn with_power(&self, power: f64) -> Self {
        let norm = self.power().sqrt();
        let (dx, dp) = if norm > 0.0 { (self.x_in / norm, self.p_in / norm) } else { (1.0, 0.0) };
        Self { x_in: power.sqrt() * dx, p_in: power.sqrt() * dp, input_port: self.input_port }
    }

    pub fn power(&self) -> f64 {
        self.x_in * self.x_in + self.p_in * self.p_in
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EffectiveRates {
    pub gamma_eff: [f64; 2],
    pub omega_eff: [f64; 2],
    pub gamma_vac: f64,
}

fn check_regime(p: &PumpParams, c1: f64, c2: f64) -> Result<()> {
    if !(c1 >= 0.0 && c2 >= 0.0 && c1.is_finite() && c2.is_finite()) {
        return Err(Error::UnstableRegime(format!("cooperativities ({c1}, {c2})")));
    }
    match p.scheme {
        PumpScheme::Oiba if c1 > c2 => Err(Error::UnstableRegime(format!("𝒞₁ = {c1} exceeds 𝒞₂ = {c2}"))),
        PumpScheme::StandardPa if c1 >= 1.0 => Err(Error::UnstableRegime(format!("𝒞 = {c1} ≥ 1"))),
        _ => Ok(()),
    }
}

/// Backaction rates for the given effective cooperativities.
///
/// With `𝒞± = √𝒞₂ ± √𝒞₁` and `d = 1 + 𝒞₊𝒞₋`:
/// `γ₁ = (γ₁/2)(√𝒞₁/d²)(X²𝒞₊ − P²𝒞₋)/n̄₁ + γ^vac`,
/// `γ₂ = ∓(γ₂/2)(√𝒞₂/d²)(X²𝒞₊ + P²𝒞₋)/n̄₂` (upper sign: input on cavity 1),
/// `Ωₙ = (−1)^{n+1}(γₙ/2)(√(𝒞₁𝒞₂)/d²) XP/n̄ₙ`, `γ^vac = (2g₁²/κ)/d`.
pub fn effective_rates(p: &PumpParams, s: &SignalInput, c_eff: (f64, f64)) -> Result<EffectiveRates> {
    p.validate()?;
    let (c1, c2) = c_eff;
    check_regime(p, c1, c2)?;
    let (n1, n2) = p.pump_photons();
    let cp = c2.sqrt() + c1.sqrt();
    let cm = c2.sqrt() - c1.sqrt();
    let d = 1.0 + cp * cm;
    let (x2, p2, xp) = (s.x_in * s.x_in, s.p_in * s.p_in, s.x_in * s.p_in);
    let gamma_vac = 2.0 * p.g1 * p.g1 / p.kappa / d;
    let gamma1 = 0.5 * p.gamma1 * c1.sqrt() / (d * d) * (x2 * cp - p2 * cm) / n1 + gamma_vac;
    let omega1 = 0.5 * p.gamma1 * (c1 * c2).sqrt() / (d * d) * xp / n1;
    let (gamma2, omega2) = if n2 > 0.0 {
        let sign = match s.input_port {
            InputPort::Cavity1 => -1.0,
            InputPort::Cavity2 => 1.0,
        };
        (
            sign * 0.5 * p.gamma2 * c2.sqrt() / (d * d) * (x2 * cp + p2 * cm) / n2,
            -0.5 * p.gamma2 * (c1 * c2).sqrt() / (d * d) * xp / n2,
        )
    } else {
        (0.0, 0.0)
    };
    Ok(EffectiveRates { gamma_eff: [gamma1, gamma2], omega_eff: [omega1, omega2], gamma_vac })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DepletionSolution {
    pub gamma_eff: [f64; 2],
    pub omega_eff: [f64; 2],
    pub gamma_vac: f64,
    /// `γ̄ₙ = γₙ,eff/γₙ`.
    pub gamma_bar: [f64; 2],
    pub chi: [f64; 2],
    pub c_eff: [f64; 2],
    /// `𝒞₂,eff − 𝒞₁,eff − 1`.
    pub delta_c: f64,
    pub g_eff_db: f64,
    /// Power fraction reflected back out of the signal input port.
    pub reflection: f64,
    pub iterations: usize,
    pub converged: bool,
    pub residual: f64,
}

/// Pump amplitude factors `1/(1 + γ̄ₙ + 2iΩₙ/γₙ)`.
fn pump_factors(p: &PumpParams, r: &EffectiveRates) -> [Complex64; 2] {
    let gammas = [p.gamma1, p.gamma2];
    [0, 1].map(|n| {
        Complex64::new(1.0 + r.gamma_eff[n] / gammas[n], 2.0 * r.omega_eff[n] / gammas[n]).inv()
    })
}

fn fixed_point_map(p: &PumpParams, s: &SignalInput, c: (f64, f64)) -> Result<((f64, f64), EffectiveRates)> {
    let rates = effective_rates(p, s, c)?;
    let f = pump_factors(p, &rates);
    let (c1, c2) = p.cooperativities();
    Ok(((c1 * f[0].norm_sqr(), c2 * f[1].norm_sqr()), rates))
}

fn relative_residual(c: (f64, f64), next: (f64, f64)) -> f64 {
    let r = |a: f64, b: f64| if a == 0.0 && b == 0.0 { 0.0 } else { (b - a).abs() / a.abs().max(b.abs()) };
    r(c.0, next.0).max(r(c.1, next.1))
}

/// Largest squared singular value of the 2×2 quadrature block `out ← input`.
fn block_gain(s: &ScatteringMatrix, out: usize, input: usize) -> f64 {
    let q = s.quadrature_matrix();
    let block: DMatrix<Complex64> = q.view((2 * out, 2 * input), (2, 2)).into_owned();
    let sv = block.svd(false, false).singular_values;
    sv.iter().fold(0.0f64, |a, b| a.max(*b)).powi(2)
}

/// Gain and back-reflection of the depleted amplifier.
fn depleted_response(p: &PumpParams, s: &SignalInput, rates: &EffectiveRates) -> Result<(f64, f64)> {
    let (c1, c2) = p.cooperativities();
    let f = pump_factors(p, rates);
    let g1 = Complex64::new(0.5 * p.kappa * c1.sqrt(), 0.0) * f[0];
    let g2 = Complex64::new(0.5 * p.kappa * c2.sqrt(), 0.0) * f[1];
    let model = make_oiba(&OibaParams {
        g1: g1.norm(),
        g2: g2.norm(),
        kappa1: p.kappa,
        kappa2: p.kappa,
        pump_phases: [-g1.arg(), -g2.arg()],
    })?;
    let sm = Scatterer::new(&model)?.at(0.0)?;
    let input = s.input_port.index();
    let out = match p.scheme {
        PumpScheme::Oiba => 1 - input,
        PumpScheme::StandardPa => input,
    };
    let gain = block_gain(&sm, out, input);
    Ok((gain, block_gain(&sm, input, input)))
}

/// Damped fixed-point iteration on `(𝒞₁,eff, 𝒞₂,eff)`.
///
/// Each step moves half-way to the proposal; the step is halved again
/// whenever the residual grows, which damps the oscillation that appears deep
/// in compression.
pub fn solve_selfconsistent(p: &PumpParams, s: &SignalInput) -> Result<DepletionSolution> {
    p.validate()?;
    if !(s.x_in.is_finite() && s.p_in.is_finite()) {
        return Err(Error::InvalidParameter("signal amplitudes must be finite".into()));
    }
    let mut c = p.cooperativities();
    let mut relax = RELAXATION;
    let mut last_residual = f64::INFINITY;
    let mut iterations = 0;
    let mut converged = false;
    let (mut next, mut rates) = fixed_point_map(p, s, c)?;
    let mut residual = relative_residual(c, next);
    while iterations < MAX_ITERATIONS {
        if residual < TOLERANCE {
            converged = true;
            break;
        }
        if residual > last_residual {
            relax = (0.5 * relax).max(1e-3);
        }
        last_residual = residual;
        c = (relax * next.0 + (1.0 - relax) * c.0, relax * next.1 + (1.0 - relax) * c.1);
        (next, rates) = fixed_point_map(p, s, c)?;
        residual = relative_residual(c, next);
        iterations += 1;
    }
    let (c1, c2) = p.cooperativities();
    let chi = [
        if c1 > 0.0 { c.0 / c1 } else { 1.0 },
        if c2 > 0.0 { c.1 / c2 } else { 1.0 },
    ];
    let (gain, reflection) = depleted_response(p, s, &rates)?;
    Ok(DepletionSolution {
        gamma_eff: rates.gamma_eff,
        omega_eff: rates.omega_eff,
        gamma_vac: rates.gamma_vac,
        gamma_bar: [rates.gamma_eff[0] / p.gamma1, rates.gamma_eff[1] / p.gamma2],
        chi,
        c_eff: [c.0, c.1],
        delta_c: c.1 - c.0 - 1.0,
        g_eff_db: linear_to_db(gain),
        reflection,
        iterations,
        converged,
        residual,
    })
}

/// `√(𝒢_PA,eff/𝒢_PA)` for cooperativity `𝒞` and normalized backaction `γ̄`.
pub fn saturation_law_pa(c: f64, gamma_bar_eff: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&c) {
        return Err(Error::InvalidParameter(format!("cooperativity {c} outside [0, 1)")));
    }
    if !(gamma_bar_eff > -1.0) {
        return Err(Error::InvalidParameter(format!("γ̄ = {gamma_bar_eff} ≤ −1")));
    }
    let chi_c = c / (1.0 + gamma_bar_eff).powi(2);
    if chi_c >= 1.0 {
        return Err(Error::DepletedPastInstability(chi_c));
    }
    Ok(closed_form::pa_saturation_ratio(c, gamma_bar_eff))
}

/// `√(𝒢₀,eff/𝒢₀) = 2√χ/(χ + 1)` with `χ = (1 + γ̄)⁻²`.
pub fn saturation_law_oiba(gamma_bar_eff: f64) -> f64 {
    closed_form::oiba_saturation_ratio(gamma_bar_eff)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CompressionPoint {
    /// Signal power `X² + P²` at 1 dB compression (photon flux).
    pub input_power: f64,
    /// `input_power / n̄_in`.
    pub relative_power: f64,
    pub reference_photons: f64,
    pub solution: DepletionSolution,
}

const BRACKET: (f64, f64) = (1e-6, 1e2);
const MAX_EXPANSIONS: usize = 20;

/// Input power at which the effective gain has dropped by 1 dB, found by
/// bisection in log power. `direction` fixes the input port and quadrature
/// mix; its magnitude is ignored.
pub fn compression_point(p: &PumpParams, direction: &SignalInput) -> Result<CompressionPoint> {
    p.validate()?;
    if p.target_gain_db <= 1.0 {
        return Err(Error::NoCompression(format!("target gain {} dB ≤ 1 dB", p.target_gain_db)));
    }
    let goal = p.target_gain_db - 1.0;
    let n_ref = p.reference_photons();
    let solve = |power: f64| -> Result<DepletionSolution> {
        let sol = solve_selfconsistent(p, &direction.with_power(power))?;
        if !sol.converged {
            return Err(Error::NonConvergence(format!(
                "power {power:.6e}: residual {:.3e} after {} iterations",
                sol.residual, sol.iterations
            )));
        }
        Ok(sol)
    };
    let (mut lo, mut hi) = (BRACKET.0 * n_ref, BRACKET.1 * n_ref);
    let mut expansions = 0;
    while solve(lo)?.g_eff_db <= goal {
        lo *= 1e-2;
        expansions += 1;
        if expansions > MAX_EXPANSIONS {
            return Err(Error::NoCompression("gain below target even at vanishing input".into()));
        }
    }
    while solve(hi)?.g_eff_db > goal {
        hi *= 1e2;
        expansions += 1;
        if expansions > MAX_EXPANSIONS {
            return Err(Error::NoCompression("gain never drops by 1 dB".into()));
        }
    }
    let (mut llo, mut lhi) = (lo.ln(), hi.ln());
    for _ in 0..200 {
        if lhi - llo < 1e-13 {
            break;
        }
        let mid = 0.5 * (llo + lhi);
        if solve(mid.exp())?.g_eff_db > goal {
            llo = mid;
        } else {
            lhi = mid;
        }
    }
    let input_power = (0.5 * (llo + lhi)).exp();
    Ok(CompressionPoint {
        input_power,
        relative_power: input_power / n_ref,
        reference_photons: n_ref,
        solution: solve(input_power)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn undepleted_cooperativities() {
        let (c1, c2) = PumpParams::reference(PumpScheme::Oiba).cooperativities();
        assert!((c2 - c1 - 1.0).abs() < 1e-12);
        assert!(((c1.sqrt() + c2.sqrt()).powi(2) - 100.0).abs() < 1e-9);
        let (c, z) = PumpParams::reference(PumpScheme::StandardPa).cooperativities();
        assert!((c - 9.0 / 11.0).abs() < 1e-15 && z == 0.0);
    }

    #[test]
    fn vacuum_only_without_signal() {
        let p = PumpParams::reference(PumpScheme::Oiba);
        let s = SignalInput { x_in: 0.0, p_in: 0.0, input_port: InputPort::Cavity2 };
        let r = effective_rates(&p, &s, p.cooperativities()).unwrap();
        assert_eq!(r.gamma_eff[0], r.gamma_vac);
        assert_eq!(r.gamma_eff[1], 0.0);
        assert_eq!(r.omega_eff, [0.0, 0.0]);
    }

    #[test]
    fn single_quadrature_has_no_shift() {
        let p = PumpParams::reference(PumpScheme::Oiba);
        let r = effective_rates(&p, &SignalInput::x(100.0, InputPort::Cavity2), p.cooperativities()).unwrap();
        assert_eq!(r.omega_eff, [0.0, 0.0]);
        assert!(r.gamma_eff[1] > 0.0);
    }

    #[test]
    fn cavity_one_input_flips_second_rate() {
        let p = PumpParams::reference(PumpScheme::Oiba);
        let c = p.cooperativities();
        let a = effective_rates(&p, &SignalInput::x(100.0, InputPort::Cavity1), c).unwrap();
        let b = effective_rates(&p, &SignalInput::x(100.0, InputPort::Cavity2), c).unwrap();
        assert_eq!(a.gamma_eff[1], -b.gamma_eff[1]);
        assert_eq!(a.gamma_eff[0], b.gamma_eff[0]);
    }

    #[test]
    fn inverted_cooperativities_are_unstable() {
        let p = PumpParams::reference(PumpScheme::Oiba);
        let s = SignalInput::x(1.0, InputPort::Cavity2);
        assert!(matches!(effective_rates(&p, &s, (2.0, 1.0)), Err(Error::UnstableRegime(_))));
    }

    #[test]
    fn zero_signal_keeps_target_gain() {
        for scheme in [PumpScheme::Oiba, PumpScheme::StandardPa] {
            let p = PumpParams::reference(scheme);
            let sol = solve_selfconsistent(&p, &SignalInput::x(0.0, InputPort::Cavity2)).unwrap();
            assert!(sol.converged);
            assert!((sol.g_eff_db - 20.0).abs() < 0.1, "{scheme:?}: {}", sol.g_eff_db);
        }
    }

    #[test]
    fn pa_law_limits() {
        assert!((saturation_law_pa(0.5, 0.0).unwrap() - 1.0).abs() < 1e-15);
        assert!(saturation_law_pa(1.2, 0.0).is_err());
        assert!(matches!(saturation_law_pa(0.9, -0.1), Err(Error::DepletedPastInstability(_))));
        assert_eq!(saturation_law_oiba(0.0), 1.0);
    }

    #[test]
    fn compression_needs_gain() {
        let p = PumpParams { target_gain_db: 0.0, ..PumpParams::reference(PumpScheme::Oiba) };
        assert!(matches!(
            compression_point(&p, &SignalInput::x(1.0, InputPort::Cavity2)),
            Err(Error::NoCompression(_))
        ));
    }
}
