//! Amplifier constructors and matching-condition solvers.
//!
//! All rates are in the same (arbitrary) unit; callers normally use `κ₁ = 1`.
//! Gain targets are power gains in dB, `𝒢₀ = 10^{dB/10}`.

use std::f64::consts::FRAC_PI_4;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quadratic::{HamiltonianBuilder, Quadrature, QuadraticModel, Selector};

pub fn db_to_linear(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

pub fn linear_to_db(gain: f64) -> f64 {
    10.0 * gain.log10()
}

fn check_rate(name: &str, value: f64) -> Result<()> {
    if value.is_finite() && value > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("{name} = {value} must be finite and > 0")))
    }
}

fn check_non_negative(name: &str, value: f64) -> Result<()> {
    if value.is_finite() && value >= 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("{name} = {value} must be finite and ≥ 0")))
    }
}

/// Single cavity with a two-photon drive, `Δ a†a + (ν/2)(a†a† + aa)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DpaParams {
    pub delta: f64,
    pub nu: f64,
    pub kappa: f64,
}

impl DpaParams {
    /// Resonant (`Δ = 0`) amplifier with zero-frequency power gain `𝒢₀`:
    /// `√𝒢₀ = (κ/2 + ν)/(κ/2 − ν)`.
    pub fn resonant_for_gain(kappa: f64, target_gain_db: f64) -> Result<Self> {
        check_rate("kappa", kappa)?;
        check_non_negative("target_gain_db", target_gain_db)?;
        let amp = db_to_linear(target_gain_db).sqrt();
        Ok(Self { delta: 0.0, nu: 0.5 * kappa * (amp - 1.0) / (amp + 1.0), kappa })
    }
}

pub fn make_dpa(p: &DpaParams) -> Result<QuadraticModel> {
    check_rate("kappa", p.kappa)?;
    check_non_negative("delta", p.delta)?;
    check_non_negative("nu", p.nu)?;
    HamiltonianBuilder::new(1)
        .detuning(0, p.delta)
        .single_mode_squeezing(0, Complex64::new(p.nu, 0.0))
        .build(vec![p.kappa])
}

/// Two cavities with two-mode squeezing `G₁` and conversion `G₂`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OibaParams {
    pub g1: f64,
    pub g2: f64,
    pub kappa1: f64,
    pub kappa2: f64,
    /// Pump phases `φ₁, φ₂`; the couplings become `Gₙ e^{-iφₙ}`.
    #[serde(default)]
    pub pump_phases: [f64; 2],
}

impl OibaParams {
    pub fn symmetric(g1: f64, g2: f64, kappa: f64) -> Self {
        Self { g1, g2, kappa1: kappa, kappa2: kappa, pump_phases: [0.0, 0.0] }
    }

    /// Cooperativities `𝒞ₙ = 4Gₙ²/(κ₁κ₂)`.
    pub fn cooperativities(&self) -> (f64, f64) {
        let k = self.kappa1 * self.kappa2;
        (4.0 * self.g1 * self.g1 / k, 4.0 * self.g2 * self.g2 / k)
    }

    /// Deviation from impedance matching, `Δ𝒞 = 𝒞₂ − 𝒞₁ − 1`.
    pub fn matching_deviation(&self) -> f64 {
        let (c1, c2) = self.cooperativities();
        c2 - c1 - 1.0
    }

    /// `G̃ = √(G₂² − G₁²)`; NaN below the cusp.
    pub fn hopping_energy(&self) -> f64 {
        ((self.g2 - self.g1) * (self.g2 + self.g1)).sqrt()
    }
}

pub fn make_oiba(p: &OibaParams) -> Result<QuadraticModel> {
    check_rate("kappa1", p.kappa1)?;
    check_rate("kappa2", p.kappa2)?;
    check_non_negative("g1", p.g1)?;
    check_non_negative("g2", p.g2)?;
    HamiltonianBuilder::new(2)
        .two_mode_squeezing(0, 1, Complex64::from_polar(p.g1, -p.pump_phases[0]))
        .hopping(0, 1, Complex64::from_polar(p.g2, -p.pump_phases[1]))
        .build(vec![p.kappa1, p.kappa2])
}

/// Condition used to place an asymmetric two-mode amplifier.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MatchCondition {
    /// `G̃ = √(κ₁κ₂)/2`: zero on-resonance reflection (`Δ𝒞 = 0`).
    #[default]
    Impedance,
    /// `G̃ = √(κ₊² + κ₋²)/2`: normal-mode splitting equal to the decay, `κ± = (κ₁ ± κ₂)/2`.
    Imbalance,
}

impl MatchCondition {
    pub fn hopping_energy(self, kappa1: f64, kappa2: f64) -> f64 {
        match self {
            MatchCondition::Impedance => 0.5 * (kappa1 * kappa2).sqrt(),
            MatchCondition::Imbalance => {
                let plus = 0.5 * (kappa1 + kappa2);
                let minus = 0.5 * (kappa1 - kappa2);
                0.5 * (plus * plus + minus * minus).sqrt()
            }
        }
    }
}

/// Parameters of any amplifier this crate builds.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum AmplifierParams {
    /// Resonant or near-resonant degenerate paramp (phase-sensitive, reflection).
    Dpa(DpaParams),
    /// Detuned degenerate paramp at the Bogoliubov matching point.
    Odba(DpaParams),
    Oiba(OibaParams),
    Qnd { g: f64, kappa: f64 },
    DetunedTwoMode { delta: f64, g: f64, kappa: f64 },
    Imbalanced { g1: f64, g2: f64, kappa: f64, squeezing: ImbalancedSqueezing },
}

impl AmplifierParams {
    pub fn model(&self) -> Result<QuadraticModel> {
        match self {
            AmplifierParams::Dpa(p) | AmplifierParams::Odba(p) => make_dpa(p),
            AmplifierParams::Oiba(p) => make_oiba(p),
            AmplifierParams::Qnd { g, kappa } => make_qnd(*g, *kappa),
            AmplifierParams::DetunedTwoMode { delta, g, kappa } => make_detuned_two_mode(*delta, *g, *kappa),
            AmplifierParams::Imbalanced { g1, g2, kappa, squeezing } => make_imbalanced(*g1, *g2, *kappa, *squeezing),
        }
    }

    /// Element carrying the amplified signal.
    ///
    /// * DPA: the quadrature at −45°, mapped onto itself.
    /// * ODBA: `X → P` of the single mode.
    /// * OIBA and QND: `X₂ → P₁` (transmission).
    /// * Phase-insensitive kinds: `a₁ → a₁` (reflection).
    pub fn gain_selector(&self) -> Selector {
        match self {
            AmplifierParams::Dpa(_) => {
                let q = Quadrature::at(0, -FRAC_PI_4);
                Selector::quadrature(q, q)
            }
            AmplifierParams::Odba(_) => Selector::quadrature(Quadrature::p(0), Quadrature::x(0)),
            AmplifierParams::Oiba(_) | AmplifierParams::Qnd { .. } => {
                Selector::quadrature(Quadrature::p(0), Quadrature::x(1))
            }
            AmplifierParams::DetunedTwoMode { .. } | AmplifierParams::Imbalanced { .. } => Selector::field(0, 0),
        }
    }

    /// Reference rate (`κ₁`).
    pub fn kappa(&self) -> f64 {
        match self {
            AmplifierParams::Dpa(p) | AmplifierParams::Odba(p) => p.kappa,
            AmplifierParams::Oiba(p) => p.kappa1,
            AmplifierParams::Qnd { kappa, .. }
            | AmplifierParams::DetunedTwoMode { kappa, .. }
            | AmplifierParams::Imbalanced { kappa, .. } => *kappa,
        }
    }
}

/// Output of the inverse-design solvers.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MatchingSolution {
    pub params: AmplifierParams,
    pub squeeze_r: f64,
    pub target_gain_db: f64,
}

impl MatchingSolution {
    pub fn model(&self) -> Result<QuadraticModel> {
        self.params.model()
    }

    pub fn gain_selector(&self) -> Selector {
        self.params.gain_selector()
    }

    /// Residual of the matching condition the solver imposed.
    pub fn matching_residual(&self) -> f64 {
        match self.params {
            AmplifierParams::Dpa(p) | AmplifierParams::Odba(p) => {
                p.delta * p.delta - p.nu * p.nu - p.kappa * p.kappa / 4.0
            }
            AmplifierParams::Oiba(p) => p.matching_deviation(),
            AmplifierParams::DetunedTwoMode { delta, g, kappa } => delta * delta - g * g - kappa * kappa / 4.0,
            AmplifierParams::Imbalanced { g1, g2, kappa, .. } => g2 * g2 - g1 * g1 - kappa * kappa / 4.0,
            AmplifierParams::Qnd { .. } => 0.0,
        }
    }
}

fn squeeze_for_gain(target_gain_db: f64) -> Result<f64> {
    check_non_negative("target_gain_db", target_gain_db)?;
    Ok(db_to_linear(target_gain_db).ln() / 4.0)
}

/// Detuned DPA with `√(Δ² − ν²) = κ/2` and `e^{4r} = 𝒢₀`.
pub fn make_odba_for_gain(kappa: f64, target_gain_db: f64) -> Result<MatchingSolution> {
    check_rate("kappa", kappa)?;
    let r = squeeze_for_gain(target_gain_db)?;
    let p = DpaParams { delta: 0.5 * kappa * (2.0 * r).cosh(), nu: 0.5 * kappa * (2.0 * r).sinh(), kappa };
    Ok(MatchingSolution { params: AmplifierParams::Odba(p), squeeze_r: r, target_gain_db })
}

/// Two-mode amplifier with `tanh 2r = G₁/G₂`, `e^{4r} = 𝒢₀` and `G̃` fixed by
/// `condition` (the two conditions coincide for `κ₁ = κ₂`).
pub fn make_oiba_for_gain(
    kappa1: f64,
    kappa2: f64,
    target_gain_db: f64,
    condition: MatchCondition,
) -> Result<MatchingSolution> {
    check_rate("kappa1", kappa1)?;
    check_rate("kappa2", kappa2)?;
    let r = squeeze_for_gain(target_gain_db)?;
    let hop = condition.hopping_energy(kappa1, kappa2);
    let p = OibaParams {
        g1: hop * (2.0 * r).sinh(),
        g2: hop * (2.0 * r).cosh(),
        kappa1,
        kappa2,
        pump_phases: [0.0, 0.0],
    };
    Ok(MatchingSolution { params: AmplifierParams::Oiba(p), squeeze_r: r, target_gain_db })
}

/// `Δ (a₁†a₁ + a₂†a₂) + G (a₁†a₂† + a₁a₂)`.
pub fn make_detuned_two_mode(delta: f64, g: f64, kappa: f64) -> Result<QuadraticModel> {
    check_rate("kappa", kappa)?;
    check_non_negative("delta", delta)?;
    check_non_negative("g", g)?;
    HamiltonianBuilder::new(2)
        .detuning(0, delta)
        .detuning(1, delta)
        .two_mode_squeezing(0, 1, Complex64::new(g, 0.0))
        .build(vec![kappa, kappa])
}

/// Detuned two-mode squeezer at `√(Δ² − G²) = κ/2`. The reflection gain of
/// this phase-insensitive amplifier is `cosh² 2r`, so `r` is chosen to make
/// `cosh² 2r = 𝒢₀`.
pub fn make_detuned_two_mode_for_gain(kappa: f64, target_gain_db: f64) -> Result<MatchingSolution> {
    check_rate("kappa", kappa)?;
    check_non_negative("target_gain_db", target_gain_db)?;
    let two_r = db_to_linear(target_gain_db).sqrt().acosh();
    let params = AmplifierParams::DetunedTwoMode {
        delta: 0.5 * kappa * two_r.cosh(),
        g: 0.5 * kappa * two_r.sinh(),
        kappa,
    };
    Ok(MatchingSolution { params, squeeze_r: 0.5 * two_r, target_gain_db })
}

/// Balanced point `G₁ = G₂ = G`, i.e. `H = 2G X̂₁X̂₂`.
pub fn make_qnd(g: f64, kappa: f64) -> Result<QuadraticModel> {
    make_oiba(&OibaParams::symmetric(g, g, kappa))
}

/// QND amplifier with transmission amplitude gain `8G/κ = √𝒢_Q`.
pub fn make_qnd_for_gain(kappa: f64, target_gain_db: f64) -> Result<MatchingSolution> {
    check_rate("kappa", kappa)?;
    check_non_negative("target_gain_db", target_gain_db)?;
    let g = kappa * db_to_linear(target_gain_db).sqrt() / 8.0;
    Ok(MatchingSolution { params: AmplifierParams::Qnd { g, kappa }, squeeze_r: 0.0, target_gain_db })
}

/// Pairing structure of an imbalanced (hopping) amplifier.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ImbalancedSqueezing {
    /// `G₁ (a₁†a₂† + h.c.)`: phase-sensitive, identical to the OIBA.
    TwoMode,
    /// `(G₁/2) Σₙ (aₙ†aₙ† + h.c.)`: phase-insensitive counterpart.
    Local,
}

pub fn make_imbalanced(g1: f64, g2: f64, kappa: f64, squeezing: ImbalancedSqueezing) -> Result<QuadraticModel> {
    check_rate("kappa", kappa)?;
    check_non_negative("g1", g1)?;
    check_non_negative("g2", g2)?;
    let b = HamiltonianBuilder::new(2).hopping(0, 1, Complex64::new(g2, 0.0));
    let b = match squeezing {
        ImbalancedSqueezing::TwoMode => b.two_mode_squeezing(0, 1, Complex64::new(g1, 0.0)),
        ImbalancedSqueezing::Local => b
            .single_mode_squeezing(0, Complex64::new(g1, 0.0))
            .single_mode_squeezing(1, Complex64::new(g1, 0.0)),
    };
    b.build(vec![kappa, kappa])
}
