//! Analytic results used as independent oracles for the numeric path.
//!
//! Quadrature matrices use the basis `(X₁, P₁, X₂, P₂)` and the same Fourier
//! convention as [`crate::quadratic::scattering_matrix`].

use nalgebra::DMatrix;
use num_complex::Complex64;

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// Power gain of the resonant DPA, `((2ω/D)² + 𝒢₀)/((2ω/D)² + 1)`.
pub fn dpa_gain(nu: f64, kappa: f64, omega: f64) -> f64 {
    let g0 = dpa_zero_frequency_gain(nu, kappa);
    let x = 2.0 * omega / dpa_bandwidth_parameter(g0, kappa);
    (x * x + g0) / (x * x + 1.0)
}

pub fn dpa_zero_frequency_gain(nu: f64, kappa: f64) -> f64 {
    let amp = (0.5 * kappa + nu) / (0.5 * kappa - nu);
    amp * amp
}

/// `D = 2κ/(√𝒢₀ + 1)`.
pub fn dpa_bandwidth_parameter(g0: f64, kappa: f64) -> f64 {
    2.0 * kappa / (g0.sqrt() + 1.0)
}

/// Exact half-maximum width of the resonant DPA, `D √(𝒢₀/(𝒢₀ − 2))`.
pub fn dpa_fwhm(g0: f64, kappa: f64) -> f64 {
    dpa_bandwidth_parameter(g0, kappa) * (g0 / (g0 - 2.0)).sqrt()
}

/// `(2ω/𝒟)⁴` with `𝒟 = √2 κ`.
fn quartic(kappa: f64, omega: f64) -> f64 {
    (2.0 * omega / (std::f64::consts::SQRT_2 * kappa)).powi(4)
}

/// Amplified-quadrature gain of the matched ODBA and OIBA, `𝒢₀/(1 + (2ω/𝒟)⁴)`.
pub fn matched_transmission_gain(g0: f64, kappa: f64, omega: f64) -> f64 {
    g0 / (1.0 + quartic(kappa, omega))
}

/// Total output power of the amplified ODBA quadrature, `((2ω/𝒟)⁴ + 𝒢₀)/((2ω/𝒟)⁴ + 1)`.
pub fn odba_total_gain(g0: f64, kappa: f64, omega: f64) -> f64 {
    let x4 = quartic(kappa, omega);
    (x4 + g0) / (x4 + 1.0)
}

/// `X₁` output spectrum of the matched OIBA in shot-noise units, with thermal
/// occupations `n1`, `n2` on the two input baths.
pub fn oiba_x1_spectrum(g0: f64, kappa: f64, omega: f64, n1: f64, n2: f64) -> f64 {
    let x4 = quartic(kappa, omega);
    (x4 * (1.0 + 2.0 * n1) + (1.0 + 2.0 * n2) / g0) / (1.0 + x4)
}

/// Full width of the region where the matched OIBA `X₁` spectrum stays
/// within 3 dB of its on-resonance value, `√2 κ (𝒢₀ − 2)^{-1/4}`.
pub fn oiba_squeezing_bandwidth(g0: f64, kappa: f64) -> f64 {
    std::f64::consts::SQRT_2 * kappa * (g0 - 2.0).powf(-0.25)
}

/// Quadrature scattering matrix of the matched symmetric OIBA.
///
/// The overall phase is `arg(1 − 2y² + 2iy)` with `y = ω/κ`, taken on the
/// full circle; reflections carry a minus sign relative to it.
pub fn oiba_quadrature_matrix(r: f64, kappa: f64, omega: f64) -> DMatrix<Complex64> {
    let y = omega / kappa;
    let norm = (1.0 + 4.0 * y.powi(4)).sqrt();
    let phase = Complex64::new(1.0 - 2.0 * y * y, 2.0 * y) / norm;
    let pre = phase / norm;
    let refl = pre * (-2.0 * y * y);
    let up = pre * (2.0 * r).exp();
    let down = pre * (-(-2.0 * r).exp());
    let z = c(0.0);
    DMatrix::from_row_slice(
        4,
        4,
        &[refl, z, z, down, z, refl, up, z, z, down, refl, z, up, z, z, refl],
    )
}

/// QND amplitude gain `8G/κ`.
pub fn qnd_amplitude_gain(g: f64, kappa: f64) -> f64 {
    8.0 * g / kappa
}

/// `𝒢_Q/(1 + 4ω²/κ²)²`.
pub fn qnd_gain(g: f64, kappa: f64, omega: f64) -> f64 {
    let amp = qnd_amplitude_gain(g, kappa);
    amp * amp / (1.0 + 4.0 * omega * omega / (kappa * kappa)).powi(2)
}

/// `√(√2 − 1) κ`.
pub fn qnd_fwhm(kappa: f64) -> f64 {
    (std::f64::consts::SQRT_2 - 1.0).sqrt() * kappa
}

/// `(1/2 + n̄)/𝒢_Q`.
pub fn qnd_added_noise(g_q: f64, occupation: f64) -> f64 {
    (0.5 + occupation) / g_q
}

/// QND quadrature scattering matrix: `-e^{iφ}` on the diagonal and
/// `e^{iφ}√𝒢[ω]` from `X₂ → P₁` and `X₁ → P₂`, with `φ = 2 arg(κ + 2iω)`.
pub fn qnd_quadrature_matrix(g: f64, kappa: f64, omega: f64) -> DMatrix<Complex64> {
    let phase = Complex64::from_polar(1.0, 2.0 * Complex64::new(kappa, 2.0 * omega).arg());
    let d = -phase;
    let t = phase * qnd_gain(g, kappa, omega).sqrt();
    let z = c(0.0);
    DMatrix::from_row_slice(4, 4, &[d, z, z, z, z, d, t, z, z, z, d, z, t, z, z, d])
}

/// Reflections and transmissions of the asymmetric two-mode amplifier.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AsymmetricCoefficients {
    pub r_plus: Complex64,
    pub r_minus: Complex64,
    pub t_plus: Complex64,
    pub t_minus: Complex64,
}

/// `ℛ±[ω]`, `𝒯±[ω]` for cooperativities `𝒞ₙ = 4Gₙ²/(κ₁κ₂)`.
pub fn asymmetric_coefficients(c1: f64, c2: f64, kappa1: f64, kappa2: f64, omega: f64) -> AsymmetricCoefficients {
    let i = Complex64::i();
    let u1 = 2.0 * omega / kappa1;
    let u2 = 2.0 * omega / kappa2;
    let den = c(c2 - c1) + (1.0 - i * u1) * (1.0 - i * u2);
    let refl = |s: f64| -(c(c1 - c2) + (1.0 - s * i * u1) * (1.0 + s * i * u2)) / den;
    AsymmetricCoefficients {
        r_plus: refl(1.0),
        r_minus: refl(-1.0),
        t_plus: 2.0 * (c1.sqrt() + c2.sqrt()) / den,
        t_minus: 2.0 * (c1.sqrt() - c2.sqrt()) / den,
    }
}

/// Quadrature matrix with `ℛ₋` on the cavity-1 diagonal, `ℛ₊` on cavity 2,
/// `𝒯₊` from `X₂ → P₁` and `X₁ → P₂`, `𝒯₋` from `P₂ → X₁` and `P₁ → X₂`.
pub fn asymmetric_quadrature_matrix(c1: f64, c2: f64, kappa1: f64, kappa2: f64, omega: f64) -> DMatrix<Complex64> {
    let k = asymmetric_coefficients(c1, c2, kappa1, kappa2, omega);
    let z = c(0.0);
    DMatrix::from_row_slice(
        4,
        4,
        &[
            k.r_minus, z, z, k.t_minus, //
            z, k.r_minus, k.t_plus, z, //
            z, k.t_minus, k.r_plus, z, //
            k.t_plus, z, z, k.r_plus,
        ],
    )
}

/// On-resonance reflection `Δ𝒞/(Δ𝒞 + 2)`.
pub fn reflection_from_deviation(delta_c: f64) -> f64 {
    delta_c / (delta_c + 2.0)
}

/// Standard paramp depletion law: `(1/√𝒢)(χ⁻¹ + 𝒞)/(χ⁻¹ − 𝒞)` with
/// `𝒢 = ((1 + 𝒞)/(1 − 𝒞))²` and `χ = (1 + γ̄)⁻²`.
pub fn pa_saturation_ratio(c_coop: f64, gamma_bar: f64) -> f64 {
    let inv_chi = (1.0 + gamma_bar).powi(2);
    let amp = (1.0 + c_coop) / (1.0 - c_coop);
    (inv_chi + c_coop) / (inv_chi - c_coop) / amp
}

/// Bogoliubov amplifier depletion law: `2√χ/(χ + 1)`.
pub fn oiba_saturation_ratio(gamma_bar: f64) -> f64 {
    let root = 1.0 / (1.0 + gamma_bar);
    2.0 * root / (root * root + 1.0)
}
