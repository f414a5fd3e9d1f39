use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::quadratic::{QuadraticModel, Scatterer, Selector};

/// Number of points in [`default_grid`].
pub const DEFAULT_GRID_POINTS: usize = 2001;
/// Half-width of [`default_grid`] in units of `κ₁`.
pub const DEFAULT_GRID_HALF_WIDTH: f64 = 5.0;

const BISECTION_STEPS: usize = 200;

/// `n` uniformly spaced points from `min` to `max` inclusive.
pub fn linspace(min: f64, max: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![min],
        _ => (0..n)
            .map(|i| {
                if i == n - 1 {
                    max
                } else {
                    min + (max - min) * i as f64 / (n - 1) as f64
                }
            })
            .collect(),
    }
}

/// `n` log-spaced points from `min` to `max` inclusive (both > 0).
pub fn logspace(min: f64, max: f64, n: usize) -> Vec<f64> {
    linspace(min.ln(), max.ln(), n).into_iter().map(f64::exp).collect()
}

/// 2001 points over `[−5κ₁, 5κ₁]`.
pub fn default_grid(model: &QuadraticModel) -> Vec<f64> {
    let k = model.kappas()[0];
    linspace(-DEFAULT_GRID_HALF_WIDTH * k, DEFAULT_GRID_HALF_WIDTH * k, DEFAULT_GRID_POINTS)
}

/// Sampled power gain of one scattering element.
#[derive(Debug, Clone, Serialize)]
pub struct GainProfile {
    pub omegas: Vec<f64>,
    pub gains: Vec<f64>,
    pub source: Selector,
    #[serde(skip)]
    model: QuadraticModel,
}

impl GainProfile {
    pub fn model(&self) -> &QuadraticModel {
        &self.model
    }

    /// Gain at an arbitrary frequency, evaluated directly.
    pub fn gain_at(&self, omega: f64) -> Result<f64> {
        gain_at(&Scatterer::new(&self.model)?, &self.source, omega)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BandwidthReport {
    pub g0: f64,
    pub fwhm: f64,
    pub flatness_exponent: f64,
}

fn gain_at(scatterer: &Scatterer<'_>, selector: &Selector, omega: f64) -> Result<f64> {
    Ok(scatterer.at(omega)?.element(selector)?.norm_sqr())
}

/// `𝒢[ω] = |s_sel[ω]|²` over `omegas` (sorted on return).
pub fn gain_profile(model: &QuadraticModel, selector: Selector, omegas: &[f64]) -> Result<GainProfile> {
    selector.check(model.n_ports())?;
    let scatterer = Scatterer::new(model)?;
    let mut omegas = omegas.to_vec();
    omegas.sort_by(f64::total_cmp);
    let gains = omegas
        .par_iter()
        .map(|w| gain_at(&scatterer, &selector, *w))
        .collect::<Result<Vec<_>>>()?;
    Ok(GainProfile { omegas, gains, source: selector, model: model.clone() })
}

/// Half-maximum crossing between `inside` (gain above `half`) and `outside`.
fn bisect_crossing(
    scatterer: &Scatterer<'_>,
    selector: &Selector,
    half: f64,
    mut inside: f64,
    mut outside: f64,
) -> Result<f64> {
    for _ in 0..BISECTION_STEPS {
        let mid = 0.5 * (inside + outside);
        if mid == inside || mid == outside {
            break;
        }
        if gain_at(scatterer, selector, mid)? >= half {
            inside = mid;
        } else {
            outside = mid;
        }
    }
    Ok(0.5 * (inside + outside))
}

/// Full width at half of the zero-frequency gain, refined by bisection, and
/// the log-log slope of `𝒢₀ − 𝒢[ω]` over `ω ∈ [10⁻³κ₁, 10⁻²κ₁]`.
pub fn fwhm_bandwidth(profile: &GainProfile) -> Result<BandwidthReport> {
    let scatterer = Scatterer::new(&profile.model)?;
    let selector = profile.source;
    let g0 = gain_at(&scatterer, &selector, 0.0)?;
    if !(g0 > 1.0) {
        return Err(Error::NoAmplification(g0));
    }
    let half = 0.5 * g0;
    let pts = profile.omegas.iter().zip(&profile.gains);

    // First grid point beyond half-max on each side, walking outward from ω = 0.
    let right = pts
        .clone()
        .filter(|(w, _)| **w > 0.0)
        .scan(0.0, |last, (w, g)| {
            let inside = *last;
            *last = *w;
            Some((inside, *w, *g))
        })
        .find(|(_, _, g)| *g < half);
    let left = pts
        .rev()
        .filter(|(w, _)| **w < 0.0)
        .scan(0.0, |last, (w, g)| {
            let inside = *last;
            *last = *w;
            Some((inside, *w, *g))
        })
        .find(|(_, _, g)| *g < half);
    let (Some((ri, ro, _)), Some((li, lo, _))) = (right, left) else {
        return Err(Error::GridTooNarrow("half maximum not bracketed on both sides".into()));
    };
    let upper = bisect_crossing(&scatterer, &selector, half, ri, ro)?;
    let lower = bisect_crossing(&scatterer, &selector, half, li, lo)?;

    let kappa = profile.model.kappas()[0];
    let fit_omegas = logspace(1e-3 * kappa, 1e-2 * kappa, 11);
    let mut xs = Vec::with_capacity(fit_omegas.len());
    let mut ys = Vec::with_capacity(fit_omegas.len());
    for w in fit_omegas {
        let drop = (g0 - gain_at(&scatterer, &selector, w)?).abs();
        if drop > 0.0 {
            xs.push(w.ln());
            ys.push(drop.ln());
        }
    }
    Ok(BandwidthReport { g0, fwhm: upper - lower, flatness_exponent: slope(&xs, &ys) })
}

/// Least-squares slope; NaN with fewer than two points.
pub(crate) fn slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    if xs.len() < 2 {
        return f64::NAN;
    }
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    sxy / sxx
}
