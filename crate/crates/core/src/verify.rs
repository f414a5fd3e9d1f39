//! Cross-module invariant suite: numeric scattering against closed forms,
//! symplectic identities and matching residuals.
//!
//! [`run_suite`] evaluates every check and never stops at the first failure.
//! With [`VerifyOptions::perturb_convention`] the scatterer uses the wrong
//! sign of the input-output relation, which must make the suite fail.

use std::f64::consts::{FRAC_PI_4, SQRT_2};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::analysis::{default_grid, fwhm_bandwidth, gain_profile, linspace, squeezing_bandwidth, squeezing_spectrum};
use crate::closed_form as cf;
use crate::error::Result;
use crate::models::*;
use crate::quadratic::{
    spectrum_from_scattering, stability, HamiltonianBuilder, IoConvention, Quadrature, QuadraticModel, Scatterer,
    ScatteringMatrix, Selector, SHOT_NOISE,
};

/// Random parameter draws per family in the symplectic check.
pub const DRAWS_PER_FAMILY: usize = 25;
/// Tolerance of the symplectic and particle-hole identities.
pub const SYMPLECTIC_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyOptions {
    pub perturb_convention: bool,
    pub seed: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self { perturb_convention: false, seed: 0x5eed }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckResult {
    pub id: u32,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

struct Ctx {
    convention: IoConvention,
    seed: u64,
}

impl Ctx {
    fn at(&self, model: &QuadraticModel, omega: f64) -> Result<ScatteringMatrix> {
        Scatterer::with_convention(model, self.convention)?.at(omega)
    }

    fn gain(&self, model: &QuadraticModel, selector: &Selector, omega: f64) -> Result<f64> {
        Ok(self.at(model, omega)?.element(selector)?.norm_sqr())
    }
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

/// Tracks the worst value of one named quantity against its bound.
struct Worst {
    label: &'static str,
    value: f64,
    bound: f64,
}

impl Worst {
    fn new(label: &'static str, bound: f64) -> Self {
        Self { label, value: 0.0, bound }
    }

    fn update(&mut self, v: f64) {
        // NaN must fail the check.
        if v.is_nan() || v > self.value {
            self.value = if v.is_nan() { f64::INFINITY } else { v };
        }
    }

    fn ok(&self) -> bool {
        self.value < self.bound
    }

    fn describe(&self) -> String {
        format!("{} {:.3e} (< {:.0e})", self.label, self.value, self.bound)
    }
}

fn summarize(id: u32, name: &'static str, result: Result<(bool, String)>) -> CheckResult {
    match result {
        Ok((passed, detail)) => CheckResult { id, name, passed, detail },
        Err(e) => CheckResult { id, name, passed: false, detail: format!("error: {e}") },
    }
}

fn join(parts: &[&Worst]) -> (bool, String) {
    let passed = parts.iter().all(|w| w.ok());
    (passed, parts.iter().map(|w| w.describe()).collect::<Vec<_>>().join("; "))
}

fn dpa_gain_law(ctx: &Ctx) -> Result<(bool, String)> {
    let mut law = Worst::new("max rel err", 1e-9);
    let q = Quadrature::at(0, -FRAC_PI_4);
    let sel = Selector::quadrature(q, q);
    for nu in [0.1, 0.3, 0.45] {
        let m = make_dpa(&DpaParams { delta: 0.0, nu, kappa: 1.0 })?;
        for w in linspace(-5.0, 5.0, 401) {
            law.update(rel(ctx.gain(&m, &sel, w)?, cf::dpa_gain(nu, 1.0, w)));
        }
    }
    let p = DpaParams::resonant_for_gain(1.0, 40.0)?;
    let m = make_dpa(&p)?;
    let g0 = ctx.gain(&m, &sel, 0.0)?;
    let r = fwhm_bandwidth(&gain_profile(&m, sel, &linspace(-0.5, 0.5, 2001))?)?;
    let product = r.fwhm * g0.sqrt();
    let (passed, detail) = join(&[&law]);
    let in_range = (1.9..=2.0).contains(&product);
    Ok((passed && in_range, format!("{detail}; D·√𝒢₀ = {product:.6} at 40 dB (in [1.9, 2.0])")))
}

fn odba(ctx: &Ctx) -> Result<(bool, String)> {
    let mut g0_err = Worst::new("𝒢₀ rel err", 1e-9);
    let mut width = Worst::new("FWHM/√2 − 1", 1e-2);
    let mut flat = Worst::new("|p − 4|", 0.1);
    let mut dpa_flat = Worst::new("DPA |p − 2|", 0.1);
    let mut residual = Worst::new("matching residual", 1e-12);
    for db in [10.0, 20.0, 30.0] {
        let sol = make_odba_for_gain(1.0, db)?;
        let m = sol.model()?;
        let sel = sol.gain_selector();
        g0_err.update(rel(ctx.gain(&m, &sel, 0.0)?, db_to_linear(db)));
        let r = fwhm_bandwidth(&gain_profile(&m, sel, &default_grid(&m))?)?;
        width.update(rel(r.fwhm, SQRT_2));
        flat.update((r.flatness_exponent - 4.0).abs());
        residual.update(sol.matching_residual().abs());

        let p = DpaParams::resonant_for_gain(1.0, db)?;
        let a = AmplifierParams::Dpa(p);
        let dm = a.model()?;
        let r = fwhm_bandwidth(&gain_profile(&dm, a.gain_selector(), &linspace(-1.0, 1.0, 2001))?)?;
        dpa_flat.update((r.flatness_exponent - 2.0).abs());
    }
    Ok(join(&[&g0_err, &width, &flat, &dpa_flat, &residual]))
}

fn oiba(ctx: &Ctx) -> Result<(bool, String)> {
    let mut refl = Worst::new("|reflection|", 1e-10);
    let mut g0_err = Worst::new("𝒢₀ rel err", 1e-9);
    let mut matrix = Worst::new("s[0] elementwise", 1e-9);
    let mut widths = Vec::new();
    for db in [10.0, 20.0, 30.0] {
        let sol = make_oiba_for_gain(1.0, 1.0, db, MatchCondition::Impedance)?;
        let m = sol.model()?;
        let q = ctx.at(&m, 0.0)?.quadrature_matrix();
        for k in 0..4 {
            refl.update(q[(k, k)].norm());
        }
        let expected = cf::oiba_quadrature_matrix(sol.squeeze_r, 1.0, 0.0);
        for (a, b) in q.iter().zip(expected.iter()) {
            matrix.update((a - b).norm());
        }
        g0_err.update(rel(q[(1, 2)].norm_sqr(), (4.0 * sol.squeeze_r).exp()));
        let r = fwhm_bandwidth(&gain_profile(&m, sol.gain_selector(), &default_grid(&m))?)?;
        widths.push(r.fwhm);
    }
    let mean = widths.iter().sum::<f64>() / widths.len() as f64;
    let mut spread = Worst::new("FWHM spread", 1e-2);
    for w in &widths {
        spread.update(rel(*w, mean));
    }
    Ok(join(&[&refl, &g0_err, &spread, &matrix]))
}

fn random_model(family: usize, rng: &mut ChaCha8Rng) -> Result<QuadraticModel> {
    let kappa = rng.random_range(0.5..2.0);
    let phase = |rng: &mut ChaCha8Rng| rng.random_range(-std::f64::consts::PI..std::f64::consts::PI);
    match family {
        0 => HamiltonianBuilder::new(1)
            .detuning(0, rng.random_range(-2.0..2.0))
            .single_mode_squeezing(0, Complex64::from_polar(rng.random_range(0.0..2.0), phase(rng)))
            .build(vec![kappa]),
        1 => make_odba_for_gain(kappa, rng.random_range(0.0..30.0))?.model(),
        2 => make_oiba(&OibaParams {
            g1: rng.random_range(0.0..1.5),
            g2: rng.random_range(0.0..1.5),
            kappa1: kappa,
            kappa2: rng.random_range(0.5..2.0),
            pump_phases: [phase(rng), phase(rng)],
        }),
        3 => make_qnd(rng.random_range(0.0..1.5), kappa),
        4 => make_detuned_two_mode(rng.random_range(0.0..2.0), rng.random_range(0.0..2.0), kappa),
        5 => make_imbalanced(
            rng.random_range(0.0..1.5),
            rng.random_range(0.0..1.5),
            kappa,
            ImbalancedSqueezing::Local,
        ),
        _ => HamiltonianBuilder::new(1)
            .detuning(0, rng.random_range(-2.0..2.0))
            .single_mode_squeezing(0, Complex64::from_polar(rng.random_range(0.0..1.0), phase(rng)))
            .build(vec![kappa])?
            .with_internal_loss(0, rng.random_range(0.0..0.5), rng.random_range(0.0..3.0))?
            .with_thermal_occupation(0, rng.random_range(0.0..3.0)),
    }
}

/// Family names for [`random_model`], in order.
pub const FAMILIES: [&str; 7] = ["dpa", "odba", "oiba", "qnd", "detuned2", "imbalanced_local", "dpa_lossy"];

/// Draws a stable member of `family`, keeping a margin of `0.05·κ_min` from
/// the stability boundary so that gains stay finite.
pub fn draw_stable(family: usize, rng: &mut ChaCha8Rng) -> Result<QuadraticModel> {
    loop {
        let m = random_model(family, rng)?;
        let kmin = m.kappas().iter().cloned().fold(f64::INFINITY, f64::min);
        if stability(&m).max_real_part < -0.05 * kmin {
            return Ok(m);
        }
    }
}

fn symplectic(ctx: &Ctx) -> Result<(bool, String)> {
    let mut rng = ChaCha8Rng::seed_from_u64(ctx.seed);
    let mut bogo = Worst::new("‖sτ₃s† − τ₃‖", SYMPLECTIC_TOL);
    let mut ph = Worst::new("‖s − τ₁s*τ₁‖", SYMPLECTIC_TOL);
    let grid = linspace(-3.0, 3.0, 11);
    for family in 0..FAMILIES.len() {
        for _ in 0..DRAWS_PER_FAMILY {
            let m = draw_stable(family, &mut rng)?;
            for w in &grid {
                let s = ctx.at(&m, *w)?;
                bogo.update(s.bogoliubov_residual());
                ph.update(s.particle_hole_residual(&ctx.at(&m, -w)?));
            }
        }
    }
    let (passed, detail) = join(&[&bogo, &ph]);
    Ok((passed, format!("{} families × {DRAWS_PER_FAMILY} draws: {detail}", FAMILIES.len())))
}

fn squeezing(ctx: &Ctx) -> Result<(bool, String)> {
    let mut spectrum = Worst::new("spectrum rel err", 1e-9);
    let mut width = Worst::new("𝒟_sq rel dev", 0.05);
    let mut purity = Worst::new("|n̄_eff − n̄₂|", 1e-9);
    for db in [20.0, 30.0] {
        let g0 = db_to_linear(db);
        let sol = make_oiba_for_gain(1.0, 1.0, db, MatchCondition::Impedance)?;
        let m = sol.model()?;
        let occ = m.port_occupations();
        for w in default_grid(&m) {
            let v = spectrum_from_scattering(&ctx.at(&m, w)?, &occ, Quadrature::x(0))?;
            spectrum.update(rel(v, cf::oiba_x1_spectrum(g0, 1.0, w, 0.0, 0.0)));
        }
        let bw = squeezing_bandwidth(&m, &squeezing_spectrum(&m, &default_grid(&m))?)?;
        width.update(rel(bw, SQRT_2 * g0.powf(-0.25)));
        for n2 in [0.0, 2.0] {
            let hot = m.clone().with_thermal_occupation(1, n2)?;
            let hocc = hot.port_occupations();
            let s = ctx.at(&hot, 0.0)?;
            let sx = spectrum_from_scattering(&s, &hocc, Quadrature::x(0))? * SHOT_NOISE;
            let sp = spectrum_from_scattering(&s, &hocc, Quadrature::p(0))? * SHOT_NOISE;
            purity.update(((sx * sp).sqrt() - 0.5 - n2).abs());
        }
    }
    Ok(join(&[&spectrum, &width, &purity]))
}

fn qnd(ctx: &Ctx) -> Result<(bool, String)> {
    let mut gain = Worst::new("𝒢_Q rel err", 1e-9);
    let mut width = Worst::new("FWHM rel err", 1e-6);
    let mut noise = Worst::new("n̄_add rel err", 1e-9);
    for g in [0.2, 0.5, 1.25] {
        let a = AmplifierParams::Qnd { g, kappa: 1.0 };
        let m = a.model()?;
        let sel = a.gain_selector();
        let g_q = ctx.gain(&m, &sel, 0.0)?;
        gain.update(rel(g_q, cf::qnd_amplitude_gain(g, 1.0).powi(2)));
        let r = fwhm_bandwidth(&gain_profile(&m, sel, &default_grid(&m))?)?;
        width.update(rel(r.fwhm, cf::qnd_fwhm(1.0)));
        for n in [0.0, 3.0] {
            let hot = m.clone().with_thermal_occupation(0, n)?;
            let s = ctx.at(&hot, 0.0)?;
            let Selector::Quadrature { out, input } = sel else { unreachable!() };
            let total = spectrum_from_scattering(&s, &hot.port_occupations(), out)? * SHOT_NOISE;
            let gq = s.quadrature_element(out, input).norm_sqr();
            let added = (total - 0.5 * gq) / gq;
            noise.update(rel(added, cf::qnd_added_noise(gq, n)));
        }
    }
    Ok(join(&[&gain, &width, &noise]))
}

fn asymmetric(ctx: &Ctx) -> Result<(bool, String)> {
    let mut matrix = Worst::new("ℛ±/𝒯± rel err", 1e-9);
    let mut refl = Worst::new("matched |reflection|", 1e-10);
    let mut coincide = Worst::new("κ₁=κ₂ condition gap", 1e-12);
    let mut min_gap = f64::INFINITY;
    for ratio in [1.0, 0.8, 0.5] {
        for (g1, g2) in [(0.3, 0.6), (1.1, 1.2), (0.0, 0.4)] {
            let p = OibaParams { g1, g2, kappa1: 1.0, kappa2: ratio, pump_phases: [0.0, 0.0] };
            let (c1, c2) = p.cooperativities();
            let m = make_oiba(&p)?;
            for w in [0.0, 0.15, 0.6, -0.9, 2.0] {
                let q = ctx.at(&m, w)?.quadrature_matrix();
                let e = cf::asymmetric_quadrature_matrix(c1, c2, 1.0, ratio, w);
                let scale = e.iter().map(|z| z.norm()).fold(0.0, f64::max);
                for (a, b) in q.iter().zip(e.iter()) {
                    matrix.update((a - b).norm() / b.norm().max(1e-3 * scale));
                }
            }
        }
        let sol = make_oiba_for_gain(1.0, ratio, 20.0, MatchCondition::Impedance)?;
        let q = ctx.at(&sol.model()?, 0.0)?.quadrature_matrix();
        for k in 0..4 {
            refl.update(q[(k, k)].norm());
        }
        let gap = (MatchCondition::Impedance.hopping_energy(1.0, ratio)
            - MatchCondition::Imbalance.hopping_energy(1.0, ratio))
        .abs();
        if ratio == 1.0 {
            coincide.update(gap);
        } else {
            min_gap = min_gap.min(gap);
        }
    }
    let (passed, detail) = join(&[&matrix, &refl, &coincide]);
    Ok((passed && min_gap > 1e-3, format!("{detail}; κ₁≠κ₂ gap {min_gap:.3e} (> 1e-3)")))
}

type Check = fn(&Ctx) -> Result<(bool, String)>;

const CHECKS: [(&str, Check); 7] = [
    ("dpa gain law", dpa_gain_law),
    ("odba flat gain", odba),
    ("oiba matching", oiba),
    ("symplectic suite", symplectic),
    ("squeezing", squeezing),
    ("qnd", qnd),
    ("asymmetric decay", asymmetric),
];

/// Runs every check in order.
pub fn run_suite(options: &VerifyOptions) -> Vec<CheckResult> {
    let ctx = Ctx {
        convention: if options.perturb_convention { IoConvention::Flipped } else { IoConvention::Standard },
        seed: options.seed,
    };
    CHECKS
        .iter()
        .enumerate()
        .map(|(i, (name, check))| summarize(i as u32 + 1, name, check(&ctx)))
        .collect()
}
