//! Acceptance criteria 1–9. Runs without the libtest harness so every
//! criterion prints one PASS/FAIL line; exits non-zero if any fails.

use std::f64::consts::{FRAC_PI_4, SQRT_2};
use std::process::Command;
use std::time::Instant;

use bogoamp::analysis::{
    added_noise, default_grid, fwhm_bandwidth, gain_profile, linspace, logspace, purity_occupancy,
    reflection_on_resonance, squeezing_bandwidth, squeezing_spectrum,
};
use bogoamp::closed_form as cf;
use bogoamp::depletion::*;
use bogoamp::models::*;
use bogoamp::quadratic::{scattering_matrix, Quadrature, Selector};
use bogoamp::verify::{draw_stable, FAMILIES};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

fn require(ok: bool, msg: String) -> Outcome {
    if ok {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn check(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn e(err: bogoamp::Error) -> String {
    err.to_string()
}

fn dpa_gain_law() -> Outcome {
    let q = Quadrature::at(0, -FRAC_PI_4);
    let sel = Selector::quadrature(q, q);
    let mut worst = 0.0f64;
    for nu in [0.1, 0.3, 0.45] {
        let m = make_dpa(&DpaParams { delta: 0.0, nu, kappa: 1.0 }).map_err(e)?;
        let p = gain_profile(&m, sel, &default_grid(&m)).map_err(e)?;
        for (w, g) in p.omegas.iter().zip(&p.gains) {
            worst = worst.max(rel(*g, cf::dpa_gain(nu, 1.0, *w)));
        }
    }
    check(worst < 1e-9, format!("gain law rel err {worst:.2e}"))?;
    let m = make_dpa(&DpaParams::resonant_for_gain(1.0, 40.0).map_err(e)?).map_err(e)?;
    let r = fwhm_bandwidth(&gain_profile(&m, sel, &linspace(-0.5, 0.5, 2001)).map_err(e)?).map_err(e)?;
    check(rel(r.g0, 1e4) < 1e-9, format!("𝒢₀ = {}", r.g0))?;
    let product = r.fwhm * r.g0.sqrt();
    require(
        (1.9..=2.0).contains(&product),
        format!("rel err {worst:.2e} < 1e-9 over [−5κ, 5κ]; D·√𝒢₀ = {product:.5} at 𝒢₀ = 1e4"),
    )
}

fn odba() -> Outcome {
    let mut detail = Vec::new();
    for db in [10.0, 20.0, 30.0] {
        let sol = make_odba_for_gain(1.0, db).map_err(e)?;
        let m = sol.model().map_err(e)?;
        let r = fwhm_bandwidth(&gain_profile(&m, sol.gain_selector(), &default_grid(&m)).map_err(e)?).map_err(e)?;
        let d = AmplifierParams::Dpa(DpaParams::resonant_for_gain(1.0, db).map_err(e)?);
        let dm = d.model().map_err(e)?;
        let dr = fwhm_bandwidth(&gain_profile(&dm, d.gain_selector(), &linspace(-1.0, 1.0, 2001)).map_err(e)?)
            .map_err(e)?;
        let res = sol.matching_residual().abs();
        check(rel(r.g0, db_to_linear(db)) < 1e-9, format!("{db} dB: 𝒢₀ = {}", r.g0))?;
        check(rel(r.fwhm, SQRT_2) < 0.01, format!("{db} dB: FWHM = {}", r.fwhm))?;
        check((r.flatness_exponent - 4.0).abs() < 0.1, format!("{db} dB: exponent {}", r.flatness_exponent))?;
        check(
            (dr.flatness_exponent - 2.0).abs() < 0.1,
            format!("{db} dB: DPA exponent {}", dr.flatness_exponent),
        )?;
        check(res < 1e-12, format!("{db} dB: residual {res:.2e}"))?;
        detail.push(format!("{db} dB: p = {:.3} (DPA {:.3})", r.flatness_exponent, dr.flatness_exponent));
    }
    Ok(format!("FWHM = √2κ, {}", detail.join(", ")))
}

fn oiba() -> Outcome {
    let mut widths = Vec::new();
    let mut worst_refl = 0.0f64;
    for db in [10.0, 20.0, 30.0] {
        let sol = make_oiba_for_gain(1.0, 1.0, db, MatchCondition::Impedance).map_err(e)?;
        let m = sol.model().map_err(e)?;
        let refl = reflection_on_resonance(&m).map_err(e)?;
        worst_refl = worst_refl.max(refl);
        check(refl < 1e-10, format!("{db} dB: reflection {refl:.2e}"))?;
        let q = scattering_matrix(&m, 0.0).map_err(e)?.quadrature_matrix();
        let r = sol.squeeze_r;
        let (up, down) = ((2.0 * r).exp(), (-2.0 * r).exp());
        check(rel(q[(1, 2)].norm_sqr(), (4.0 * r).exp()) < 1e-9, format!("{db} dB: 𝒢₀ ≠ e^{{4r}}"))?;
        // Zero diagonal, P₁←X₂ and P₂←X₁ carry +e^{2r}, X₁←P₂ and X₂←P₁ carry −e^{−2r}.
        let mut expected = nalgebra::DMatrix::<f64>::zeros(4, 4);
        expected[(1, 2)] = up;
        expected[(3, 0)] = up;
        expected[(0, 3)] = -down;
        expected[(2, 1)] = -down;
        let worst = q.iter().zip(expected.iter()).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
        check(worst < 1e-9, format!("{db} dB: s[0] deviates by {worst:.2e}"))?;
        let fw = fwhm_bandwidth(&gain_profile(&m, sol.gain_selector(), &default_grid(&m)).map_err(e)?).map_err(e)?;
        widths.push(fw.fwhm);
    }
    let mean = widths.iter().sum::<f64>() / 3.0;
    let spread = widths.iter().map(|w| rel(*w, mean)).fold(0.0, f64::max);
    require(
        spread < 0.01 && rel(mean, SQRT_2) < 0.01,
        format!("max reflection {worst_refl:.1e}; FWHM {mean:.6} spread {spread:.1e} over 𝒢₀ ∈ {{10, 100, 1000}}"),
    )
}

fn symplectic() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let (mut bogo, mut ph) = (0.0f64, 0.0f64);
    for family in 0..FAMILIES.len() {
        for _ in 0..25 {
            let m = draw_stable(family, &mut rng).map_err(e)?;
            for w in linspace(-2.5, 2.5, 11) {
                let s = scattering_matrix(&m, w).map_err(e)?;
                let sm = scattering_matrix(&m, -w).map_err(e)?;
                bogo = bogo.max(s.bogoliubov_residual());
                ph = ph.max(s.particle_hole_residual(&sm));
            }
        }
    }
    require(
        bogo < 1e-10 && ph < 1e-10,
        format!("{} families × 25 draws × 11 ω: ‖sτ₃s†−τ₃‖ {bogo:.1e}, ‖s−τ₁s*τ₁‖ {ph:.1e}", FAMILIES.len()),
    )
}

fn squeezing() -> Outcome {
    let mut detail = Vec::new();
    for db in [20.0, 30.0] {
        let g0 = db_to_linear(db);
        let sol = make_oiba_for_gain(1.0, 1.0, db, MatchCondition::Impedance).map_err(e)?;
        let m = sol.model().map_err(e)?;
        let spec = squeezing_spectrum(&m, &default_grid(&m)).map_err(e)?;
        let worst = spec
            .iter()
            .map(|p| rel(p.value, cf::oiba_x1_spectrum(g0, 1.0, p.omega, 0.0, 0.0)))
            .fold(0.0, f64::max);
        check(worst < 1e-9, format!("{db} dB: spectrum rel err {worst:.2e}"))?;
        let bw = squeezing_bandwidth(&m, &spec).map_err(e)?;
        let dev = rel(bw, SQRT_2 * g0.powf(-0.25));
        check(dev < 0.05, format!("{db} dB: 𝒟_sq off by {dev:.3}"))?;
        for n2 in [0.0, 2.0] {
            let n = purity_occupancy(&m, n2).map_err(e)?;
            check((n - n2).abs() < 1e-9, format!("{db} dB: n̄_eff = {n} for n̄₂ = {n2}"))?;
        }
        detail.push(format!("𝒢₀ = {g0}: 𝒟_sq dev {:.1}%", 100.0 * dev));
    }
    Ok(format!("spectrum and purity to 1e-9, {}", detail.join(", ")))
}

fn qnd() -> Outcome {
    for g in [0.2, 0.5, 1.0] {
        let a = AmplifierParams::Qnd { g, kappa: 1.0 };
        let m = a.model().map_err(e)?;
        let r = fwhm_bandwidth(&gain_profile(&m, a.gain_selector(), &default_grid(&m)).map_err(e)?).map_err(e)?;
        let gq = (8.0 * g).powi(2);
        check(rel(r.g0, gq) < 1e-9, format!("G = {g}: 𝒢_Q = {}", r.g0))?;
        check(rel(r.fwhm, (SQRT_2 - 1.0).sqrt()) < 1e-6, format!("G = {g}: FWHM = {}", r.fwhm))?;
        for n in [0.0, 3.0] {
            let hot = m.clone().with_thermal_occupation(0, n).map_err(e)?;
            let rep = added_noise(&hot, a.gain_selector()).map_err(e)?;
            let want = (0.5 + n) / gq;
            check(rel(rep.added_photons, want) < 1e-9, format!("G = {g}, n̄ = {n}: n̄_add = {}", rep.added_photons))?;
        }
    }
    Ok("𝒢_Q, FWHM and n̄_add for G/κ ∈ {0.2, 0.5, 1}, n̄ᵀ ∈ {0, 3}".into())
}

fn asymmetric() -> Outcome {
    let mut worst = 0.0f64;
    for ratio in [1.0, 0.8, 0.5] {
        for (g1, g2) in [(0.2, 0.5), (0.9, 1.0), (0.6, 0.62)] {
            let p = OibaParams { g1, g2, kappa1: 1.0, kappa2: ratio, pump_phases: [0.0, 0.0] };
            let (c1, c2) = p.cooperativities();
            let m = make_oiba(&p).map_err(e)?;
            for w in linspace(-2.0, 2.0, 9) {
                let q = scattering_matrix(&m, w).map_err(e)?.quadrature_matrix();
                let k = cf::asymmetric_coefficients(c1, c2, 1.0, ratio, w);
                let pairs = [
                    (q[(0, 0)], k.r_minus),
                    (q[(1, 1)], k.r_minus),
                    (q[(2, 2)], k.r_plus),
                    (q[(3, 3)], k.r_plus),
                    (q[(1, 2)], k.t_plus),
                    (q[(3, 0)], k.t_plus),
                    (q[(0, 3)], k.t_minus),
                    (q[(2, 1)], k.t_minus),
                ];
                for (a, b) in pairs {
                    let scale = b.norm().max(1e-3 * k.t_plus.norm());
                    worst = worst.max((a - b).norm() / scale);
                }
            }
        }
    }
    check(worst < 1e-9, format!("ℛ±/𝒯± rel err {worst:.2e}"))?;
    let mut gaps = Vec::new();
    for ratio in [0.8, 0.5] {
        let sol = make_oiba_for_gain(1.0, ratio, 20.0, MatchCondition::Impedance).map_err(e)?;
        let refl = reflection_on_resonance(&sol.model().map_err(e)?).map_err(e)?;
        check(refl < 1e-10, format!("κ₂ = {ratio}: matched reflection {refl:.2e}"))?;
    }
    for ratio in [1.0, 0.8, 0.5] {
        let gap = (MatchCondition::Impedance.hopping_energy(1.0, ratio)
            - MatchCondition::Imbalance.hopping_energy(1.0, ratio))
        .abs();
        gaps.push(gap);
    }
    require(
        gaps[0] < 1e-12 && gaps[1] > 1e-3 && gaps[2] > 1e-3,
        format!("rel err {worst:.1e}; condition gap {:.1e} (κ₂=κ₁) vs {:.1e}, {:.1e}", gaps[0], gaps[1], gaps[2]),
    )
}

fn depletion() -> Outcome {
    let direction = SignalInput::x(1.0, InputPort::Cavity2);
    let mut small_signal = Vec::new();
    for scheme in [PumpScheme::Oiba, PumpScheme::StandardPa] {
        let p = PumpParams::reference(scheme);
        let n = p.reference_photons();
        let mut last = f64::INFINITY;
        for x in logspace(1e-6 * n, 1e1 * n, 60) {
            let s = solve_selfconsistent(&p, &direction.with_power(x)).map_err(e)?;
            check(s.converged && s.iterations < 10_000, format!("{scheme:?} did not converge at {x:.3e}"))?;
            check(s.g_eff_db <= last + 1e-12, format!("{scheme:?} gain rises at {x:.3e}"))?;
            last = s.g_eff_db;
            let ratio = (db_to_linear(s.g_eff_db) / db_to_linear(p.target_gain_db)).sqrt();
            match scheme {
                PumpScheme::StandardPa => {
                    let (c, _) = p.cooperativities();
                    let law = saturation_law_pa(c, s.gamma_bar[0]).map_err(e)?;
                    check((ratio - law).abs() < 1e-6, format!("PA law mismatch {:.2e}", (ratio - law).abs()))?;
                }
                PumpScheme::Oiba => {
                    let gb = 0.5 * (s.gamma_bar[0] + s.gamma_bar[1]);
                    if gb <= 0.1 {
                        small_signal.push((gb, ratio));
                    }
                }
            }
        }
    }
    let oiba = compression_point(&PumpParams::reference(PumpScheme::Oiba), &direction).map_err(e)?;
    let pa = compression_point(&PumpParams::reference(PumpScheme::StandardPa), &direction).map_err(e)?;
    check(oiba.input_power > pa.input_power, "OIBA compresses before PA")?;

    // Closed-form law: the gain reduction itself tracks γ̄²/2.
    for gb in linspace(0.005, 0.1, 20) {
        let reduction = 1.0 - saturation_law_oiba(gb);
        check(rel(reduction, 0.5 * gb * gb) < 0.1, format!("law reduction at γ̄ = {gb}: {reduction:.3e}"))?;
    }
    // Self-consistent solve: √(𝒢_eff/𝒢₀) against 1 − γ̄²/2.
    let (mut worst, mut at) = (0.0f64, (0.0, 0.0));
    for (gb, ratio) in &small_signal {
        let d = rel(*ratio, 1.0 - 0.5 * gb * gb);
        if d > worst {
            worst = d;
            at = (*gb, *ratio);
        }
    }
    check(!small_signal.is_empty(), "no small-signal points")?;
    check(worst < 0.1, format!("OIBA small-signal ratio off by {worst:.3}"))?;
    Ok(format!(
        "60-pt grids converge, monotone; PA law to 1e-6; compression OIBA {:.4e} > PA {:.4e} ({:.1} dB); \
         small-signal worst {:.1}% at γ̄ = {:.3} (ratio {:.4} vs {:.4})",
        oiba.input_power,
        pa.input_power,
        10.0 * (oiba.input_power / pa.input_power).log10(),
        100.0 * worst,
        at.0,
        at.1,
        1.0 - 0.5 * at.0 * at.0
    ))
}

fn bogoamp(args: &[&str], threads: Option<&str>) -> Result<std::process::Output, String> {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_bogoamp"));
    cmd.args(args);
    if let Some(t) = threads {
        cmd.env("BOGOAMP_THREADS", t);
    }
    cmd.output().map_err(|err| err.to_string())
}

fn cli() -> Outcome {
    let out = bogoamp(&["verify"], None)?;
    check(
        out.status.code() == Some(0),
        format!("verify exited {:?}:\n{}", out.status.code(), String::from_utf8_lossy(&out.stdout)),
    )?;
    let perturbed = bogoamp(&["verify", "--perturb-convention"], None)?;
    check(perturbed.status.code() != Some(0), "perturbed convention still passes")?;

    let dir = tempfile::tempdir().map_err(|err| err.to_string())?;
    let config = dir.path().join("run.toml");
    std::fs::write(&config, "model = \"odba\"\ngain_db = 20\n[sweep]\nomega_min = -4\nomega_max = 4\npoints = 401\n")
        .map_err(|err| err.to_string())?;
    let config = config.to_str().unwrap();
    let runs: [(&str, &[&str]); 3] = [
        ("gain", &["gain-sweep", "--config", config, "--compare", "dpa"]),
        ("squeeze", &["squeeze-sweep", "--db-points", "9", "--db-max", "40"]),
        ("depletion", &["depletion", "--power-points", "20"]),
    ];
    for (name, args) in runs {
        let mut files = Vec::new();
        for (i, threads) in [Some("1"), Some("4")].into_iter().enumerate() {
            let path = dir.path().join(format!("{name}{i}.csv"));
            let mut full = args.to_vec();
            full.extend(["--out", path.to_str().unwrap()]);
            let o = bogoamp(&full, threads)?;
            check(o.status.success(), format!("{name}: {}", String::from_utf8_lossy(&o.stderr)))?;
            files.push(std::fs::read(&path).map_err(|err| err.to_string())?);
        }
        check(files[0] == files[1], format!("{name}: outputs differ"))?;
    }
    Ok("verify exits 0 (perturbed: non-zero); gain, squeeze and depletion files byte-identical".into())
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("DPA gain law", dpa_gain_law),
        ("ODBA flat gain", odba),
        ("OIBA matching", oiba),
        ("symplectic suite", symplectic),
        ("squeezing", squeezing),
        ("QND", qnd),
        ("asymmetric decay", asymmetric),
        ("pump depletion", depletion),
        ("verify and determinism", cli),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = run();
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("PASS {} {name} ({secs:.2} s): {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {} {name} ({secs:.2} s): {detail}", i + 1)
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
