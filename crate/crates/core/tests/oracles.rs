//! Numeric scattering against analytic results.

use std::f64::consts::{FRAC_PI_4, SQRT_2};

use bogoamp::analysis::{
    added_noise, default_grid, fwhm_bandwidth, gain_profile, linspace, purity_occupancy, quadrature_spectrum,
    reflection_on_resonance, squeezed_quadrature, squeezing_bandwidth, squeezing_spectrum,
};
use bogoamp::closed_form as cf;
use bogoamp::models::*;
use bogoamp::quadratic::{scattering_matrix, stability, Quadrature, Selector};

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

#[test]
fn dpa_gain_law_over_band() {
    for nu in [0.1, 0.3, 0.45] {
        let m = make_dpa(&DpaParams { delta: 0.0, nu, kappa: 1.0 }).unwrap();
        let q = Quadrature::at(0, -FRAC_PI_4);
        let p = gain_profile(&m, Selector::quadrature(q, q), &linspace(-5.0, 5.0, 401)).unwrap();
        for (w, g) in p.omegas.iter().zip(&p.gains) {
            assert!(rel(*g, cf::dpa_gain(nu, 1.0, *w)) < 1e-9, "ν={nu} ω={w}");
        }
    }
}

#[test]
fn dpa_sixteen_at_point_three() {
    let a = AmplifierParams::Dpa(DpaParams { delta: 0.0, nu: 0.3, kappa: 1.0 });
    let s = scattering_matrix(&a.model().unwrap(), 0.0).unwrap();
    assert!(rel(s.element(&a.gain_selector()).unwrap().norm_sqr(), 16.0) < 1e-12);
}

#[test]
fn dpa_gain_bandwidth_product() {
    let mut last = 0.0;
    for db in [20.0, 30.0, 40.0] {
        let p = DpaParams::resonant_for_gain(1.0, db).unwrap();
        let a = AmplifierParams::Dpa(p);
        let m = a.model().unwrap();
        let g0 = db_to_linear(db);
        let grid = linspace(-0.5, 0.5, 2001);
        let r = fwhm_bandwidth(&gain_profile(&m, a.gain_selector(), &grid).unwrap()).unwrap();
        let product = r.fwhm * g0.sqrt();
        assert!((1.8..=2.0).contains(&product), "{db} dB: {product}");
        assert!(product > last);
        last = product;
        assert!(rel(r.fwhm, cf::dpa_fwhm(g0, 1.0)) < 1e-9);
        // The fit decade [1e-3κ, 1e-2κ] leaves the quadratic regime once D ≈ 2κ/√𝒢₀ nears it.
        if db <= 30.0 {
            assert!((r.flatness_exponent - 2.0).abs() < 0.1, "{db} dB: {}", r.flatness_exponent);
        }
    }
}

#[test]
fn odba_profile_and_flatness() {
    for db in [10.0, 20.0, 30.0] {
        let sol = make_odba_for_gain(1.0, db).unwrap();
        let m = sol.model().unwrap();
        let p = gain_profile(&m, sol.gain_selector(), &default_grid(&m)).unwrap();
        let g0 = db_to_linear(db);
        for (w, g) in p.omegas.iter().zip(&p.gains) {
            assert!(rel(*g, cf::matched_transmission_gain(g0, 1.0, *w)) < 1e-9);
        }
        let r = fwhm_bandwidth(&p).unwrap();
        assert!(rel(r.g0, g0) < 1e-9);
        assert!(rel(r.fwhm, SQRT_2) < 1e-9);
        assert!((r.flatness_exponent - 4.0).abs() < 0.1, "{}", r.flatness_exponent);
    }
}

#[test]
fn odba_total_output_power_follows_quartic_form() {
    let sol = make_odba_for_gain(1.0, 20.0).unwrap();
    let m = sol.model().unwrap();
    for w in [0.0, 0.3, 0.9, 2.0] {
        let s = scattering_matrix(&m, w).unwrap();
        let total = s.quadrature_element(Quadrature::p(0), Quadrature::x(0)).norm_sqr()
            + s.quadrature_element(Quadrature::p(0), Quadrature::p(0)).norm_sqr();
        assert!(rel(total, cf::odba_total_gain(100.0, 1.0, w)) < 1e-9);
    }
}

#[test]
fn odba_symplectic_product_at_resonance() {
    let sol = make_odba_for_gain(1.0, 20.0).unwrap();
    let s = scattering_matrix(&sol.model().unwrap(), 0.0).unwrap();
    let amp = s.quadrature_element(Quadrature::p(0), Quadrature::x(0)).norm();
    let sq = s.quadrature_element(Quadrature::x(0), Quadrature::p(0)).norm();
    assert!((amp * sq - 1.0).abs() < 1e-10);
    assert!(rel(amp, 10.0) < 1e-10);
}

#[test]
fn oiba_matrix_matches_closed_form() {
    for db in [10.0, 20.0, 30.0] {
        let sol = make_oiba_for_gain(1.0, 1.0, db, MatchCondition::Impedance).unwrap();
        let m = sol.model().unwrap();
        for w in [0.0, 0.1, 0.5, 0.72, 1.0, 3.0, -0.4] {
            let q = scattering_matrix(&m, w).unwrap().quadrature_matrix();
            let expected = cf::oiba_quadrature_matrix(sol.squeeze_r, 1.0, w);
            let scale = (2.0 * sol.squeeze_r).exp();
            assert!((q - expected).iter().all(|z| z.norm() < 1e-9 * scale), "{db} dB ω={w}");
        }
        assert!(reflection_on_resonance(&m).unwrap() < 1e-10);
    }
}

#[test]
fn oiba_bandwidth_invariance() {
    let widths: Vec<f64> = [10.0, 20.0, 30.0]
        .iter()
        .map(|db| {
            let sol = make_oiba_for_gain(1.0, 1.0, *db, MatchCondition::Impedance).unwrap();
            let m = sol.model().unwrap();
            let r = fwhm_bandwidth(&gain_profile(&m, sol.gain_selector(), &default_grid(&m)).unwrap()).unwrap();
            assert!(rel(r.g0, db_to_linear(*db)) < 1e-9);
            assert!((r.flatness_exponent - 4.0).abs() < 0.1);
            r.fwhm
        })
        .collect();
    for w in widths {
        assert!(rel(w, SQRT_2) < 1e-9);
    }
}

#[test]
fn oiba_eigenvalues() {
    let sol = make_oiba_for_gain(1.0, 1.0, 20.0, MatchCondition::Impedance).unwrap();
    let r = stability(&sol.model().unwrap());
    for e in r.eigenvalues {
        assert!((e.re + 0.5).abs() < 1e-9 && (e.im.abs() - 0.5).abs() < 1e-9);
    }
}

#[test]
fn oiba_squeezing_spectrum() {
    for db in [20.0, 30.0] {
        let g0 = db_to_linear(db);
        let sol = make_oiba_for_gain(1.0, 1.0, db, MatchCondition::Impedance).unwrap();
        let m = sol.model().unwrap();
        let q = squeezed_quadrature(&m, 0).unwrap();
        assert!(q.angle.abs() < 1e-9);
        let spec = squeezing_spectrum(&m, &default_grid(&m)).unwrap();
        for p in &spec {
            assert!(rel(p.value, cf::oiba_x1_spectrum(g0, 1.0, p.omega, 0.0, 0.0)) < 1e-9);
        }
        let bw = squeezing_bandwidth(&m, &spec).unwrap();
        assert!(rel(bw, cf::oiba_squeezing_bandwidth(g0, 1.0)) < 1e-9);
        assert!(rel(bw, SQRT_2 * g0.powf(-0.25)) < 0.05);
    }
}

#[test]
fn oiba_thermal_spectrum_extension() {
    let sol = make_oiba_for_gain(1.0, 1.0, 20.0, MatchCondition::Impedance).unwrap();
    let m = sol.model().unwrap().with_thermal_occupations(vec![0.5, 2.0]).unwrap();
    let spec = quadrature_spectrum(&m, Quadrature::x(0), &[0.0, 0.3, 1.0, 4.0]).unwrap();
    for p in spec {
        assert!(rel(p.value, cf::oiba_x1_spectrum(100.0, 1.0, p.omega, 0.5, 2.0)) < 1e-9);
    }
}

#[test]
fn oiba_purity() {
    let sol = make_oiba_for_gain(1.0, 1.0, 20.0, MatchCondition::Impedance).unwrap();
    let m = sol.model().unwrap();
    for n2 in [0.0, 2.0] {
        assert!((purity_occupancy(&m, n2).unwrap() - n2).abs() < 1e-9);
    }
    let idle = make_oiba_for_gain(1.0, 1.0, 0.0, MatchCondition::Impedance).unwrap();
    assert!((purity_occupancy(&idle.model().unwrap(), 1.5).unwrap() - 1.5).abs() < 1e-9);
}

#[test]
fn oiba_amplified_quadrature_adds_no_noise() {
    let sol = make_oiba_for_gain(1.0, 1.0, 20.0, MatchCondition::Impedance).unwrap();
    let r = added_noise(&sol.model().unwrap(), sol.gain_selector()).unwrap();
    assert!(r.added_photons.abs() < 1e-10 && r.quantum_limited);
}

#[test]
fn qnd_appendix() {
    for g in [0.2, 0.5, 1.25] {
        let m = make_qnd(g, 1.0).unwrap();
        let a = AmplifierParams::Qnd { g, kappa: 1.0 };
        for w in [0.0, 0.2, 0.8, -1.5] {
            let q = scattering_matrix(&m, w).unwrap().quadrature_matrix();
            let expected = cf::qnd_quadrature_matrix(g, 1.0, w);
            assert!((q - expected).iter().all(|z| z.norm() < 1e-9 * (8.0 * g).max(1.0)));
        }
        let p = gain_profile(&m, a.gain_selector(), &default_grid(&m)).unwrap();
        let r = fwhm_bandwidth(&p).unwrap();
        assert!(rel(r.g0, (8.0 * g).powi(2)) < 1e-9);
        assert!(rel(r.fwhm, cf::qnd_fwhm(1.0)) < 1e-6);
        for n in [0.0, 3.0] {
            let hot = m.clone().with_thermal_occupation(0, n).unwrap();
            let r = added_noise(&hot, a.gain_selector()).unwrap();
            assert!(rel(r.added_photons, cf::qnd_added_noise(r.gain, n)) < 1e-9);
        }
    }
}

#[test]
fn qnd_x_quadratures_are_only_reflected() {
    let m = make_qnd(0.5, 1.0).unwrap();
    let q = scattering_matrix(&m, 0.3).unwrap().quadrature_matrix();
    for (row, col) in [(0, 1), (0, 2), (0, 3), (2, 0), (2, 1), (2, 3)] {
        assert!(q[(row, col)].norm() < 1e-12);
    }
    assert!((q[(0, 0)].norm() - 1.0).abs() < 1e-12);
}

#[test]
fn qnd_unit_gain_at_eighth_kappa() {
    let sol = make_qnd_for_gain(1.0, 0.0).unwrap();
    let AmplifierParams::Qnd { g, .. } = sol.params else { panic!() };
    assert!((g - 0.125).abs() < 1e-15);
}

#[test]
fn asymmetric_appendix() {
    for ratio in [1.0, 0.8, 0.5] {
        for (g1, g2) in [(0.3, 0.6), (1.1, 1.2), (0.0, 0.4)] {
            let p = OibaParams { g1, g2, kappa1: 1.0, kappa2: ratio, pump_phases: [0.0, 0.0] };
            let (c1, c2) = p.cooperativities();
            let m = make_oiba(&p).unwrap();
            for w in [0.0, 0.15, 0.6, -0.9, 2.0] {
                let q = scattering_matrix(&m, w).unwrap().quadrature_matrix();
                let e = cf::asymmetric_quadrature_matrix(c1, c2, 1.0, ratio, w);
                for (a, b) in q.iter().zip(e.iter()) {
                    assert!((a - b).norm() <= 1e-9 * b.norm().max(1e-3), "κ₂={ratio} ω={w}");
                }
            }
        }
    }
}

#[test]
fn asymmetric_conditions() {
    for ratio in [0.8, 0.5] {
        let sol = make_oiba_for_gain(1.0, ratio, 20.0, MatchCondition::Impedance).unwrap();
        assert!(reflection_on_resonance(&sol.model().unwrap()).unwrap() < 1e-10);
        let opt = make_oiba_for_gain(1.0, ratio, 20.0, MatchCondition::Imbalance).unwrap();
        let AmplifierParams::Oiba(p) = opt.params else { panic!() };
        let kminus = 0.5 * (1.0 - ratio);
        assert!((p.matching_deviation() - 2.0 * kminus * kminus / ratio).abs() < 1e-9);
        let eig = stability(&opt.model().unwrap()).eigenvalues;
        let kplus = 0.5 * (1.0 + ratio);
        for e in eig {
            assert!((e.re + kplus / 2.0).abs() < 1e-9 && (e.im.abs() - kplus / 2.0).abs() < 1e-9);
        }
    }
}

#[test]
fn reflection_from_cooperativity_offset() {
    let c1: f64 = 0.9;
    let c2 = c1 + 1.1;
    let g1 = c1.sqrt() / 2.0;
    let g2 = c2.sqrt() / 2.0;
    let m = make_oiba(&OibaParams::symmetric(g1, g2, 1.0)).unwrap();
    assert!((reflection_on_resonance(&m).unwrap() - 0.1 / 2.1).abs() < 1e-12);
    let bare = make_oiba(&OibaParams::symmetric(0.0, 0.0, 1.0)).unwrap();
    assert!((reflection_on_resonance(&bare).unwrap() - 1.0).abs() < 1e-12);
}

#[test]
fn detuned_two_mode_bandwidth_is_gain_independent() {
    let mut widths = Vec::new();
    for db in [20.0, 30.0, 40.0] {
        let sol = make_detuned_two_mode_for_gain(1.0, db).unwrap();
        let m = sol.model().unwrap();
        let r = fwhm_bandwidth(&gain_profile(&m, sol.gain_selector(), &default_grid(&m)).unwrap()).unwrap();
        assert!(rel(r.g0, db_to_linear(db)) < 1e-9);
        widths.push(r.fwhm);
    }
    let spread = widths.iter().cloned().fold(f64::NEG_INFINITY, f64::max)
        - widths.iter().cloned().fold(f64::INFINITY, f64::min);
    assert!(spread / widths[0] < 0.01, "{widths:?}");
}

#[test]
fn solver_outputs_reproduce_targets() {
    for db in [3.0, 10.0, 20.0, 30.0] {
        let sols = [
            make_odba_for_gain(1.0, db).unwrap(),
            make_oiba_for_gain(1.0, 1.0, db, MatchCondition::Impedance).unwrap(),
            make_oiba_for_gain(1.0, 0.7, db, MatchCondition::Impedance).unwrap(),
            make_detuned_two_mode_for_gain(1.0, db).unwrap(),
            make_qnd_for_gain(1.0, db).unwrap(),
        ];
        for sol in sols {
            let s = scattering_matrix(&sol.model().unwrap(), 0.0).unwrap();
            let g = s.element(&sol.gain_selector()).unwrap().norm_sqr();
            assert!(rel(g, db_to_linear(db)) < 1e-9, "{:?} at {db} dB: {g}", sol.params);
            assert!(sol.matching_residual().abs() < 1e-12);
        }
    }
}
