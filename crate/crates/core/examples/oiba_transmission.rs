//! Two-mode Bogoliubov amplifier: quadrature scattering matrix and bandwidth.
//!
//! `cargo run --example oiba_transmission`

use bogoamp::analysis::{default_grid, fwhm_bandwidth, gain_profile, reflection_on_resonance};
use bogoamp::models::{make_oiba_for_gain, AmplifierParams, MatchCondition};
use bogoamp::quadratic::scattering_matrix;

fn main() -> bogoamp::Result<()> {
    let sol = make_oiba_for_gain(1.0, 1.0, 20.0, MatchCondition::Impedance)?;
    let AmplifierParams::Oiba(p) = sol.params else { unreachable!() };
    let m = sol.model()?;
    println!("G1 = {:.6}, G2 = {:.6}, r = {:.6}", p.g1, p.g2, sol.squeeze_r);

    let q = scattering_matrix(&m, 0.0)?.quadrature_matrix();
    println!("s[0] in (X1, P1, X2, P2):");
    for i in 0..4 {
        let row: Vec<String> = (0..4).map(|j| format!("{:>9.4}", q[(i, j)].re)).collect();
        println!("  {}", row.join(" "));
    }
    println!("reflection on resonance: {:.2e}", reflection_on_resonance(&m)?);

    for db in [10.0, 20.0, 30.0] {
        let s = make_oiba_for_gain(1.0, 1.0, db, MatchCondition::Impedance)?;
        let m = s.model()?;
        let r = fwhm_bandwidth(&gain_profile(&m, s.gain_selector(), &default_grid(&m))?)?;
        println!("{db} dB: G0 = {:.3}, fwhm = {:.6}", r.g0, r.fwhm);
    }
    Ok(())
}
