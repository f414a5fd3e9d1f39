//! Balanced (QND) amplifier: gain, bandwidth and added noise with a thermal bath.
//!
//! `cargo run --example qnd_added_noise`

use bogoamp::analysis::{added_noise, default_grid, fwhm_bandwidth, gain_profile};
use bogoamp::models::make_qnd_for_gain;

fn main() -> bogoamp::Result<()> {
    let sol = make_qnd_for_gain(1.0, 20.0)?;
    let m = sol.model()?;
    let r = fwhm_bandwidth(&gain_profile(&m, sol.gain_selector(), &default_grid(&m))?)?;
    println!("G_Q = {:.4}, fwhm = {:.6}", r.g0, r.fwhm);
    for n in [0.0, 1.0, 3.0] {
        let hot = m.clone().with_thermal_occupation(0, n)?;
        let a = added_noise(&hot, sol.gain_selector())?;
        println!("bath n = {n}: added noise {:.6} quanta", a.added_photons);
    }
    Ok(())
}
