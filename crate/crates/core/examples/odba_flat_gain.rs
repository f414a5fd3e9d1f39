//! Optimally detuned single-mode amplifier against a resonant DPA of equal gain.
//!
//! `cargo run --example odba_flat_gain`

use bogoamp::analysis::{default_grid, fwhm_bandwidth, gain_profile};
use bogoamp::models::{make_odba_for_gain, AmplifierParams, DpaParams};

fn main() -> bogoamp::Result<()> {
    for db in [10.0, 20.0, 30.0] {
        let odba = make_odba_for_gain(1.0, db)?;
        let AmplifierParams::Odba(p) = odba.params else { unreachable!() };
        let m = odba.model()?;
        let r = fwhm_bandwidth(&gain_profile(&m, odba.gain_selector(), &default_grid(&m))?)?;

        let dpa = AmplifierParams::Dpa(DpaParams::resonant_for_gain(1.0, db)?);
        let dm = dpa.model()?;
        let d = fwhm_bandwidth(&gain_profile(&dm, dpa.gain_selector(), &default_grid(&dm))?)?;

        println!("{db} dB: Δ = {:.4}, ν = {:.4}, r = {:.4}", p.delta, p.nu, odba.squeeze_r);
        println!("  ODBA fwhm {:.6}  flatness exponent {:.3}", r.fwhm, r.flatness_exponent);
        println!("  DPA  fwhm {:.6}  flatness exponent {:.3}", d.fwhm, d.flatness_exponent);
    }
    Ok(())
}
