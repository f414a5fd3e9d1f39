//! Resonant degenerate paramp: gain-bandwidth trade-off.
//!
//! `cargo run --example dpa_gain_bandwidth`

use bogoamp::analysis::{fwhm_bandwidth, gain_profile, linspace};
use bogoamp::closed_form::dpa_bandwidth_parameter;
use bogoamp::models::{db_to_linear, AmplifierParams, DpaParams};

fn main() -> bogoamp::Result<()> {
    println!("{:>8} {:>10} {:>10} {:>10} {:>8}", "gain_dB", "nu", "fwhm", "D", "fwhm*√G");
    for db in [10.0, 20.0, 30.0, 40.0] {
        let p = DpaParams::resonant_for_gain(1.0, db)?;
        let amp = AmplifierParams::Dpa(p);
        let profile = gain_profile(&amp.model()?, amp.gain_selector(), &linspace(-2.0, 2.0, 4001))?;
        let r = fwhm_bandwidth(&profile)?;
        let g0 = db_to_linear(db);
        println!(
            "{db:>8.1} {:>10.6} {:>10.6} {:>10.6} {:>8.4}",
            p.nu,
            r.fwhm,
            dpa_bandwidth_parameter(g0, 1.0),
            r.fwhm * g0.sqrt()
        );
    }
    Ok(())
}
