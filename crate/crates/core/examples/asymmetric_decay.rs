//! Unequal cavity decay rates: the two placement conditions.
//!
//! `cargo run --example asymmetric_decay`

use bogoamp::analysis::{default_grid, fwhm_bandwidth, gain_profile, reflection_on_resonance};
use bogoamp::models::{make_oiba_for_gain, AmplifierParams, MatchCondition};

fn main() -> bogoamp::Result<()> {
    for kappa2 in [1.0, 0.8, 0.5] {
        println!("κ2 = {kappa2}");
        for cond in [MatchCondition::Impedance, MatchCondition::Imbalance] {
            let sol = make_oiba_for_gain(1.0, kappa2, 20.0, cond)?;
            let AmplifierParams::Oiba(p) = sol.params else { unreachable!() };
            let m = sol.model()?;
            let r = fwhm_bandwidth(&gain_profile(&m, sol.gain_selector(), &default_grid(&m))?)?;
            println!(
                "  {cond:?}: G̃ = {:.6}, ΔC = {:.2e}, reflection {:.2e}, G0 = {:.3}, fwhm {:.4}",
                p.hopping_energy(),
                p.matching_deviation(),
                reflection_on_resonance(&m)?,
                r.g0,
                r.fwhm
            );
        }
    }
    Ok(())
}
