//! Output squeezing of the two-mode amplifier and the purity of the output state.
//!
//! `cargo run --example squeezing_spectrum`

use bogoamp::analysis::{
    default_grid, purity_occupancy, squeezed_quadrature, squeezing_bandwidth, squeezing_spectrum,
};
use bogoamp::models::{make_oiba_for_gain, MatchCondition};

fn main() -> bogoamp::Result<()> {
    let sol = make_oiba_for_gain(1.0, 1.0, 20.0, MatchCondition::Impedance)?;
    let m = sol.model()?;
    let q = squeezed_quadrature(&m, 0)?;
    println!("squeezed quadrature angle: {:.3e}", q.angle);

    let spectrum = squeezing_spectrum(&m, &[0.0, 0.1, 0.2, 0.4, 0.8, 1.6])?;
    for p in &spectrum {
        println!("  ω = {:>4.2}: S = {:.6} ({:+.2} dB re shot noise)", p.omega, p.value, 10.0 * p.value.log10());
    }
    let bw = squeezing_bandwidth(&m, &squeezing_spectrum(&m, &default_grid(&m))?)?;
    println!("3 dB squeezing bandwidth: {bw:.6}");
    for n2 in [0.0, 0.5, 2.0] {
        println!("bath n2 = {n2}: effective occupancy {:.6}", purity_occupancy(&m, n2)?);
    }
    Ok(())
}
