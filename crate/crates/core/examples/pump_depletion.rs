//! Gain saturation from pump depletion: Bogoliubov amplifier vs standard paramp.
//!
//! `cargo run --release --example pump_depletion`

use bogoamp::analysis::logspace;
use bogoamp::depletion::{compression_point, solve_selfconsistent, InputPort, PumpParams, PumpScheme, SignalInput};

fn main() -> bogoamp::Result<()> {
    let oiba = PumpParams::reference(PumpScheme::Oiba);
    let pa = PumpParams::reference(PumpScheme::StandardPa);
    let n = oiba.reference_photons();
    println!("pump photons for 20 dB: OIBA {:.4e}, PA {:.4e}", n, pa.reference_photons());
    println!("{:>12} {:>10} {:>10} {:>10}", "input", "γ̄ (OIBA)", "OIBA dB", "PA dB");
    for x in logspace(1e-8 * n, 1e0 * n, 9) {
        let s = SignalInput::x(x, InputPort::Cavity2);
        let o = solve_selfconsistent(&oiba, &s)?;
        let p = solve_selfconsistent(&pa, &s)?;
        println!("{x:>12.4e} {:>10.4e} {:>10.4} {:>10.4}", o.gamma_bar[0], o.g_eff_db, p.g_eff_db);
    }
    let dir = SignalInput::x(1.0, InputPort::Cavity2);
    let co = compression_point(&oiba, &dir)?;
    let cp = compression_point(&pa, &dir)?;
    println!("1 dB compression: OIBA {:.4e}, PA {:.4e}", co.input_power, cp.input_power);
    println!("shift: {:.2} dB", 10.0 * (co.input_power / cp.input_power).log10());
    Ok(())
}
