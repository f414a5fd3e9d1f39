//! Normal forms of stable quadratic Hamiltonians and their reconstruction.
//!
//! `cargo run --example bogoliubov_forms`

use num_complex::Complex64;

use bogoamp::models::{make_imbalanced, make_qnd, ImbalancedSqueezing};
use bogoamp::quadratic::{bogoliubov_diagonalize, stability, HamiltonianBuilder, QuadraticModel};

fn show(name: &str, m: &QuadraticModel) {
    let report = stability(m);
    println!("{name}: stable = {}, max Re λ = {:.4}", report.stable, report.max_real_part);
    match bogoliubov_diagonalize(m) {
        Ok(form) => {
            let err = (form.hamiltonian() - m.h_matrix()).iter().map(|z| z.norm()).fold(0.0, f64::max);
            println!("  {:?}: r = {:.6}, energy = {:.6}, rebuild error {err:.1e}", form.kind, form.squeeze_r, form.mode_energy);
        }
        Err(e) => println!("  {e}"),
    }
}

fn main() -> bogoamp::Result<()> {
    let detuned = HamiltonianBuilder::new(1)
        .detuning(0, 1.0)
        .single_mode_squeezing(0, Complex64::new(0.6, 0.0))
        .build(vec![1.0])?;
    show("detuned squeezer", &detuned);
    show("imbalanced hopping", &make_imbalanced(0.3, 0.8, 1.0, ImbalancedSqueezing::TwoMode)?);
    show("local-squeezing hopping", &make_imbalanced(0.3, 0.8, 1.0, ImbalancedSqueezing::Local)?);
    show("balanced (QND)", &make_qnd(0.5, 1.0)?);
    Ok(())
}
