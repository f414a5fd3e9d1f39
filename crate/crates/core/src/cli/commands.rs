use rayon::prelude::*;
use serde_json::{json, Value};

use crate::analysis::{
    default_grid, fwhm_bandwidth, gain_profile, linspace, logspace, squeezing_bandwidth, squeezing_spectrum,
};
use crate::closed_form::dpa_bandwidth_parameter;
use crate::depletion::{
    compression_point, saturation_law_pa, solve_selfconsistent, DepletionSolution, PumpParams, PumpScheme,
    SignalInput,
};
use crate::error::Error;
use crate::models::{db_to_linear, make_oiba_for_gain, AmplifierParams, DpaParams, MatchCondition};
use crate::quadratic::{bogoliubov_diagonalize, build_dynamical_matrix, stability};
use crate::verify::{run_suite, CheckResult, VerifyOptions};

use super::config::Resolved;
use super::table::{Cell, Table};
use super::CliError;

/// Rendered table plus a failure that should set the exit code after the
/// output has been written.
pub struct Outcome {
    pub table: Table,
    pub failure: Option<String>,
}

impl From<Table> for Outcome {
    fn from(table: Table) -> Self {
        Self { table, failure: None }
    }
}

pub fn gain_sweep(cfg: &Resolved, compare_dpa: bool) -> Result<Outcome, CliError> {
    let omegas = linspace(cfg.omega_min, cfg.omega_max, cfg.omega_points);
    let amp = cfg.amplifier()?;
    let main = gain_profile(&amp.model()?, amp.gain_selector(), &omegas)?;
    let dpa = if compare_dpa {
        let a = AmplifierParams::Dpa(DpaParams::resonant_for_gain(cfg.kappa1, cfg.gain_db)?);
        Some(gain_profile(&a.model()?, a.gain_selector(), &omegas)?)
    } else {
        None
    };
    let mut columns = vec!["omega", "gain_db", "gain_linear"];
    if dpa.is_some() {
        columns.extend(["dpa_gain_db", "dpa_gain_linear"]);
    }
    let mut table = Table::new(columns);
    for (i, (w, g)) in main.omegas.iter().zip(&main.gains).enumerate() {
        let mut row = vec![Cell::Num(w * cfg.rate_unit), Cell::Num(10.0 * g.log10()), Cell::Num(*g)];
        if let Some(d) = &dpa {
            let g = d.gains[i];
            row.extend([Cell::Num(10.0 * g.log10()), Cell::Num(g)]);
        }
        table.push(row);
    }
    Ok(table.into())
}

/// Maps "nothing to measure" errors to a not-applicable cell.
fn optional(r: crate::Result<f64>, scale: f64) -> crate::Result<Cell> {
    match r {
        Ok(v) => Ok(Cell::Num(v * scale)),
        Err(Error::NoAmplification(_) | Error::NotSqueezed(_)) => Ok(Cell::Na),
        Err(e) => Err(e),
    }
}

/// Rows at or below this gain have no bandwidth to measure.
const UNIT_GAIN_TOL: f64 = 1e-9;

fn squeeze_row(cfg: &Resolved, db: f64) -> crate::Result<Vec<Cell>> {
    let g0 = db_to_linear(db);
    if g0 <= 1.0 + UNIT_GAIN_TOL {
        let d = dpa_bandwidth_parameter(g0, cfg.kappa1) * cfg.rate_unit;
        return Ok(vec![Cell::Num(db), Cell::Num(g0), Cell::Na, Cell::Na, Cell::Num(d), Cell::Na, Cell::Na]);
    }
    let sol = make_oiba_for_gain(cfg.kappa1, cfg.kappa1, db, MatchCondition::Impedance)?;
    let m = sol.model()?;
    let grid = default_grid(&m);
    let oiba_fwhm = fwhm_bandwidth(&gain_profile(&m, sol.gain_selector(), &grid)?).map(|r| r.fwhm);
    let sq = squeezing_spectrum(&m, &grid).and_then(|s| squeezing_bandwidth(&m, &s));
    let dpa = AmplifierParams::Dpa(DpaParams::resonant_for_gain(cfg.kappa1, db)?);
    let dm = dpa.model()?;
    // The DPA gain tends to 1 far off resonance, so it has no half maximum for 𝒢₀ ≤ 2.
    let dpa_fwhm = if g0 > 2.0 {
        fwhm_bandwidth(&gain_profile(&dm, dpa.gain_selector(), &default_grid(&dm))?).map(|r| r.fwhm)
    } else {
        Err(Error::NoAmplification(g0))
    };
    let d = dpa_bandwidth_parameter(g0, cfg.kappa1);
    let ratio = match &sq {
        Ok(v) => Cell::Num(v / d),
        Err(_) => Cell::Na,
    };
    let u = cfg.rate_unit;
    Ok(vec![
        Cell::Num(db),
        Cell::Num(g0),
        optional(oiba_fwhm, u)?,
        optional(sq, u)?,
        Cell::Num(d * u),
        optional(dpa_fwhm, u)?,
        ratio,
    ])
}

pub fn squeeze_sweep(cfg: &Resolved) -> Result<Outcome, CliError> {
    let rows = linspace(cfg.db_min, cfg.db_max, cfg.db_points)
        .par_iter()
        .map(|db| squeeze_row(cfg, *db))
        .collect::<crate::Result<Vec<_>>>()?;
    let mut table =
        Table::new(vec!["gain_db", "g0", "oiba_fwhm", "squeezing_bandwidth", "dpa_d", "dpa_fwhm", "sq_over_d"]);
    rows.into_iter().for_each(|r| table.push(r));
    Ok(table.into())
}

fn pump(cfg: &Resolved, scheme: PumpScheme) -> PumpParams {
    PumpParams {
        scheme,
        gamma1: cfg.gamma1,
        gamma2: cfg.gamma2,
        g1: cfg.g1,
        g2: cfg.g2,
        kappa: cfg.kappa1,
        target_gain_db: cfg.gain_db,
    }
}

fn converged(r: &crate::Result<DepletionSolution>) -> Option<&DepletionSolution> {
    r.as_ref().ok().filter(|s| s.converged)
}

/// Minimum fraction of converged grid points for a successful run.
pub const MIN_CONVERGED_FRACTION: f64 = 0.9;

pub fn depletion(cfg: &Resolved) -> Result<Outcome, CliError> {
    let oiba = pump(cfg, PumpScheme::Oiba);
    let pa = pump(cfg, PumpScheme::StandardPa);
    let n_oiba = oiba.reference_photons();
    let n_pa = pa.reference_photons();
    let port = cfg.input_port.into();
    let powers: Vec<f64> = logspace(cfg.power_min, cfg.power_max, cfg.power_points)
        .into_iter()
        .map(|x| x * n_oiba)
        .collect();
    let solved: Vec<_> = powers
        .par_iter()
        .map(|x| {
            let s = SignalInput::x(*x, port);
            (solve_selfconsistent(&oiba, &s), solve_selfconsistent(&pa, &s))
        })
        .collect();

    let (c_pa, _) = pa.cooperativities();
    let u = cfg.rate_unit;
    let mut table = Table::new(vec![
        "input_power",
        "oiba_relative_power",
        "oiba_gamma_bar1",
        "oiba_gamma_bar2",
        "oiba_gain_db",
        "oiba_converged",
        "pa_relative_power",
        "pa_gamma_bar1",
        "pa_gain_db",
        "pa_law_gain_db",
        "pa_converged",
    ]);
    let mut ok_rows = 0;
    for (x, (o, p)) in powers.iter().zip(&solved) {
        let o = converged(o);
        let p = converged(p);
        ok_rows += usize::from(o.is_some() && p.is_some());
        let num = |v: Option<f64>| v.map_or(Cell::Na, Cell::Num);
        let law = p.and_then(|s| saturation_law_pa(c_pa, s.gamma_bar[0]).ok());
        table.push(vec![
            Cell::Num(x * u),
            Cell::Num(x / n_oiba),
            num(o.map(|s| s.gamma_bar[0])),
            num(o.map(|s| s.gamma_bar[1])),
            num(o.map(|s| s.g_eff_db)),
            Cell::Flag(o.is_some()),
            Cell::Num(x / n_pa),
            num(p.map(|s| s.gamma_bar[0])),
            num(p.map(|s| s.g_eff_db)),
            num(law.map(|r| cfg.gain_db + 20.0 * r.log10())),
            Cell::Flag(p.is_some()),
        ]);
    }

    let direction = SignalInput::x(1.0, port);
    let point = |p: &PumpParams| compression_point(p, &direction).ok();
    let (co, cp) = (point(&oiba), point(&pa));
    let num = |v: Option<f64>| v.map_or(Cell::Na, Cell::Num);
    table.summary.push((
        "compression",
        vec![
            ("oiba_input_power", num(co.map(|c| c.input_power * u))),
            ("oiba_relative_power", num(co.map(|c| c.relative_power))),
            ("pa_input_power", num(cp.map(|c| c.input_power * u))),
            ("pa_relative_power", num(cp.map(|c| c.relative_power))),
            ("shift_db", num(co.zip(cp).map(|(a, b)| 10.0 * (a.input_power / b.input_power).log10()))),
        ],
    ));
    table.summary.push((
        "convergence",
        vec![("converged_rows", Cell::Count(ok_rows)), ("rows", Cell::Count(powers.len()))],
    ));
    let fraction = ok_rows as f64 / powers.len() as f64;
    let failure = (fraction < MIN_CONVERGED_FRACTION)
        .then(|| format!("only {ok_rows} of {} power points converged", powers.len()));
    Ok(Outcome { table, failure })
}

pub fn compression(cfg: &Resolved) -> Result<Outcome, CliError> {
    let direction = SignalInput::x(1.0, cfg.input_port.into());
    let mut table = Table::new(vec![
        "scheme",
        "input_power",
        "relative_power",
        "reference_photons",
        "gain_db",
        "gamma_bar1",
        "gamma_bar2",
        "reflection",
        "iterations",
    ]);
    for (name, scheme) in [("oiba", PumpScheme::Oiba), ("standard_pa", PumpScheme::StandardPa)] {
        let c = compression_point(&pump(cfg, scheme), &direction)?;
        let s = c.solution;
        table.push(vec![
            Cell::Text(name),
            Cell::Num(c.input_power * cfg.rate_unit),
            Cell::Num(c.relative_power),
            Cell::Num(c.reference_photons * cfg.rate_unit),
            Cell::Num(s.g_eff_db),
            Cell::Num(s.gamma_bar[0]),
            Cell::Num(s.gamma_bar[1]),
            Cell::Num(s.reflection),
            Cell::Count(s.iterations),
        ]);
    }
    Ok(table.into())
}

fn complex_matrix(m: &nalgebra::DMatrix<num_complex::Complex64>) -> Value {
    let rows: Vec<Value> = (0..m.nrows())
        .map(|i| Value::Array((0..m.ncols()).map(|j| json!([m[(i, j)].re, m[(i, j)].im])).collect()))
        .collect();
    Value::Array(rows)
}

pub fn model_dump(cfg: &Resolved) -> Result<String, CliError> {
    let amp = cfg.amplifier()?;
    let model = amp.model()?;
    let report = stability(&model);
    let (form, form_error) = match bogoliubov_diagonalize(&model) {
        Ok(f) => (serde_json::to_value(f).expect("form serializes"), Value::Null),
        Err(e) => (Value::Null, Value::from(e.to_string())),
    };
    let value = json!({
        "config": cfg,
        "params": amp,
        "h_matrix": complex_matrix(model.h_matrix()),
        "dynamical_matrix": complex_matrix(&build_dynamical_matrix(&model).a_matrix),
        "eigenvalues": report.eigenvalues.iter().map(|z| json!([z.re, z.im])).collect::<Vec<_>>(),
        "stable": report.stable,
        "hamiltonian_diagonalizable": report.hamiltonian_diagonalizable,
        "bogoliubov_form": form,
        "bogoliubov_error": form_error,
    });
    let mut s = serde_json::to_string_pretty(&value).expect("dump serializes");
    s.push('\n');
    Ok(s)
}

pub fn verify(options: &VerifyOptions) -> (String, Vec<CheckResult>) {
    let results = run_suite(options);
    let mut out = String::new();
    for r in &results {
        let status = if r.passed { "PASS" } else { "FAIL" };
        out.push_str(&format!("{:>2}  {status}  {:<18} {}\n", r.id, r.name, r.detail));
    }
    let failed = results.iter().filter(|r| !r.passed).count();
    out.push_str(&format!("{} checks, {failed} failed\n", results.len()));
    (out, results)
}
