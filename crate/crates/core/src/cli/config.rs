use std::path::{Path, PathBuf};

use clap::{Args, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::depletion::InputPort;
use crate::models::{AmplifierParams, DpaParams, MatchCondition};
use crate::models::{make_detuned_two_mode_for_gain, make_odba_for_gain, make_oiba_for_gain, make_qnd_for_gain};

use super::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum ModelKind {
    Dpa,
    Odba,
    Oiba,
    Qnd,
    Detuned2,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum MatchArg {
    Impedance,
    Imbalance,
}

impl From<MatchArg> for MatchCondition {
    fn from(m: MatchArg) -> Self {
        match m {
            MatchArg::Impedance => MatchCondition::Impedance,
            MatchArg::Imbalance => MatchCondition::Imbalance,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    Csv,
    Json,
}

/// `kappa`: rates are given in units of `κ₁`. `mhz`: rates are in MHz and
/// are divided by `κ₁` before computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Units {
    Kappa,
    Mhz,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum PortArg {
    Cavity1,
    Cavity2,
}

impl From<PortArg> for InputPort {
    fn from(p: PortArg) -> Self {
        match p {
            PortArg::Cavity1 => InputPort::Cavity1,
            PortArg::Cavity2 => InputPort::Cavity2,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSection {
    pub omega_min: Option<f64>,
    pub omega_max: Option<f64>,
    pub points: Option<usize>,
}

#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GainGridSection {
    pub db_min: Option<f64>,
    pub db_max: Option<f64>,
    pub points: Option<usize>,
}

#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PumpSection {
    pub gamma1: Option<f64>,
    pub gamma2: Option<f64>,
    pub g1: Option<f64>,
    pub g2: Option<f64>,
    pub power_min: Option<f64>,
    pub power_max: Option<f64>,
    pub points: Option<usize>,
    pub input_port: Option<PortArg>,
}

/// Contents of a `--config` TOML file. Every key is optional; flags given on
/// the command line take precedence.
#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub model: Option<ModelKind>,
    pub gain_db: Option<f64>,
    pub kappa1: Option<f64>,
    pub kappa2: Option<f64>,
    #[serde(rename = "match")]
    pub match_condition: Option<MatchArg>,
    pub units: Option<Units>,
    pub format: Option<Format>,
    pub out: Option<PathBuf>,
    #[serde(default)]
    pub sweep: SweepSection,
    #[serde(default)]
    pub gain_grid: GainGridSection,
    #[serde(default)]
    pub pump: PumpSection,
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
        toml::from_str(&text).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
    }
}

/// Flags shared by the model-driven subcommands.
#[derive(Debug, Clone, Default, Args)]
pub struct CommonArgs {
    /// TOML run configuration
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub model: Option<ModelKind>,
    /// Target zero-frequency power gain, 10·log₁₀𝒢₀
    #[arg(long, allow_negative_numbers = true)]
    pub gain_db: Option<f64>,
    #[arg(long)]
    pub kappa1: Option<f64>,
    #[arg(long)]
    pub kappa2: Option<f64>,
    #[arg(long = "match", value_enum)]
    pub match_condition: Option<MatchArg>,
    #[arg(long, allow_negative_numbers = true)]
    pub omega_min: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub omega_max: Option<f64>,
    #[arg(long)]
    pub omega_points: Option<usize>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub units: Option<Units>,
}

#[derive(Debug, Clone, Default, Args)]
pub struct GainGridArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub db_min: Option<f64>,
    #[arg(long)]
    pub db_max: Option<f64>,
    #[arg(long)]
    pub db_points: Option<usize>,
}

#[derive(Debug, Clone, Default, Args)]
pub struct PumpArgs {
    /// Pump-mode damping γ (both pumps)
    #[arg(long)]
    pub gamma: Option<f64>,
    /// 3-wave coupling g (both pumps)
    #[arg(long)]
    pub g: Option<f64>,
    /// Lowest input power, in units of the OIBA pump flux n̄_in
    #[arg(long)]
    pub power_min: Option<f64>,
    #[arg(long)]
    pub power_max: Option<f64>,
    #[arg(long)]
    pub power_points: Option<usize>,
    #[arg(long, value_enum)]
    pub input_port: Option<PortArg>,
}

/// Fully resolved configuration in `κ₁ = 1` units; echoed into every output.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Resolved {
    pub command: &'static str,
    pub model: ModelKind,
    pub gain_db: f64,
    pub kappa1: f64,
    pub kappa2: f64,
    #[serde(rename = "match")]
    pub match_condition: MatchArg,
    pub units: Units,
    /// `κ₁` in the declared units; frequency and rate columns are multiplied by it.
    pub rate_unit: f64,
    pub format: Format,
    pub omega_min: f64,
    pub omega_max: f64,
    pub omega_points: usize,
    pub db_min: f64,
    pub db_max: f64,
    pub db_points: usize,
    pub gamma1: f64,
    pub gamma2: f64,
    pub g1: f64,
    pub g2: f64,
    pub power_min: f64,
    pub power_max: f64,
    pub power_points: usize,
    pub input_port: PortArg,
    #[serde(skip)]
    pub out: Option<PathBuf>,
}

fn positive(name: &str, v: f64) -> Result<f64, CliError> {
    if v.is_finite() && v > 0.0 {
        Ok(v)
    } else {
        Err(CliError::Config(format!("{name} must be finite and > 0, got {v}")))
    }
}

fn finite(name: &str, v: f64) -> Result<f64, CliError> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(CliError::Config(format!("{name} must be finite, got {v}")))
    }
}

fn range(name: &str, lo: f64, hi: f64, points: usize) -> Result<(), CliError> {
    if lo < hi && points >= 2 {
        Ok(())
    } else {
        Err(CliError::Config(format!("empty {name} range [{lo}, {hi}] with {points} points")))
    }
}

impl Resolved {
    pub fn new(
        command: &'static str,
        common: &CommonArgs,
        grid: &GainGridArgs,
        pump: &PumpArgs,
    ) -> Result<Self, CliError> {
        let file = match &common.config {
            Some(path) => RunConfig::load(path)?,
            None => RunConfig::default(),
        };
        let units = common.units.or(file.units).unwrap_or(Units::Kappa);
        let raw_kappa1 = positive("kappa1", common.kappa1.or(file.kappa1).unwrap_or(1.0))?;
        let scale = match units {
            Units::Kappa => {
                if raw_kappa1 != 1.0 {
                    return Err(CliError::Config("kappa1 must be 1 in kappa units; use --units mhz".into()));
                }
                1.0
            }
            Units::Mhz => raw_kappa1,
        };
        let rate = |name: &str, v: f64| positive(name, v).map(|v| v / scale);
        let freq = |name: &str, v: f64| finite(name, v).map(|v| v / scale);

        let omega_min = freq("omega_min", common.omega_min.or(file.sweep.omega_min).unwrap_or(-5.0 * scale))?;
        let omega_max = freq("omega_max", common.omega_max.or(file.sweep.omega_max).unwrap_or(5.0 * scale))?;
        let omega_points = common.omega_points.or(file.sweep.points).unwrap_or(2001);
        let db_min = finite("db_min", grid.db_min.or(file.gain_grid.db_min).unwrap_or(0.0))?;
        let db_max = finite("db_max", grid.db_max.or(file.gain_grid.db_max).unwrap_or(40.0))?;
        let db_points = grid.db_points.or(file.gain_grid.points).unwrap_or(41);
        let gamma1 = rate("gamma1", pump.gamma.or(file.pump.gamma1).unwrap_or(12.0 * scale))?;
        let gamma2 = rate("gamma2", pump.gamma.or(file.pump.gamma2).unwrap_or(12.0 * scale))?;
        let g1 = rate("g1", pump.g.or(file.pump.g1).unwrap_or(0.014 * scale))?;
        let g2 = rate("g2", pump.g.or(file.pump.g2).unwrap_or(0.014 * scale))?;
        let power_min = positive("power_min", pump.power_min.or(file.pump.power_min).unwrap_or(1e-8))?;
        let power_max = positive("power_max", pump.power_max.or(file.pump.power_max).unwrap_or(1e1))?;
        let power_points = pump.power_points.or(file.pump.points).unwrap_or(60);
        let gain_db = finite("gain_db", common.gain_db.or(file.gain_db).unwrap_or(20.0))?;
        if gain_db < 0.0 {
            return Err(CliError::Config(format!("gain_db must be ≥ 0, got {gain_db}")));
        }

        let resolved = Self {
            command,
            model: common.model.or(file.model).unwrap_or(ModelKind::Odba),
            gain_db,
            kappa1: 1.0,
            kappa2: rate("kappa2", common.kappa2.or(file.kappa2).unwrap_or(raw_kappa1))?,
            match_condition: common.match_condition.or(file.match_condition).unwrap_or(MatchArg::Impedance),
            units,
            rate_unit: scale,
            format: common.format.or(file.format).unwrap_or(Format::Csv),
            omega_min,
            omega_max,
            omega_points,
            db_min,
            db_max,
            db_points,
            gamma1,
            gamma2,
            g1,
            g2,
            power_min,
            power_max,
            power_points,
            input_port: pump.input_port.or(file.pump.input_port).unwrap_or(PortArg::Cavity2),
            out: common.out.clone().or(file.out),
        };
        match command {
            "gain-sweep" => range("omega", omega_min, omega_max, omega_points)?,
            "squeeze-sweep" => range("gain_db", db_min, db_max, db_points)?,
            "depletion" => range("power", power_min, power_max, power_points)?,
            _ => {}
        }
        Ok(resolved)
    }

    /// Amplifier parameters at the target gain.
    pub fn amplifier(&self) -> crate::Result<AmplifierParams> {
        Ok(match self.model {
            ModelKind::Dpa => AmplifierParams::Dpa(DpaParams::resonant_for_gain(self.kappa1, self.gain_db)?),
            ModelKind::Odba => make_odba_for_gain(self.kappa1, self.gain_db)?.params,
            ModelKind::Oiba => {
                make_oiba_for_gain(self.kappa1, self.kappa2, self.gain_db, self.match_condition.into())?.params
            }
            ModelKind::Qnd => make_qnd_for_gain(self.kappa1, self.gain_db)?.params,
            ModelKind::Detuned2 => make_detuned_two_mode_for_gain(self.kappa1, self.gain_db)?.params,
        })
    }
}
