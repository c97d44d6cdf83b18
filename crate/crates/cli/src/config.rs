//! Command-line arguments, the JSON config file, and their merge.
//!
//! Precedence: flags, then the config file (`--config` or `UWBD_CONFIG`),
//! then built-in defaults. The merged result is echoed in JSON output.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use uwbd_core::{
    load_pdp, ChannelProfile, DelaySpreadStatistic, DesignConstraints, PdpFormat, PowerDelayProfile,
};

use crate::units;
use crate::CliError;

/// Default sweep step, 0.1 MHz.
pub const DEFAULT_STEP_HZ: f64 = 0.1e6;

#[derive(Debug, Parser)]
#[command(
    name = "uwbd",
    version,
    about = "Capacity, duty-cycle and subband design for multiband IR-UWB"
)]
pub struct Cli {
    /// JSON config file; flags override its values.
    #[arg(long, global = true, env = "UWBD_CONFIG", value_name = "PATH")]
    pub config: Option<PathBuf>,

    /// Output format.
    #[arg(long, global = true, value_enum)]
    pub format: Option<OutputFormat>,

    /// Write output to this file instead of standard output.
    #[arg(long, global = true, value_name = "PATH")]
    pub output: Option<PathBuf>,

    /// Significant digits for CSV numbers.
    #[arg(long, global = true, default_value_t = 4, value_parser = clap::value_parser!(u8).range(1..=17))]
    pub digits: u8,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Shannon and IR-UWB capacity and duty cycle for one configuration.
    Capacity(CapacityArgs),
    /// Feasibility bound and capacity-optimal subband design.
    Optimize(ScenarioArgs),
    /// Design table across the admissible subband bandwidths.
    Sweep(ScenarioArgs),
    /// IR-UWB capacity versus bandwidth for several delay spreads.
    Fig1(Fig1Args),
    /// Delay spread of a power delay profile file.
    IngestPdp(IngestArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum PdpFormatArg {
    CsvNsDb,
    CsvNsLinear,
}

impl From<PdpFormatArg> for PdpFormat {
    fn from(f: PdpFormatArg) -> Self {
        match f {
            PdpFormatArg::CsvNsDb => PdpFormat::CsvNsDb,
            PdpFormatArg::CsvNsLinear => PdpFormat::CsvNsLinear,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum StatisticArg {
    Rms,
    MaxExcess,
}

impl From<StatisticArg> for DelaySpreadStatistic {
    fn from(s: StatisticArg) -> Self {
        match s {
            StatisticArg::Rms => DelaySpreadStatistic::Rms,
            StatisticArg::MaxExcess => DelaySpreadStatistic::MaxExcess,
        }
    }
}

/// Constraint and channel flags shared by the design subcommands.
#[derive(Debug, Clone, Default, Args)]
pub struct ScenarioArgs {
    /// Total available bandwidth (e.g. 7.5GHz).
    #[arg(long, value_parser = units::positive_frequency)]
    pub bt_max: Option<f64>,
    /// Maximum subband bandwidth (e.g. 750MHz).
    #[arg(long, value_parser = units::positive_frequency)]
    pub bs_max: Option<f64>,
    /// Maximum duty cycle, fraction or percentage (0.2 or 20%).
    #[arg(long, value_parser = units::fraction)]
    pub alpha_max: Option<f64>,
    /// Maximum number of subbands.
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    pub n_max: Option<u32>,
    /// Channel delay spread (e.g. 9ns).
    #[arg(long, value_parser = units::non_negative_time, conflicts_with = "pdp")]
    pub delay_spread: Option<f64>,
    /// Power delay profile file supplying the delay spread.
    #[arg(long, value_name = "PATH")]
    pub pdp: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub pdp_format: Option<PdpFormatArg>,
    /// Statistic reducing the profile to a delay spread.
    #[arg(long, value_enum)]
    pub statistic: Option<StatisticArg>,
    /// Sweep and brute-force grid step (default 0.1MHz).
    #[arg(long, value_parser = units::positive_frequency)]
    pub step: Option<f64>,
}

#[derive(Debug, Clone, Args)]
pub struct CapacityArgs {
    /// Subband bandwidth; the pulse duration is its reciprocal.
    #[arg(long, value_parser = units::positive_frequency, conflicts_with = "pulse_duration")]
    pub subband_bandwidth: Option<f64>,
    /// Pulse duration (e.g. 1ns).
    #[arg(long, value_parser = units::positive_time)]
    pub pulse_duration: Option<f64>,
    /// Also evaluate the Shannon AWGN capacity.
    #[arg(long)]
    pub shannon: bool,
    /// AWGN channel bandwidth for --shannon.
    #[arg(long, value_parser = units::positive_frequency)]
    pub bandwidth: Option<f64>,
    /// Linear SNR for --shannon.
    #[arg(long, value_parser = units::non_negative, conflicts_with_all = ["signal_power", "noise_density"])]
    pub snr: Option<f64>,
    /// Signal power in watts for --shannon.
    #[arg(long, value_parser = units::non_negative, requires = "noise_density")]
    pub signal_power: Option<f64>,
    /// Noise spectral density in W/Hz for --shannon.
    #[arg(long, value_parser = units::positive, requires = "signal_power")]
    pub noise_density: Option<f64>,
    #[command(flatten)]
    pub scenario: ScenarioArgs,
}

#[derive(Debug, Clone, Args)]
pub struct Fig1Args {
    /// Comma-separated delay spreads (default 10ns,20ns,50ns).
    #[arg(long, value_delimiter = ',', value_parser = units::positive_time)]
    pub delay_spreads: Vec<f64>,
    /// Explicit bandwidth points instead of a generated grid.
    #[arg(long, value_delimiter = ',', value_parser = units::positive_frequency,
          conflicts_with_all = ["bandwidth_min", "bandwidth_max", "points", "linear"])]
    pub bandwidth: Vec<f64>,
    #[arg(long, value_parser = units::positive_frequency, default_value = "10MHz")]
    pub bandwidth_min: f64,
    #[arg(long, value_parser = units::positive_frequency, default_value = "100GHz")]
    pub bandwidth_max: f64,
    /// Grid points per curve.
    #[arg(long, default_value_t = 50)]
    pub points: usize,
    /// Linear instead of logarithmic bandwidth grid.
    #[arg(long)]
    pub linear: bool,
    /// Signal power (W) for flagging rows at or below the SNR threshold.
    #[arg(long, value_parser = units::non_negative, requires = "noise_density")]
    pub signal_power: Option<f64>,
    /// Noise spectral density (W/Hz) for the SNR flag.
    #[arg(long, value_parser = units::positive, requires = "signal_power")]
    pub noise_density: Option<f64>,
    #[arg(long, default_value_t = uwbd_core::capacity::FIG1_REQUIRED_SNR_DB, allow_negative_numbers = true)]
    pub snr_threshold_db: f64,
}

#[derive(Debug, Clone, Args)]
pub struct IngestArgs {
    /// Chain into the optimizer with the computed delay spread.
    #[arg(long)]
    pub optimize: bool,
    #[command(flatten)]
    pub scenario: ScenarioArgs,
}

/// Config file schema: constraint field names plus sweep and output settings.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub n_max: Option<u32>,
    pub bs_max: Option<f64>,
    pub bt_max: Option<f64>,
    pub alpha_max: Option<f64>,
    pub channel: Option<ChannelProfile>,
    pub sweep_step: Option<f64>,
    pub pdp_path: Option<PathBuf>,
    pub pdp_format: Option<PdpFormat>,
    pub delay_spread_statistic: Option<DelaySpreadStatistic>,
    pub output_format: Option<OutputFormat>,
    pub output_path: Option<PathBuf>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| {
            CliError::Invalid(format!("cannot read config {}: {e}", path.display()))
        })?;
        serde_json::from_str(&text)
            .map_err(|e| CliError::Invalid(format!("config {}: {e}", path.display())))
    }
}

/// Effective configuration after merging flags over the config file.
#[derive(Debug, Clone, Serialize)]
pub struct RunConfig {
    pub n_max: Option<u32>,
    pub bs_max: Option<f64>,
    pub bt_max: Option<f64>,
    pub alpha_max: Option<f64>,
    pub channel: Option<ChannelProfile>,
    pub sweep_step: f64,
    pub pdp_path: Option<PathBuf>,
    pub pdp_format: PdpFormat,
    pub delay_spread_statistic: DelaySpreadStatistic,
    pub output_format: OutputFormat,
    pub output_path: Option<PathBuf>,
}

impl RunConfig {
    pub fn merge(
        cli: &Cli,
        scenario: &ScenarioArgs,
        file: FileConfig,
    ) -> Result<(Self, Option<PowerDelayProfile>), CliError> {
        if file.channel.is_some() && file.pdp_path.is_some() {
            return Err(CliError::Invalid(
                "config file sets both channel.delay_spread and pdp_path; keep one delay-spread source"
                    .into(),
            ));
        }
        // A delay-spread flag replaces whichever source the file names.
        let (channel, pdp_path) = match (scenario.delay_spread, &scenario.pdp) {
            (Some(d), _) => (Some(ChannelProfile { delay_spread: d }), None),
            (None, Some(p)) => (None, Some(p.clone())),
            (None, None) => (file.channel, file.pdp_path),
        };

        let mut config = RunConfig {
            n_max: scenario.n_max.or(file.n_max),
            bs_max: scenario.bs_max.or(file.bs_max),
            bt_max: scenario.bt_max.or(file.bt_max),
            alpha_max: scenario.alpha_max.or(file.alpha_max),
            channel,
            sweep_step: scenario.step.or(file.sweep_step).unwrap_or(DEFAULT_STEP_HZ),
            pdp_path,
            pdp_format: scenario
                .pdp_format
                .map(Into::into)
                .or(file.pdp_format)
                .unwrap_or_default(),
            delay_spread_statistic: scenario
                .statistic
                .map(Into::into)
                .or(file.delay_spread_statistic)
                .unwrap_or_default(),
            output_format: cli.format.or(file.output_format).unwrap_or_default(),
            output_path: cli.output.clone().or(file.output_path),
        };

        let pdp = match &config.pdp_path {
            Some(path) => {
                let pdp = load_pdp(path, config.pdp_format)?;
                config.channel = Some(ChannelProfile {
                    delay_spread: config.delay_spread_statistic.apply(&pdp),
                });
                Some(pdp)
            }
            None => None,
        };
        Ok((config, pdp))
    }

    pub fn channel(&self) -> Result<ChannelProfile, CliError> {
        let channel = self.channel.ok_or_else(|| {
            CliError::Invalid("a delay spread is required: pass --delay-spread or --pdp".into())
        })?;
        ChannelProfile::new(channel.delay_spread).map_err(CliError::from)
    }

    pub fn constraints(&self) -> Result<DesignConstraints, CliError> {
        let missing = [
            ("--n-max", self.n_max.is_none()),
            ("--bs-max", self.bs_max.is_none()),
            ("--bt-max", self.bt_max.is_none()),
            ("--alpha-max", self.alpha_max.is_none()),
        ]
        .into_iter()
        .filter_map(|(flag, absent)| absent.then_some(flag))
        .collect::<Vec<_>>();
        if !missing.is_empty() {
            return Err(CliError::Invalid(format!(
                "missing constraint(s): {}",
                missing.join(", ")
            )));
        }
        let constraints = DesignConstraints {
            n_max: self.n_max.unwrap_or_default(),
            bs_max: self.bs_max.unwrap_or_default(),
            bt_max: self.bt_max.unwrap_or_default(),
            alpha_max: self.alpha_max.unwrap_or_default(),
            channel: self.channel()?,
        };
        constraints.validate()?;
        Ok(constraints)
    }
}

/// Reads the config file named by `--config` / `UWBD_CONFIG`, if any.
pub fn file_config(cli: &Cli) -> Result<FileConfig, CliError> {
    match &cli.config {
        Some(path) => FileConfig::load(path),
        None => Ok(FileConfig::default()),
    }
}
