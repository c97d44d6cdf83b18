//! `uwbd`: command-line front end for the MB-IR-UWB design toolkit.
//!
//! Exit codes: 0 success, 2 invalid input, 3 infeasible design.

mod commands;
mod config;
mod output;
mod units;

use std::process::ExitCode;

use clap::Parser;
use thiserror::Error;
use uwbd_core::{ModelError, PdpError};

use config::{Cli, Command};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Invalid(String),

    #[error("{}", describe(.0))]
    Model(ModelError),

    #[error(transparent)]
    Pdp(#[from] PdpError),

    #[error("cannot write output: {0}")]
    Output(std::io::Error),
}

impl From<ModelError> for CliError {
    fn from(err: ModelError) -> Self {
        CliError::Model(err)
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Model(ModelError::Infeasible { .. }) => 3,
            CliError::Output(_) => 1,
            _ => 2,
        }
    }
}

/// Flag that sets a model parameter, when there is one.
fn flag_for(parameter: &str) -> Option<&'static str> {
    Some(match parameter {
        "n_max" => "--n-max",
        "bs_max" => "--bs-max",
        "bt_max" => "--bt-max",
        "alpha_max" => "--alpha-max",
        "delay_spread" => "--delay-spread",
        "subband_bandwidth" => "--subband-bandwidth",
        "pulse_duration" => "--pulse-duration",
        "bandwidth" => "--bandwidth",
        "bandwidth_min" => "--bandwidth-min",
        "bandwidth_max" => "--bandwidth-max",
        "points" => "--points",
        "delay_spreads" => "--delay-spreads",
        "snr" => "--snr",
        "signal_power" => "--signal-power",
        "noise_spectral_density" => "--noise-density",
        "bs_step" => "--step",
        _ => return None,
    })
}

fn describe(err: &ModelError) -> String {
    match err {
        ModelError::InvalidParameter { name, .. } => match flag_for(name) {
            Some(flag) => format!("{err} (check {flag})"),
            None => err.to_string(),
        },
        _ => err.to_string(),
    }
}

fn run(cli: &Cli) -> Result<(), CliError> {
    match &cli.command {
        Command::Capacity(args) => commands::capacity(cli, args),
        Command::Optimize(args) => commands::optimize_cmd(cli, args),
        Command::Sweep(args) => commands::sweep_cmd(cli, args),
        Command::Fig1(args) => commands::fig1(cli, args),
        Command::IngestPdp(args) => commands::ingest_pdp(cli, args),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("uwbd: {err}");
            ExitCode::from(err.exit_code())
        }
    }
}
