use serde::Serialize;
use uwbd_core::{
    duty_cycle, fig1_rows, fig1_series, ir_uwb_capacity, optimize, pulse_from_bandwidth,
    shannon_capacity, sweep, AwgnLinkParams, DelaySpreadStatistic, DesignPoint, Fig1Row,
    GridSpacing, OptimizationResult, PowerDelayProfile, PulseConfig, SnrGate,
};

use crate::config::{
    file_config, CapacityArgs, Cli, Fig1Args, IngestArgs, OutputFormat, RunConfig, ScenarioArgs,
};
use crate::output::{emit, json, sci, Table};
use crate::CliError;

fn finish(config: &RunConfig, body: String) -> Result<(), CliError> {
    emit(&body, config.output_path.as_deref())
}

#[derive(Serialize)]
struct IrUwbReport {
    subband_bandwidth_hz: Option<f64>,
    pulse_duration_s: f64,
    delay_spread_s: f64,
    capacity_bps: f64,
    duty_cycle: f64,
}

#[derive(Serialize)]
struct ShannonReport {
    bandwidth_hz: f64,
    snr: f64,
    capacity_bps: f64,
}

#[derive(Serialize)]
struct CapacityReport<'a> {
    config: &'a RunConfig,
    ir_uwb: Option<IrUwbReport>,
    shannon: Option<ShannonReport>,
}

pub fn capacity(cli: &Cli, args: &CapacityArgs) -> Result<(), CliError> {
    let (config, _) = RunConfig::merge(cli, &args.scenario, file_config(cli)?)?;

    let pulse = match (args.subband_bandwidth, args.pulse_duration) {
        (Some(bs), _) => Some(pulse_from_bandwidth(bs)?),
        (None, Some(tp)) => Some(PulseConfig::new(tp)?),
        (None, None) => None,
    };
    if pulse.is_none() && !args.shannon {
        return Err(CliError::Invalid(
            "nothing to evaluate: pass --subband-bandwidth, --pulse-duration or --shannon".into(),
        ));
    }

    let ir_uwb = match pulse {
        Some(pulse) => {
            let channel = config.channel()?;
            Some(IrUwbReport {
                subband_bandwidth_hz: args.subband_bandwidth,
                pulse_duration_s: pulse.pulse_duration,
                delay_spread_s: channel.delay_spread,
                capacity_bps: ir_uwb_capacity(&pulse, &channel)?,
                duty_cycle: duty_cycle(&pulse, &channel)?,
            })
        }
        None => None,
    };

    let shannon = if args.shannon {
        let bandwidth = args
            .bandwidth
            .ok_or_else(|| CliError::Invalid("--shannon needs --bandwidth".into()))?;
        let link = match (args.snr, args.signal_power, args.noise_density) {
            (Some(snr), _, _) => AwgnLinkParams::from_snr(bandwidth, snr),
            (None, Some(ps), Some(n0)) => AwgnLinkParams::from_power(bandwidth, ps, n0),
            _ => {
                return Err(CliError::Invalid(
                    "--shannon needs --snr or --signal-power with --noise-density".into(),
                ))
            }
        };
        Some(ShannonReport {
            bandwidth_hz: bandwidth,
            snr: link.snr()?,
            capacity_bps: shannon_capacity(&link)?,
        })
    } else {
        None
    };

    let body = match config.output_format {
        OutputFormat::Json => json(&CapacityReport {
            config: &config,
            ir_uwb,
            shannon,
        }),
        OutputFormat::Csv => {
            let d = cli.digits;
            let mut t = Table::new(&["quantity", "value"]);
            let mut row = |k: &str, v: f64| t.push(vec![k.to_string(), sci(v, d)]);
            if let Some(r) = &ir_uwb {
                if let Some(bs) = r.subband_bandwidth_hz {
                    row("subband_bandwidth_hz", bs);
                }
                row("pulse_duration_s", r.pulse_duration_s);
                row("delay_spread_s", r.delay_spread_s);
                row("ir_uwb_capacity_bps", r.capacity_bps);
                row("duty_cycle", r.duty_cycle);
            }
            if let Some(r) = &shannon {
                row("shannon_bandwidth_hz", r.bandwidth_hz);
                row("snr", r.snr);
                row("shannon_capacity_bps", r.capacity_bps);
            }
            t.render()
        }
    };
    finish(&config, body)
}

const OPTIMIZE_HEADER: &[&str] = &[
    "feasible",
    "bs_min_hz",
    "bs_min_branch",
    "n",
    "bs_hz",
    "bt_hz",
    "per_subband_capacity_bps",
    "total_capacity_bps",
    "duty_cycle",
    "binding_constraints",
];

fn optimize_table(result: &OptimizationResult, digits: u8) -> Table {
    let mut t = Table::new(OPTIMIZE_HEADER);
    let mut row = vec![
        result.feasible.to_string(),
        sci(result.bs_min, digits),
        result.bs_min_branch.label().to_string(),
    ];
    match &result.optimum {
        Some(p) => row.extend([
            p.n.to_string(),
            sci(p.bs, digits),
            sci(p.bt(), digits),
            sci(p.per_subband_capacity, digits),
            sci(p.total_capacity, digits),
            sci(p.duty_cycle, digits),
        ]),
        None => row.extend(std::iter::repeat_n(String::new(), 6)),
    }
    row.push(
        result
            .binding_constraints
            .iter()
            .map(|c| c.label())
            .collect::<Vec<_>>()
            .join(";"),
    );
    t.push(row);
    t
}

#[derive(Serialize)]
struct OptimizeReport<'a> {
    config: &'a RunConfig,
    result: &'a OptimizationResult,
}

pub fn optimize_cmd(cli: &Cli, args: &ScenarioArgs) -> Result<(), CliError> {
    let (config, _) = RunConfig::merge(cli, args, file_config(cli)?)?;
    let constraints = config.constraints()?;
    let result = optimize(&constraints)?;

    let body = match config.output_format {
        OutputFormat::Json => json(&OptimizeReport {
            config: &config,
            result: &result,
        }),
        OutputFormat::Csv => optimize_table(&result, cli.digits).render(),
    };
    finish(&config, body)?;
    match result.infeasibility(&constraints) {
        Some(err) => Err(err.into()),
        None => Ok(()),
    }
}

const SWEEP_HEADER: &[&str] = &[
    "bs_hz",
    "n",
    "bt_hz",
    "per_subband_capacity_bps",
    "total_capacity_bps",
    "duty_cycle",
];

#[derive(Serialize)]
struct SweepReport<'a> {
    config: &'a RunConfig,
    step_hz: f64,
    rows: &'a [DesignPoint],
}

pub fn sweep_cmd(cli: &Cli, args: &ScenarioArgs) -> Result<(), CliError> {
    let (config, _) = RunConfig::merge(cli, args, file_config(cli)?)?;
    let constraints = config.constraints()?;
    let table = sweep(&constraints, config.sweep_step)?;

    let body = match config.output_format {
        OutputFormat::Json => json(&SweepReport {
            config: &config,
            step_hz: table.step,
            rows: &table.rows,
        }),
        OutputFormat::Csv => {
            let d = cli.digits;
            let mut t = Table::new(SWEEP_HEADER);
            for p in &table.rows {
                t.push(vec![
                    sci(p.bs, d),
                    p.n.to_string(),
                    sci(p.bt(), d),
                    sci(p.per_subband_capacity, d),
                    sci(p.total_capacity, d),
                    sci(p.duty_cycle, d),
                ]);
            }
            t.render()
        }
    };
    finish(&config, body)
}

#[derive(Serialize)]
struct SeriesSettings {
    delay_spreads_s: Vec<f64>,
    bandwidths_hz: Option<Vec<f64>>,
    bandwidth_min_hz: f64,
    bandwidth_max_hz: f64,
    points: usize,
    spacing: GridSpacing,
    snr_gate: Option<SnrGate>,
}

#[derive(Serialize)]
struct Fig1Report<'a> {
    config: &'a RunConfig,
    series: SeriesSettings,
    rows: &'a [Fig1Row],
}

pub fn fig1(cli: &Cli, args: &Fig1Args) -> Result<(), CliError> {
    let (config, _) = RunConfig::merge(cli, &ScenarioArgs::default(), file_config(cli)?)?;

    let delay_spreads = if args.delay_spreads.is_empty() {
        uwbd_core::capacity::FIG1_DEFAULT_DELAY_SPREADS.to_vec()
    } else {
        args.delay_spreads.clone()
    };
    let spacing = if args.linear {
        GridSpacing::Linear
    } else {
        GridSpacing::Log
    };
    let gate = match (args.signal_power, args.noise_density) {
        (Some(ps), Some(n0)) => Some(SnrGate {
            signal_power: ps,
            noise_spectral_density: n0,
            threshold_db: args.snr_threshold_db,
        }),
        _ => None,
    };

    let rows = if args.bandwidth.is_empty() {
        fig1_series(
            &delay_spreads,
            (args.bandwidth_min, args.bandwidth_max),
            args.points,
            spacing,
            gate.as_ref(),
        )?
    } else {
        fig1_rows(&delay_spreads, &args.bandwidth, gate.as_ref())?
    };

    let body = match config.output_format {
        OutputFormat::Json => json(&Fig1Report {
            config: &config,
            series: SeriesSettings {
                delay_spreads_s: delay_spreads,
                bandwidths_hz: (!args.bandwidth.is_empty()).then(|| args.bandwidth.clone()),
                bandwidth_min_hz: args.bandwidth_min,
                bandwidth_max_hz: args.bandwidth_max,
                points: args.points,
                spacing,
                snr_gate: gate,
            },
            rows: &rows,
        }),
        OutputFormat::Csv => {
            let d = cli.digits;
            let mut t = Table::new(&[
                "kind",
                "delay_spread_s",
                "bandwidth_hz",
                "capacity_bps",
                "snr_valid",
            ]);
            for r in &rows {
                t.push(vec![
                    r.kind.label().to_string(),
                    sci(r.delay_spread, d),
                    r.bandwidth.map(|b| sci(b, d)).unwrap_or_default(),
                    sci(r.capacity, d),
                    r.snr_valid.map(|v| v.to_string()).unwrap_or_default(),
                ]);
            }
            t.render()
        }
    };
    finish(&config, body)
}

#[derive(Serialize)]
struct ProfileReport<'a> {
    source: &'a str,
    taps: usize,
    statistic: DelaySpreadStatistic,
    delay_spread_s: f64,
}

#[derive(Serialize)]
struct IngestReport<'a> {
    config: &'a RunConfig,
    profile: ProfileReport<'a>,
    #[serde(skip_serializing_if = "Option::is_none")]
    optimization: Option<&'a OptimizationResult>,
}

fn ingest_body(
    cli: &Cli,
    config: &RunConfig,
    profile: ProfileReport<'_>,
    optimization: Option<&OptimizationResult>,
) -> String {
    match config.output_format {
        OutputFormat::Json => json(&IngestReport {
            config,
            profile,
            optimization,
        }),
        OutputFormat::Csv => {
            let mut t = Table::new(&["source", "taps", "statistic", "delay_spread_s"]);
            t.push(vec![
                profile.source.to_string(),
                profile.taps.to_string(),
                profile.statistic.label().to_string(),
                sci(profile.delay_spread_s, cli.digits),
            ]);
            let mut text = t.render();
            if let Some(result) = optimization {
                text.push('\n');
                text.push_str(&optimize_table(result, cli.digits).render());
            }
            text
        }
    }
}

pub fn ingest_pdp(cli: &Cli, args: &IngestArgs) -> Result<(), CliError> {
    if args.scenario.delay_spread.is_some() {
        return Err(CliError::Invalid(
            "ingest-pdp takes its delay spread from --pdp, not --delay-spread".into(),
        ));
    }
    let mut file = file_config(cli)?;
    file.channel = None;
    let (config, pdp) = RunConfig::merge(cli, &args.scenario, file)?;
    let pdp: PowerDelayProfile = pdp
        .ok_or_else(|| CliError::Invalid("ingest-pdp needs a profile: pass --pdp <PATH>".into()))?;
    let delay_spread = config.channel()?.delay_spread;
    let profile = || ProfileReport {
        source: pdp.source_label(),
        taps: pdp.taps().len(),
        statistic: config.delay_spread_statistic,
        delay_spread_s: delay_spread,
    };

    if !args.optimize {
        return finish(&config, ingest_body(cli, &config, profile(), None));
    }

    let solved = config.constraints().and_then(|c| Ok((optimize(&c)?, c)));
    match solved {
        Ok((result, constraints)) => {
            finish(&config, ingest_body(cli, &config, profile(), Some(&result)))?;
            match result.infeasibility(&constraints) {
                Some(err) => Err(err.into()),
                None => Ok(()),
            }
        }
        Err(err) => {
            finish(&config, ingest_body(cli, &config, profile(), None))?;
            Err(err)
        }
    }
}
