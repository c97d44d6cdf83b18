//! Capacity and duty-cycle models for impulse-radio UWB.
//!
//! Every quantity is carried in SI base units: hertz, seconds, watts and
//! bits per second. Conversion to display units happens at the I/O edge.
//!
//! The IR-UWB model assumes binary modulation and no inter-symbol
//! interference, so one symbol occupies the pulse plus the full channel
//! delay spread:
//!
//! ```text
//! C = 1 / (Tp + d_spread)            alpha = Tp / (Tp + d_spread)
//! ```
//!
//! When the pulse is derived from a subband bandwidth, `Tp = 1 / Bs`.

use serde::{Deserialize, Serialize};

use crate::error::{ModelError, Result};

/// Default delay-spread preset for the capacity-versus-bandwidth table.
pub const FIG1_DEFAULT_DELAY_SPREADS: [f64; 3] = [10e-9, 20e-9, 50e-9];

/// Alternative preset reaching out to 100 ns.
pub const FIG1_WIDE_DELAY_SPREADS: [f64; 3] = [10e-9, 50e-9, 100e-9];

/// SNR threshold (dB) below which a capacity-versus-bandwidth row is flagged.
pub const FIG1_REQUIRED_SNR_DB: f64 = 3.0;

/// Propagation environment reduced to a single delay spread.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChannelProfile {
    /// Delay spread in seconds.
    pub delay_spread: f64,
}

impl ChannelProfile {
    /// A zero delay spread is accepted here as the pulse-only limit; the
    /// optimizer rejects it separately.
    pub fn new(delay_spread: f64) -> Result<Self> {
        let channel = ChannelProfile { delay_spread };
        channel.check()?;
        Ok(channel)
    }

    pub(crate) fn check(&self) -> Result<()> {
        if !self.delay_spread.is_finite() || self.delay_spread < 0.0 {
            return Err(ModelError::invalid(
                "delay_spread",
                self.delay_spread,
                "must be finite and >= 0",
            ));
        }
        Ok(())
    }
}

/// How the received signal level of an AWGN link is specified.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SignalLevel {
    /// Signal power (W) and one-sided noise spectral density (W/Hz).
    Power {
        signal_power: f64,
        noise_spectral_density: f64,
    },
    /// Linear signal-to-noise ratio.
    Snr(f64),
}

/// Band-limited AWGN link.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AwgnLinkParams {
    /// Bandwidth in hertz.
    pub bandwidth: f64,
    pub signal: SignalLevel,
}

impl AwgnLinkParams {
    pub fn from_snr(bandwidth: f64, snr: f64) -> Self {
        AwgnLinkParams {
            bandwidth,
            signal: SignalLevel::Snr(snr),
        }
    }

    pub fn from_power(bandwidth: f64, signal_power: f64, noise_spectral_density: f64) -> Self {
        AwgnLinkParams {
            bandwidth,
            signal: SignalLevel::Power {
                signal_power,
                noise_spectral_density,
            },
        }
    }

    /// Linear SNR of the link, `Ps / (B * N0)` in power form.
    pub fn snr(&self) -> Result<f64> {
        if !self.bandwidth.is_finite() || self.bandwidth <= 0.0 {
            return Err(ModelError::invalid(
                "bandwidth",
                self.bandwidth,
                "must be finite and > 0",
            ));
        }
        match self.signal {
            SignalLevel::Snr(snr) => {
                if !snr.is_finite() || snr < 0.0 {
                    return Err(ModelError::invalid("snr", snr, "must be finite and >= 0"));
                }
                Ok(snr)
            }
            SignalLevel::Power {
                signal_power,
                noise_spectral_density,
            } => {
                if !signal_power.is_finite() || signal_power < 0.0 {
                    return Err(ModelError::invalid(
                        "signal_power",
                        signal_power,
                        "must be finite and >= 0",
                    ));
                }
                if !noise_spectral_density.is_finite() || noise_spectral_density <= 0.0 {
                    return Err(ModelError::invalid(
                        "noise_spectral_density",
                        noise_spectral_density,
                        "must be finite and > 0",
                    ));
                }
                Ok(signal_power / (self.bandwidth * noise_spectral_density))
            }
        }
    }
}

/// Shannon capacity `B * log2(1 + SNR)` in bits/s.
pub fn shannon_capacity(link: &AwgnLinkParams) -> Result<f64> {
    let snr = link.snr()?;
    Ok(link.bandwidth * (1.0 + snr).log2())
}

/// IR-UWB pulse.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PulseConfig {
    /// Pulse duration in seconds.
    pub pulse_duration: f64,
    /// Set when the duration was obtained as the reciprocal of a bandwidth.
    pub derived_from_bandwidth: bool,
}

impl PulseConfig {
    pub fn new(pulse_duration: f64) -> Result<Self> {
        let pulse = PulseConfig {
            pulse_duration,
            derived_from_bandwidth: false,
        };
        pulse.check()?;
        Ok(pulse)
    }

    fn check(&self) -> Result<()> {
        if !self.pulse_duration.is_finite() || self.pulse_duration <= 0.0 {
            return Err(ModelError::invalid(
                "pulse_duration",
                self.pulse_duration,
                "must be finite and > 0",
            ));
        }
        Ok(())
    }
}

/// Pulse occupying a subband of the given bandwidth: `Tp = 1 / Bs`.
pub fn pulse_from_bandwidth(subband_bandwidth: f64) -> Result<PulseConfig> {
    if !subband_bandwidth.is_finite() || subband_bandwidth <= 0.0 {
        return Err(ModelError::invalid(
            "subband_bandwidth",
            subband_bandwidth,
            "must be finite and > 0",
        ));
    }
    Ok(PulseConfig {
        pulse_duration: 1.0 / subband_bandwidth,
        derived_from_bandwidth: true,
    })
}

/// IR-UWB capacity `1 / (Tp + d_spread)` in bits/s.
pub fn ir_uwb_capacity(pulse: &PulseConfig, channel: &ChannelProfile) -> Result<f64> {
    pulse.check()?;
    channel.check()?;
    Ok(1.0 / (pulse.pulse_duration + channel.delay_spread))
}

/// Transmit duty cycle `Tp / (Tp + d_spread)`.
pub fn duty_cycle(pulse: &PulseConfig, channel: &ChannelProfile) -> Result<f64> {
    pulse.check()?;
    channel.check()?;
    Ok(pulse.pulse_duration / (pulse.pulse_duration + channel.delay_spread))
}

/// Spacing of a bandwidth grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GridSpacing {
    #[default]
    Log,
    Linear,
}

/// `points` bandwidths from `min` to `max`, both endpoints included exactly.
pub fn bandwidth_grid(min: f64, max: f64, points: usize, spacing: GridSpacing) -> Result<Vec<f64>> {
    if !min.is_finite() || min <= 0.0 {
        return Err(ModelError::invalid(
            "bandwidth_min",
            min,
            "must be finite and > 0",
        ));
    }
    if !max.is_finite() || max <= min {
        return Err(ModelError::invalid(
            "bandwidth_max",
            max,
            "must be finite and greater than the minimum",
        ));
    }
    if points < 2 {
        return Err(ModelError::invalid(
            "points",
            points as f64,
            "at least two grid points are needed",
        ));
    }
    let last = (points - 1) as f64;
    let mut grid: Vec<f64> = (0..points)
        .map(|i| {
            let t = i as f64 / last;
            match spacing {
                GridSpacing::Log => min * (max / min).powf(t),
                GridSpacing::Linear => min + (max - min) * t,
            }
        })
        .collect();
    grid[0] = min;
    grid[points - 1] = max;
    Ok(grid)
}

/// Link budget used to flag figure rows whose SNR does not exceed a threshold.
///
/// The gate never alters the capacity value; the IR-UWB model has no SNR term.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SnrGate {
    pub signal_power: f64,
    pub noise_spectral_density: f64,
    pub threshold_db: f64,
}

impl SnrGate {
    pub fn new(signal_power: f64, noise_spectral_density: f64) -> Self {
        SnrGate {
            signal_power,
            noise_spectral_density,
            threshold_db: FIG1_REQUIRED_SNR_DB,
        }
    }

    /// True when the SNR at `bandwidth` is strictly above the threshold.
    pub fn passes(&self, bandwidth: f64) -> Result<bool> {
        let snr =
            AwgnLinkParams::from_power(bandwidth, self.signal_power, self.noise_spectral_density)
                .snr()?;
        Ok(10.0 * snr.log10() > self.threshold_db)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Fig1RowKind {
    /// Capacity at a finite bandwidth.
    Curve,
    /// Infinite-bandwidth limit `1 / d_spread`.
    Asymptote,
}

impl Fig1RowKind {
    pub fn label(self) -> &'static str {
        match self {
            Fig1RowKind::Curve => "curve",
            Fig1RowKind::Asymptote => "asymptote",
        }
    }
}

/// One row of the capacity-versus-bandwidth table.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Fig1Row {
    pub kind: Fig1RowKind,
    /// Seconds.
    pub delay_spread: f64,
    /// Hertz; `None` on asymptote rows.
    pub bandwidth: Option<f64>,
    /// Bits/s.
    pub capacity: f64,
    /// SNR gate verdict; `None` when no gate was supplied or on asymptote rows.
    pub snr_valid: Option<bool>,
}

/// IR-UWB capacity with `Tp = 1/B` over a bandwidth grid, one curve per delay
/// spread, each followed by its asymptote row.
pub fn fig1_series(
    delay_spreads: &[f64],
    bandwidth_range: (f64, f64),
    points: usize,
    spacing: GridSpacing,
    gate: Option<&SnrGate>,
) -> Result<Vec<Fig1Row>> {
    let grid = bandwidth_grid(bandwidth_range.0, bandwidth_range.1, points, spacing)?;
    fig1_rows(delay_spreads, &grid, gate)
}

/// Same as [`fig1_series`] on an explicit list of bandwidths.
pub fn fig1_rows(
    delay_spreads: &[f64],
    bandwidths: &[f64],
    gate: Option<&SnrGate>,
) -> Result<Vec<Fig1Row>> {
    if delay_spreads.is_empty() {
        return Err(ModelError::invalid(
            "delay_spreads",
            0.0,
            "at least one delay spread is required",
        ));
    }
    if bandwidths.is_empty() {
        return Err(ModelError::invalid(
            "bandwidths",
            0.0,
            "at least one bandwidth is required",
        ));
    }

    let mut rows = Vec::with_capacity(delay_spreads.len() * (bandwidths.len() + 1));
    for &delay_spread in delay_spreads {
        if !delay_spread.is_finite() || delay_spread <= 0.0 {
            return Err(ModelError::invalid(
                "delay_spread",
                delay_spread,
                "must be finite and > 0",
            ));
        }
        let channel = ChannelProfile { delay_spread };
        for &bandwidth in bandwidths {
            let pulse = pulse_from_bandwidth(bandwidth)?;
            let snr_valid = gate.map(|g| g.passes(bandwidth)).transpose()?;
            rows.push(Fig1Row {
                kind: Fig1RowKind::Curve,
                delay_spread,
                bandwidth: Some(bandwidth),
                capacity: ir_uwb_capacity(&pulse, &channel)?,
                snr_valid,
            });
        }
        rows.push(Fig1Row {
            kind: Fig1RowKind::Asymptote,
            delay_spread,
            bandwidth: None,
            capacity: 1.0 / delay_spread,
            snr_valid: None,
        });
    }
    Ok(rows)
}
