//! Power delay profiles and their reduction to a scalar delay spread.
//!
//! Files are comma-separated, one tap per line, delays in nanoseconds.
//! Lines starting with `#` are comments and a leading header row is skipped
//! when its first field is not numeric.

use std::fmt::Write as _;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::PdpError;

/// The bundled synthetic profile, constructed to have a 9 ns RMS delay spread.
pub const SYNTHETIC_9NS_PDP: &str = include_str!("../data/synthetic_9ns_pdp.csv");

/// One multipath component.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tap {
    /// Excess delay in seconds.
    pub delay: f64,
    /// Linear power (watts or relative gain).
    pub power: f64,
}

/// Ordered list of taps with a free-text provenance label.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PowerDelayProfile {
    taps: Vec<Tap>,
    source_label: String,
}

impl PowerDelayProfile {
    /// Delays must be non-negative and strictly increasing; powers must be
    /// non-negative with at least one positive.
    pub fn new(taps: Vec<Tap>, source_label: impl Into<String>) -> Result<Self, PdpError> {
        if taps.is_empty() {
            return Err(PdpError::InvalidProfile("profile has no taps".into()));
        }
        for (i, tap) in taps.iter().enumerate() {
            if !tap.delay.is_finite() || tap.delay < 0.0 {
                return Err(PdpError::InvalidProfile(format!(
                    "tap {i}: delay {} s is not a finite non-negative value",
                    tap.delay
                )));
            }
            if !tap.power.is_finite() || tap.power < 0.0 {
                return Err(PdpError::InvalidProfile(format!(
                    "tap {i}: power {} is not a finite non-negative value",
                    tap.power
                )));
            }
        }
        if let Some(i) = taps.windows(2).position(|w| w[1].delay <= w[0].delay) {
            return Err(PdpError::InvalidProfile(format!(
                "delays must be strictly increasing (tap {} at {} s follows {} s)",
                i + 1,
                taps[i + 1].delay,
                taps[i].delay
            )));
        }
        if !taps.iter().any(|t| t.power > 0.0) {
            return Err(PdpError::InvalidProfile("all tap powers are zero".into()));
        }
        Ok(PowerDelayProfile {
            taps,
            source_label: source_label.into(),
        })
    }

    pub fn taps(&self) -> &[Tap] {
        &self.taps
    }

    pub fn source_label(&self) -> &str {
        &self.source_label
    }
}

/// Square root of the power-weighted second central moment of the delays.
pub fn rms_delay_spread(pdp: &PowerDelayProfile) -> f64 {
    let total: f64 = pdp.taps.iter().map(|t| t.power).sum();
    let mean = pdp.taps.iter().map(|t| t.power * t.delay).sum::<f64>() / total;
    let variance = pdp
        .taps
        .iter()
        .map(|t| t.power * (t.delay - mean).powi(2))
        .sum::<f64>()
        / total;
    variance.max(0.0).sqrt()
}

/// Delay between the first and the last tap carrying non-zero power.
pub fn max_excess_delay(pdp: &PowerDelayProfile) -> f64 {
    let mut powered = pdp.taps.iter().filter(|t| t.power > 0.0);
    let first = powered.next().map_or(0.0, |t| t.delay);
    let last = powered.next_back().map_or(first, |t| t.delay);
    last - first
}

/// Reduction applied to a profile to obtain the model's delay spread.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DelaySpreadStatistic {
    #[default]
    Rms,
    MaxExcess,
}

impl DelaySpreadStatistic {
    pub fn apply(self, pdp: &PowerDelayProfile) -> f64 {
        match self {
            DelaySpreadStatistic::Rms => rms_delay_spread(pdp),
            DelaySpreadStatistic::MaxExcess => max_excess_delay(pdp),
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            DelaySpreadStatistic::Rms => "rms",
            DelaySpreadStatistic::MaxExcess => "max-excess",
        }
    }
}

impl FromStr for DelaySpreadStatistic {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "rms" => Ok(DelaySpreadStatistic::Rms),
            "max-excess" => Ok(DelaySpreadStatistic::MaxExcess),
            other => Err(format!("unknown statistic `{other}` (rms, max-excess)")),
        }
    }
}

/// On-disk profile layouts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PdpFormat {
    /// `delay_ns,power_db` with `power = 10^(dB/10)`.
    #[default]
    CsvNsDb,
    /// `delay_ns,linear_power`.
    CsvNsLinear,
}

impl PdpFormat {
    pub fn label(self) -> &'static str {
        match self {
            PdpFormat::CsvNsDb => "csv-ns-db",
            PdpFormat::CsvNsLinear => "csv-ns-linear",
        }
    }

    fn header(self) -> &'static str {
        match self {
            PdpFormat::CsvNsDb => "delay_ns,power_db",
            PdpFormat::CsvNsLinear => "delay_ns,power_linear",
        }
    }
}

impl FromStr for PdpFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "csv-ns-db" => Ok(PdpFormat::CsvNsDb),
            "csv-ns-linear" => Ok(PdpFormat::CsvNsLinear),
            other => Err(format!(
                "unknown profile format `{other}` (csv-ns-db, csv-ns-linear)"
            )),
        }
    }
}

/// Reads and validates a profile file. Taps are sorted by delay; repeated
/// delays are rejected.
pub fn load_pdp(path: impl AsRef<Path>, format: PdpFormat) -> Result<PowerDelayProfile, PdpError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|source| PdpError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_pdp(&text, format, path.display().to_string())
}

/// Parses profile text; see [`load_pdp`].
pub fn parse_pdp(
    text: &str,
    format: PdpFormat,
    source_label: impl Into<String>,
) -> Result<PowerDelayProfile, PdpError> {
    let mut taps = Vec::new();
    let mut seen_data = false;
    for (index, raw) in text.lines().enumerate() {
        let line = index as u64 + 1;
        let content = raw.trim();
        if content.is_empty() || content.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = content.split(',').map(str::trim).collect();
        let is_header = !seen_data && fields[0].parse::<f64>().is_err();
        seen_data = true;
        if is_header {
            continue;
        }
        if fields.len() != 2 {
            return Err(PdpError::Parse {
                line,
                message: format!("expected 2 fields, found {}", fields.len()),
            });
        }
        let field = |i: usize, what: &str| -> Result<f64, PdpError> {
            fields[i].parse::<f64>().map_err(|_| PdpError::Parse {
                line,
                message: format!("{what} `{}` is not a number", fields[i]),
            })
        };
        let delay_ns = field(0, "delay")?;
        let value = field(1, "power")?;
        let power = match format {
            PdpFormat::CsvNsDb => 10f64.powf(value / 10.0),
            PdpFormat::CsvNsLinear => value,
        };
        taps.push(Tap {
            delay: delay_ns * 1e-9,
            power,
        });
    }

    taps.sort_by(|a, b| a.delay.total_cmp(&b.delay));
    PowerDelayProfile::new(taps, source_label)
}

/// Serializes a profile in the given layout, with a header row.
pub fn write_pdp(pdp: &PowerDelayProfile, format: PdpFormat) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# {}", pdp.source_label);
    let _ = writeln!(out, "{}", format.header());
    for tap in &pdp.taps {
        let value = match format {
            PdpFormat::CsvNsDb => 10.0 * tap.power.log10(),
            PdpFormat::CsvNsLinear => tap.power,
        };
        let _ = writeln!(out, "{},{}", tap.delay * 1e9, value);
    }
    out
}
