//! Flag values with SI unit suffixes.
//!
//! `750MHz`, `7.5 GHz`, `9ns` and bare SI numbers are accepted. A bare number
//! whose magnitude falls outside `[1e-3, 1e12]` of the base unit is rejected
//! as ambiguous: `9e-9` for a delay spread must be written `9ns`.

/// Suffix and its power of ten.
const FREQUENCY: &[(&str, i32)] = &[("THz", 12), ("GHz", 9), ("MHz", 6), ("kHz", 3), ("Hz", 0)];

const TIME: &[(&str, i32)] = &[
    ("ps", -12),
    ("ns", -9),
    ("us", -6),
    ("µs", -6),
    ("ms", -3),
    ("s", 0),
];

const BARE_MIN: f64 = 1e-3;
const BARE_MAX: f64 = 1e12;

/// Parses `number` scaled by `10^exponent` with a single rounding.
fn scaled(number: &str, exponent: i32) -> Option<f64> {
    let (mantissa, own) = match number.find(['e', 'E']) {
        Some(i) => (&number[..i], number[i + 1..].parse::<i32>().ok()?),
        None => (number, 0),
    };
    if mantissa.is_empty()
        || !mantissa
            .bytes()
            .all(|b| b.is_ascii_digit() || b == b'.' || b == b'-' || b == b'+')
    {
        return None;
    }
    format!("{mantissa}e{}", own.checked_add(exponent)?)
        .parse()
        .ok()
}

fn parse_with(input: &str, units: &[(&str, i32)], base: &str) -> Result<f64, String> {
    let s = input.trim();
    let (number, exponent) = units
        .iter()
        .find_map(|&(suffix, exp)| s.strip_suffix(suffix).map(|n| (n.trim_end(), Some(exp))))
        .unwrap_or((s, None));

    let not_a_number = || format!("`{input}` is not a number with an optional {base} unit");
    let value: f64 = match exponent {
        Some(exp) => scaled(number, exp).ok_or_else(not_a_number)?,
        None => number.parse().map_err(|_| not_a_number())?,
    };
    if !value.is_finite() {
        return Err(format!("`{input}` is not finite"));
    }
    if exponent.is_none() {
        let magnitude = value.abs();
        if magnitude != 0.0 && !(BARE_MIN..=BARE_MAX).contains(&magnitude) {
            return Err(format!(
                "bare value `{input}` is ambiguous; add a unit suffix (e.g. {})",
                units
                    .iter()
                    .map(|u| u.0)
                    .filter(|u| *u != "µs")
                    .collect::<Vec<_>>()
                    .join(", ")
            ));
        }
    }
    Ok(value)
}

/// Frequency in hertz.
pub fn frequency(input: &str) -> Result<f64, String> {
    parse_with(input, FREQUENCY, "frequency")
}

/// Duration in seconds.
pub fn time(input: &str) -> Result<f64, String> {
    parse_with(input, TIME, "time")
}

pub fn positive_frequency(input: &str) -> Result<f64, String> {
    let v = frequency(input)?;
    if v <= 0.0 {
        return Err("must be > 0".into());
    }
    Ok(v)
}

pub fn positive_time(input: &str) -> Result<f64, String> {
    let v = time(input)?;
    if v <= 0.0 {
        return Err("must be > 0".into());
    }
    Ok(v)
}

pub fn non_negative_time(input: &str) -> Result<f64, String> {
    let v = time(input)?;
    if v < 0.0 {
        return Err("must be >= 0".into());
    }
    Ok(v)
}

/// Fraction in (0, 1], written as `0.2` or `20%`.
pub fn fraction(input: &str) -> Result<f64, String> {
    let s = input.trim();
    let value = match s.strip_suffix('%') {
        Some(pct) => pct
            .trim_end()
            .parse::<f64>()
            .map(|v| v / 100.0)
            .map_err(|_| format!("`{input}` is not a percentage"))?,
        None => s
            .parse::<f64>()
            .map_err(|_| format!("`{input}` is not a number"))?,
    };
    if !(value > 0.0 && value <= 1.0) {
        return Err("must lie in (0, 1]".into());
    }
    Ok(value)
}

/// Non-negative plain number (SNR, power, density).
pub fn non_negative(input: &str) -> Result<f64, String> {
    let v: f64 = input
        .trim()
        .parse()
        .map_err(|_| format!("`{input}` is not a number"))?;
    if !v.is_finite() || v < 0.0 {
        return Err("must be finite and >= 0".into());
    }
    Ok(v)
}

pub fn positive(input: &str) -> Result<f64, String> {
    let v = non_negative(input)?;
    if v == 0.0 {
        return Err("must be > 0".into());
    }
    Ok(v)
}
