//! Constrained subband design for multiband IR-UWB.
//!
//! A design splits the total band into `n` subbands of equal bandwidth `Bs`,
//! each carrying its own IR-UWB pulse stream with `Tp = 1 / Bs`. The aggregate
//! capacity is
//!
//! ```text
//! C(Bs, n) = n / (1/Bs + d_spread)
//! ```
//!
//! subject to
//!
//! ```text
//! 1 <= n <= n_max
//! n * Bs <= Bt_max
//! Bt / n_max <= Bs <= Bs_max
//! (1/alpha_max - 1) / d_spread <= Bs        (equivalently alpha(Bs) <= alpha_max)
//! ```
//!
//! The problem is feasible iff `Bs_max >= Bs_min` with
//! `Bs_min = max(Bt_max / n_max, (1/alpha_max - 1) / d_spread)`. The optimum
//! uses the largest admissible subband count and, for that count, the widest
//! admissible subband.
//!
//! `Bt` in the lower bound is read as the cap `Bt_max`: the used bandwidth is
//! an output of the design and cannot enter its own feasibility bound.

use std::fmt;

use serde::ser::SerializeStruct;
use serde::{Deserialize, Serialize, Serializer};

use crate::capacity::{duty_cycle, ir_uwb_capacity, pulse_from_bandwidth, ChannelProfile};
use crate::error::{ModelError, Result};

/// Relative slack on the duty-cycle bound, absorbing rounding in `1/Bs`.
pub const DUTY_CYCLE_RTOL: f64 = 1e-9;

/// Relative slack used when labelling a constraint as binding.
const BINDING_RTOL: f64 = 1e-9;

/// Upper limit on grid sizes accepted by the sweep and the brute-force search.
const MAX_GRID_POINTS: f64 = 1e8;

/// Hardware, regulatory and channel limits of a design.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DesignConstraints {
    /// Maximum number of subbands.
    pub n_max: u32,
    /// Maximum bandwidth of one subband, Hz.
    pub bs_max: f64,
    /// Total bandwidth available to the system, Hz.
    pub bt_max: f64,
    /// Maximum authorized duty cycle, in (0, 1].
    pub alpha_max: f64,
    pub channel: ChannelProfile,
}

impl DesignConstraints {
    /// FCC 7.5 GHz allocation, 750 MHz subbands at most, 20 % duty cycle,
    /// 30 mixers and a 9 ns industrial line-of-sight delay spread.
    pub fn reference_scenario() -> Self {
        DesignConstraints {
            n_max: 30,
            bs_max: 750e6,
            bt_max: 7.5e9,
            alpha_max: 0.2,
            channel: ChannelProfile { delay_spread: 9e-9 },
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_max < 1 {
            return Err(ModelError::invalid("n_max", 0.0, "must be >= 1"));
        }
        if !self.bs_max.is_finite() || self.bs_max <= 0.0 {
            return Err(ModelError::invalid(
                "bs_max",
                self.bs_max,
                "must be finite and > 0",
            ));
        }
        if !self.bt_max.is_finite() || self.bt_max <= 0.0 {
            return Err(ModelError::invalid(
                "bt_max",
                self.bt_max,
                "must be finite and > 0",
            ));
        }
        if !(self.alpha_max > 0.0 && self.alpha_max <= 1.0) {
            return Err(ModelError::invalid(
                "alpha_max",
                self.alpha_max,
                "must lie in (0, 1]",
            ));
        }
        if self.bs_max > self.bt_max {
            return Err(ModelError::invalid(
                "bs_max",
                self.bs_max,
                "a single subband cannot exceed bt_max",
            ));
        }
        self.channel.check()
    }

    fn require_dispersive_channel(&self) -> Result<()> {
        if self.channel.delay_spread <= 0.0 {
            return Err(ModelError::invalid(
                "delay_spread",
                self.channel.delay_spread,
                "the optimizer needs a delay spread > 0",
            ));
        }
        Ok(())
    }
}

/// Constraint labels used in violation reports and binding sets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Constraint {
    /// `1 <= n <= n_max`.
    NMax,
    /// `Bs <= Bs_max`.
    BsMax,
    /// `n * Bs <= Bt_max`.
    BtMax,
    /// `alpha(Bs) <= alpha_max`.
    AlphaMax,
}

impl Constraint {
    pub fn label(self) -> &'static str {
        match self {
            Constraint::NMax => "n_max",
            Constraint::BsMax => "bs_max",
            Constraint::BtMax => "bt_max",
            Constraint::AlphaMax => "alpha_max",
        }
    }
}

impl fmt::Display for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// A broken constraint and by how much.
///
/// The margin is expressed in the constraint's own quantity: subbands for
/// `n_max`, hertz for `bs_max` and `bt_max`, duty-cycle fraction for
/// `alpha_max`. It is always positive.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    pub constraint: Constraint,
    pub margin: f64,
}

/// Which term of the `Bs_min` maximum is active.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BsMinBranch {
    /// `Bt_max / n_max`.
    TotalBandwidth,
    /// `(1/alpha_max - 1) / d_spread`.
    DutyCycle,
}

impl BsMinBranch {
    pub fn label(self) -> &'static str {
        match self {
            BsMinBranch::TotalBandwidth => "total_bandwidth",
            BsMinBranch::DutyCycle => "duty_cycle",
        }
    }
}

impl fmt::Display for BsMinBranch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Lower feasibility bound on the subband bandwidth.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BsMin {
    /// Hz.
    pub value: f64,
    pub branch: BsMinBranch,
}

/// `max(Bt_max / n_max, (1/alpha_max - 1) / d_spread)` with its active branch.
///
/// The total-bandwidth term is the largest `Bs` with `n_max * Bs <= Bt_max`
/// in floating point, so `n_max` subbands of `Bs_min` always fit the budget.
pub fn bs_min_bound(constraints: &DesignConstraints) -> Result<BsMin> {
    constraints.validate()?;
    let d = constraints.channel.delay_spread;
    let duty_term = if constraints.alpha_max == 1.0 {
        0.0
    } else if d == 0.0 {
        return Err(ModelError::invalid(
            "delay_spread",
            d,
            "the duty-cycle bound is undefined for a zero delay spread when alpha_max < 1",
        ));
    } else {
        (1.0 / constraints.alpha_max - 1.0) / d
    };
    let total_term = widest_subband(constraints.bt_max, constraints.n_max as u64);

    Ok(if duty_term >= total_term {
        BsMin {
            value: duty_term,
            branch: BsMinBranch::DutyCycle,
        }
    } else {
        BsMin {
            value: total_term,
            branch: BsMinBranch::TotalBandwidth,
        }
    })
}

/// Value of [`bs_min_bound`] in Hz.
pub fn bs_min(constraints: &DesignConstraints) -> Result<f64> {
    bs_min_bound(constraints).map(|b| b.value)
}

/// Largest `bs` with `n * bs <= bt` in floating point.
fn widest_subband(bt: f64, n: u64) -> f64 {
    let n = n as f64;
    let mut bs = bt / n;
    while n * bs > bt {
        bs = bs.next_down();
    }
    while n * bs.next_up() <= bt {
        bs = bs.next_up();
    }
    bs
}

/// Largest `n` with `n * bs <= bt` in floating point.
pub(crate) fn max_subbands(bt: f64, bs: f64) -> u64 {
    let mut n = (bt / bs).floor().min(u64::MAX as f64) as u64;
    while n > 0 && n as f64 * bs > bt {
        n -= 1;
    }
    while ((n + 1) as f64) * bs <= bt {
        n += 1;
    }
    n
}

/// Aggregate capacity `n / (1/Bs + d_spread)` in bits/s.
///
/// Computed as `n` times the single-subband IR-UWB capacity so both routes
/// agree bit for bit.
pub fn mb_capacity(n: u32, bs: f64, channel: &ChannelProfile) -> Result<f64> {
    if n < 1 {
        return Err(ModelError::invalid("n", 0.0, "must be >= 1"));
    }
    let pulse = pulse_from_bandwidth(bs)?;
    Ok(n as f64 * ir_uwb_capacity(&pulse, channel)?)
}

/// One evaluated configuration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DesignPoint {
    pub n: u32,
    /// Subband bandwidth, Hz.
    pub bs: f64,
    /// Bits/s carried by one subband.
    pub per_subband_capacity: f64,
    /// Bits/s carried by all `n` subbands.
    pub total_capacity: f64,
    pub duty_cycle: f64,
}

impl DesignPoint {
    /// Total occupied bandwidth `n * Bs`, Hz.
    pub fn bt(&self) -> f64 {
        self.n as f64 * self.bs
    }
}

impl Serialize for DesignPoint {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("DesignPoint", 6)?;
        s.serialize_field("n", &self.n)?;
        s.serialize_field("bs", &self.bs)?;
        s.serialize_field("bt", &self.bt())?;
        s.serialize_field("per_subband_capacity", &self.per_subband_capacity)?;
        s.serialize_field("total_capacity", &self.total_capacity)?;
        s.serialize_field("duty_cycle", &self.duty_cycle)?;
        s.end()
    }
}

/// Checks `(n, bs)` against every constraint.
///
/// Returns the populated point, or [`ModelError::ConstraintViolation`] listing
/// each broken constraint with its margin. `n_max` is treated inclusively.
pub fn evaluate_point(n: u32, bs: f64, constraints: &DesignConstraints) -> Result<DesignPoint> {
    constraints.validate()?;
    let channel = &constraints.channel;
    let pulse = pulse_from_bandwidth(bs)?;
    let alpha = duty_cycle(&pulse, channel)?;

    let mut violations = Vec::new();
    if n < 1 {
        violations.push(Violation {
            constraint: Constraint::NMax,
            margin: 1.0,
        });
    } else if n > constraints.n_max {
        violations.push(Violation {
            constraint: Constraint::NMax,
            margin: (n - constraints.n_max) as f64,
        });
    }
    if bs > constraints.bs_max {
        violations.push(Violation {
            constraint: Constraint::BsMax,
            margin: bs - constraints.bs_max,
        });
    }
    let bt = n as f64 * bs;
    if bt > constraints.bt_max {
        violations.push(Violation {
            constraint: Constraint::BtMax,
            margin: bt - constraints.bt_max,
        });
    }
    if alpha > constraints.alpha_max * (1.0 + DUTY_CYCLE_RTOL) {
        violations.push(Violation {
            constraint: Constraint::AlphaMax,
            margin: alpha - constraints.alpha_max,
        });
    }
    if !violations.is_empty() {
        return Err(ModelError::ConstraintViolation(violations));
    }

    let per_subband_capacity = ir_uwb_capacity(&pulse, channel)?;
    Ok(DesignPoint {
        n,
        bs,
        per_subband_capacity,
        total_capacity: mb_capacity(n, bs, channel)?,
        duty_cycle: alpha,
    })
}

/// Feasibility verdict and, when feasible, the capacity-optimal design.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OptimizationResult {
    pub feasible: bool,
    /// Hz; always computed.
    pub bs_min: f64,
    pub bs_min_branch: BsMinBranch,
    pub optimum: Option<DesignPoint>,
    /// Constraints holding with equality at the optimum, in label order.
    pub binding_constraints: Vec<Constraint>,
}

impl OptimizationResult {
    fn infeasible(bound: BsMin) -> Self {
        OptimizationResult {
            feasible: false,
            bs_min: bound.value,
            bs_min_branch: bound.branch,
            optimum: None,
            binding_constraints: Vec::new(),
        }
    }

    fn feasible(bound: BsMin, point: DesignPoint, constraints: &DesignConstraints) -> Self {
        OptimizationResult {
            feasible: true,
            bs_min: bound.value,
            bs_min_branch: bound.branch,
            binding_constraints: binding_constraints(&point, constraints),
            optimum: Some(point),
        }
    }

    /// The structured error equivalent of an infeasible verdict.
    pub fn infeasibility(&self, constraints: &DesignConstraints) -> Option<ModelError> {
        (!self.feasible).then_some(ModelError::Infeasible {
            bs_min: self.bs_min,
            bs_max: constraints.bs_max,
            branch: self.bs_min_branch,
        })
    }
}

fn binding_constraints(point: &DesignPoint, c: &DesignConstraints) -> Vec<Constraint> {
    let mut binding = Vec::new();
    if point.n == c.n_max {
        binding.push(Constraint::NMax);
    }
    if point.bs >= c.bs_max * (1.0 - BINDING_RTOL) {
        binding.push(Constraint::BsMax);
    }
    if point.bt() >= c.bt_max * (1.0 - BINDING_RTOL) {
        binding.push(Constraint::BtMax);
    }
    if point.duty_cycle >= c.alpha_max * (1.0 - BINDING_RTOL) {
        binding.push(Constraint::AlphaMax);
    }
    binding
}

/// Solves the design problem in closed form.
///
/// Capacity grows with `n` along the admissible frontier, so the optimum is
/// `n* = min(n_max, floor(Bt_max / Bs_min))` and `Bs* = min(Bs_max, Bt_max / n*)`.
pub fn optimize(constraints: &DesignConstraints) -> Result<OptimizationResult> {
    constraints.validate()?;
    constraints.require_dispersive_channel()?;
    let bound = bs_min_bound(constraints)?;
    if constraints.bs_max < bound.value {
        return Ok(OptimizationResult::infeasible(bound));
    }

    let n = max_subbands(constraints.bt_max, bound.value).min(constraints.n_max as u64) as u32;
    let bs = constraints
        .bs_max
        .min(widest_subband(constraints.bt_max, n as u64));
    let point = evaluate_point(n, bs, constraints)?;
    Ok(OptimizationResult::feasible(bound, point, constraints))
}

fn check_step(bs_step: f64, span: f64) -> Result<()> {
    if !bs_step.is_finite() || bs_step <= 0.0 {
        return Err(ModelError::invalid(
            "bs_step",
            bs_step,
            "must be finite and > 0",
        ));
    }
    if span / bs_step > MAX_GRID_POINTS {
        return Err(ModelError::invalid(
            "bs_step",
            bs_step,
            "grid would exceed 1e8 points",
        ));
    }
    Ok(())
}

/// Exhaustive search used as an oracle for [`optimize`].
///
/// Enumerates every `n` in `1..=n_max` against the grid
/// `Bs_min, Bs_min + step, ...` (with `Bs_max` appended) and keeps the best
/// admissible point. Ties go to the larger `n`, then the larger `Bs`.
pub fn brute_force_optimize(
    constraints: &DesignConstraints,
    bs_step: f64,
) -> Result<OptimizationResult> {
    constraints.validate()?;
    constraints.require_dispersive_channel()?;
    let bound = bs_min_bound(constraints)?;
    if constraints.bs_max < bound.value {
        return Ok(OptimizationResult::infeasible(bound));
    }
    check_step(bs_step, constraints.bs_max - bound.value)?;

    let mut grid = Vec::new();
    let mut k = 0u64;
    loop {
        let bs = bound.value + k as f64 * bs_step;
        if bs >= constraints.bs_max {
            break;
        }
        grid.push(bs);
        k += 1;
    }
    grid.push(constraints.bs_max);

    let mut best: Option<DesignPoint> = None;
    for &bs in &grid {
        for n in 1..=constraints.n_max {
            let Ok(point) = evaluate_point(n, bs, constraints) else {
                continue;
            };
            let better = match &best {
                None => true,
                Some(b) => {
                    (point.total_capacity, point.n, point.bs) >= (b.total_capacity, b.n, b.bs)
                }
            };
            if better {
                best = Some(point);
            }
        }
    }

    match best {
        Some(point) => Ok(OptimizationResult::feasible(bound, point, constraints)),
        None => Err(ModelError::invalid(
            "bs_step",
            bs_step,
            "grid contains no admissible point",
        )),
    }
}

/// Design points across the admissible subband bandwidths.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepTable {
    /// Ascending in `bs`.
    pub rows: Vec<DesignPoint>,
    /// Hz.
    pub step: f64,
    pub constraints: DesignConstraints,
}

impl SweepTable {
    /// Row with the highest total capacity; ties go to the later row.
    pub fn best(&self) -> Option<&DesignPoint> {
        self.rows
            .iter()
            .rev()
            .max_by(|a, b| a.total_capacity.total_cmp(&b.total_capacity))
    }

    pub fn row_at(&self, bs: f64) -> Option<&DesignPoint> {
        self.rows.iter().find(|r| r.bs == bs)
    }
}

/// Subband bandwidths visited by [`sweep`]: `Bs_min`, then every multiple of
/// `step` strictly between the endpoints, then `Bs_max`.
pub fn sweep_grid(bs_min: f64, bs_max: f64, step: f64) -> Result<Vec<f64>> {
    check_step(step, bs_max - bs_min)?;
    let mut grid = vec![bs_min];
    let mut k = (bs_min / step).floor() as u64;
    loop {
        let bs = k as f64 * step;
        if bs >= bs_max {
            break;
        }
        if bs > bs_min {
            grid.push(bs);
        }
        k += 1;
    }
    if bs_max > bs_min {
        grid.push(bs_max);
    }
    Ok(grid)
}

/// Tabulates the design across `[Bs_min, Bs_max]`.
///
/// At each bandwidth the subband count is the largest that fits the budget,
/// `n(Bs) = min(n_max, floor(Bt_max / Bs))`. Rows with no subband are dropped.
pub fn sweep(constraints: &DesignConstraints, bs_step: f64) -> Result<SweepTable> {
    constraints.validate()?;
    constraints.require_dispersive_channel()?;
    let bound = bs_min_bound(constraints)?;
    if constraints.bs_max < bound.value {
        return Err(ModelError::Infeasible {
            bs_min: bound.value,
            bs_max: constraints.bs_max,
            branch: bound.branch,
        });
    }

    let rows = sweep_grid(bound.value, constraints.bs_max, bs_step)?
        .into_iter()
        .filter_map(|bs| {
            let n = max_subbands(constraints.bt_max, bs).min(constraints.n_max as u64) as u32;
            if n < 1 {
                return None;
            }
            evaluate_point(n, bs, constraints).ok()
        })
        .collect();

    Ok(SweepTable {
        rows,
        step: bs_step,
        constraints: *constraints,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn reference() -> DesignConstraints {
        DesignConstraints::reference_scenario()
    }

    fn labels(err: ModelError) -> Vec<Constraint> {
        match err {
            ModelError::ConstraintViolation(v) => v.into_iter().map(|v| v.constraint).collect(),
            other => panic!("expected violation, got {other:?}"),
        }
    }

    #[test]
    fn bs_min_examples() {
        let b = bs_min_bound(&reference()).unwrap();
        assert!((b.value - 444.44e6).abs() <= 0.1e6, "{}", b.value);
        assert_eq!(b.branch, BsMinBranch::DutyCycle);

        let c = DesignConstraints {
            n_max: 10,
            bs_max: 500e6,
            bt_max: 1e9,
            alpha_max: 1.0,
            channel: ChannelProfile { delay_spread: 9e-9 },
        };
        assert_relative_eq!(bs_min(&c).unwrap(), 100e6, max_relative = 1e-12);

        let c = DesignConstraints {
            n_max: 10,
            bs_max: 750e6,
            bt_max: 7.5e9,
            alpha_max: 0.5,
            channel: ChannelProfile {
                delay_spread: 10e-9,
            },
        };
        let b = bs_min_bound(&c).unwrap();
        assert_relative_eq!(b.value, 750e6, max_relative = 1e-12);
        assert_eq!(b.branch, BsMinBranch::TotalBandwidth);
    }

    #[test]
    fn bs_min_zero_delay_spread() {
        let mut c = reference();
        c.channel.delay_spread = 0.0;
        assert!(matches!(
            bs_min(&c),
            Err(ModelError::InvalidParameter {
                name: "delay_spread",
                ..
            })
        ));
        c.alpha_max = 1.0;
        assert_relative_eq!(bs_min(&c).unwrap(), 250e6, max_relative = 1e-12);
    }

    #[test]
    fn constraint_validation() {
        let mut c = reference();
        c.n_max = 0;
        assert!(c.validate().is_err());
        let mut c = reference();
        c.alpha_max = 0.0;
        assert!(c.validate().is_err());
        c.alpha_max = 1.5;
        assert!(c.validate().is_err());
        let mut c = reference();
        c.bs_max = 8e9;
        assert!(c.validate().is_err());
        let mut c = reference();
        c.bt_max = f64::NAN;
        assert!(c.validate().is_err());
    }

    #[test]
    fn mb_capacity_examples() {
        let ch = ChannelProfile { delay_spread: 9e-9 };
        let c = mb_capacity(16, 464e6, &ch).unwrap();
        assert!((c - 1.434e9).abs() <= 0.005e9, "{c}");
        let c = mb_capacity(10, 750e6, &ch).unwrap();
        assert!((c - 0.967e9).abs() <= 0.002e9, "{c}");
        let c = mb_capacity(1, 123e6, &ChannelProfile { delay_spread: 0.0 }).unwrap();
        assert_relative_eq!(c, 123e6, max_relative = 1e-12);
        assert!(mb_capacity(0, 1e6, &ch).is_err());
        assert!(mb_capacity(1, 0.0, &ch).is_err());
    }

    #[test]
    fn evaluate_point_examples() {
        let p = evaluate_point(16, 468.75e6, &reference()).unwrap();
        assert_eq!(p.bt(), 7.5e9);
        // 16 / (1/468.75e6 + 9e-9)
        assert_relative_eq!(p.total_capacity, 1_437_125_748.502994, max_relative = 1e-9);

        let err = evaluate_point(31, 200e6, &reference()).unwrap_err();
        assert_eq!(labels(err), vec![Constraint::NMax, Constraint::AlphaMax]);

        let c = DesignConstraints {
            alpha_max: 1.0,
            ..reference()
        };
        assert!(evaluate_point(1, c.bs_max, &c).is_ok());
    }

    #[test]
    fn evaluate_point_margins() {
        let err = evaluate_point(20, 800e6, &reference()).unwrap_err();
        let ModelError::ConstraintViolation(v) = err else {
            panic!()
        };
        assert_eq!(v.len(), 2);
        assert_eq!(v[0].constraint, Constraint::BsMax);
        assert_relative_eq!(v[0].margin, 50e6, max_relative = 1e-12);
        assert_eq!(v[1].constraint, Constraint::BtMax);
        assert_relative_eq!(v[1].margin, 8.5e9, max_relative = 1e-12);
        assert!(v.iter().all(|v| v.margin > 0.0));
    }

    #[test]
    fn evaluate_point_zero_subbands() {
        let err = evaluate_point(0, 500e6, &reference()).unwrap_err();
        assert_eq!(labels(err), vec![Constraint::NMax]);
    }

    #[test]
    fn optimize_reference_scenario() {
        let r = optimize(&reference()).unwrap();
        assert!(r.feasible);
        let p = r.optimum.unwrap();
        assert_eq!(p.n, 16);
        assert_eq!(p.bs, 468.75e6);
        assert_relative_eq!(p.total_capacity, 1_437_125_748.502994, max_relative = 1e-9);
        assert!((p.duty_cycle - 0.192).abs() < 0.001);
        assert_eq!(r.binding_constraints, vec![Constraint::BtMax]);
        assert!(r.infeasibility(&reference()).is_none());
    }

    #[test]
    fn optimize_infeasible() {
        let c = DesignConstraints {
            bs_max: 400e6,
            ..reference()
        };
        let r = optimize(&c).unwrap();
        assert!(!r.feasible);
        assert!(r.optimum.is_none());
        assert!((r.bs_min - 444.44e6).abs() <= 0.1e6);
        assert_eq!(r.bs_min_branch, BsMinBranch::DutyCycle);
        assert!(matches!(
            r.infeasibility(&c),
            Some(ModelError::Infeasible {
                branch: BsMinBranch::DutyCycle,
                ..
            })
        ));
    }

    #[test]
    fn optimize_single_subband() {
        let c = DesignConstraints {
            n_max: 1,
            bs_max: 500e6,
            bt_max: 500e6,
            alpha_max: 1.0,
            channel: ChannelProfile {
                delay_spread: 10e-9,
            },
        };
        let p = optimize(&c).unwrap().optimum.unwrap();
        assert_eq!((p.n, p.bs), (1, 500e6));
        assert_relative_eq!(p.total_capacity, 1.0 / 12e-9, max_relative = 1e-12);
    }

    #[test]
    fn optimize_rejects_zero_delay_spread() {
        let mut c = reference();
        c.alpha_max = 1.0;
        c.channel.delay_spread = 0.0;
        assert!(matches!(
            optimize(&c),
            Err(ModelError::InvalidParameter { .. })
        ));
        assert!(sweep(&c, 1e6).is_err());
        assert!(brute_force_optimize(&c, 1e6).is_err());
    }

    #[test]
    fn brute_force_small_case() {
        let c = DesignConstraints {
            n_max: 3,
            bs_max: 600e6,
            bt_max: 1.5e9,
            alpha_max: 1.0,
            channel: ChannelProfile {
                delay_spread: 10e-9,
            },
        };
        let r = brute_force_optimize(&c, 1e6).unwrap();
        let p = r.optimum.unwrap();
        assert_eq!((p.n, p.bs), (3, 500e6));
        assert_relative_eq!(p.total_capacity, 250e6, max_relative = 1e-9);
        assert_eq!(optimize(&c).unwrap().optimum.unwrap().n, 3);
    }

    #[test]
    fn brute_force_reference_scenario() {
        let r = brute_force_optimize(&reference(), 0.25e6).unwrap();
        let exact = optimize(&reference()).unwrap();
        let (p, q) = (r.optimum.unwrap(), exact.optimum.unwrap());
        assert_eq!(p.n, 16);
        assert!((p.total_capacity - q.total_capacity).abs() / q.total_capacity < 1e-3);
    }

    #[test]
    fn brute_force_infeasible_matches() {
        let c = DesignConstraints {
            bs_max: 400e6,
            ..reference()
        };
        assert_eq!(
            brute_force_optimize(&c, 1e6).unwrap(),
            optimize(&c).unwrap()
        );
    }

    #[test]
    fn step_validation() {
        assert!(brute_force_optimize(&reference(), 0.0).is_err());
        assert!(sweep(&reference(), -1.0).is_err());
        assert!(sweep(&reference(), f64::NAN).is_err());
        assert!(sweep(&reference(), 1e-3).is_err());
    }

    #[test]
    fn sweep_endpoints() {
        let t = sweep(&reference(), 0.1e6).unwrap();
        let first = t.rows.first().unwrap();
        assert!((first.bs - 444.44e6).abs() <= 0.1e6);
        assert_eq!(first.n, 16);
        // 16 / (2.25 ns + 9 ns)
        assert_relative_eq!(first.total_capacity, 1_422_222_222.222, max_relative = 1e-9);
        assert!((first.duty_cycle - 0.2).abs() < 1e-9);
        let last = t.rows.last().unwrap();
        assert_eq!(last.bs, 750e6);
        assert_eq!(last.n, 10);
        assert_relative_eq!(last.total_capacity, 967_741_935.483871, max_relative = 1e-9);
        assert!(t.rows.windows(2).all(|w| w[0].bs < w[1].bs));
        assert!(t.row_at(464e6).is_some());
    }

    #[test]
    fn sweep_best_row() {
        let t = sweep(&reference(), 0.1e6).unwrap();
        let best = t.best().unwrap();
        assert_eq!(best.n, 16);
        assert!(best.bs >= 464e6 && best.bs <= 468.75e6);
        assert!(best.total_capacity >= 1.434e9 && best.total_capacity <= 1.4372e9);
    }

    #[test]
    fn sweep_coarse_step_keeps_endpoints() {
        let t = sweep(&reference(), 10e9).unwrap();
        assert_eq!(t.rows.len(), 2);
        assert_eq!(t.rows[1].bs, 750e6);
    }

    #[test]
    fn sweep_degenerate_span() {
        let mut c = reference();
        c.bs_max = bs_min(&c).unwrap();
        let t = sweep(&c, 1e6).unwrap();
        assert_eq!(t.rows.len(), 1);
    }

    #[test]
    fn sweep_infeasible() {
        let c = DesignConstraints {
            bs_max: 400e6,
            ..reference()
        };
        assert!(matches!(sweep(&c, 1e6), Err(ModelError::Infeasible { .. })));
    }

    #[test]
    fn subband_count_helpers() {
        assert_eq!(max_subbands(7.5e9, 468.75e6), 16);
        assert_eq!(max_subbands(7.5e9, 468.76e6), 15);
        assert_eq!(max_subbands(1.0, 3.0), 0);
        for (bt, n) in [(7.5e9, 30u64), (1e9, 3), (1.3e9, 7)] {
            let bs = widest_subband(bt, n);
            assert!(n as f64 * bs <= bt);
            assert!(n as f64 * bs.next_up() > bt);
            assert_eq!(max_subbands(bt, bs), n);
        }
    }

    #[test]
    fn design_point_serializes_bt() {
        let p = evaluate_point(16, 468.75e6, &reference()).unwrap();
        let v = serde_json::to_value(p).unwrap();
        assert_eq!(v["bt"], serde_json::json!(7.5e9));
        assert_eq!(v["n"], serde_json::json!(16));
    }
}
