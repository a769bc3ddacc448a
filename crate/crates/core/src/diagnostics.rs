//! Finite-n estimators for limsup-type quantities: the Mhaskar–Saff radius,
//! the speed bound for convergent schedules and the Nevai equivalence
//! between vanishing coefficients and divergent distance sums.

use crate::complex::Complex;
use crate::error::{Error, Result};
use crate::precision::PrecisionConfig;
use crate::record::VerblunskyRecord;
use crate::recurrence::{synthesize, SynthesisResult};
use crate::rootfind::{blaschke_ratio_bound, circle_distance_sum, find_roots, RootSet};
use crate::schedule::ZeroSchedule;

pub const DEFAULT_WINDOW_FRACTION: f64 = 0.5;
/// Additive slack on every windowed limsup comparison.
pub const LIMSUP_SLACK: f64 = 0.02;
/// Coefficients count as vanishing when the last grid value is at most this
/// fraction of the grid maximum.
pub const COEFFICIENT_DROP: f64 = 0.5;
/// Distance sums count as divergent when they grow by at least this much per
/// unit degree across the grid.
pub const SUM_GROWTH_FLOOR: f64 = 0.01;
pub const MIN_RECORD_LENGTH: usize = 20;
/// Radius used for the Blaschke ratio bound column.
pub const RATIO_RADIUS: f64 = 0.5;

/// Max of `|Phi_n(0)|^(1/n)` over the trailing `window_fraction` of the record.
pub fn mhaskar_saff_estimate(record: &VerblunskyRecord, window_fraction: f64) -> Result<f64> {
    if record.len() < MIN_RECORD_LENGTH {
        return Err(Error::InsufficientRecord {
            needed: MIN_RECORD_LENGTH,
            available: record.len(),
        });
    }
    if !(window_fraction > 0.0 && window_fraction <= 1.0) {
        return Err(Error::InvalidArgument(format!("window fraction must lie in (0, 1], got {window_fraction}")));
    }
    Ok(record.windowed_root_exponent(window_fraction))
}

/// Trailing-window max of `x_n^(1/n)` for `n` in `start..=len`, indices 1-based.
fn windowed_root(values: &[f64], window_fraction: f64) -> f64 {
    let len = values.len();
    if len == 0 {
        return 0.0;
    }
    let start = (((1.0 - window_fraction) * len as f64).ceil() as usize).clamp(1, len);
    (start..=len)
        .map(|n| {
            let x = values[n - 1];
            if x == 0.0 {
                0.0
            } else {
                (x.ln() / n as f64).exp()
            }
        })
        .fold(0.0, f64::max)
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpeedBoundReport {
    /// Windowed `|Phi_n(0)|^(1/n)`.
    pub coefficient_exponent: f64,
    /// Windowed `|z_n - z_0|^(1/n)`.
    pub speed_exponent: f64,
    pub holds: bool,
}

/// Compares the coefficient root exponent with the root exponent of the
/// speed `|z_n - z_0|` at which the schedule approaches `z_0`.
pub fn speed_bound_check(record: &VerblunskyRecord, schedule: &ZeroSchedule, z0: &Complex) -> Result<SpeedBoundReport> {
    let n = record.len();
    schedule.ensure_supplies(n)?;
    let speeds = (1..=n)
        .map(|k| schedule.zero_at(k).map(|z| (&z - z0).abs().to_f64()))
        .collect::<Result<Vec<_>>>()?;
    let coefficient_exponent = record.windowed_root_exponent(DEFAULT_WINDOW_FRACTION);
    let speed_exponent = windowed_root(&speeds, DEFAULT_WINDOW_FRACTION);
    Ok(SpeedBoundReport {
        coefficient_exponent,
        speed_exponent,
        holds: coefficient_exponent <= speed_exponent + LIMSUP_SLACK,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NevaiClass {
    /// Coefficients vanish and distance sums diverge.
    Nevai,
    /// Coefficients stay away from zero and distance sums stay bounded.
    NonNevai,
    /// The two sides disagree.
    Inconsistent,
}

impl NevaiClass {
    pub fn label(&self) -> &'static str {
        match self {
            NevaiClass::Nevai => "nevai",
            NevaiClass::NonNevai => "non-nevai",
            NevaiClass::Inconsistent => "inconsistent",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct NevaiRow {
    pub n: usize,
    pub coefficient: f64,
    pub distance_sum: f64,
    pub ratio_bound: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct NevaiReport {
    pub rows: Vec<NevaiRow>,
    pub coefficients_vanish: bool,
    pub sums_diverge: bool,
    pub class: NevaiClass,
}

/// Tabulates `|Phi_n(0)|`, `sum (1 - |z_{n,j}|)` and the ratio bound at
/// `T = 0.5` over the degrees of `roots`, then classifies both trends.
pub fn nevai_equivalence_report(record: &VerblunskyRecord, roots: &[RootSet]) -> Result<NevaiReport> {
    if roots.len() < 2 {
        return Err(Error::InvalidArgument("Nevai report needs at least two degrees".into()));
    }
    if roots.windows(2).any(|w| w[1].degree <= w[0].degree) {
        return Err(Error::InvalidArgument("root sets must have strictly increasing degrees".into()));
    }
    let last = roots.last().expect("two or more root sets").degree;
    if last > record.len() {
        return Err(Error::InsufficientRecord {
            needed: last,
            available: record.len(),
        });
    }
    let rows = roots
        .iter()
        .map(|rs| {
            Ok(NevaiRow {
                n: rs.degree,
                coefficient: record.alpha(rs.degree).abs_f64(),
                distance_sum: circle_distance_sum(rs),
                ratio_bound: blaschke_ratio_bound(rs, RATIO_RADIUS)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let (first, final_row) = (&rows[0], &rows[rows.len() - 1]);
    let peak = rows.iter().map(|r| r.coefficient).fold(0.0, f64::max);
    let coefficients_vanish = final_row.coefficient <= COEFFICIENT_DROP * peak;
    let growth = (final_row.distance_sum - first.distance_sum) / (final_row.n - first.n) as f64;
    let sums_diverge = growth >= SUM_GROWTH_FLOOR;
    let class = match (coefficients_vanish, sums_diverge) {
        (true, true) => NevaiClass::Nevai,
        (false, false) => NevaiClass::NonNevai,
        _ => NevaiClass::Inconsistent,
    };
    Ok(NevaiReport {
        rows,
        coefficients_vanish,
        sums_diverge,
        class,
    })
}

/// Root sets of `Phi_n` for every `n` in `grid`.
pub fn root_sets(result: &SynthesisResult, grid: &[usize], precision: PrecisionConfig, seed: u64) -> Result<Vec<RootSet>> {
    grid.iter().map(|&n| find_roots(result.poly(n), precision, seed)).collect()
}

/// Synthesizes up to the largest grid degree and runs the Nevai report.
pub fn nevai_report_for(schedule: &ZeroSchedule, grid: &[usize], precision: PrecisionConfig, seed: u64) -> Result<NevaiReport> {
    let n_max = grid.iter().copied().max().unwrap_or(0);
    let result = synthesize(schedule, n_max, precision)?;
    let roots = root_sets(&result, grid, precision, seed)?;
    nevai_equivalence_report(&result.record, &roots)
}

#[derive(Debug, Clone, PartialEq)]
pub struct AsymptoticReport {
    pub l_estimate: f64,
    pub mean_root_modulus: Vec<(usize, f64)>,
    pub distance_sums: Vec<(usize, f64)>,
    /// `|Phi_n(0)|` per degree.
    pub nevai_indicator: Vec<(usize, f64)>,
}

pub fn asymptotic_report(record: &VerblunskyRecord, roots: &[RootSet], window_fraction: f64) -> Result<AsymptoticReport> {
    let l_estimate = mhaskar_saff_estimate(record, window_fraction)?;
    Ok(AsymptoticReport {
        l_estimate,
        mean_root_modulus: roots.iter().map(|rs| (rs.degree, rs.mean_modulus())).collect(),
        distance_sums: roots.iter().map(|rs| (rs.degree, circle_distance_sum(rs))).collect(),
        nevai_indicator: roots.iter().map(|rs| (rs.degree, record.alpha(rs.degree).abs_f64())).collect(),
    })
}
