//! Verification suites shared by `opuc verify` and the acceptance target.

use opuc_core::arc::{arc_rate_check, ArcParameters};
use opuc_core::diagnostics::{mhaskar_saff_estimate, nevai_report_for};
use opuc_core::periodic::{period2_closed_form, period3_bound_check, period3_limit, period3_majorant};
use opuc_core::rootfind::{double_blaschke_identity, product_identity_residual, reconstruction_gap};
use opuc_core::szego::{period2_pole_polynomial, radius_estimate_toward};
use opuc_core::{find_roots, synthesize, Complex, Float, PrecisionConfig, ZeroSchedule};

use crate::error::CliError;
use crate::manifest::{Assertion, SuiteResult};

/// Relative tolerance of the closed-form comparison; `1e-40` at 256 bits.
pub fn closed_form_tolerance(p: PrecisionConfig) -> f64 {
    p.scaled_tolerance(36.8, 0.3)
}

/// Root residual and product identity; `1e-30` at 256 bits.
pub fn root_tolerance(p: PrecisionConfig) -> f64 {
    p.scaled_tolerance(46.8, 0.3)
}

/// Double Blaschke identity; `1e-35` at 256 bits.
pub fn blaschke_tolerance(p: PrecisionConfig) -> f64 {
    p.scaled_tolerance(41.8, 0.3)
}

pub const PADE_RATE_TOLERANCE: f64 = 0.07;
pub const PADE_RADIUS_FRACTION: f64 = 0.15;
pub const PADE_LIMIT_TOLERANCE: f64 = 1e-10;
pub const ARC_RELATIVE_TOLERANCE: f64 = 0.05;
pub const MAJORANT_LIMIT_TOLERANCE: f64 = 1e-10;
pub const RADIUS_TOLERANCE: f64 = 0.01;

pub fn period2_suite(z1: &Complex, z2: &Complex, n: usize, p: PrecisionConfig) -> Result<SuiteResult, CliError> {
    let schedule = ZeroSchedule::periodic(vec![z1.clone(), z2.clone()])?;
    let res = synthesize(&schedule, n, p)?;
    let mut worst = 0.0f64;
    let mut worst_n = 0;
    for k in 1..=n {
        let closed = period2_closed_form(z1, z2, k);
        let gap = (&res.record.alpha(k) - &closed).abs_f64();
        let scale = closed.abs_f64();
        let rel = if scale == 0.0 { gap } else { gap / scale };
        if rel > worst {
            worst = rel;
            worst_n = k;
        }
    }
    let a = Assertion::at_most("closed-form relative error", worst, closed_form_tolerance(p))
        .with_detail(format!("worst at n = {worst_n}"));
    Ok(SuiteResult::new("period2", vec![a]))
}

/// `|a_N - lim a_n|` for the majorant at radius `r`, when the limit is positive.
pub fn majorant_limit_assertion(r: &Float, n_max: usize) -> Result<Option<Assertion>, CliError> {
    let limit = period3_limit(r);
    if limit.is_zero() {
        return Ok(None);
    }
    let majorant = period3_majorant(r, n_max)?;
    let last = majorant.a(majorant.last_index()).to_f64();
    Ok(Some(
        Assertion::within("majorant limit", last, limit.to_f64(), MAJORANT_LIMIT_TOLERANCE)
            .with_detail(format!("r = {}, N = {}", r.to_f64(), majorant.last_index())),
    ))
}

pub fn period3_suite(r: &Float, n: usize, p: PrecisionConfig) -> Result<SuiteResult, CliError> {
    let res = synthesize(&ZeroSchedule::period3(r)?, n, p)?;
    let report = period3_bound_check(&res.record, r)?;
    let mut assertions = vec![Assertion {
        name: "majorant violations".into(),
        passed: report.majorant_holds(),
        actual: Some(report.violations.len() as f64),
        expected: Some(0.0),
        tolerance: Some(0.0),
        detail: report
            .violations
            .first()
            .map(|v| format!("first at n = {}: {:e} > {:e}", v.n, v.coefficient, v.majorant)),
    }];
    if let Some(limit) = report.exponent_limit {
        assertions.push(Assertion::at_most("windowed root exponent", report.windowed_exponent, limit));
    }
    if let Some(a) = majorant_limit_assertion(r, n)? {
        assertions.push(a);
    }
    Ok(SuiteResult::new("period3", assertions)
        .measure("windowed_exponent", report.windowed_exponent)
        .measure("checked", report.checked as f64))
}

pub fn radius_suite(schedule: &ZeroSchedule, n: usize, expected: f64, p: PrecisionConfig) -> Result<SuiteResult, CliError> {
    let res = synthesize(schedule, n, p)?;
    let l = mhaskar_saff_estimate(&res.record, 0.5)?;
    Ok(SuiteResult::new(
        "radius",
        vec![Assertion::within("windowed |Phi_n(0)|^(1/n)", l, expected, RADIUS_TOLERANCE)],
    ))
}

pub fn nevai_suite(schedule: &ZeroSchedule, grid: &[usize], p: PrecisionConfig, seed: u64) -> Result<SuiteResult, CliError> {
    let report = nevai_report_for(schedule, grid, p, seed)?;
    let consistent = report.class != opuc_core::NevaiClass::Inconsistent;
    let mut suite = SuiteResult::new(
        "nevai",
        vec![Assertion::flag("classification is consistent", consistent, report.class.label())],
    );
    for row in &report.rows {
        suite = suite
            .measure(&format!("coefficient_{}", row.n), row.coefficient)
            .measure(&format!("distance_sum_{}", row.n), row.distance_sum)
            .measure(&format!("ratio_bound_{}", row.n), row.ratio_bound);
    }
    Ok(suite)
}

/// Row denominators `q_{n,2}` for a period-2 schedule against
/// `z^2 - 1/conj(z_1 z_2)`.
pub fn pade_suite(z1: &Complex, z2: &Complex, ns: &[usize], p: PrecisionConfig) -> Result<SuiteResult, CliError> {
    let n_max = ns.iter().copied().max().unwrap_or(0);
    let schedule = ZeroSchedule::periodic(vec![z1.clone(), z2.clone()])?;
    let res = synthesize(&schedule, n_max + 10, p)?;
    let target = period2_pole_polynomial(z1, z2)?;
    let est = radius_estimate_toward(&res.record, 2, ns, Some(&target))?;
    let product = (z1 * z2).abs_f64();
    let last_gap = est.distances.last().map(|d| d.1).unwrap_or(f64::NAN);
    let assertions = vec![
        Assertion::at_most("distance to pole polynomial at largest n", last_gap, PADE_LIMIT_TOLERANCE),
        Assertion::within("fitted rate", est.delta, product.sqrt(), PADE_RATE_TOLERANCE),
        Assertion::within("radius", est.radius, 1.0 / product, PADE_RADIUS_FRACTION / product),
    ];
    Ok(SuiteResult::new("pade", assertions)
        .measure("delta", est.delta)
        .measure("radius", est.radius)
        .measure("r_squared", est.fit.r_squared))
}

pub fn arc_suite(alpha: &Float, theta0: &Float, ns: &[usize], p: PrecisionConfig, seed: u64) -> Result<SuiteResult, CliError> {
    let params = ArcParameters::new(alpha)?;
    let report = arc_rate_check(&params, theta0, ns, p, seed)?;
    let final_error = report.final_error().unwrap_or(f64::NAN);
    let errors: Vec<String> = report.entries.iter().map(|e| format!("{:.6}", e.relative_error)).collect();
    let mut suite = SuiteResult::new(
        "arc",
        vec![
            Assertion::at_most("relative error at largest n", final_error, ARC_RELATIVE_TOLERANCE),
            Assertion::flag("errors strictly decreasing", report.errors_decreasing(), errors.join(",")),
        ],
    )
    .measure("omega0", report.omega0)
    .measure("reference", report.reference);
    for e in &report.entries {
        suite = suite.measure(&format!("scaled_gap_{}", e.n), e.scaled_gap);
    }
    Ok(suite)
}

/// Root residual, product identity, reconstruction and the double Blaschke
/// identity between degrees `n - 1` and `n`.
pub fn identities_suite(schedule: &ZeroSchedule, n: usize, p: PrecisionConfig, seed: u64) -> Result<SuiteResult, CliError> {
    let res = synthesize(schedule, n, p)?;
    let rs = find_roots(res.poly(n), p, seed)?;
    let mut assertions = vec![
        Assertion::at_most("max root residual", rs.max_residual(), root_tolerance(p)),
        Assertion::at_most(
            "product identity",
            product_identity_residual(&rs, &res.record.alpha(n)),
            root_tolerance(p),
        ),
        Assertion::at_most(
            "reconstruction gap",
            reconstruction_gap(&rs, res.poly(n)),
            p.scaled_tolerance(6.0, 0.3) * (n * n) as f64,
        ),
    ];
    if n >= 2 && res.record.alpha(n).is_zero() {
        // Both sides of the Blaschke identity are infinite; check its
        // degenerate form `Phi_n = z Phi_{n-1}` instead.
        let shifted = res.poly(n - 1).to_polynomial().shift(1);
        let gap = res.poly(n).to_polynomial().max_coeff_gap(&shifted);
        assertions.push(Assertion::at_most("shift identity", gap, blaschke_tolerance(p)));
    } else if n >= 2 {
        let prev = find_roots(res.poly(n - 1), p, seed)?;
        let r = double_blaschke_identity(&prev, &rs, &res.record.alpha(n))?;
        assertions.push(Assertion::at_most("double Blaschke identity", r, blaschke_tolerance(p)));
    }
    Ok(SuiteResult::new("identities", assertions))
}
