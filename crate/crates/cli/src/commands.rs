//! Command implementations. Each returns the process exit code for a run
//! that completed, or an error carrying its own code.

use std::io::Write;
use std::path::{Path, PathBuf};

use opuc_core::arc::{arc_zeros, ArcParameters};
use opuc_core::rootfind::product_identity_residual;
use opuc_core::szego::{pade_denominator, period2_pole_polynomial, radius_estimate_toward};
use opuc_core::{find_roots, synthesize, Complex, PrecisionConfig, ZeroSchedule};

use crate::args::{ArcArgs, Cli, Command, PadeArgs, ReplayArgs, ScheduleArgs, Suite, SynthArgs, VerifyArgs, ZerosArgs};
use crate::error::{CliError, EXIT_ASSERTION, EXIT_OK};
use crate::manifest::{Assertion, RunManifest, SuiteResult};
use crate::output::{complex_fields, format_f64, format_real, scatter_svg, write_atomic, Csv};
use crate::parse::{parse_angle, parse_real, parse_schedule_spec, parse_usize_list};
use crate::suites;

pub struct Context<'a> {
    /// Arguments after the program name.
    pub argv: &'a [String],
    pub out: &'a mut dyn Write,
    pub err: &'a mut dyn Write,
}

impl Context<'_> {
    fn emit(&mut self, path: Option<&Path>, text: &str) -> Result<(), CliError> {
        match path {
            Some(p) => write_atomic(p, text.as_bytes()),
            None => self.out.write_all(text.as_bytes()).map_err(|e| CliError::io("<stdout>", e)),
        }
    }

    fn note(&mut self, text: &str) {
        let _ = writeln!(self.err, "{text}");
    }
}

fn precision(bits: u32) -> Result<PrecisionConfig, CliError> {
    Ok(PrecisionConfig::new(bits)?)
}

/// The schedule and a `kind:values` description of it.
fn resolve_schedule(args: &ScheduleArgs, p: PrecisionConfig) -> Result<Option<(ZeroSchedule, String)>, CliError> {
    let spec = if let Some(v) = &args.periodic {
        format!("periodic:{v}")
    } else if let Some(v) = &args.periodic3 {
        format!("periodic3:{v}")
    } else if let Some(v) = &args.constant {
        format!("constant:{v}")
    } else if let Some(v) = &args.explicit {
        format!("explicit:{v}")
    } else if let Some(v) = &args.schedule {
        v.clone()
    } else {
        return Ok(None);
    };
    Ok(Some((parse_schedule_spec(&spec, p)?, spec)))
}

fn require_schedule(args: &ScheduleArgs, p: PrecisionConfig) -> Result<(ZeroSchedule, String), CliError> {
    resolve_schedule(args, p)?.ok_or_else(|| {
        CliError::Input("a schedule is required (--periodic, --periodic3, --constant, --explicit or --schedule)".into())
    })
}

fn resolve_n(n: Option<usize>, schedule: &ZeroSchedule) -> Result<usize, CliError> {
    let n = match (n, schedule.len()) {
        (Some(n), _) => n,
        (None, Some(len)) => len,
        (None, None) => return Err(CliError::Input("--n is required for unbounded schedules".into())),
    };
    if n == 0 {
        return Err(CliError::Input("--n must be at least 1".into()));
    }
    Ok(n)
}

/// The two zeros of a period-2 schedule.
fn period2_pair(schedule: &ZeroSchedule) -> Result<(Complex, Complex), CliError> {
    match schedule {
        ZeroSchedule::Periodic(v) if v.len() == 2 => Ok((v[0].clone(), v[1].clone())),
        _ => Err(CliError::Input("this command needs a period-2 schedule (--periodic a,b)".into())),
    }
}

fn finish(ctx: &mut Context, manifest: &RunManifest, json: Option<&Path>) -> Result<i32, CliError> {
    if let Some(path) = json {
        manifest.write(path)?;
    }
    for suite in &manifest.suites {
        for a in suite.failures() {
            ctx.note(&format!(
                "FAIL {}/{}: actual {:?}, expected {:?}, tolerance {:?}{}",
                suite.name,
                a.name,
                a.actual,
                a.expected,
                a.tolerance,
                a.detail.as_ref().map(|d| format!(" ({d})")).unwrap_or_default()
            ));
        }
    }
    Ok(if manifest.passed() { EXIT_OK } else { EXIT_ASSERTION })
}

fn record_output(manifest: &mut RunManifest, kind: &str, path: Option<&PathBuf>) {
    if let Some(p) = path {
        manifest.outputs.insert(kind.into(), p.display().to_string());
    }
}

pub fn synth(ctx: &mut Context, args: &SynthArgs) -> Result<i32, CliError> {
    let p = precision(args.common.bits)?;
    let (schedule, spec) = require_schedule(&args.schedule, p)?;
    let n = resolve_n(args.n, &schedule)?;
    let res = synthesize(&schedule, n, p)?;
    let mut csv = Csv::new(&["n", "re", "im", "modulus"]);
    for k in 1..=n {
        let [re, im, modulus] = complex_fields(&res.record.alpha(k), p);
        csv.row(&[k.to_string(), re, im, modulus]);
    }
    ctx.emit(args.csv.as_deref(), &csv.into_string())?;
    let mut manifest = RunManifest::new("synth", ctx.argv, p.bits(), args.common.seed);
    manifest.schedule = Some(spec);
    manifest.n = Some(n);
    record_output(&mut manifest, "csv", args.csv.as_ref());
    finish(ctx, &manifest, args.common.json.as_deref())
}

pub fn zeros(ctx: &mut Context, args: &ZerosArgs) -> Result<i32, CliError> {
    let p = precision(args.common.bits)?;
    let (schedule, spec) = require_schedule(&args.schedule, p)?;
    let n = resolve_n(args.n, &schedule)?;
    let res = synthesize(&schedule, n, p)?;
    let rs = find_roots(res.poly(n), p, args.common.seed)?;
    let mut csv = Csv::new(&["n", "j", "re", "im", "modulus", "residual"]);
    let sorted = rs.sorted_by_angle();
    for (j, (z, residual)) in sorted.iter().enumerate() {
        let [re, im, modulus] = complex_fields(z, p);
        csv.row(&[n.to_string(), (j + 1).to_string(), re, im, modulus, format_f64(*residual)]);
    }
    ctx.emit(args.csv.as_deref(), &csv.into_string())?;
    let radius = res.record.windowed_root_exponent(0.5);
    if let Some(path) = &args.svg {
        let points: Vec<(f64, f64)> = sorted.iter().map(|(z, _)| z.to_f64_pair()).collect();
        write_atomic(path, scatter_svg(&points, radius).as_bytes())?;
    }
    let tol = suites::root_tolerance(p);
    let suite = SuiteResult::new(
        "roots",
        vec![
            Assertion::at_most("max root residual", rs.max_residual(), tol),
            Assertion::at_most("product identity", product_identity_residual(&rs, &res.record.alpha(n)), tol),
        ],
    )
    .measure("radius_circle", radius)
    .measure("iterations", rs.iterations as f64);
    let mut manifest = RunManifest::new("zeros", ctx.argv, p.bits(), args.common.seed);
    manifest.schedule = Some(spec);
    manifest.n = Some(n);
    manifest.suites.push(suite);
    record_output(&mut manifest, "csv", args.csv.as_ref());
    record_output(&mut manifest, "svg", args.svg.as_ref());
    finish(ctx, &manifest, args.common.json.as_deref())
}

fn single_degree(n: &Option<String>, default: usize) -> Result<usize, CliError> {
    match n {
        None => Ok(default),
        Some(text) => match parse_usize_list(text)?.as_slice() {
            [n] if *n > 0 => Ok(*n),
            _ => Err(CliError::Input(format!("expected one positive degree, got '{text}'"))),
        },
    }
}

pub const DEFAULT_PADE_RANGE: (usize, usize) = (20, 60);
pub const DEFAULT_ARC_DEGREES: [usize; 3] = [100, 200, 400];

pub fn verify(ctx: &mut Context, args: &VerifyArgs) -> Result<i32, CliError> {
    let p = precision(args.common.bits)?;
    let seed = args.common.seed;
    let schedule = resolve_schedule(&args.schedule, p)?;
    let need_schedule = || {
        schedule
            .clone()
            .ok_or_else(|| CliError::Input(format!("suite {} needs a schedule", args.suite.label())))
    };
    let suite = match args.suite {
        Suite::Period2 => {
            let (z1, z2) = period2_pair(&need_schedule()?.0)?;
            suites::period2_suite(&z1, &z2, single_degree(&args.n, 200)?, p)?
        }
        Suite::Period3 => {
            let r = args
                .schedule
                .periodic3
                .as_deref()
                .ok_or_else(|| CliError::Input("suite period3 needs --periodic3 R".into()))?;
            suites::period3_suite(&parse_real(r, p)?, single_degree(&args.n, 150)?, p)?
        }
        Suite::Nevai => suites::nevai_suite(&need_schedule()?.0, &parse_usize_list(&args.grid)?, p, seed)?,
        Suite::Pade => {
            let (z1, z2) = period2_pair(&need_schedule()?.0)?;
            let ns: Vec<usize> = match &args.n {
                None => (DEFAULT_PADE_RANGE.0..=DEFAULT_PADE_RANGE.1).collect(),
                Some(text) => parse_usize_list(text)?,
            };
            suites::pade_suite(&z1, &z2, &ns, p)?
        }
        Suite::Arc => {
            let ns = match &args.n {
                None => DEFAULT_ARC_DEGREES.to_vec(),
                Some(text) => parse_usize_list(text)?,
            };
            let alpha = parse_angle(&args.alpha, p)?;
            let theta0 = parse_angle(&args.theta0, p)?;
            suites::arc_suite(&alpha, &theta0, &ns, p, seed)?
        }
        Suite::Identities => suites::identities_suite(&need_schedule()?.0, single_degree(&args.n, 10)?, p, seed)?,
    };
    let mut manifest = RunManifest::new("verify", ctx.argv, p.bits(), seed);
    manifest.schedule = schedule.map(|s| s.1);
    manifest.suites.push(suite);
    ctx.emit(None, &manifest.to_json())?;
    finish(ctx, &manifest, args.common.json.as_deref())
}

pub fn pade(ctx: &mut Context, args: &PadeArgs) -> Result<i32, CliError> {
    let p = precision(args.common.bits)?;
    let (schedule, spec) = require_schedule(&args.schedule, p)?;
    if args.n_min == 0 || args.n_max < args.n_min + 3 {
        return Err(CliError::Input("need 1 <= n-min and at least four degrees".into()));
    }
    let ns: Vec<usize> = (args.n_min..=args.n_max).collect();
    let res = synthesize(&schedule, args.n_max + 10, p)?;
    let target = match period2_pair(&schedule) {
        Ok((z1, z2)) => Some(period2_pole_polynomial(&z1, &z2)?),
        Err(_) => None,
    };
    let est = radius_estimate_toward(&res.record, 2, &ns, target.as_ref())?;
    let mut csv = Csv::new(&["n", "q0_re", "q0_im", "q1_re", "q1_im", "distance"]);
    for &n in &ns {
        let q = pade_denominator(&res.record, n, 2)?;
        let (c0, c1) = (q.q.coeff(0), q.q.coeff(1));
        csv.row(&[
            n.to_string(),
            format_real(&c0.re, p),
            format_real(&c0.im, p),
            format_real(&c1.re, p),
            format_real(&c1.im, p),
            format_f64(q.q.max_coeff_gap(&est.limit)),
        ]);
    }
    ctx.emit(args.csv.as_deref(), &csv.into_string())?;
    ctx.note(&format!("delta = {:.6}, R_2 = {:.6}, r^2 = {:.6}", est.delta, est.radius, est.fit.r_squared));
    let mut suite = SuiteResult::new("pade", Vec::new())
        .measure("delta", est.delta)
        .measure("radius", est.radius)
        .measure("r_squared", est.fit.r_squared);
    if let Ok((z1, z2)) = period2_pair(&schedule) {
        suite = suite.measure("product_modulus", (&z1 * &z2).abs_f64());
    }
    let mut manifest = RunManifest::new("pade", ctx.argv, p.bits(), args.common.seed);
    manifest.schedule = Some(spec);
    manifest.n = Some(args.n_max);
    manifest.suites.push(suite);
    record_output(&mut manifest, "csv", args.csv.as_ref());
    finish(ctx, &manifest, args.common.json.as_deref())
}

pub fn arc(ctx: &mut Context, args: &ArcArgs) -> Result<i32, CliError> {
    let p = precision(args.common.bits)?;
    let params = ArcParameters::new(&parse_angle(&args.alpha, p)?)?;
    let report = arc_zeros(&params, args.n, p, args.common.seed)?;
    let mut csv = Csv::new(&["n", "j", "re", "im", "modulus", "scaled_gap"]);
    for (j, (z, gap)) in report.zeros.iter().zip(&report.scaled_gaps).enumerate() {
        let [re, im, modulus] = complex_fields(z, p);
        csv.row(&[args.n.to_string(), (j + 1).to_string(), re, im, modulus, format_f64(*gap)]);
    }
    ctx.emit(args.csv.as_deref(), &csv.into_string())?;
    let mean = report.zeros.iter().map(Complex::abs_f64).sum::<f64>() / args.n as f64;
    if let Some(path) = &args.svg {
        let points: Vec<(f64, f64)> = report.zeros.iter().map(Complex::to_f64_pair).collect();
        write_atomic(path, scatter_svg(&points, mean).as_bytes())?;
    }
    let inside = report.zeros.iter().all(|z| z.abs_f64() < 1.0);
    let suite = SuiteResult::new("arc-zeros", vec![Assertion::flag("zeros inside the disk", inside, "")])
        .measure("mean_modulus", mean);
    let mut manifest = RunManifest::new("arc", ctx.argv, p.bits(), args.common.seed);
    manifest.n = Some(args.n);
    manifest.suites.push(suite);
    record_output(&mut manifest, "csv", args.csv.as_ref());
    record_output(&mut manifest, "svg", args.svg.as_ref());
    finish(ctx, &manifest, args.common.json.as_deref())
}

pub fn replay(ctx: &mut Context, args: &ReplayArgs) -> Result<i32, CliError> {
    use clap::Parser;

    let manifest = RunManifest::read(&args.manifest)?;
    let mut argv = vec!["opuc".to_string()];
    argv.extend(manifest.argv.iter().cloned());
    let mut cli = Cli::try_parse_from(&argv).map_err(|e| CliError::Input(format!("manifest arguments do not parse: {e}")))?;
    if matches!(cli.command, Command::Replay(_)) {
        return Err(CliError::Input("a replay manifest cannot replay itself".into()));
    }
    let dir = tempfile::tempdir().map_err(|e| CliError::io(std::env::temp_dir(), e))?;
    let mut compare = Vec::new();
    for (kind, slot) in cli.command.outputs_mut() {
        if let Some(original) = slot.take() {
            let fresh = dir.path().join(format!("replay.{kind}"));
            if kind != "json" {
                compare.push((kind, original, fresh.clone()));
            }
            *slot = Some(fresh);
        }
    }
    if compare.is_empty() {
        return Err(CliError::Input("manifest records no file outputs to compare".into()));
    }
    let mut sink = std::io::sink();
    let mut quiet = std::io::sink();
    let mut inner = Context {
        argv: &manifest.argv,
        out: &mut sink,
        err: &mut quiet,
    };
    dispatch(&mut inner, &cli.command)?;
    let mut all_same = true;
    for (kind, original, fresh) in compare {
        let before = std::fs::read(&original).map_err(|e| CliError::io(&original, e))?;
        let after = std::fs::read(&fresh).map_err(|e| CliError::io(&fresh, e))?;
        let same = before == after;
        all_same &= same;
        let verdict = if same { "identical" } else { "DIFFERS" };
        let _ = writeln!(ctx.out, "{kind} {}: {verdict}", original.display());
    }
    Ok(if all_same { EXIT_OK } else { EXIT_ASSERTION })
}

pub fn dispatch(ctx: &mut Context, command: &Command) -> Result<i32, CliError> {
    match command {
        Command::Synth(a) => synth(ctx, a),
        Command::Zeros(a) => zeros(ctx, a),
        Command::Verify(a) => verify(ctx, a),
        Command::Pade(a) => pade(ctx, a),
        Command::Arc(a) => arc(ctx, a),
        Command::Replay(a) => replay(ctx, a),
    }
}
