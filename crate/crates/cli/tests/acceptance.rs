//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Criteria listed in `KNOWN_DIVERGENT` are measured at their stated
//! tolerances and are expected to fail; the target exits nonzero on any other
//! failure, or if one of those starts passing.

use std::process::Command;
use std::time::{Duration, Instant};

use opuc_cli::manifest::{Assertion, RunManifest, SuiteResult};
use opuc_cli::suites;
use opuc_core::diagnostics::nevai_report_for;
use opuc_core::rootfind::{circle_distance_sum, double_blaschke_identity};
use opuc_core::szego::{d_inv_series, kappa_products, SzegoSeries};
use opuc_core::{find_roots, synthesize, Complex, MonicPolynomial, NevaiClass, PrecisionConfig, ZeroSchedule};

/// Criteria whose stated targets disagree with the exact computation.
const KNOWN_DIVERGENT: [u32; 3] = [5, 6, 7];

struct Outcome {
    passed: bool,
    detail: String,
}

impl Outcome {
    fn from_suites(results: &[SuiteResult]) -> Self {
        let mut parts = Vec::new();
        for s in results {
            for a in &s.assertions {
                parts.push(describe(&s.name, a));
            }
        }
        Self {
            passed: results.iter().all(|s| s.passed),
            detail: parts.join("; "),
        }
    }
}

fn describe(suite: &str, a: &Assertion) -> String {
    let mark = if a.passed { "ok" } else { "FAILED" };
    let mut s = format!("{suite}/{} {mark}", a.name);
    if let Some(v) = a.actual {
        s.push_str(&format!(" actual={v:.6e}"));
    }
    if let Some(v) = a.expected {
        s.push_str(&format!(" expected={v:.6e}"));
    }
    if let Some(v) = a.tolerance {
        s.push_str(&format!(" tol={v:.1e}"));
    }
    if let Some(d) = &a.detail {
        if !d.is_empty() {
            s.push_str(&format!(" [{d}]"));
        }
    }
    s
}

fn p() -> PrecisionConfig {
    PrecisionConfig::new(256).unwrap()
}

fn real_imag_pair() -> ZeroSchedule {
    ZeroSchedule::periodic(vec![p().complex(0.2, 0.0), p().complex(0.0, 0.7)]).unwrap()
}

fn closed_form() -> Result<Outcome, String> {
    let s = suites::period2_suite(&p().complex(0.2, 0.0), &p().complex(0.0, 0.7), 200, p()).map_err(|e| e.to_string())?;
    Ok(Outcome::from_suites(&[s]))
}

fn plotting_recipes() -> Result<Outcome, String> {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let recipes: [(&str, &[&str]); 5] = [
        ("periodic 0.2,0.7i n=100", &["--periodic", "0.2,0.7i", "--n", "100"]),
        ("periodic 0.7e^(-i pi/4),0.7e^(i pi/4) n=100", &["--periodic", "0.7@-0.25pi,0.7@0.25pi", "--n", "100"]),
        ("periodic3 0.62 n=100", &["--periodic3", "0.62", "--n", "100"]),
        ("periodic3 0.8 n=50", &["--periodic3", "0.8", "--n", "50"]),
        ("periodic3 0.8 n=100", &["--periodic3", "0.8", "--n", "100"]),
    ];
    let mut passed = true;
    let mut parts = Vec::new();
    for (k, (label, args)) in recipes.iter().enumerate() {
        let json = dir.path().join(format!("r{k}.json"));
        let out = Command::new(env!("CARGO_BIN_EXE_opuc"))
            .arg("zeros")
            .args(*args)
            .args(["--bits", "256", "--json"])
            .arg(&json)
            .output()
            .map_err(|e| e.to_string())?;
        if out.status.code() != Some(0) {
            passed = false;
            parts.push(format!("{label}: exit {:?} {}", out.status.code(), String::from_utf8_lossy(&out.stderr).trim()));
            continue;
        }
        let m = RunManifest::read(&json).map_err(|e| e.to_string())?;
        let roots = m.suites.iter().find(|s| s.name == "roots").ok_or("no roots suite")?;
        let bounded = roots.assertions.iter().all(|a| a.actual.is_some_and(|v| v <= 1e-30));
        passed &= roots.passed && bounded;
        let worst = roots.assertions.iter().filter_map(|a| a.actual).fold(0.0, f64::max);
        parts.push(format!("{label}: worst residual {worst:.2e}"));
    }
    Ok(Outcome {
        passed,
        detail: parts.join("; "),
    })
}

fn blaschke_identity() -> Result<Outcome, String> {
    let res = synthesize(&real_imag_pair(), 40, p()).map_err(|e| e.to_string())?;
    let mut passed = true;
    let mut parts = Vec::new();
    for n in [10usize, 20, 40] {
        let prev = find_roots(res.poly(n - 1), p(), 0).map_err(|e| e.to_string())?;
        let next = find_roots(res.poly(n), p(), 0).map_err(|e| e.to_string())?;
        let r = double_blaschke_identity(&prev, &next, &res.record.alpha(n)).map_err(|e| e.to_string())?;
        passed &= r <= 1e-35;
        parts.push(format!("n={n}: {r:.2e}"));
    }
    Ok(Outcome {
        passed,
        detail: format!("{} (tol 1e-35)", parts.join(", ")),
    })
}

fn mhaskar_saff_radius() -> Result<Outcome, String> {
    let s = suites::radius_suite(&real_imag_pair(), 200, 0.14f64.sqrt(), p()).map_err(|e| e.to_string())?;
    Ok(Outcome::from_suites(&[s]))
}

fn period3_threshold() -> Result<Outcome, String> {
    let half = p().real(0.5);
    let s = suites::period3_suite(&half, 150, p()).map_err(|e| e.to_string())?;
    let limit = suites::majorant_limit_assertion(&p().real(0.8), 150)
        .map_err(|e| e.to_string())?
        .ok_or("majorant limit at r = 0.8 is zero")?;
    let l = SuiteResult::new("majorant-0.8", vec![limit]);
    Ok(Outcome::from_suites(&[s, l]))
}

fn pade_radius() -> Result<Outcome, String> {
    let ns: Vec<usize> = (20..=60).collect();
    let s = suites::pade_suite(&p().complex(0.2, 0.0), &p().complex(0.0, 0.7), &ns, p()).map_err(|e| e.to_string())?;
    Ok(Outcome::from_suites(&[s]))
}

fn arc_rate() -> Result<Outcome, String> {
    let s = suites::arc_suite(&(p().pi() / 2u32), &p().pi(), &[100, 200, 400], p(), 0).map_err(|e| e.to_string())?;
    let mut o = Outcome::from_suites(std::slice::from_ref(&s));
    o.detail.push_str(&format!(
        "; reference={:.6}, scaled gaps {}",
        s.measured["reference"],
        [100, 200, 400]
            .iter()
            .map(|n| format!("{:.6}", s.measured[&format!("scaled_gap_{n}")]))
            .collect::<Vec<_>>()
            .join(",")
    ));
    Ok(o)
}

fn nevai_matrix() -> Result<Outcome, String> {
    let pc = p();
    let polar = |r: f64, t: f64| Complex::from_polar(&pc.real(r), &pc.real(t));
    let pi = std::f64::consts::PI;
    let long = [25usize, 50, 75, 100];
    let short = [20usize, 25, 30];
    // Finite lists with a determinate trend over the grid.
    let geometric: Vec<Complex> = (1..=30).map(|k| polar(0.9f64.powi(k), k as f64)).collect();
    let real_imag_list: Vec<Complex> = (0..30).map(|k| if k % 2 == 0 { pc.complex(0.2, 0.0) } else { pc.complex(0.0, 0.7) }).collect();
    let period3_list = ZeroSchedule::period3(&pc.real(0.8)).unwrap().values().iter().cycle().take(30).cloned().collect();
    let cases: Vec<(&str, ZeroSchedule, &[usize])> = vec![
        ("0.2,0.7i", real_imag_pair(), &long),
        ("0.7e^(+-i pi/4)", ZeroSchedule::periodic(vec![polar(0.7, -pi / 4.0), polar(0.7, pi / 4.0)]).unwrap(), &long),
        ("periodic3 0.62", ZeroSchedule::period3(&pc.real(0.62)).unwrap(), &long),
        ("periodic3 0.8", ZeroSchedule::period3(&pc.real(0.8)).unwrap(), &long),
        ("zero", ZeroSchedule::zero(256), &long),
        ("explicit geometric 0.9^k", ZeroSchedule::explicit(geometric).unwrap(), &short),
        ("explicit real-imag list", ZeroSchedule::explicit(real_imag_list).unwrap(), &short),
        ("explicit periodic3 0.8 list", ZeroSchedule::explicit(period3_list).unwrap(), &short),
        ("explicit constant 0.5", ZeroSchedule::explicit(vec![pc.complex(0.5, 0.0); 30]).unwrap(), &short),
    ];
    let mut passed = true;
    let mut parts = Vec::new();
    for (label, schedule, grid) in cases {
        let report = nevai_report_for(&schedule, grid, pc, 0).map_err(|e| format!("{label}: {e}"))?;
        passed &= report.class != NevaiClass::Inconsistent;
        parts.push(format!("{label}: {}", report.class.label()));
    }
    Ok(Outcome {
        passed,
        detail: parts.join("; "),
    })
}

fn trivial_oracles() -> Result<Outcome, String> {
    let pc = p();
    let n_max = 20;
    let mut checks = Vec::new();

    let zero = synthesize(&ZeroSchedule::zero(256), n_max, pc).map_err(|e| e.to_string())?;
    let monomials = (1..=n_max).all(|n| zero.poly(n).max_coeff_gap(&MonicPolynomial::monomial(n, 256)) == 0.0);
    checks.push(("Phi_n = z^n", monomials));
    let kappa = kappa_products(&zero.record).kappa;
    checks.push(("kappa = 1", kappa == 1));
    let rs = find_roots(zero.poly(n_max), pc, 0).map_err(|e| e.to_string())?;
    checks.push(("distance sum = n", circle_distance_sum(&rs) == n_max as f64));
    let series = SzegoSeries::for_radius(&zero.record, 0.9).map_err(|e| e.to_string())?;
    let mut d_inv_one = true;
    for (re, im) in [(0.0, 0.0), (0.5, -0.3), (-0.8, 0.1), (0.0, 0.9)] {
        let v = d_inv_series(&series, &pc.complex(re, im)).map_err(|e| e.to_string())?;
        d_inv_one &= (&v.value - &Complex::one(256)).abs_f64() == 0.0;
    }
    checks.push(("D^-1 = 1", d_inv_one));

    let a = pc.complex(0.3, 0.4);
    let repeat = synthesize(&ZeroSchedule::constant(a).map_err(|e| e.to_string())?, n_max, pc).map_err(|e| e.to_string())?;
    let phi2 = repeat.poly(2).to_polynomial();
    let factor_ok = (3..=n_max).all(|n| {
        let expected = phi2.shift(n - 2);
        repeat.poly(n).to_polynomial().max_coeff_gap(&expected) <= suites::closed_form_tolerance(pc)
    });
    checks.push(("repeat zero Phi_n = z^(n-2) Phi_2", factor_ok));

    Ok(Outcome {
        passed: checks.iter().all(|c| c.1),
        detail: checks
            .iter()
            .map(|(name, ok)| format!("{name} {}", if *ok { "ok" } else { "FAILED" }))
            .collect::<Vec<_>>()
            .join("; "),
    })
}

type Check = fn() -> Result<Outcome, String>;

fn main() {
    // Ignore libtest flags such as `--nocapture`; a name filter selects criteria.
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let criteria: [(u32, &str, Duration, Check); 9] = [
        (1, "period-2 closed form, n <= 200", Duration::from_secs(10), closed_form),
        (2, "plotting recipes via `opuc zeros`", Duration::from_secs(300), plotting_recipes),
        (3, "double Blaschke identity, n = 10, 20, 40", Duration::from_secs(120), blaschke_identity),
        (4, "windowed radius at N = 200", Duration::from_secs(60), mhaskar_saff_radius),
        (5, "period-3 majorant, exponent and limit", Duration::from_secs(120), period3_threshold),
        (6, "Fourier-Pade rate and radius, n in [20, 60]", Duration::from_secs(120), pade_radius),
        (7, "arc zero-approach rate, n = 100, 200, 400", Duration::from_secs(180), arc_rate),
        (8, "Nevai classification never inconsistent", Duration::from_secs(300), nevai_matrix),
        (9, "trivial oracles", Duration::from_secs(60), trivial_oracles),
    ];
    let mut unexpected = Vec::new();
    for (id, name, budget, check) in criteria {
        let tag = format!("criterion_{id}");
        if !filter.is_empty() && !filter.iter().any(|f| tag.contains(f.as_str())) {
            continue;
        }
        let start = Instant::now();
        let result = check();
        let elapsed = start.elapsed();
        let (passed, detail) = match result {
            Ok(o) => (o.passed && elapsed <= budget, o.detail),
            Err(e) => (false, format!("error: {e}")),
        };
        let divergent = KNOWN_DIVERGENT.contains(&id);
        let verdict = match (passed, divergent) {
            (true, false) => "PASS",
            (false, false) => "FAIL",
            (false, true) => "FAIL (known divergence)",
            (true, true) => "PASS (unexpected; known divergence resolved)",
        };
        println!(
            "criterion {id}: {verdict}: {name} ({:.1}s of {}s) :: {detail}",
            elapsed.as_secs_f64(),
            budget.as_secs()
        );
        if passed == divergent {
            unexpected.push(id);
        }
    }
    if unexpected.is_empty() {
        println!("acceptance: all outcomes as expected");
    } else {
        println!("acceptance: unexpected outcomes for criteria {unexpected:?}");
        std::process::exit(1);
    }
}
