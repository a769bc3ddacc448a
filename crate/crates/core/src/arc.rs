//! Orthogonal polynomials for the Chebyshev-type weight on the arc
//! `theta in [alpha, 2 pi - alpha]`, computed through the conformal
//! parametrization `z = h(v)` of the complement of the arc.
//!
//! Zeros are found in the `v`-plane as the roots inside the unit disk of
//! the cleared-denominator polynomial
//! `P(v) = (1 - beta v)^(n-1) (1 + beta v)^n + v (v - beta)^(n-1) (v + beta)^n`.

use rug::float::Constant;
use rug::Float;

use crate::complex::Complex;
use crate::error::{Error, Result};
use crate::poly::Evaluation;
use crate::precision::PrecisionConfig;
use crate::rootfind::{aberth, RootTarget, DEFAULT_MAX_ITERATIONS};

/// Roots closer than this to the unit circle are not counted as interior.
pub const INTERIOR_MARGIN: f64 = 1e-6;

#[derive(Debug, Clone)]
pub struct ArcParameters {
    /// Half-opening of the gap around `z = 1`; the arc is `[alpha, 2 pi - alpha]`.
    pub alpha: Float,
    /// `(pi - alpha) / 4`.
    pub eta: Float,
    /// `i tan(eta)`.
    pub beta: Complex,
}

impl ArcParameters {
    pub fn new(alpha: &Float) -> Result<Self> {
        let prec = alpha.prec();
        let pi = Float::with_val(prec, Constant::Pi);
        if !(*alpha > 0 && *alpha < pi) {
            return Err(Error::InvalidArgument(format!("alpha must lie in (0, pi), got {alpha}")));
        }
        let eta = Float::with_val(prec, &pi - alpha) / 4u32;
        let beta = Complex::from_parts(Float::new(prec), Float::with_val(prec, eta.tan_ref()));
        Ok(Self {
            alpha: alpha.clone(),
            eta,
            beta,
        })
    }

    pub fn from_f64(alpha: f64, precision: PrecisionConfig) -> Result<Self> {
        Self::new(&precision.real(alpha))
    }

    pub fn prec(&self) -> u32 {
        self.alpha.prec()
    }

    /// `tan(eta) = |beta|`.
    pub fn tan_eta(&self) -> &Float {
        &self.beta.im
    }

    /// Whether `theta` lies strictly inside `(alpha, 2 pi - alpha)`.
    pub fn contains_angle(&self, theta: &Float) -> bool {
        let upper = Float::with_val(self.prec(), Constant::Pi) * 2u32 - &self.alpha;
        *theta > self.alpha && *theta < upper
    }
}

/// `w(v) = i (1 - beta v) / (v + beta)`.
pub fn map_w(p: &ArcParameters, v: &Complex) -> Result<Complex> {
    let prec = p.prec();
    let den = v + &p.beta;
    if den.is_zero() {
        return Err(Error::Pole("w has a pole at v = -beta".into()));
    }
    let num = &Complex::one(prec) - &(&p.beta * v);
    Ok(&(&Complex::i(prec) * &num) / &den)
}

/// `h(v) = (v - beta)(beta v - 1) / ((v + beta)(beta v + 1))`.
pub fn map_h(p: &ArcParameters, v: &Complex) -> Result<Complex> {
    let prec = p.prec();
    let one = Complex::one(prec);
    let bv = &p.beta * v;
    let den = &(v + &p.beta) * &(&bv + &one);
    if den.is_zero() {
        return Err(Error::Pole("h has poles at v = -beta and v = -1/beta".into()));
    }
    let num = &(v - &p.beta) * &(&bv - &one);
    Ok(&num / &den)
}

/// `P(v)` of degree `2n`, evaluated in factored form.
#[derive(Debug, Clone)]
pub struct ArcPolynomial {
    params: ArcParameters,
    n: usize,
}

/// `(u^k, k u^(k-1) du)` without dividing by `u`.
fn power_with_derivative(u: &Complex, du: &Complex, k: usize) -> (Complex, Complex) {
    let prec = u.prec();
    if k == 0 {
        return (Complex::one(prec), Complex::zero(prec));
    }
    let lower = u.powu(k as u64 - 1);
    let value = &lower * u;
    let derivative = (&lower * du).scale(&Float::with_val(prec, k));
    (value, derivative)
}

/// Value and derivative of `f g`.
fn product(f: (Complex, Complex), g: (Complex, Complex)) -> (Complex, Complex) {
    let value = &f.0 * &g.0;
    let derivative = &(&f.1 * &g.0) + &(&f.0 * &g.1);
    (value, derivative)
}

impl ArcPolynomial {
    pub fn new(params: &ArcParameters, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("arc degree must be at least 1".into()));
        }
        Ok(Self {
            params: params.clone(),
            n,
        })
    }

    /// Both terms of `P(v)` with their derivatives.
    fn terms(&self, v: &Complex) -> ((Complex, Complex), (Complex, Complex)) {
        let prec = self.params.prec();
        let n = self.n;
        let one = Complex::one(prec);
        let beta = &self.params.beta;
        let bv = beta * v;
        let minus_beta = -beta;
        let a = product(
            power_with_derivative(&(&one - &bv), &minus_beta, n - 1),
            power_with_derivative(&(&one + &bv), beta, n),
        );
        let b = product(
            (v.clone(), one.clone()),
            product(
                power_with_derivative(&(v - beta), &one, n - 1),
                power_with_derivative(&(v + beta), &one, n),
            ),
        );
        (a, b)
    }

    /// `|P(v)| / (|A(v)| + |B(v)|)` for the two terms `A + B = P`; equal to
    /// the relative size of the bracketed sum defining the polynomial.
    pub fn bracket_residual(&self, v: &Complex) -> f64 {
        let (a, b) = self.terms(v);
        let size = Float::with_val(self.params.prec(), a.0.abs() + b.0.abs());
        if size.is_zero() {
            return 0.0;
        }
        (Float::with_val(self.params.prec(), (&a.0 + &b.0).abs()) / size).to_f64()
    }

    /// Ascending coefficients of `P`, expanded exactly at working precision.
    pub fn coefficients(&self) -> Vec<Complex> {
        let prec = self.params.prec();
        let one = Complex::one(prec);
        let beta = &self.params.beta;
        let linear = |c0: &Complex, c1: &Complex| vec![c0.clone(), c1.clone()];
        let pow = |factor: Vec<Complex>, k: usize| {
            let mut acc = vec![one.clone()];
            for _ in 0..k {
                acc = convolve(&acc, &factor);
            }
            acc
        };
        let a = convolve(
            &pow(linear(&one, &-beta), self.n - 1),
            &pow(linear(&one, beta), self.n),
        );
        let mut b = vec![Complex::zero(prec)];
        b.extend(convolve(
            &pow(linear(&-beta, &one), self.n - 1),
            &pow(linear(beta, &one), self.n),
        ));
        let mut out = vec![Complex::zero(prec); 2 * self.n + 1];
        for (k, c) in a.iter().enumerate() {
            out[k] += c;
        }
        for (k, c) in b.iter().enumerate() {
            out[k] += c;
        }
        out
    }
}

fn convolve(a: &[Complex], b: &[Complex]) -> Vec<Complex> {
    let prec = a[0].prec();
    let mut out = vec![Complex::zero(prec); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += &(x * y);
        }
    }
    out
}

impl RootTarget for ArcPolynomial {
    fn degree(&self) -> usize {
        2 * self.n
    }

    fn prec(&self) -> u32 {
        self.params.prec()
    }

    /// Value and derivative are divided by `max(|A|, |B|)` so the scale
    /// stays in `[1, 2]`; the terms overflow `f64` for `|v|` above about 2
    /// at degree 800.
    fn evaluate(&self, v: &Complex) -> Evaluation {
        let (a, b) = self.terms(v);
        let (ma, mb) = (a.0.abs(), b.0.abs());
        let norm = if ma > mb { ma.clone() } else { mb.clone() };
        if norm.is_zero() {
            return Evaluation {
                value: &a.0 + &b.0,
                derivative: &a.1 + &b.1,
                scale: 0.0,
            };
        }
        let inv = Float::with_val(self.params.prec(), 1u32 / &norm);
        Evaluation {
            value: (&a.0 + &b.0).scale(&inv),
            derivative: (&a.1 + &b.1).scale(&inv),
            scale: Float::with_val(self.params.prec(), (ma + mb) * &inv).to_f64(),
        }
    }

    fn initial_radius(&self) -> f64 {
        1.0
    }
}

#[derive(Debug, Clone)]
pub struct ArcZeroReport {
    pub n: usize,
    /// Zeros of `phi_n` in the `z`-plane, in the order of `v_points`.
    pub zeros: Vec<Complex>,
    pub v_points: Vec<Complex>,
    /// `n (1 - |z_{n,j}|)`.
    pub scaled_gaps: Vec<f64>,
}

/// The `n` zeros of the degree-`n` arc polynomial.
pub fn arc_zeros(p: &ArcParameters, n: usize, precision: PrecisionConfig, seed: u64) -> Result<ArcZeroReport> {
    let target = ArcPolynomial::new(p, n)?;
    let (roots, _) = aberth(&target, precision, seed, DEFAULT_MAX_ITERATIONS)?;
    let residual_tol = precision.scaled_tolerance(0.0, 0.2);
    let mut v_points: Vec<Complex> = roots
        .into_iter()
        .filter(|v| v.abs_f64() < 1.0 - INTERIOR_MARGIN && target.bracket_residual(v) < residual_tol)
        .collect();
    if v_points.len() != n {
        return Err(Error::ArcZeroCount {
            expected: n,
            retained: v_points.len(),
        });
    }
    v_points.sort_by(|a, b| {
        let (x, y) = (a.arg().to_f64(), b.arg().to_f64());
        x.total_cmp(&y)
    });
    let zeros = v_points.iter().map(|v| map_h(p, v)).collect::<Result<Vec<_>>>()?;
    let scaled_gaps = zeros.iter().map(|z| n as f64 * (1.0 - z.abs_f64())).collect();
    Ok(ArcZeroReport {
        n,
        zeros,
        v_points,
        scaled_gaps,
    })
}

/// `log((1 + 2 t sin w + t^2) / (1 - 2 t sin w + t^2))` with `t = tan(eta)`.
pub fn arc_rate(p: &ArcParameters, omega0: f64) -> f64 {
    let t = p.tan_eta().to_f64();
    let s = 2.0 * t * omega0.sin();
    let base = 1.0 + t * t;
    ((base + s) / (base - s)).ln()
}

/// `arc_rate` times `t sin(w) / (1 + t^2)`, the limit observed for
/// `n (1 - |z|)`.
pub fn arc_gap_limit(p: &ArcParameters, omega0: f64) -> f64 {
    let t = p.tan_eta().to_f64();
    t * omega0.sin() / (1.0 + t * t) * arc_rate(p, omega0)
}

/// `theta` reduced to `[0, 2 pi)`.
fn angle_mod_tau(theta: Float) -> Float {
    let prec = theta.prec();
    let tau = Float::with_val(prec, Constant::Pi) * 2u32;
    if theta < 0 {
        theta + tau
    } else {
        theta
    }
}

fn boundary_angle(p: &ArcParameters, omega: &Float) -> Result<Float> {
    Ok(angle_mod_tau(map_h(p, &Complex::cis(omega))?.arg()))
}

/// `omega0 in (0, pi)` with `h(e^{i omega0}) = e^{i theta0}`, by bisection
/// on the argument of `h` along the upper half circle.
pub fn boundary_pullback(p: &ArcParameters, theta0: &Float) -> Result<Float> {
    let prec = p.prec();
    if !p.contains_angle(theta0) {
        return Err(Error::InvalidArgument(format!("theta0 = {theta0} is not interior to the arc")));
    }
    let bracket_err = || Error::Bracketing { theta0: theta0.to_f64() };
    let pi = Float::with_val(prec, Constant::Pi);
    let edge = Float::with_val(prec, 2f64.powi(-(prec as i32) / 4));
    let mut lo = edge.clone();
    let mut hi = Float::with_val(prec, &pi - &edge);
    let sign_at = |omega: &Float| -> Result<i32> {
        let gap = boundary_angle(p, omega)? - theta0;
        Ok(if gap > 0 { 1 } else if gap < 0 { -1 } else { 0 })
    };
    let s_lo = sign_at(&lo)?;
    let s_hi = sign_at(&hi)?;
    if s_lo == 0 {
        return Ok(lo);
    }
    if s_hi == 0 {
        return Ok(hi);
    }
    if s_lo == s_hi {
        return Err(bracket_err());
    }
    for _ in 0..4 * prec {
        let mid = Float::with_val(prec, &lo + &hi) / 2u32;
        if mid == lo || mid == hi {
            break;
        }
        let s = sign_at(&mid)?;
        if s == 0 {
            lo = mid.clone();
            hi = mid;
            break;
        }
        if s == s_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let omega = Float::with_val(prec, &lo + &hi) / 2u32;
    let tol = 10f64.powf(-0.25 * prec as f64);
    let residual = (&map_h(p, &Complex::cis(&omega))? - &Complex::cis(theta0)).abs_f64();
    if residual >= tol {
        return Err(bracket_err());
    }
    Ok(omega)
}

#[derive(Debug, Clone)]
pub struct ArcRateEntry {
    pub n: usize,
    pub zero: Complex,
    pub scaled_gap: f64,
    pub relative_error: f64,
}

#[derive(Debug, Clone)]
pub struct ArcRateReport {
    pub theta0: f64,
    pub omega0: f64,
    /// `arc_rate(omega0)`.
    pub reference: f64,
    pub entries: Vec<ArcRateEntry>,
}

impl ArcRateReport {
    pub fn errors_decreasing(&self) -> bool {
        self.entries.windows(2).all(|w| w[1].relative_error < w[0].relative_error)
    }

    pub fn final_error(&self) -> Option<f64> {
        self.entries.last().map(|e| e.relative_error)
    }
}

/// Signed angular distance folded to `[0, pi]`.
fn angular_distance(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(std::f64::consts::TAU);
    d.min(std::f64::consts::TAU - d)
}

/// For each `n`, the zero nearest in angle to `theta0` and its scaled gap
/// `n (1 - |z|)` compared against `arc_rate` at the pulled-back angle.
pub fn arc_rate_check(
    p: &ArcParameters,
    theta0: &Float,
    ns: &[usize],
    precision: PrecisionConfig,
    seed: u64,
) -> Result<ArcRateReport> {
    if ns.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidArgument("degrees must be strictly increasing".into()));
    }
    let omega0 = boundary_pullback(p, theta0)?.to_f64();
    let reference = arc_rate(p, omega0);
    let theta = theta0.to_f64();
    let mut entries = Vec::with_capacity(ns.len());
    for &n in ns {
        let report = arc_zeros(p, n, precision, seed)?;
        let window = std::f64::consts::PI / n as f64;
        let (j, distance) = report
            .zeros
            .iter()
            .map(|z| angular_distance(z.arg().to_f64(), theta))
            .enumerate()
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .expect("n >= 1 zeros");
        if distance > window {
            return Err(Error::NoZeroNearAngle {
                degree: n,
                theta0: theta,
                window,
            });
        }
        let scaled_gap = report.scaled_gaps[j];
        entries.push(ArcRateEntry {
            n,
            zero: report.zeros[j].clone(),
            scaled_gap,
            relative_error: (scaled_gap - reference).abs() / reference,
        });
    }
    Ok(ArcRateReport {
        theta0: theta,
        omega0,
        reference,
        entries,
    })
}
