//! Closed forms and thresholds for schedules of period two and three.

use rug::Float;

use crate::complex::Complex;
use crate::error::{Error, Result};
use crate::record::VerblunskyRecord;

/// `(alpha2 - alpha1) / (1 - conj(alpha1) alpha2)`.
pub fn period2_ratio_constant(alpha1: &Complex, alpha2: &Complex) -> Complex {
    let prec = alpha1.prec();
    let den = &Complex::one(prec) - &(&alpha1.conj() * alpha2);
    &(alpha2 - alpha1) / &den
}

/// `Phi_n(0)` for the schedule `alpha1, alpha2, alpha1, ...`, `n >= 1`.
pub fn period2_closed_form(alpha1: &Complex, alpha2: &Complex, n: usize) -> Complex {
    assert!(n >= 1, "coefficients are indexed from 1");
    let prec = alpha1.prec();
    let alpha2 = alpha2.with_prec(prec);
    if n == 1 {
        return -alpha1;
    }
    let c = period2_ratio_constant(alpha1, &alpha2);
    if n == 2 {
        return -(&alpha2 * &c);
    }
    let product = alpha1 * &alpha2;
    if n % 2 == 1 {
        &c * &product.powu(((n - 1) / 2) as u64)
    } else {
        let half = (n / 2) as u64;
        -(&(&c * &alpha1.powu(half - 1)) * &alpha2.powu(half))
    }
}

/// Two-term exponential representation `Phi_n(0) = c1 b1^n + c2 b2^n`
/// (`n >= 2`) of the period-two coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct Period2Constants {
    pub alpha1: Complex,
    pub alpha2: Complex,
    pub c: Complex,
    pub c1: Complex,
    pub c2: Complex,
    /// Principal square root of `alpha1 alpha2`.
    pub b1: Complex,
    pub b2: Complex,
}

impl Period2Constants {
    pub fn value(&self, n: usize) -> Complex {
        let n = n as u64;
        &(&self.c1 * &self.b1.powu(n)) + &(&self.c2 * &self.b2.powu(n))
    }
}

/// `c1, c2 = -(C/2)(1/alpha1 -+ 1/b1)`.
pub fn period2_constants(alpha1: &Complex, alpha2: &Complex) -> Result<Period2Constants> {
    let prec = alpha1.prec();
    let alpha2 = alpha2.with_prec(prec);
    let product = alpha1 * &alpha2;
    if product.is_zero() {
        return Err(Error::InvalidArgument(
            "period-two constants need alpha1 alpha2 != 0".into(),
        ));
    }
    let c = period2_ratio_constant(alpha1, &alpha2);
    let b1 = product.sqrt();
    let b2 = -&b1;
    let half_c = c.scale(&Float::with_val(prec, 0.5));
    let inv_a1 = alpha1.recip();
    let inv_b1 = b1.recip();
    let c1 = -(&half_c * &(&inv_a1 - &inv_b1));
    let c2 = -(&half_c * &(&inv_a1 + &inv_b1));
    Ok(Period2Constants {
        alpha1: alpha1.clone(),
        alpha2,
        c,
        c1,
        c2,
        b1,
        b2,
    })
}

/// Real sequence `a_2, a_3, ...` dominating `|Phi_{n+1}(0)|` for period-three
/// schedules of common modulus `r`.
#[derive(Debug, Clone)]
pub struct Period3Majorant {
    pub r: Float,
    values: Vec<Float>,
}

impl Period3Majorant {
    /// `a_n` for `2 <= n <= N`.
    pub fn a(&self, n: usize) -> &Float {
        &self.values[n - 2]
    }

    /// Largest available index `N`.
    pub fn last_index(&self) -> usize {
        self.values.len() + 1
    }

    /// `a_2 .. a_N`.
    pub fn values(&self) -> &[Float] {
        &self.values
    }
}

/// `a_2 = a_3 = 2r^2/(1+r^2)`, `a_{n+1} = r (r a_{n-1} + a_n)/(1 + r a_{n-1} a_n)`.
pub fn period3_majorant(r: &Float, n_max: usize) -> Result<Period3Majorant> {
    if !(*r > 0 && *r <= 1) {
        return Err(Error::InvalidArgument(format!("r must lie in (0, 1], got {r}")));
    }
    if n_max < 3 {
        return Err(Error::InvalidArgument(format!("N must be at least 3, got {n_max}")));
    }
    let prec = r.prec();
    let r2 = Float::with_val(prec, r * r);
    let start = Float::with_val(prec, &r2 * 2u32) / Float::with_val(prec, 1 + &r2);
    let mut values = vec![start.clone(), start];
    for n in 3..n_max {
        let prev = &values[n - 3];
        let cur = &values[n - 2];
        let num = Float::with_val(prec, r * prev) + cur;
        let den = Float::with_val(prec, r * prev) * cur + 1u32;
        values.push(num / den * r);
    }
    Ok(Period3Majorant { r: r.clone(), values })
}

/// `(sqrt(5) - 1)/2`.
pub fn period3_threshold(prec: u32) -> Float {
    let five = Float::with_val(prec, 5);
    (five.sqrt() - 1u32) / 2u32
}

/// Limit of the majorant: `sqrt(r + 1 - 1/r)` above the threshold, else 0.
pub fn period3_limit(r: &Float) -> Float {
    let prec = r.prec();
    let inner = Float::with_val(prec, r + 1u32) - Float::with_val(prec, 1u32 / r);
    if inner <= 0 {
        Float::new(prec)
    } else {
        inner.sqrt()
    }
}

/// `r^2 / (1 - r)`, the asserted root-exponent bound below the threshold.
pub fn period3_exponent_bound(r: f64) -> f64 {
    r * r / (1.0 - r)
}

#[derive(Debug, Clone)]
pub struct MajorantViolation {
    /// `|Phi_{n+1}(0)| > a_n` at this `n`.
    pub n: usize,
    pub coefficient: f64,
    pub majorant: f64,
}

#[derive(Debug, Clone)]
pub struct Period3Report {
    pub r: f64,
    pub checked: usize,
    pub violations: Vec<MajorantViolation>,
    /// Max of `|Phi_n(0)|^{1/n}` over `n` in `[N/2, N]`.
    pub windowed_exponent: f64,
    /// `r^2/(1-r) + 0.02`; present only when `r` is below the threshold.
    pub exponent_limit: Option<f64>,
}

impl Period3Report {
    pub fn majorant_holds(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn exponent_holds(&self) -> Option<bool> {
        self.exponent_limit.map(|limit| self.windowed_exponent <= limit)
    }

    pub fn passed(&self) -> bool {
        self.majorant_holds() && self.exponent_holds().unwrap_or(true)
    }
}

pub const EXPONENT_SLACK: f64 = 0.02;

/// Checks `|Phi_{n+1}(0)| <= a_n` for every available `n >= 2`, and the
/// windowed root-exponent bound when `r` is below the threshold.
pub fn period3_bound_check(record: &VerblunskyRecord, r: &Float) -> Result<Period3Report> {
    let len = record.len();
    let majorant = period3_majorant(r, len.max(3))?;
    let slack = record.precision().scaled_tolerance(8.0, 0.3);
    let mut violations = Vec::new();
    let mut checked = 0;
    for n in 2..len {
        let coefficient = record.alpha(n + 1).abs();
        let a_n = majorant.a(n);
        checked += 1;
        let limit = Float::with_val(record.bits(), a_n * (1.0 + slack)) + slack;
        if coefficient > limit {
            violations.push(MajorantViolation {
                n,
                coefficient: coefficient.to_f64(),
                majorant: a_n.to_f64(),
            });
        }
    }
    let below = *r < period3_threshold(r.prec());
    let r64 = r.to_f64();
    Ok(Period3Report {
        r: r64,
        checked,
        violations,
        windowed_exponent: record.windowed_root_exponent(0.5),
        exponent_limit: below.then(|| period3_exponent_bound(r64) + EXPONENT_SLACK),
    })
}
