//! Simultaneous (Aberth–Ehrlich) root extraction and identities built on
//! the full zero set of `Phi_n`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rug::Float;

use crate::complex::Complex;
use crate::error::{Error, Result};
use crate::poly::{Evaluation, MonicPolynomial};
use crate::precision::PrecisionConfig;

pub const DEFAULT_MAX_ITERATIONS: usize = 1000;

/// Anything the simultaneous iteration can be run on.
pub trait RootTarget {
    fn degree(&self) -> usize;
    fn prec(&self) -> u32;
    /// Value, derivative and rounding-error scale at `z`.
    fn evaluate(&self, z: &Complex) -> Evaluation;
    /// Radius of the circle carrying the starting points.
    fn initial_radius(&self) -> f64;
}

impl RootTarget for MonicPolynomial {
    fn degree(&self) -> usize {
        MonicPolynomial::degree(self)
    }

    fn prec(&self) -> u32 {
        MonicPolynomial::prec(self)
    }

    fn evaluate(&self, z: &Complex) -> Evaluation {
        MonicPolynomial::evaluate(self, z)
    }

    fn initial_radius(&self) -> f64 {
        let n = self.degree() as f64;
        let c0 = self.constant_term().abs();
        let geometric = if c0.is_zero() {
            0.0
        } else {
            (c0.ln().to_f64() / n).exp()
        };
        geometric.max(0.5)
    }
}

#[derive(Debug, Clone)]
pub struct RootSet {
    pub degree: usize,
    pub roots: Vec<Complex>,
    /// `|p(z_j)|` at each returned root.
    pub residuals: Vec<f64>,
    /// Rounding-error scale of each evaluation (`sum |c_k| |z_j|^k`).
    pub scales: Vec<f64>,
    pub iterations: usize,
}

impl RootSet {
    pub fn max_residual(&self) -> f64 {
        self.residuals.iter().copied().fold(0.0, f64::max)
    }

    /// Largest `|p(z_j)| / max(1, scale_j)`.
    pub fn max_relative_residual(&self) -> f64 {
        self.residuals
            .iter()
            .zip(&self.scales)
            .map(|(r, s)| r / s.max(1.0))
            .fold(0.0, f64::max)
    }

    pub fn max_modulus(&self) -> f64 {
        self.roots.iter().map(Complex::abs_f64).fold(0.0, f64::max)
    }

    pub fn mean_modulus(&self) -> f64 {
        if self.roots.is_empty() {
            return 0.0;
        }
        self.roots.iter().map(Complex::abs_f64).sum::<f64>() / self.roots.len() as f64
    }

    /// Roots sorted by argument, then modulus; for stable output.
    pub fn sorted_by_angle(&self) -> Vec<(Complex, f64)> {
        let mut pairs: Vec<_> = self
            .roots
            .iter()
            .cloned()
            .zip(self.residuals.iter().copied())
            .collect();
        pairs.sort_by(|a, b| {
            let ka = (a.0.arg().to_f64(), a.0.abs_f64());
            let kb = (b.0.arg().to_f64(), b.0.abs_f64());
            ka.partial_cmp(&kb).unwrap_or(std::cmp::Ordering::Equal)
        });
        pairs
    }
}

/// Roots of a monic polynomial. Trailing zero coefficients are split off as
/// exact roots at the origin before iterating.
pub fn find_roots(p: &MonicPolynomial, precision: PrecisionConfig, seed: u64) -> Result<RootSet> {
    find_roots_with_limit(p, precision, seed, DEFAULT_MAX_ITERATIONS)
}

pub fn find_roots_with_limit(
    p: &MonicPolynomial,
    precision: PrecisionConfig,
    seed: u64,
    max_iterations: usize,
) -> Result<RootSet> {
    let n = p.degree();
    if n == 0 {
        return Err(Error::InvalidArgument("degree must be at least 1".into()));
    }
    let prec = p.prec();
    let zeros_at_origin = p.coeffs().iter().take_while(|c| c.is_zero()).count();
    let reduced = MonicPolynomial::new(p.coeffs()[zeros_at_origin..].to_vec(), prec);

    let mut roots = vec![Complex::zero(prec); zeros_at_origin];
    let mut iterations = 0;
    match reduced.degree() {
        0 => {}
        1 => roots.push(-&reduced.coeffs()[0]),
        _ => {
            let (found, its) = aberth(&reduced, precision, seed, max_iterations)?;
            roots.extend(found);
            iterations = its;
        }
    }

    let mut residuals = Vec::with_capacity(n);
    let mut scales = Vec::with_capacity(n);
    for z in &roots {
        let e = p.evaluate(z);
        residuals.push(e.value.abs_f64());
        scales.push(e.scale);
    }
    let rs = RootSet {
        degree: n,
        roots,
        residuals,
        scales,
        iterations,
    };
    let tol = precision.scaled_tolerance(8.0, 0.3) * n as f64;
    let worst = rs.max_relative_residual();
    if worst > tol {
        return Err(Error::NoConvergence {
            degree: n,
            iterations,
            worst_residual: worst,
        });
    }
    Ok(rs)
}

/// Jacobi-style Aberth sweeps: every correction in a sweep is computed from
/// the estimates of the previous sweep, so the result does not depend on the
/// order roots are visited in.
///
/// A root is frozen once `|p(z)| <= 2^(24 - bits) scale` or its correction
/// drops below `2^(24 - bits) max(1, |z|)`.
pub fn aberth<T: RootTarget + ?Sized>(
    target: &T,
    precision: PrecisionConfig,
    seed: u64,
    max_iterations: usize,
) -> Result<(Vec<Complex>, usize)> {
    let m = target.degree();
    let prec = target.prec();
    let tiny = 2f64.powi(24 - precision.bits() as i32);
    let mut roots = initial_guesses(m, target.initial_radius(), prec, seed);
    let mut done = vec![false; m];
    let mut worst = f64::INFINITY;

    for iteration in 1..=max_iterations {
        let mut corrections: Vec<Option<Complex>> = vec![None; m];
        worst = 0.0;
        for i in 0..m {
            if done[i] {
                continue;
            }
            let e = target.evaluate(&roots[i]);
            let residual = e.value.abs_f64();
            if residual <= tiny * e.scale {
                done[i] = true;
                continue;
            }
            worst = f64::max(worst, residual / e.scale.max(1.0));
            if e.derivative.is_zero() {
                // Nudge off a critical point; the next sweep retries.
                corrections[i] = Some(Complex::from_f64(prec, -tiny.sqrt(), tiny.sqrt()));
                continue;
            }
            let newton = &e.value / &e.derivative;
            let mut repulsion = Complex::zero(prec);
            for (j, other) in roots.iter().enumerate() {
                if j != i {
                    let diff = &roots[i] - other;
                    if !diff.is_zero() {
                        repulsion += &diff.recip();
                    }
                }
            }
            let den = &Complex::one(prec) - &(&newton * &repulsion);
            let step = if den.is_zero() { newton } else { &newton / &den };
            corrections[i] = Some(step);
        }
        for (i, step) in corrections.into_iter().enumerate() {
            if let Some(step) = step {
                let size = step.abs_f64();
                roots[i] -= &step;
                if size < tiny * roots[i].abs_f64().max(1.0) {
                    done[i] = true;
                }
            }
        }
        if done.iter().all(|&d| d) {
            return Ok((roots, iteration));
        }
    }
    Err(Error::NoConvergence {
        degree: m,
        iterations: max_iterations,
        worst_residual: worst,
    })
}

/// `m` points on the circle of radius `radius`, equispaced in angle with a
/// seeded jitter of at most `1e-3` radians each.
pub fn initial_guesses(m: usize, radius: f64, prec: u32, seed: u64) -> Vec<Complex> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let r = Float::with_val(prec, radius);
    (0..m)
        .map(|k| {
            let jitter: f64 = rng.gen_range(-1e-3..1e-3);
            let theta = Float::with_val(prec, rug::float::Constant::Pi) * 2u32 * (k as u32) / (m as u32)
                + Float::with_val(prec, jitter);
            Complex::from_polar(&r, &theta)
        })
        .collect()
}

/// `|(-1)^n prod_j z_{n,j} - Phi_n(0)|`.
pub fn product_identity_residual(rs: &RootSet, alpha_n: &Complex) -> f64 {
    let prec = alpha_n.prec();
    let mut prod = Complex::one(prec);
    for z in &rs.roots {
        prod *= z;
    }
    if rs.degree % 2 == 1 {
        prod = -prod;
    }
    (&prod - alpha_n).abs_f64()
}

/// `sum_j (1 - |z_{n,j}|)`.
pub fn circle_distance_sum(rs: &RootSet) -> f64 {
    let prec = rs.roots.first().map(Complex::prec).unwrap_or(64);
    let mut total = Float::new(prec);
    for z in &rs.roots {
        total += 1u32;
        total -= z.abs();
    }
    total.to_f64()
}

/// `prod_j (T + |z_{n,j}|) / (1 + T |z_{n,j}|)`, an upper bound for
/// `|Phi_n / Phi_n^*|` on `|z| <= T`.
pub fn blaschke_ratio_bound(rs: &RootSet, t: f64) -> Result<f64> {
    if !(t > 0.0 && t < 1.0) {
        return Err(Error::InvalidArgument(format!("T must lie in (0, 1), got {t}")));
    }
    let prec = rs.roots.first().map(Complex::prec).unwrap_or(64);
    let t = Float::with_val(prec, t);
    let mut log_total = Float::new(prec);
    for z in &rs.roots {
        let modulus = z.abs();
        let num = Float::with_val(prec, &t + &modulus);
        let den = Float::with_val(prec, &t * &modulus) + 1u32;
        log_total += (num / den).ln();
    }
    Ok(log_total.exp().to_f64())
}

/// Residual of the finite-`n` identity
/// `log|Phi_{n+1}(0)| / (n+1) = sum_{j,k} log|(z_j - w_k)/(1 - conj(w_k) z_j)| / (n(n+1))`
/// with `z_j` the zeros of `Phi_{n+1}` and `w_k` those of `Phi_n`.
pub fn double_blaschke_identity(rs_n: &RootSet, rs_next: &RootSet, alpha_next: &Complex) -> Result<f64> {
    let n = rs_n.degree;
    if n == 0 || rs_next.degree != n + 1 {
        return Err(Error::InvalidArgument(format!(
            "need consecutive degrees n >= 1, got {} and {}",
            rs_n.degree, rs_next.degree
        )));
    }
    if alpha_next.is_zero() {
        return Err(Error::InvalidArgument(
            "identity needs a nonzero coefficient".into(),
        ));
    }
    let prec = alpha_next.prec();
    let floor = 2f64.powi(16 - prec as i32);
    let one = Complex::one(prec);
    let mut sum = Float::new(prec);
    for z in &rs_next.roots {
        for w in &rs_n.roots {
            let den = &one - &(&w.conj() * z);
            if den.abs_f64() < floor {
                return Err(Error::Pole(format!(
                    "1 - conj(w) z vanishes for w = {w:?}, z = {z:?}"
                )));
            }
            let num = z - w;
            if num.is_zero() {
                return Err(Error::Pole(format!("coincident zeros at {z:?}")));
            }
            sum += num.ln_abs();
            sum -= den.ln_abs();
        }
    }
    let lhs = alpha_next.ln_abs() / (n as u32 + 1);
    let rhs = sum / ((n * (n + 1)) as u32);
    Ok(Float::with_val(prec, lhs - rhs).abs().to_f64())
}

/// Coefficientwise gap between `prod_j (z - z_j)` and `p`, divided by
/// `prod_j (1 + |z_j|)`. The divisor bounds every coefficient met while
/// expanding the product, so it sets the rounding floor of the comparison.
pub fn reconstruction_gap(rs: &RootSet, p: &MonicPolynomial) -> f64 {
    let gap = MonicPolynomial::from_roots(&rs.roots, p.prec()).max_coeff_gap(p);
    let log_scale: f64 = rs.roots.iter().map(|z| z.abs_f64().ln_1p()).sum();
    gap / log_scale.exp()
}

/// Uniform probability measure on a finite multiset of points.
#[derive(Debug, Clone)]
pub struct CountingMeasure {
    points: Vec<Complex>,
}

impl CountingMeasure {
    pub fn new(points: Vec<Complex>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::InvalidArgument("counting measure needs a point".into()));
        }
        Ok(Self { points })
    }

    pub fn from_roots(rs: &RootSet) -> Result<Self> {
        Self::new(rs.roots.clone())
    }

    pub fn points(&self) -> &[Complex] {
        &self.points
    }

    /// `(1/N) sum_j p_j^k`.
    pub fn moment(&self, k: u64) -> Complex {
        let prec = self.points[0].prec();
        let mut total = Complex::zero(prec);
        for p in &self.points {
            total += &p.powu(k);
        }
        total.scale(&Float::with_val(prec, 1.0 / self.points.len() as f64))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const P: u32 = 256;

    fn c(re: f64, im: f64) -> Complex {
        Complex::from_f64(P, re, im)
    }

    fn prec() -> PrecisionConfig {
        PrecisionConfig::default()
    }

    fn contains(roots: &[Complex], z: &Complex, tol: f64) -> bool {
        roots.iter().any(|r| (r - z).abs_f64() < tol)
    }

    #[test]
    fn monomial_roots_are_exact_zeros() {
        let rs = find_roots(&MonicPolynomial::monomial(3, P), prec(), 0).unwrap();
        assert_eq!(rs.roots.len(), 3);
        assert!(rs.roots.iter().all(Complex::is_zero));
        assert_eq!(rs.iterations, 0);
    }

    #[test]
    fn factorable_quadratic() {
        let p = MonicPolynomial::new(vec![c(0.0, 0.0), c(-0.5, 0.0)], P);
        let rs = find_roots(&p, prec(), 0).unwrap();
        assert!(contains(&rs.roots, &c(0.0, 0.0), 1e-70));
        assert!(contains(&rs.roots, &c(0.5, 0.0), 1e-70));
    }

    #[test]
    fn recovers_prescribed_roots() {
        let given = [c(0.3, 0.1), c(-0.5, 0.2), c(0.0, -0.7), c(0.6, 0.6), c(-0.2, -0.2)];
        let p = MonicPolynomial::from_roots(&given, P);
        let rs = find_roots(&p, prec(), 7).unwrap();
        for z in &given {
            assert!(contains(&rs.roots, z, 1e-60));
        }
        assert!(reconstruction_gap(&rs, &p) < 1e-60);
    }

    #[test]
    fn deterministic_for_a_seed() {
        let p = MonicPolynomial::from_roots(&[c(0.1, 0.2), c(0.3, -0.4), c(-0.6, 0.0)], P);
        let a = find_roots(&p, prec(), 3).unwrap();
        let b = find_roots(&p, prec(), 3).unwrap();
        assert_eq!(a.roots, b.roots);
        assert_eq!(a.iterations, b.iterations);
    }

    #[test]
    fn product_identity_for_monomial() {
        let rs = find_roots(&MonicPolynomial::monomial(4, P), prec(), 0).unwrap();
        assert_eq!(product_identity_residual(&rs, &c(0.0, 0.0)), 0.0);
    }

    #[test]
    fn distance_sums_and_ratio_bounds() {
        let rs = find_roots(&MonicPolynomial::monomial(5, P), prec(), 0).unwrap();
        assert_eq!(circle_distance_sum(&rs), 5.0);
        assert!((blaschke_ratio_bound(&rs, 0.5).unwrap() - 0.5f64.powi(5)).abs() < 1e-16);

        let single = find_roots(&MonicPolynomial::new(vec![c(-0.5, 0.0)], P), prec(), 0).unwrap();
        assert_eq!(circle_distance_sum(&single), 0.5);
        assert!((blaschke_ratio_bound(&single, 0.5).unwrap() - 0.8).abs() < 1e-15);
        assert!(blaschke_ratio_bound(&single, 1.0).is_err());
    }

    #[test]
    fn moments_of_simple_measures() {
        let zeros = CountingMeasure::new(vec![c(0.0, 0.0); 4]).unwrap();
        assert!(zeros.moment(3).is_zero());
        let pair = CountingMeasure::new(vec![c(1.0, 0.0), c(-1.0, 0.0)]).unwrap();
        assert_eq!(pair.moment(2), c(1.0, 0.0));
        assert_eq!(pair.moment(0), c(1.0, 0.0));
        assert!(CountingMeasure::new(Vec::new()).is_err());
    }

    #[test]
    fn rejects_zero_coefficient_in_double_identity() {
        let one = find_roots(&MonicPolynomial::new(vec![c(-0.5, 0.0)], P), prec(), 0).unwrap();
        let two = find_roots(&MonicPolynomial::new(vec![c(0.0, 0.0), c(-0.5, 0.0)], P), prec(), 0).unwrap();
        assert!(double_blaschke_identity(&one, &two, &c(0.0, 0.0)).is_err());
    }
}
