//! Szegő recurrence driven by a zero schedule.

use crate::complex::Complex;
use crate::error::{Error, Result};
use crate::poly::{MonicPolynomial, Polynomial};
use crate::precision::PrecisionConfig;
use crate::record::VerblunskyRecord;
use crate::schedule::ZeroSchedule;

/// The reversed polynomial is recomputed and compared against the
/// incrementally maintained one at this stride.
const STAR_CHECK_STRIDE: usize = 16;

#[derive(Debug, Clone)]
pub struct SynthesisResult {
    pub record: VerblunskyRecord,
    /// `Phi_1 .. Phi_N`.
    pub polys: Vec<MonicPolynomial>,
    /// `Phi_1^* .. Phi_N^*`.
    pub star_polys: Vec<Polynomial>,
}

impl SynthesisResult {
    /// `Phi_n` for `1 <= n <= N`.
    pub fn poly(&self, n: usize) -> &MonicPolynomial {
        &self.polys[n - 1]
    }

    pub fn star(&self, n: usize) -> &Polynomial {
        &self.star_polys[n - 1]
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }
}

fn check_coefficient(alpha: &Complex, index: usize) -> Result<()> {
    if alpha.norm_sqr() >= 1 {
        return Err(Error::VerblunskyBound {
            index,
            modulus: alpha.abs_f64(),
        });
    }
    Ok(())
}

/// `Phi_{n+1} = z Phi_n + alpha Phi_n^*`.
pub fn szego_step(phi: &MonicPolynomial, star: &Polynomial, alpha_next: &Complex) -> Result<MonicPolynomial> {
    let n = phi.degree();
    check_coefficient(alpha_next, n + 1)?;
    assert_eq!(star.degree(), n, "reversed polynomial must have degree {n}");
    let prec = phi.prec();
    let alpha = alpha_next.with_prec(prec);
    let mut coeffs = Vec::with_capacity(n + 1);
    // The reversed polynomial of a monic one has constant term exactly 1.
    coeffs.push(alpha.clone());
    for k in 1..=n {
        let mut c = &alpha * &star.coeffs()[k];
        c += &phi.coeff(k - 1);
        coeffs.push(c);
    }
    Ok(MonicPolynomial::new(coeffs, prec))
}

/// `Phi_{n+1}^* = Phi_n^* + conj(alpha) z Phi_n`.
pub fn star_step(phi: &MonicPolynomial, star: &Polynomial, alpha_next: &Complex) -> Polynomial {
    let n = phi.degree();
    let prec = phi.prec();
    let alpha_bar = alpha_next.with_prec(prec).conj();
    let mut coeffs = Vec::with_capacity(n + 2);
    coeffs.push(Complex::one(prec));
    for k in 1..=n + 1 {
        let mut c = &alpha_bar * &phi.coeff(k - 1);
        if k <= n {
            c += &star.coeffs()[k];
        }
        coeffs.push(c);
    }
    Polynomial::new(coeffs, prec)
}

/// `Phi_{n+1}(0) = -z Phi_n(z) / Phi_n^*(z)` for the next prescribed zero `z`.
pub fn zeros_to_alpha(phi: &MonicPolynomial, star: &Polynomial, z_next: &Complex) -> Result<Complex> {
    let index = phi.degree() + 1;
    let prec = phi.prec();
    let z = z_next.with_prec(prec);
    if z.norm_sqr() >= 1 {
        return Err(Error::ZeroOutsideDisk {
            index,
            modulus: z.abs_f64(),
        });
    }
    if z.is_zero() {
        return Ok(Complex::zero(prec));
    }
    let eps_rel = 2f64.powi(16 - prec as i32);
    let denominator = star.eval(&z);
    let den_mod = denominator.abs_f64();
    if den_mod < eps_rel {
        return Err(Error::DegenerateDivision { index, modulus: den_mod });
    }
    let alpha = -(&(&z * &phi.eval(&z)) / &denominator);
    check_coefficient(&alpha, index)?;
    Ok(alpha)
}

/// Runs the recurrence for `z_1 .. z_N`.
///
/// After each step the new polynomial is evaluated at its prescribed zero;
/// the residual must stay below `10^(8 - 0.3 bits) n max(1, M)`, where `M` is
/// `sum |c_k| |z_n|^k`, the size of the terms that cancel in the evaluation.
pub fn synthesize(schedule: &ZeroSchedule, n_max: usize, precision: PrecisionConfig) -> Result<SynthesisResult> {
    if n_max == 0 {
        return Err(Error::InvalidArgument("N must be at least 1".into()));
    }
    schedule.ensure_supplies(n_max)?;
    let prec = precision.bits();
    let tol = precision.scaled_tolerance(8.0, 0.3);

    let mut phi = MonicPolynomial::one(prec);
    let mut star = Polynomial::constant(Complex::one(prec));
    let mut alphas = Vec::with_capacity(n_max);
    let mut polys = Vec::with_capacity(n_max);
    let mut star_polys = Vec::with_capacity(n_max);

    for n in 1..=n_max {
        let z = schedule.zero_at(n)?.with_prec(prec);
        let alpha = zeros_to_alpha(&phi, &star, &z)?;
        let next = szego_step(&phi, &star, &alpha)?;
        let next_star = star_step(&phi, &star, &alpha);

        let eval = next.evaluate(&z);
        let residual = eval.value.abs_f64();
        let tolerance = tol * n as f64 * eval.scale.max(1.0);
        if residual > tolerance {
            return Err(Error::ResidualTooLarge {
                index: n,
                residual,
                tolerance,
            });
        }
        if n % STAR_CHECK_STRIDE == 0 {
            let gap = next.reversed().max_coeff_gap(&next_star);
            if gap > precision.eps_rel() * n as f64 * next.max_coeff_modulus() {
                return Err(Error::StarDrift { index: n, gap });
            }
        }

        alphas.push(alpha);
        polys.push(next.clone());
        star_polys.push(next_star.clone());
        phi = next;
        star = next_star;
    }

    let record = VerblunskyRecord::with_schedule(schedule.with_prec(prec), alphas, precision)?;
    Ok(SynthesisResult {
        record,
        polys,
        star_polys,
    })
}

fn monic_from_full(full: Polynomial, degree: usize) -> MonicPolynomial {
    let prec = full.prec();
    let coeffs = full.coeffs()[..degree].to_vec();
    MonicPolynomial::new(coeffs, prec)
}

/// Two steps at once:
/// `Phi_{n+1} = z (z + conj(a_n) a_{n+1}) Phi_{n-1} + (a_{n+1} + z a_n) Phi_{n-1}^*`
/// with `alphas = (a_n, a_{n+1})`.
pub fn szego_step2(
    phi_prev: &MonicPolynomial,
    alphas: (&Complex, &Complex),
    star_prev: &Polynomial,
) -> Result<MonicPolynomial> {
    let m = phi_prev.degree();
    let prec = phi_prev.prec();
    let (a_n, a_next) = (alphas.0.with_prec(prec), alphas.1.with_prec(prec));
    check_coefficient(&a_n, m + 1)?;
    check_coefficient(&a_next, m + 2)?;
    let lin = &a_n.conj() * &a_next;
    let a_poly = Polynomial::new(vec![Complex::zero(prec), lin, Complex::one(prec)], prec);
    let b_poly = Polynomial::new(vec![a_next, a_n], prec);
    let full = a_poly.mul(&phi_prev.to_polynomial()).add(&b_poly.mul(star_prev));
    Ok(monic_from_full(full, m + 2))
}

/// Three steps at once, with `alphas = (a_{n-1}, a_n, a_{n+1})`:
/// `Phi_{n+1} = (A z + B conj(a_{n-1}) z) Phi_{n-2} + (A a_{n-1} + B) Phi_{n-2}^*`
/// where `A`, `B` are the two-step multipliers.
pub fn szego_step3(
    phi_prev2: &MonicPolynomial,
    alphas: (&Complex, &Complex, &Complex),
    star_prev2: &Polynomial,
) -> Result<MonicPolynomial> {
    let m = phi_prev2.degree();
    let prec = phi_prev2.prec();
    let a_first = alphas.0.with_prec(prec);
    let (a_n, a_next) = (alphas.1.with_prec(prec), alphas.2.with_prec(prec));
    check_coefficient(&a_first, m + 1)?;
    check_coefficient(&a_n, m + 2)?;
    check_coefficient(&a_next, m + 3)?;
    let lin = &a_n.conj() * &a_next;
    let a_poly = Polynomial::new(vec![Complex::zero(prec), lin, Complex::one(prec)], prec);
    let b_poly = Polynomial::new(vec![a_next, a_n], prec);
    let first_bar = a_first.conj();
    let on_phi = a_poly.add(&b_poly.scale(&first_bar)).shift(1);
    let on_star = a_poly.scale(&a_first).add(&b_poly);
    let full = on_phi.mul(&phi_prev2.to_polynomial()).add(&on_star.mul(star_prev2));
    Ok(monic_from_full(full, m + 3))
}

/// `Phi_n(z)` for `n = 0..=N` by the recurrence on values alone, without
/// forming coefficients.
pub fn evaluate_sequence(alphas: &[Complex], z: &Complex) -> Vec<(Complex, Complex)> {
    let prec = z.prec();
    let mut phi = Complex::one(prec);
    let mut star = Complex::one(prec);
    let mut out = Vec::with_capacity(alphas.len() + 1);
    out.push((phi.clone(), star.clone()));
    for a in alphas {
        let zphi = z * &phi;
        let next_phi = &zphi + &(a * &star);
        let next_star = &star + &(&a.conj() * &zphi);
        phi = next_phi;
        star = next_star;
        out.push((phi.clone(), star.clone()));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn prec() -> PrecisionConfig {
        PrecisionConfig::default()
    }

    fn c(re: f64, im: f64) -> Complex {
        prec().complex(re, im)
    }

    fn three_plus_five_i_over_17() -> Complex {
        let p = prec();
        let den = p.real(17.0);
        Complex::from_parts(p.real(3.0) / &den, p.real(5.0) / &den)
    }

    #[test]
    fn first_step_from_one() {
        let one = MonicPolynomial::one(256);
        let star = Polynomial::constant(Complex::one(256));
        let phi1 = szego_step(&one, &star, &c(-0.5, 0.0)).unwrap();
        assert_eq!(phi1.coeffs(), &[c(-0.5, 0.0)]);
    }

    #[test]
    fn zero_coefficient_shifts() {
        let phi = MonicPolynomial::new(vec![c(0.1, 0.2), c(-0.3, 0.0)], 256);
        let next = szego_step(&phi, &phi.reversed(), &c(0.0, 0.0)).unwrap();
        assert_eq!(next.coeffs(), &[c(0.0, 0.0), c(0.1, 0.2), c(-0.3, 0.0)]);
    }

    #[test]
    fn step_rejects_coefficient_on_circle() {
        let one = MonicPolynomial::one(256);
        let star = Polynomial::constant(Complex::one(256));
        assert!(matches!(
            szego_step(&one, &star, &c(0.0, 1.0)),
            Err(Error::VerblunskyBound { index: 1, .. })
        ));
    }

    #[test]
    fn explicit_pair_coefficients() {
        let phi1 = MonicPolynomial::new(vec![c(-0.5, 0.0)], 256);
        let alpha = zeros_to_alpha(&phi1, &phi1.reversed(), &c(0.0, 0.5)).unwrap();
        assert!((&alpha - &three_plus_five_i_over_17()).abs_f64() < 1e-75);

        let phi2 = szego_step(&phi1, &phi1.reversed(), &alpha).unwrap();
        assert_eq!(phi2.constant_term(), alpha);
        assert!(phi2.eval(&c(0.0, 0.5)).abs_f64() < 1e-75);
    }

    #[test]
    fn repeated_zero_gives_zero_coefficient() {
        let a = c(0.3, -0.4);
        let phi1 = MonicPolynomial::new(vec![-&a], 256);
        let alpha = zeros_to_alpha(&phi1, &phi1.reversed(), &a).unwrap();
        assert!(alpha.is_zero());
        let other = MonicPolynomial::new(vec![c(0.25, 0.5)], 256);
        assert!(zeros_to_alpha(&other, &other.reversed(), &c(0.0, 0.0)).unwrap().is_zero());
    }

    #[test]
    fn synthesize_zero_schedule_gives_monomials() {
        let res = synthesize(&ZeroSchedule::zero(256), 5, prec()).unwrap();
        for n in 1..=5 {
            assert_eq!(res.poly(n), &MonicPolynomial::monomial(n, 256));
            assert!(res.record.alpha(n).is_zero());
        }
    }

    #[test]
    fn synthesize_explicit_pair() {
        let s = ZeroSchedule::explicit(vec![c(0.5, 0.0), c(0.0, 0.5)]).unwrap();
        let res = synthesize(&s, 2, prec()).unwrap();
        assert_eq!(res.record.alpha(1), c(-0.5, 0.0));
        assert!((&res.record.alpha(2) - &three_plus_five_i_over_17()).abs_f64() < 1e-75);
        assert!(matches!(synthesize(&s, 3, prec()), Err(Error::ScheduleTooShort { .. })));
    }

    #[test]
    fn synthesize_rejects_zero_length() {
        assert!(synthesize(&ZeroSchedule::zero(256), 0, prec()).is_err());
    }

    #[test]
    fn incremental_star_matches_reversal() {
        let s = ZeroSchedule::periodic(vec![c(0.2, 0.0), c(0.0, 0.7)]).unwrap();
        let res = synthesize(&s, 40, prec()).unwrap();
        for n in [1, 7, 40] {
            assert!(res.poly(n).reversed().max_coeff_gap(res.star(n)) < 1e-70);
        }
    }

    #[test]
    fn two_and_three_step_forms_with_zero_coefficients() {
        let phi = MonicPolynomial::new(vec![c(0.1, 0.0), c(0.0, -0.2)], 256);
        let star = phi.reversed();
        let zero = c(0.0, 0.0);
        assert_eq!(szego_step2(&phi, (&zero, &zero), &star).unwrap(), {
            MonicPolynomial::new(vec![zero.clone(), zero.clone(), c(0.1, 0.0), c(0.0, -0.2)], 256)
        });
        let three = szego_step3(&phi, (&zero, &zero, &zero), &star).unwrap();
        assert_eq!(three.coeffs()[3], c(0.1, 0.0));
        assert!(three.coeffs()[..3].iter().all(Complex::is_zero));
    }

    #[test]
    fn value_sequence_matches_coefficients() {
        let s = ZeroSchedule::periodic(vec![c(0.5, 0.0), c(0.0, 0.5), c(-0.3, 0.1)]).unwrap();
        let res = synthesize(&s, 12, prec()).unwrap();
        let z = c(0.4, -0.9);
        let seq = evaluate_sequence(res.record.alphas(), &z);
        for (n, (phi, star)) in seq.iter().enumerate().skip(1) {
            assert!((phi - &res.poly(n).eval(&z)).abs_f64() < 1e-70);
            assert!((star - &res.star(n).eval(&z)).abs_f64() < 1e-70);
        }
    }
}
