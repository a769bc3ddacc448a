//! Polynomial representations shared by the recurrence and root finder.
//!
//! Coefficients are stored in ascending powers. A [`MonicPolynomial`] keeps
//! its leading `1` implicit, so the stored length is the degree.

use rug::Float;

use crate::complex::Complex;
use crate::error::{Error, Result};

/// Value and derivative of a polynomial at a point, with a magnitude
/// (`sum |c_k| |z|^k` for a monic polynomial) that bounds the rounding error
/// of the evaluation.
#[derive(Debug, Clone)]
pub struct Evaluation {
    pub value: Complex,
    pub derivative: Complex,
    pub scale: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MonicPolynomial {
    coeffs: Vec<Complex>,
    prec: u32,
}

impl MonicPolynomial {
    /// `z^n + sum_{k<n} coeffs[k] z^k`.
    pub fn new(coeffs: Vec<Complex>, prec: u32) -> Self {
        let coeffs = coeffs
            .into_iter()
            .map(|c| if c.prec() == prec { c } else { c.with_prec(prec) })
            .collect();
        Self { coeffs, prec }
    }

    /// The constant polynomial 1 (degree 0).
    pub fn one(prec: u32) -> Self {
        Self {
            coeffs: Vec::new(),
            prec,
        }
    }

    pub fn monomial(degree: usize, prec: u32) -> Self {
        Self {
            coeffs: vec![Complex::zero(prec); degree],
            prec,
        }
    }

    /// Expands `prod_j (z - roots[j])`.
    pub fn from_roots(roots: &[Complex], prec: u32) -> Self {
        // full[k] holds the coefficient of z^k, leading term included.
        let mut full = vec![Complex::one(prec)];
        for r in roots {
            let mut next = vec![Complex::zero(prec); full.len() + 1];
            for (k, c) in full.iter().enumerate() {
                next[k + 1] += c;
                next[k] -= &(c * r);
            }
            full = next;
        }
        full.pop();
        Self { coeffs: full, prec }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len()
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    /// `c_0 .. c_{n-1}`.
    pub fn coeffs(&self) -> &[Complex] {
        &self.coeffs
    }

    /// Coefficient of `z^k` for `k <= degree`, the leading one included.
    pub fn coeff(&self, k: usize) -> Complex {
        match k.cmp(&self.degree()) {
            std::cmp::Ordering::Less => self.coeffs[k].clone(),
            std::cmp::Ordering::Equal => Complex::one(self.prec),
            std::cmp::Ordering::Greater => Complex::zero(self.prec),
        }
    }

    /// `p(0)`; equal to 1 for the degree-0 polynomial.
    pub fn constant_term(&self) -> Complex {
        self.coeff(0)
    }

    /// Nested (Horner) evaluation of `z^n + sum c_k z^k`.
    pub fn eval(&self, z: &Complex) -> Complex {
        let mut acc = Complex::one(self.prec);
        let mut scratch = Float::new(self.prec);
        for c in self.coeffs.iter().rev() {
            acc.fma_assign(z, c, &mut scratch);
        }
        acc
    }

    pub fn evaluate(&self, z: &Complex) -> Evaluation {
        let prec = self.prec;
        let n = self.degree();
        let mut value = Complex::one(prec);
        let mut derivative = Complex::zero(prec);
        let mut scratch = Float::new(prec);
        let r = z.abs_f64();
        let mut scale = 1.0;
        for c in self.coeffs.iter().rev() {
            // derivative <- derivative * z + value (uses the value before its update)
            let v = value.clone();
            derivative.fma_assign(z, &v, &mut scratch);
            value.fma_assign(z, c, &mut scratch);
            scale = scale * r + c.re.to_f64().abs() + c.im.to_f64().abs();
        }
        if n == 0 {
            scale = 1.0;
        }
        Evaluation {
            value,
            derivative,
            scale,
        }
    }

    /// `sum_k |c_k| |z|^k` including the leading term.
    pub fn magnitude_at(&self, modulus: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(1.0, |acc, c| acc * modulus + c.re.to_f64().abs() + c.im.to_f64().abs())
    }

    /// `z^n conj(p(1/conj z))`: coefficient `k` is `conj(c_{n-k})`.
    pub fn reversed(&self) -> Polynomial {
        let n = self.degree();
        let coeffs = (0..=n).map(|k| self.coeff(n - k).conj()).collect();
        Polynomial {
            coeffs,
            prec: self.prec,
        }
    }

    /// All `n + 1` coefficients, leading 1 included.
    pub fn to_polynomial(&self) -> Polynomial {
        let mut coeffs = self.coeffs.clone();
        coeffs.push(Complex::one(self.prec));
        Polynomial {
            coeffs,
            prec: self.prec,
        }
    }

    /// Largest coefficientwise modulus of `self - other` (degrees must match).
    pub fn max_coeff_gap(&self, other: &MonicPolynomial) -> f64 {
        assert_eq!(self.degree(), other.degree(), "degree mismatch");
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| (a - b).abs_f64())
            .fold(0.0, f64::max)
    }

    pub fn max_coeff_modulus(&self) -> f64 {
        self.coeffs.iter().map(Complex::abs_f64).fold(1.0, f64::max)
    }
}

/// General polynomial with explicit coefficients `a_0 .. a_d`.
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial {
    coeffs: Vec<Complex>,
    prec: u32,
}

impl Polynomial {
    pub fn new(coeffs: Vec<Complex>, prec: u32) -> Self {
        let coeffs = if coeffs.is_empty() {
            vec![Complex::zero(prec)]
        } else {
            coeffs
                .into_iter()
                .map(|c| if c.prec() == prec { c } else { c.with_prec(prec) })
                .collect()
        };
        Self { coeffs, prec }
    }

    pub fn constant(c: Complex) -> Self {
        let prec = c.prec();
        Self {
            coeffs: vec![c],
            prec,
        }
    }

    /// Declared degree: the stored length minus one, even if the top
    /// coefficient happens to be zero.
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn coeffs(&self) -> &[Complex] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Complex {
        self.coeffs
            .get(k)
            .cloned()
            .unwrap_or_else(|| Complex::zero(self.prec))
    }

    pub fn eval(&self, z: &Complex) -> Complex {
        let mut iter = self.coeffs.iter().rev();
        let mut acc = iter.next().expect("nonempty").clone();
        let mut scratch = Float::new(self.prec);
        for c in iter {
            acc.fma_assign(z, c, &mut scratch);
        }
        acc
    }

    /// Conjugate reversal with respect to the declared degree.
    pub fn reversed(&self) -> Polynomial {
        let coeffs = self.coeffs.iter().rev().map(Complex::conj).collect();
        Polynomial {
            coeffs,
            prec: self.prec,
        }
    }

    /// Divides by the top coefficient; fails if it is zero.
    pub fn to_monic(&self) -> Result<MonicPolynomial> {
        let lead = self.coeffs.last().expect("nonempty");
        if lead.is_zero() {
            return Err(Error::InvalidArgument(
                "leading coefficient is zero".to_string(),
            ));
        }
        let inv = lead.recip();
        let n = self.degree();
        let coeffs = self.coeffs[..n].iter().map(|c| c * &inv).collect();
        Ok(MonicPolynomial {
            coeffs,
            prec: self.prec,
        })
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len).map(|k| &self.coeff(k) + &other.coeff(k)).collect();
        Polynomial {
            coeffs,
            prec: self.prec,
        }
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        let mut coeffs = vec![Complex::zero(self.prec); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += &(a * b);
            }
        }
        Polynomial {
            coeffs,
            prec: self.prec,
        }
    }

    /// Multiplies by `z^k`.
    pub fn shift(&self, k: usize) -> Polynomial {
        let mut coeffs = vec![Complex::zero(self.prec); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Polynomial {
            coeffs,
            prec: self.prec,
        }
    }

    pub fn scale(&self, s: &Complex) -> Polynomial {
        Polynomial {
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
            prec: self.prec,
        }
    }

    /// Largest coefficientwise modulus of `self - other`, padding with zeros.
    pub fn max_coeff_gap(&self, other: &Polynomial) -> f64 {
        let len = self.coeffs.len().max(other.coeffs.len());
        (0..len)
            .map(|k| (&self.coeff(k) - &other.coeff(k)).abs_f64())
            .fold(0.0, f64::max)
    }
}

impl From<&MonicPolynomial> for Polynomial {
    fn from(p: &MonicPolynomial) -> Self {
        p.to_polynomial()
    }
}
