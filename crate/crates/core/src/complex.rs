//! Complex numbers as pairs of same-precision MPFR reals.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use rug::float::Constant;
use rug::{Assign, Float};

#[derive(Clone, PartialEq)]
pub struct Complex {
    pub re: Float,
    pub im: Float,
}

impl Complex {
    pub fn zero(prec: u32) -> Self {
        Self {
            re: Float::new(prec),
            im: Float::new(prec),
        }
    }

    pub fn one(prec: u32) -> Self {
        Self::from_f64(prec, 1.0, 0.0)
    }

    pub fn i(prec: u32) -> Self {
        Self::from_f64(prec, 0.0, 1.0)
    }

    pub fn from_f64(prec: u32, re: f64, im: f64) -> Self {
        Self {
            re: Float::with_val(prec, re),
            im: Float::with_val(prec, im),
        }
    }

    /// Both parts are rounded to the precision of `re`.
    pub fn from_parts(re: Float, im: Float) -> Self {
        let prec = re.prec();
        Self {
            im: Float::with_val(prec, im),
            re,
        }
    }

    pub fn from_real(re: Float) -> Self {
        let prec = re.prec();
        Self {
            re,
            im: Float::new(prec),
        }
    }

    /// `r * exp(i theta)`.
    pub fn from_polar(r: &Float, theta: &Float) -> Self {
        let prec = r.prec();
        let (sin, cos) = Float::with_val(prec, theta).sin_cos(Float::new(prec));
        Self {
            re: cos * r,
            im: sin * r,
        }
    }

    /// `exp(i theta)`.
    pub fn cis(theta: &Float) -> Self {
        let prec = theta.prec();
        Self::from_polar(&Float::with_val(prec, 1), theta)
    }

    /// `exp(2 pi i k / m)` at precision `prec`.
    pub fn root_of_unity(prec: u32, k: i64, m: u64) -> Self {
        let theta = Float::with_val(prec, Constant::Pi) * 2 * k / m;
        Self::cis(&theta)
    }

    pub fn prec(&self) -> u32 {
        self.re.prec()
    }

    pub fn with_prec(&self, prec: u32) -> Self {
        Self {
            re: Float::with_val(prec, &self.re),
            im: Float::with_val(prec, &self.im),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self {
            re: self.re.clone(),
            im: Float::with_val(self.prec(), -&self.im),
        }
    }

    pub fn norm_sqr(&self) -> Float {
        Float::with_val(self.prec(), &self.re * &self.re + &self.im * &self.im)
    }

    pub fn abs(&self) -> Float {
        Float::with_val(self.prec(), self.re.hypot_ref(&self.im))
    }

    pub fn abs_f64(&self) -> f64 {
        self.abs().to_f64()
    }

    /// Principal argument in `(-pi, pi]`.
    pub fn arg(&self) -> Float {
        Float::with_val(self.prec(), self.im.atan2_ref(&self.re))
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }

    pub fn scale(&self, s: &Float) -> Self {
        let prec = self.prec();
        Self {
            re: Float::with_val(prec, &self.re * s),
            im: Float::with_val(prec, &self.im * s),
        }
    }

    pub fn recip(&self) -> Self {
        let prec = self.prec();
        let n = self.norm_sqr();
        Self {
            re: Float::with_val(prec, &self.re / &n),
            im: -Float::with_val(prec, &self.im / &n),
        }
    }

    /// Principal square root: nonnegative real part, and nonnegative
    /// imaginary part on the negative real axis.
    pub fn sqrt(&self) -> Self {
        let prec = self.prec();
        if self.is_zero() {
            return Self::zero(prec);
        }
        let r = self.abs();
        let mut re = Float::with_val(prec, &r + &self.re);
        re /= 2;
        re.sqrt_mut();
        let mut im = Float::with_val(prec, &r - &self.re);
        im /= 2;
        im.sqrt_mut();
        if self.im.is_sign_negative() && !self.im.is_zero() {
            im = -im;
        }
        Self { re, im }
    }

    /// Integer power by repeated squaring.
    pub fn powu(&self, mut k: u64) -> Self {
        let prec = self.prec();
        let mut base = self.clone();
        let mut acc = Self::one(prec);
        while k > 0 {
            if k & 1 == 1 {
                acc *= &base;
            }
            k >>= 1;
            if k > 0 {
                let b = base.clone();
                base *= &b;
            }
        }
        acc
    }

    /// `ln |self|`.
    pub fn ln_abs(&self) -> Float {
        self.abs().ln()
    }

    /// `self <- self * z + c` without temporaries beyond `scratch`.
    pub(crate) fn fma_assign(&mut self, z: &Complex, c: &Complex, scratch: &mut Float) {
        scratch.assign(&self.re * &z.re - &self.im * &z.im);
        let re_part = &*scratch;
        let mut im = Float::with_val(self.prec(), &self.re * &z.im + &self.im * &z.re);
        im += &c.im;
        self.re.assign(re_part + &c.re);
        self.im = im;
    }
}

impl fmt::Debug for Complex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:.20e} {:+.20e}i)", self.re, self.im)
    }
}

impl fmt::Display for Complex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}{}i", self.re, if self.im.is_sign_negative() { "" } else { "+" }, self.im)
    }
}

impl Neg for &Complex {
    type Output = Complex;
    fn neg(self) -> Complex {
        let prec = self.prec();
        Complex {
            re: Float::with_val(prec, -&self.re),
            im: Float::with_val(prec, -&self.im),
        }
    }
}

impl Neg for Complex {
    type Output = Complex;
    fn neg(self) -> Complex {
        Complex {
            re: -self.re,
            im: -self.im,
        }
    }
}

impl Add<&Complex> for &Complex {
    type Output = Complex;
    fn add(self, rhs: &Complex) -> Complex {
        let prec = self.prec();
        Complex {
            re: Float::with_val(prec, &self.re + &rhs.re),
            im: Float::with_val(prec, &self.im + &rhs.im),
        }
    }
}

impl Sub<&Complex> for &Complex {
    type Output = Complex;
    fn sub(self, rhs: &Complex) -> Complex {
        let prec = self.prec();
        Complex {
            re: Float::with_val(prec, &self.re - &rhs.re),
            im: Float::with_val(prec, &self.im - &rhs.im),
        }
    }
}

impl Mul<&Complex> for &Complex {
    type Output = Complex;
    fn mul(self, rhs: &Complex) -> Complex {
        let prec = self.prec();
        Complex {
            re: Float::with_val(prec, &self.re * &rhs.re - &self.im * &rhs.im),
            im: Float::with_val(prec, &self.re * &rhs.im + &self.im * &rhs.re),
        }
    }
}

impl Div<&Complex> for &Complex {
    type Output = Complex;
    fn div(self, rhs: &Complex) -> Complex {
        let prec = self.prec();
        let n = rhs.norm_sqr();
        let re = Float::with_val(prec, &self.re * &rhs.re + &self.im * &rhs.im);
        let im = Float::with_val(prec, &self.im * &rhs.re - &self.re * &rhs.im);
        Complex {
            re: re / &n,
            im: im / &n,
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $method:ident),*) => {$(
        impl $tr<Complex> for Complex {
            type Output = Complex;
            fn $method(self, rhs: Complex) -> Complex {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&Complex> for Complex {
            type Output = Complex;
            fn $method(self, rhs: &Complex) -> Complex {
                (&self).$method(rhs)
            }
        }
        impl $tr<Complex> for &Complex {
            type Output = Complex;
            fn $method(self, rhs: Complex) -> Complex {
                self.$method(&rhs)
            }
        }
    )*};
}

forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl AddAssign<&Complex> for Complex {
    fn add_assign(&mut self, rhs: &Complex) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl SubAssign<&Complex> for Complex {
    fn sub_assign(&mut self, rhs: &Complex) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

impl MulAssign<&Complex> for Complex {
    fn mul_assign(&mut self, rhs: &Complex) {
        let prec = self.prec();
        let re = Float::with_val(prec, &self.re * &rhs.re - &self.im * &rhs.im);
        let im = Float::with_val(prec, &self.re * &rhs.im + &self.im * &rhs.re);
        self.re = re;
        self.im = im;
    }
}

impl Mul<&Float> for &Complex {
    type Output = Complex;
    fn mul(self, rhs: &Float) -> Complex {
        self.scale(rhs)
    }
}
