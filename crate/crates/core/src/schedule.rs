//! Prescribed zero sequences `z_1, z_2, ...` with `Phi_n(z_n) = 0`.

use rug::Float;

use crate::complex::Complex;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub enum ZeroSchedule {
    /// `z_n = value` for every `n`.
    Constant(Complex),
    /// `z_n = values[(n - 1) mod p]`.
    Periodic(Vec<Complex>),
    /// `z_n = values[n - 1]`; finite.
    Explicit(Vec<Complex>),
}

fn check_inside(values: &[Complex]) -> Result<()> {
    for (k, z) in values.iter().enumerate() {
        let modulus = z.abs();
        if modulus >= 1 {
            return Err(Error::ZeroOutsideDisk {
                index: k + 1,
                modulus: modulus.to_f64(),
            });
        }
    }
    Ok(())
}

impl ZeroSchedule {
    pub fn constant(value: Complex) -> Result<Self> {
        check_inside(std::slice::from_ref(&value))?;
        Ok(Self::Constant(value))
    }

    pub fn periodic(values: Vec<Complex>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidArgument("periodic schedule needs at least one zero".into()));
        }
        check_inside(&values)?;
        Ok(Self::Periodic(values))
    }

    pub fn explicit(values: Vec<Complex>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidArgument("explicit schedule needs at least one zero".into()));
        }
        check_inside(&values)?;
        Ok(Self::Explicit(values))
    }

    /// The three-zero cycle `r e^{2 pi i/3}, r e^{-2 pi i/3}, r`, so that the
    /// zero of modulus `r` on the positive axis falls on every third index.
    pub fn period3(r: &Float) -> Result<Self> {
        let prec = r.prec();
        let values = vec![
            Complex::from_polar(r, &(Float::with_val(prec, rug::float::Constant::Pi) * 2u32 / 3u32)),
            Complex::from_polar(r, &(Float::with_val(prec, rug::float::Constant::Pi) * -2i32 / 3u32)),
            Complex::from_real(r.clone()),
        ];
        Self::periodic(values)
    }

    /// All-zero schedule, giving `Phi_n = z^n`.
    pub fn zero(prec: u32) -> Self {
        Self::Constant(Complex::zero(prec))
    }

    /// Number of zeros available; `None` for unbounded schedules.
    pub fn len(&self) -> Option<usize> {
        match self {
            Self::Explicit(v) => Some(v.len()),
            _ => None,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == Some(0)
    }

    pub fn values(&self) -> &[Complex] {
        match self {
            Self::Constant(v) => std::slice::from_ref(v),
            Self::Periodic(v) | Self::Explicit(v) => v,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Self::Constant(_) => "constant",
            Self::Periodic(_) => "periodic",
            Self::Explicit(_) => "explicit",
        }
    }

    /// `z_n` for `n >= 1`.
    pub fn zero_at(&self, n: usize) -> Result<Complex> {
        assert!(n >= 1, "schedule is indexed from 1");
        match self {
            Self::Constant(v) => Ok(v.clone()),
            Self::Periodic(v) => Ok(v[(n - 1) % v.len()].clone()),
            Self::Explicit(v) => v.get(n - 1).cloned().ok_or(Error::ScheduleTooShort {
                available: v.len(),
                requested: n,
            }),
        }
    }

    /// Checks that `z_1 .. z_n` exist.
    pub fn ensure_supplies(&self, n: usize) -> Result<()> {
        match self.len() {
            Some(available) if available < n => Err(Error::ScheduleTooShort {
                available,
                requested: n,
            }),
            _ => Ok(()),
        }
    }

    pub fn max_modulus(&self) -> f64 {
        self.values().iter().map(Complex::abs_f64).fold(0.0, f64::max)
    }

    pub fn with_prec(&self, prec: u32) -> Self {
        let conv = |v: &[Complex]| v.iter().map(|z| z.with_prec(prec)).collect::<Vec<_>>();
        match self {
            Self::Constant(v) => Self::Constant(v.with_prec(prec)),
            Self::Periodic(v) => Self::Periodic(conv(v)),
            Self::Explicit(v) => Self::Explicit(conv(v)),
        }
    }
}
