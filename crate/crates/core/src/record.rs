use rug::Float;

use crate::complex::Complex;
use crate::error::{Error, Result};
use crate::precision::PrecisionConfig;
use crate::schedule::ZeroSchedule;

/// Verblunsky coefficients `Phi_n(0)`, `n = 1..N`, with the norms
/// `kappa_n = prod_{j<=n} (1 - |Phi_j(0)|^2)^{-1/2}`.
///
/// `alphas[n - 1]` holds `Phi_n(0)`; `kappas[n]` holds `kappa_n`, so
/// `kappas[0] = 1` and `kappas.len() = alphas.len() + 1`.
#[derive(Debug, Clone)]
pub struct VerblunskyRecord {
    schedule: Option<ZeroSchedule>,
    alphas: Vec<Complex>,
    kappas: Vec<Float>,
    precision: PrecisionConfig,
}

impl VerblunskyRecord {
    /// Builds a record from coefficients alone; useful when no zero
    /// schedule generated them.
    pub fn from_alphas(alphas: Vec<Complex>, precision: PrecisionConfig) -> Result<Self> {
        Self::build(None, alphas, precision)
    }

    pub(crate) fn with_schedule(
        schedule: ZeroSchedule,
        alphas: Vec<Complex>,
        precision: PrecisionConfig,
    ) -> Result<Self> {
        Self::build(Some(schedule), alphas, precision)
    }

    fn build(schedule: Option<ZeroSchedule>, alphas: Vec<Complex>, precision: PrecisionConfig) -> Result<Self> {
        let bits = precision.bits();
        let mut kappas = Vec::with_capacity(alphas.len() + 1);
        let mut kappa = Float::with_val(bits, 1);
        kappas.push(kappa.clone());
        for (k, a) in alphas.iter().enumerate() {
            let rho2 = Float::with_val(bits, 1 - a.norm_sqr());
            if rho2 <= 0 {
                return Err(Error::VerblunskyBound {
                    index: k + 1,
                    modulus: a.abs_f64(),
                });
            }
            kappa /= rho2.sqrt();
            kappas.push(kappa.clone());
        }
        Ok(Self {
            schedule,
            alphas,
            kappas,
            precision,
        })
    }

    pub fn schedule(&self) -> Option<&ZeroSchedule> {
        self.schedule.as_ref()
    }

    pub fn alphas(&self) -> &[Complex] {
        &self.alphas
    }

    /// `Phi_n(0)` for `n >= 1`; `Phi_0(0) = 1` is returned for `n = 0`.
    pub fn alpha(&self, n: usize) -> Complex {
        if n == 0 {
            Complex::one(self.precision.bits())
        } else {
            self.alphas[n - 1].clone()
        }
    }

    /// `kappa_0 .. kappa_N`.
    pub fn kappas(&self) -> &[Float] {
        &self.kappas
    }

    pub fn kappa(&self, n: usize) -> &Float {
        &self.kappas[n]
    }

    pub fn len(&self) -> usize {
        self.alphas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.alphas.is_empty()
    }

    pub fn precision(&self) -> PrecisionConfig {
        self.precision
    }

    pub fn bits(&self) -> u32 {
        self.precision.bits()
    }

    /// `phi_n(0) = kappa_n Phi_n(0)`, with `phi_0(0) = 1`.
    pub fn orthonormal_at_zero(&self, n: usize) -> Complex {
        if n == 0 {
            Complex::one(self.bits())
        } else {
            self.alphas[n - 1].scale(&self.kappas[n])
        }
    }

    /// `max |Phi_n(0)|^{1/n}` over the trailing window
    /// `n >= ceil((1 - fraction) N)`, `n >= 1`. Logs are taken at full
    /// precision, so coefficients below the `f64` range are handled.
    pub fn windowed_root_exponent(&self, fraction: f64) -> f64 {
        let len = self.len();
        if len == 0 {
            return 0.0;
        }
        let start = (((1.0 - fraction) * len as f64).ceil() as usize).clamp(1, len);
        (start..=len)
            .map(|n| {
                let a = &self.alphas[n - 1];
                if a.is_zero() {
                    0.0
                } else {
                    (a.ln_abs().to_f64() / n as f64).exp()
                }
            })
            .fold(0.0, f64::max)
    }

    /// Record truncated to its first `n` coefficients.
    pub fn truncated(&self, n: usize) -> Self {
        let n = n.min(self.len());
        Self {
            schedule: self.schedule.clone(),
            alphas: self.alphas[..n].to_vec(),
            kappas: self.kappas[..=n].to_vec(),
            precision: self.precision,
        }
    }
}
