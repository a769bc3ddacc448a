use rug::float::Constant;
use rug::Float;

use crate::complex::Complex;
use crate::error::{Error, Result};

/// Working precision shared by every computation in a run.
///
/// `bits` is the binary significand length of every real and complex part;
/// `eps_rel` is the relative tolerance `2^(16 - bits)` used for degeneracy
/// tests.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PrecisionConfig {
    bits: u32,
    eps_rel: f64,
}

impl PrecisionConfig {
    pub const DEFAULT_BITS: u32 = 256;
    pub const MIN_BITS: u32 = 53;
    /// Tolerances are carried as `f64`, which bounds the usable precision.
    pub const MAX_BITS: u32 = 1000;

    pub fn new(bits: u32) -> Result<Self> {
        if !(Self::MIN_BITS..=Self::MAX_BITS).contains(&bits) {
            return Err(Error::InvalidPrecision(format!(
                "bits must lie in {}..={}, got {bits}",
                Self::MIN_BITS,
                Self::MAX_BITS
            )));
        }
        let eps_rel = 2f64.powi(16 - bits as i32);
        Ok(Self { bits, eps_rel })
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn eps_rel(&self) -> f64 {
        self.eps_rel
    }

    /// `10^(offset - slope * bits)`, the shape of every precision-scaled
    /// tolerance in the crate.
    pub fn scaled_tolerance(&self, offset: f64, slope: f64) -> f64 {
        10f64.powf(offset - slope * self.bits as f64)
    }

    /// Significant decimal digits used when printing values: `ceil(0.302 bits) + 2`.
    pub fn decimal_digits(&self) -> usize {
        (self.bits as f64 * 0.302).ceil() as usize + 2
    }

    pub fn real(&self, x: f64) -> Float {
        Float::with_val(self.bits, x)
    }

    pub fn zero(&self) -> Float {
        Float::new(self.bits)
    }

    pub fn pi(&self) -> Float {
        Float::with_val(self.bits, Constant::Pi)
    }

    pub fn complex(&self, re: f64, im: f64) -> Complex {
        Complex::from_f64(self.bits, re, im)
    }

    /// Parses a decimal real at full working precision.
    pub fn parse_real(&self, text: &str) -> Result<Float> {
        let parsed = Float::parse(text.trim())
            .map_err(|e| Error::InvalidArgument(format!("cannot parse real '{text}': {e}")))?;
        Ok(Float::with_val(self.bits, parsed))
    }
}

impl Default for PrecisionConfig {
    fn default() -> Self {
        Self::new(Self::DEFAULT_BITS).expect("default precision is valid")
    }
}
