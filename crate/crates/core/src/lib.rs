//! Orthogonal polynomials on the unit circle built from prescribed zeros.
//!
//! A [`ZeroSchedule`] fixes `z_n` with `Phi_n(z_n) = 0`; [`synthesize`] runs
//! the Szegő recurrence to produce the Verblunsky coefficients and monic
//! polynomials. The remaining modules compute roots, closed forms for periodic
//! schedules, Szegő-function quantities, Chebyshev-arc polynomials and
//! asymptotic diagnostics, all at a configurable binary precision.

pub mod arc;
pub mod complex;
pub mod diagnostics;
pub mod error;
pub mod fit;
pub mod periodic;
pub mod poly;
pub mod precision;
pub mod record;
pub mod recurrence;
pub mod rootfind;
pub mod schedule;
pub mod szego;

pub use arc::{ArcParameters, ArcZeroReport};
pub use complex::Complex;
pub use diagnostics::{AsymptoticReport, NevaiClass, NevaiReport};
pub use error::{Error, Result};
pub use poly::{Evaluation, MonicPolynomial, Polynomial};
pub use precision::PrecisionConfig;
pub use record::VerblunskyRecord;
pub use recurrence::{synthesize, SynthesisResult};
pub use rootfind::{find_roots, CountingMeasure, RootSet};
pub use schedule::ZeroSchedule;
pub use rug::Float;
