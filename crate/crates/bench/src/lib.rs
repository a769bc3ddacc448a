//! Fixtures shared by the benchmarks.

use opuc_core::{PrecisionConfig, ZeroSchedule};

/// Working precision used by every benchmark.
pub const BITS: u32 = 256;

pub fn precision() -> PrecisionConfig {
    PrecisionConfig::new(BITS).expect("valid precision")
}

/// The period-2 schedule `0.2, 0.7`.
pub fn period2() -> ZeroSchedule {
    let p = precision();
    ZeroSchedule::periodic(vec![p.complex(0.2, 0.0), p.complex(0.7, 0.0)]).expect("inside the disk")
}

/// The period-3 schedule at radius `r`.
pub fn period3(r: f64) -> ZeroSchedule {
    ZeroSchedule::period3(&precision().real(r)).expect("inside the disk")
}
