#![allow(dead_code)]

use opuc_core::{Complex, Float, PrecisionConfig, ZeroSchedule};

pub fn prec() -> PrecisionConfig {
    PrecisionConfig::default()
}

pub fn c(re: f64, im: f64) -> Complex {
    prec().complex(re, im)
}

/// Parses decimal parts at full precision, so `0.2` is not the f64 value.
pub fn cd(re: &str, im: &str) -> Complex {
    let p = prec();
    Complex::from_parts(p.parse_real(re).unwrap(), p.parse_real(im).unwrap())
}

/// Zeros 0.2 and 0.7i.
pub fn real_imag_pair() -> ZeroSchedule {
    ZeroSchedule::periodic(vec![cd("0.2", "0"), cd("0", "0.7")]).unwrap()
}

/// Zeros 0.7 e^{-i pi/4} and 0.7 e^{i pi/4}.
pub fn conjugate_pair() -> ZeroSchedule {
    let p = prec();
    let r = p.parse_real("0.7").unwrap();
    let quarter = p.pi() / 4u32;
    let minus = Float::with_val(p.bits(), -&quarter);
    ZeroSchedule::periodic(vec![Complex::from_polar(&r, &minus), Complex::from_polar(&r, &quarter)]).unwrap()
}

pub fn period3(r: &str) -> ZeroSchedule {
    ZeroSchedule::period3(&prec().parse_real(r).unwrap()).unwrap()
}

pub fn rel_err(a: &Complex, b: &Complex) -> f64 {
    let scale = b.abs_f64();
    let gap = (a - b).abs_f64();
    if scale == 0.0 {
        gap
    } else {
        gap / scale
    }
}
