//! Token parsers for complex numbers, lists and schedule specs.
//!
//! Complex tokens are `a+bi` with optional signs and no spaces (`i` alone is
//! `1i`), or polar `r@t` where `t` is radians or a multiple of pi written
//! `xpi` (`0.7@-0.25pi`). All parts are read at full working precision.

use opuc_core::{Complex, Float, PrecisionConfig, ZeroSchedule};

use crate::error::CliError;

fn input(msg: impl Into<String>) -> CliError {
    CliError::Input(msg.into())
}

pub fn parse_real(text: &str, precision: PrecisionConfig) -> Result<Float, CliError> {
    if text.is_empty() {
        return Err(input("empty number"));
    }
    precision.parse_real(text).map_err(|e| input(e.to_string()))
}

/// Radians, or `xpi` for `x` times pi (`pi`, `-pi`, `0.25pi`).
pub fn parse_angle(text: &str, precision: PrecisionConfig) -> Result<Float, CliError> {
    match text.strip_suffix("pi") {
        Some(factor) => {
            let x = match factor {
                "" | "+" => precision.real(1.0),
                "-" => precision.real(-1.0),
                f => parse_real(f, precision)?,
            };
            Ok(x * precision.pi())
        }
        None => parse_real(text, precision),
    }
}

/// Index of the sign separating real and imaginary parts, skipping a leading
/// sign and exponent signs.
fn split_index(body: &str) -> Option<usize> {
    let bytes = body.as_bytes();
    (1..bytes.len())
        .rev()
        .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'))
}

fn imaginary_coefficient(text: &str, precision: PrecisionConfig) -> Result<Float, CliError> {
    match text {
        "" | "+" => Ok(precision.real(1.0)),
        "-" => Ok(precision.real(-1.0)),
        t => parse_real(t, precision),
    }
}

pub fn parse_complex(text: &str, precision: PrecisionConfig) -> Result<Complex, CliError> {
    let t = text.trim();
    if t.is_empty() || t.contains(char::is_whitespace) {
        return Err(input(format!("invalid complex number '{text}'")));
    }
    let wrap = |e: CliError| input(format!("invalid complex number '{text}': {e}"));
    if let Some((r, theta)) = t.split_once('@') {
        let r = parse_real(r, precision).map_err(wrap)?;
        let theta = parse_angle(theta, precision).map_err(wrap)?;
        return Ok(Complex::from_polar(&r, &theta));
    }
    match t.strip_suffix('i') {
        Some(body) => {
            let (re, im) = match split_index(body) {
                Some(k) => (parse_real(&body[..k], precision).map_err(wrap)?, &body[k..]),
                None => (precision.zero(), body),
            };
            Ok(Complex::from_parts(re, imaginary_coefficient(im, precision).map_err(wrap)?))
        }
        None => Ok(Complex::from_real(parse_real(t, precision).map_err(wrap)?)),
    }
}

pub fn parse_complex_list(text: &str, precision: PrecisionConfig) -> Result<Vec<Complex>, CliError> {
    text.split(',').map(|t| parse_complex(t, precision)).collect()
}

pub fn parse_usize_list(text: &str) -> Result<Vec<usize>, CliError> {
    text.split(',')
        .map(|t| t.trim().parse::<usize>().map_err(|_| input(format!("invalid degree '{t}'"))))
        .collect()
}

/// `constant:z`, `periodic:z1,z2,...`, `periodic3:r` or `explicit:z1,...`.
pub fn parse_schedule_spec(text: &str, precision: PrecisionConfig) -> Result<ZeroSchedule, CliError> {
    let (kind, values) = text
        .split_once(':')
        .ok_or_else(|| input(format!("schedule '{text}' must look like kind:values")))?;
    let schedule = match kind {
        "constant" => ZeroSchedule::constant(parse_complex(values, precision)?),
        "periodic" => ZeroSchedule::periodic(parse_complex_list(values, precision)?),
        "periodic3" => ZeroSchedule::period3(&parse_real(values, precision)?),
        "explicit" => ZeroSchedule::explicit(parse_complex_list(values, precision)?),
        other => return Err(input(format!("unknown schedule kind '{other}'"))),
    };
    schedule.map_err(CliError::from)
}
