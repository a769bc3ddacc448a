//! CSV, SVG and atomic file output.

use std::io::Write;
use std::path::Path;

use opuc_core::{Complex, Float, PrecisionConfig};

use crate::error::CliError;

/// Writes through a temporary file in the target directory, then renames.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(|e| CliError::io(path, e))?;
    tmp.write_all(bytes).map_err(|e| CliError::io(path, e))?;
    tmp.flush().map_err(|e| CliError::io(path, e))?;
    tmp.persist(path).map_err(|e| CliError::io(path, e.error))?;
    Ok(())
}

/// Fixed significant-digit decimal, `ceil(0.302 bits) + 2` digits.
pub fn format_real(x: &Float, precision: PrecisionConfig) -> String {
    if x.is_zero() {
        return "0".to_string();
    }
    x.to_string_radix(10, Some(precision.decimal_digits()))
}

pub fn format_f64(x: f64) -> String {
    format!("{x:e}")
}

#[derive(Debug, Default)]
pub struct Csv {
    text: String,
}

impl Csv {
    pub fn new(header: &[&str]) -> Self {
        let mut text = header.join(",");
        text.push('\n');
        Self { text }
    }

    pub fn row(&mut self, fields: &[String]) {
        self.text.push_str(&fields.join(","));
        self.text.push('\n');
    }

    pub fn into_string(self) -> String {
        self.text
    }
}

/// Complex value as `re,im,modulus` fields.
pub fn complex_fields(z: &Complex, precision: PrecisionConfig) -> [String; 3] {
    [
        format_real(&z.re, precision),
        format_real(&z.im, precision),
        format_real(&z.abs(), precision),
    ]
}

const SVG_SIZE: f64 = 800.0;
const SVG_EXTENT: f64 = 1.1;
const POINT_RADIUS: f64 = 2.0;

fn to_pixel(x: f64) -> f64 {
    (x + SVG_EXTENT) / (2.0 * SVG_EXTENT) * SVG_SIZE
}

fn radius_pixels(r: f64) -> f64 {
    r / (2.0 * SVG_EXTENT) * SVG_SIZE
}

/// Scatter of `points` over the fixed square `[-1.1, 1.1]^2`, with the unit
/// circle and a circle of radius `inner_radius`.
pub fn scatter_svg(points: &[(f64, f64)], inner_radius: f64) -> String {
    let c = to_pixel(0.0);
    let mut s = String::new();
    s.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0}\" height=\"{0}\" viewBox=\"0 0 {0} {0}\">\n",
        SVG_SIZE
    ));
    s.push_str(&format!("<rect width=\"{0}\" height=\"{0}\" fill=\"white\"/>\n", SVG_SIZE));
    s.push_str(&format!(
        "<circle class=\"overlay unit-circle\" cx=\"{c:.3}\" cy=\"{c:.3}\" r=\"{:.3}\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n",
        radius_pixels(1.0)
    ));
    s.push_str(&format!(
        "<circle class=\"overlay radius-circle\" cx=\"{c:.3}\" cy=\"{c:.3}\" r=\"{:.3}\" fill=\"none\" stroke=\"gray\" stroke-width=\"1\" stroke-dasharray=\"6 4\"/>\n",
        radius_pixels(inner_radius)
    ));
    for &(x, y) in points {
        s.push_str(&format!(
            "<circle class=\"zero\" cx=\"{:.3}\" cy=\"{:.3}\" r=\"{POINT_RADIUS}\" fill=\"blue\"/>\n",
            to_pixel(x),
            to_pixel(-y)
        ));
    }
    s.push_str("</svg>\n");
    s
}
