//! Ordinary least-squares line fits.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LineFit {
    pub slope: f64,
    pub intercept: f64,
    /// Coefficient of determination; 1 for an exact line.
    pub r_squared: f64,
}

pub fn fit_line(xs: &[f64], ys: &[f64]) -> Result<LineFit> {
    assert_eq!(xs.len(), ys.len(), "fit needs paired samples");
    if xs.len() < 2 {
        return Err(Error::InvalidArgument("fit needs at least two points".into()));
    }
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let syy: f64 = ys.iter().map(|y| (y - my).powi(2)).sum();
    if sxx == 0.0 {
        return Err(Error::InvalidArgument("fit needs distinct abscissae".into()));
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let r_squared = if syy == 0.0 { 1.0 } else { sxy * sxy / (sxx * syy) };
    Ok(LineFit {
        slope,
        intercept,
        r_squared,
    })
}

/// Fits `y_n ~ A q^n` by a line through `(n, ln y_n)` and returns `q` with
/// the fit. Nonpositive samples are rejected.
pub fn geometric_rate(ns: &[usize], values: &[f64]) -> Result<(f64, LineFit)> {
    if values.iter().any(|v| v.partial_cmp(&0.0) != Some(std::cmp::Ordering::Greater) || !v.is_finite()) {
        return Err(Error::InvalidArgument("geometric fit needs positive finite samples".into()));
    }
    let xs: Vec<f64> = ns.iter().map(|&n| n as f64).collect();
    let ys: Vec<f64> = values.iter().map(|v| v.ln()).collect();
    let fit = fit_line(&xs, &ys)?;
    Ok((fit.slope.exp(), fit))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_line() {
        let fit = fit_line(&[0.0, 1.0, 2.0, 3.0], &[1.0, 3.0, 5.0, 7.0]).unwrap();
        assert!((fit.slope - 2.0).abs() < 1e-14);
        assert!((fit.intercept - 1.0).abs() < 1e-14);
        assert!((fit.r_squared - 1.0).abs() < 1e-14);
    }

    #[test]
    fn geometric_sequence_rate() {
        let ns: Vec<usize> = (10..30).collect();
        let vals: Vec<f64> = ns.iter().map(|&n| 3.0 * 0.4f64.powi(n as i32)).collect();
        let (q, fit) = geometric_rate(&ns, &vals).unwrap();
        assert!((q - 0.4).abs() < 1e-12);
        assert!(fit.r_squared > 0.999999);
        assert!(geometric_rate(&[1, 2], &[1.0, 0.0]).is_err());
    }

    #[test]
    fn rejects_degenerate_input() {
        assert!(fit_line(&[1.0], &[1.0]).is_err());
        assert!(fit_line(&[1.0, 1.0], &[1.0, 2.0]).is_err());
    }
}
