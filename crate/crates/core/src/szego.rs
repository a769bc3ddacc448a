//! Szegő-function quantities computed from Verblunsky data: the norms
//! `kappa_n`, the interior series for `D^{-1}`, moments against the
//! orthonormal basis, Fourier–Padé denominators and the remainder of the
//! reversed polynomials.

use rug::Float;

use crate::complex::Complex;
use crate::error::{Error, Result};
use crate::fit::{geometric_rate, LineFit};
use crate::poly::MonicPolynomial;
use crate::record::VerblunskyRecord;
use crate::recurrence::evaluate_sequence;

/// Window over which series terms must keep decaying.
pub const TAIL_WINDOW: usize = 16;
/// Target size of the last retained series term.
pub const SERIES_TERM_TARGET: f64 = 1e-30;

#[derive(Debug, Clone)]
pub struct KappaProducts {
    /// `kappa_0 .. kappa_N`.
    pub kappas: Vec<Float>,
    /// `kappa_N`, standing in for the limit.
    pub kappa: Float,
    /// Estimated relative gap `kappa_inf / kappa_N - 1`, when the tail of
    /// `|Phi_j(0)|` decays geometrically; `None` otherwise.
    pub tail_bound: Option<f64>,
}

fn window_max(values: &[f64]) -> f64 {
    values.iter().copied().fold(0.0, f64::max)
}

/// Geometric decay ratio of a nonnegative sequence from the maxima of its
/// last two windows of width `w`. `Some(0)` when the sequence ends in zeros.
fn tail_ratio(values: &[f64], w: usize) -> Option<f64> {
    if values.len() < 2 * w || w == 0 {
        return None;
    }
    let late = window_max(&values[values.len() - w..]);
    let early = window_max(&values[values.len() - 2 * w..values.len() - w]);
    if late == 0.0 {
        return Some(0.0);
    }
    if early == 0.0 {
        return None;
    }
    let q = (late / early).powf(1.0 / w as f64);
    (q < 1.0).then_some(q)
}

pub fn kappa_products(record: &VerblunskyRecord) -> KappaProducts {
    let kappas = record.kappas().to_vec();
    let kappa = kappas.last().cloned().expect("kappa_0 is always present");
    let moduli: Vec<f64> = record.alphas().iter().map(Complex::abs_f64).collect();
    let w = TAIL_WINDOW.min(moduli.len() / 2);
    let tail_bound = tail_ratio(&moduli, w).map(|q| {
        // sum_{j>N} |a_j|^2 <= M^2 q^2 / (1 - q^2), M the last window max;
        // the log of the tail product is at most that sum for small terms.
        let m = window_max(&moduli[moduli.len() - w.max(1)..]);
        let s = m * m * q * q / (1.0 - q * q);
        s.exp_m1()
    });
    KappaProducts {
        kappas,
        kappa,
        tail_bound,
    }
}

/// Truncated interior series
/// `D^{-1}(z) = (1/kappa) sum_j conj(phi_j(0)) phi_j(z)` with
/// `phi_j = kappa_j Phi_j`.
#[derive(Debug, Clone)]
pub struct SzegoSeries {
    pub record: VerblunskyRecord,
    /// Last retained index `J`.
    pub truncation: usize,
    /// `phi_0(0) .. phi_J(0)`.
    pub phi0: Vec<Complex>,
    pub kappa: Float,
}

#[derive(Debug, Clone)]
pub struct SeriesValue {
    pub value: Complex,
    /// Estimate of the omitted terms, from the decay of the last ones.
    pub tail: f64,
    pub truncation: usize,
}

/// Smallest `J` whose terms at `|z| = radius` fall below `SERIES_TERM_TARGET`,
/// capped at `N - 4`.
pub fn default_truncation(record: &VerblunskyRecord, radius: f64) -> usize {
    let cap = record.len().saturating_sub(4).max(1);
    let kappa = record.kappas().last().map(Float::to_f64).unwrap_or(1.0);
    let growth = radius.max(1.0).ln();
    let term = |j: usize| {
        let a = record.orthonormal_at_zero(j).abs();
        if a.is_zero() {
            f64::NEG_INFINITY
        } else {
            a.ln().to_f64() + kappa.ln() + growth * j as f64
        }
    };
    let target = SERIES_TERM_TARGET.ln();
    (1..cap)
        .find(|&j| term(j) < target && term(j + 1) < target)
        .unwrap_or(cap)
}

impl SzegoSeries {
    pub fn new(record: &VerblunskyRecord, truncation: usize) -> Result<Self> {
        if truncation > record.len() {
            return Err(Error::InsufficientRecord {
                needed: truncation,
                available: record.len(),
            });
        }
        let phi0 = (0..=truncation).map(|j| record.orthonormal_at_zero(j)).collect();
        let kappa = record.kappas().last().cloned().expect("kappa_0 is always present");
        Ok(Self {
            record: record.clone(),
            truncation,
            phi0,
            kappa,
        })
    }

    /// Series truncated by [`default_truncation`] for points up to `radius`.
    pub fn for_radius(record: &VerblunskyRecord, radius: f64) -> Result<Self> {
        Self::new(record, default_truncation(record, radius))
    }

    /// `d_j = conj(phi_j(0)) / kappa`, the coordinates of `D^{-1}`.
    pub fn coordinates(&self) -> Vec<Complex> {
        let inv = Float::with_val(self.kappa.prec(), 1u32 / &self.kappa);
        self.phi0.iter().map(|p| p.conj().scale(&inv)).collect()
    }
}

/// Evaluates the truncated series at `z`. Fails when the terms over the last
/// `TAIL_WINDOW` indices are no smaller than the window before.
pub fn d_inv_series(s: &SzegoSeries, z: &Complex) -> Result<SeriesValue> {
    let j_max = s.truncation;
    let alphas = &s.record.alphas()[..j_max];
    let values = evaluate_sequence(alphas, z);
    let coords = s.coordinates();
    let mut total = Complex::zero(z.prec());
    let mut term_sizes = Vec::with_capacity(j_max + 1);
    for j in 0..=j_max {
        let phi_j = values[j].0.scale(s.record.kappa(j));
        let term = &coords[j] * &phi_j;
        term_sizes.push(term.abs_f64());
        total += &term;
    }
    let w = TAIL_WINDOW.min(term_sizes.len() / 2);
    let tail = if w == 0 {
        0.0
    } else {
        let late = window_max(&term_sizes[term_sizes.len() - w..]);
        let early = window_max(&term_sizes[term_sizes.len() - 2 * w..term_sizes.len() - w]);
        if late > 0.0 && late >= early {
            return Err(Error::NonConvergentTail { window: w });
        }
        match tail_ratio(&term_sizes, w) {
            Some(q) => late * q / (1.0 - q),
            None => late,
        }
    };
    Ok(SeriesValue {
        value: total,
        tail,
        truncation: j_max,
    })
}

/// Applies multiplication by `z` to coordinates in the orthonormal basis:
/// `(z f)_m = c_{m-1} kappa_{m-1}/kappa_m
///            - conj(phi_m(0)) sum_{j>=m} c_j Phi_{j+1}(0)/kappa_j`.
/// The result has one more coordinate than the input.
fn shift_coordinates(record: &VerblunskyRecord, coords: &[Complex]) -> Result<Vec<Complex>> {
    let len = coords.len();
    if len > record.len() {
        return Err(Error::InsufficientRecord {
            needed: len,
            available: record.len(),
        });
    }
    let prec = record.bits();
    // suffix[m] = sum_{j >= m} c_j alpha_{j+1} / kappa_j
    let mut suffix = vec![Complex::zero(prec); len + 1];
    for j in (0..len).rev() {
        let term = (&coords[j] * &record.alpha(j + 1)).scale(&Float::with_val(prec, 1u32 / record.kappa(j)));
        suffix[j] = &suffix[j + 1] + &term;
    }
    let mut out = Vec::with_capacity(len + 1);
    for m in 0..=len {
        let mut e = Complex::zero(prec);
        if m >= 1 {
            let ratio = Float::with_val(prec, record.kappa(m - 1) / record.kappa(m));
            e += &coords[m - 1].scale(&ratio);
        }
        e -= &(&record.orthonormal_at_zero(m).conj() * &suffix[m.min(len)]);
        out.push(e);
    }
    Ok(out)
}

/// Coordinates of `z^k D^{-1}` for `k = 0..=k_max` in the orthonormal basis,
/// starting from the series truncated at `J`.
pub fn moment_table(record: &VerblunskyRecord, k_max: usize, truncation: usize) -> Result<Vec<Vec<Complex>>> {
    if truncation + k_max > record.len() {
        return Err(Error::InsufficientRecord {
            needed: truncation + k_max,
            available: record.len(),
        });
    }
    let series = SzegoSeries::new(record, truncation)?;
    let mut table = vec![series.coordinates()];
    for k in 0..k_max {
        let next = shift_coordinates(record, &table[k])?;
        table.push(next);
    }
    Ok(table)
}

/// `<z^k D^{-1}, phi_m>` by repeated exact shifts of the truncated series.
pub fn basis_moments(record: &VerblunskyRecord, k: usize, m: usize, truncation: usize) -> Result<Complex> {
    if k > 2 {
        return Err(Error::InvalidArgument(format!("moments are supported for k <= 2, got {k}")));
    }
    let table = moment_table(record, k, truncation)?;
    let coords = &table[k];
    if m >= coords.len() {
        return Err(Error::InsufficientRecord {
            needed: m + 1,
            available: coords.len(),
        });
    }
    Ok(coords[m].clone())
}

/// Closed forms of the first two moments:
/// `k = 0`: `conj(phi_m(0)) / kappa`;
/// `k = 1`: `kappa_m (conj(a_{m-1}) - conj(a_m) sum_{j>=m-1} conj(a_j) a_{j+1}) / kappa`
/// with `a_0 = 1` and the sum truncated at the record end.
pub fn basis_moment_closed_form(record: &VerblunskyRecord, k: usize, m: usize) -> Result<Complex> {
    let prec = record.bits();
    let kappa = record.kappas().last().cloned().expect("kappa_0 is always present");
    let inv = Float::with_val(prec, 1u32 / &kappa);
    match k {
        0 => Ok(record.orthonormal_at_zero(m).conj().scale(&inv)),
        1 => {
            if m == 0 {
                return Err(Error::InvalidArgument("k = 1 moment needs m >= 1".into()));
            }
            if m >= record.len() {
                return Err(Error::InsufficientRecord {
                    needed: m + 1,
                    available: record.len(),
                });
            }
            let mut sum = Complex::zero(prec);
            for j in m - 1..record.len() {
                sum += &(&record.alpha(j).conj() * &record.alpha(j + 1));
            }
            let inner = &record.alpha(m - 1).conj() - &(&record.alpha(m).conj() * &sum);
            Ok(inner.scale(record.kappa(m)).scale(&inv))
        }
        _ => Err(Error::InvalidArgument("closed forms exist for k = 0, 1 only".into())),
    }
}

#[derive(Debug, Clone)]
pub struct PadeDenominator {
    pub n: usize,
    pub m: usize,
    /// Monic of degree `exact_degree`.
    pub q: MonicPolynomial,
    pub exact_degree: usize,
}

/// Determinant of a square system of size 1 or 2 and the solution of
/// `A x = b`, or `None` when `|det|` is below `2^(-bits/2)` times the product
/// of the row norms.
fn solve_small(a: &[Vec<Complex>], b: &[Complex], bits: u32) -> Option<Vec<Complex>> {
    let floor = 2f64.powf(-(bits as f64) / 2.0);
    let row_norm = |row: &[Complex]| row.iter().map(|x| x.norm_sqr().to_f64()).sum::<f64>().sqrt();
    let scale: f64 = a.iter().map(|r| row_norm(r)).product();
    match a.len() {
        1 => {
            let det = &a[0][0];
            if scale == 0.0 || det.abs_f64() <= floor * scale {
                return None;
            }
            Some(vec![&b[0] / det])
        }
        2 => {
            let det = &(&a[0][0] * &a[1][1]) - &(&a[0][1] * &a[1][0]);
            if scale == 0.0 || det.abs_f64() <= floor * scale {
                return None;
            }
            let x0 = &(&(&b[0] * &a[1][1]) - &(&a[0][1] * &b[1])) / &det;
            let x1 = &(&(&a[0][0] * &b[1]) - &(&b[0] * &a[1][0])) / &det;
            Some(vec![x0, x1])
        }
        _ => unreachable!("systems of size 1 or 2 only"),
    }
}

/// Denominator from a precomputed moment table (`table[k][l] = <z^k D^{-1}, phi_l>`).
pub fn pade_denominator_from_table(table: &[Vec<Complex>], n: usize, m: usize, bits: u32) -> Result<PadeDenominator> {
    if !(1..=2).contains(&m) {
        return Err(Error::InvalidArgument(format!("m must be 1 or 2, got {m}")));
    }
    if table.len() <= m || table[m].len() <= n + m {
        return Err(Error::InsufficientRecord {
            needed: n + m + 1,
            available: table.get(m).map_or(0, Vec::len),
        });
    }
    // Lower-degree denominators use the leading conditions only.
    for degree in (1..=m).rev() {
        let rows: Vec<Vec<Complex>> = (1..=degree)
            .map(|j| (0..degree).map(|i| table[i][n + j].clone()).collect())
            .collect();
        let rhs: Vec<Complex> = (1..=degree).map(|j| -&table[degree][n + j]).collect();
        if let Some(x) = solve_small(&rows, &rhs, bits) {
            return Ok(PadeDenominator {
                n,
                m,
                q: MonicPolynomial::new(x, bits),
                exact_degree: degree,
            });
        }
    }
    Err(Error::SingularSystem { n, m })
}

/// Denominator `q_{n,m}` (`m` in 1, 2) from the conditions
/// `<q D^{-1}, phi_{n+j}> = 0`, `j = 1..m`.
pub fn pade_denominator(record: &VerblunskyRecord, n: usize, m: usize) -> Result<PadeDenominator> {
    let needed = n + m + 2;
    if record.len() < needed {
        return Err(Error::InsufficientRecord {
            needed,
            available: record.len(),
        });
    }
    let truncation = record.len() - m;
    let table = moment_table(record, m, truncation)?;
    pade_denominator_from_table(&table, n, m, record.bits())
}

/// Roots of a monic polynomial of degree 1 or 2.
pub fn small_roots(q: &MonicPolynomial) -> Vec<Complex> {
    let prec = q.prec();
    match q.degree() {
        0 => Vec::new(),
        1 => vec![-&q.coeffs()[0]],
        2 => {
            let (c0, c1) = (&q.coeffs()[0], &q.coeffs()[1]);
            let half = Float::with_val(prec, 0.5);
            let mid = -&c1.scale(&half);
            let disc = (&(&mid * &mid) - c0).sqrt();
            vec![&mid + &disc, &mid - &disc]
        }
        d => panic!("small_roots handles degree <= 2, got {d}"),
    }
}

#[derive(Debug, Clone)]
pub struct RadiusEstimate {
    pub m: usize,
    /// `q` at the largest `n`.
    pub limit: MonicPolynomial,
    /// `(n, max coefficient gap to the limit)` over the fitted part of the range.
    pub distances: Vec<(usize, f64)>,
    pub delta: f64,
    pub fit: LineFit,
    /// `max |root of limit| / delta`.
    pub radius: f64,
}

pub const MIN_R_SQUARED: f64 = 0.9;

/// Estimates the decay rate `delta` of `q_{n,m}` toward its limit and the
/// radius `R_m = max |root| / delta`. The limit is the denominator at the
/// largest `n`; the fit uses the first three quarters of the range, where
/// that proxy's own error is negligible.
pub fn radius_estimate(record: &VerblunskyRecord, m: usize, ns: &[usize]) -> Result<RadiusEstimate> {
    radius_estimate_toward(record, m, ns, None)
}

/// As [`radius_estimate`], measuring distances to `target` when given. All
/// of `ns` enter the fit in that case.
pub fn radius_estimate_toward(
    record: &VerblunskyRecord,
    m: usize,
    ns: &[usize],
    target: Option<&MonicPolynomial>,
) -> Result<RadiusEstimate> {
    if ns.len() < 4 {
        return Err(Error::InvalidArgument("radius fit needs at least four indices".into()));
    }
    if let Some(t) = target {
        if t.degree() != m {
            return Err(Error::InvalidArgument(format!("target degree {} differs from m = {m}", t.degree())));
        }
    }
    let n_last = *ns.iter().max().expect("nonempty");
    let needed = n_last + m + 2;
    if record.len() < needed {
        return Err(Error::InsufficientRecord {
            needed,
            available: record.len(),
        });
    }
    let table = moment_table(record, m, record.len() - m)?;
    let last = pade_denominator_from_table(&table, n_last, m, record.bits())?;
    if last.exact_degree != m {
        return Err(Error::SingularSystem { n: n_last, m });
    }
    let mut sorted: Vec<usize> = ns.to_vec();
    sorted.sort_unstable();
    let (limit, keep) = match target {
        Some(t) => (t.clone(), sorted.len()),
        None => (last.q, (sorted.len() * 3).div_ceil(4).max(2)),
    };
    let mut distances = Vec::with_capacity(keep);
    for &n in &sorted[..keep] {
        let q = pade_denominator_from_table(&table, n, m, record.bits())?;
        if q.exact_degree != m {
            return Err(Error::SingularSystem { n, m });
        }
        distances.push((n, q.q.max_coeff_gap(&limit)));
    }
    let xs: Vec<usize> = distances.iter().map(|d| d.0).collect();
    let ys: Vec<f64> = distances.iter().map(|d| d.1).collect();
    let (delta, fit) = geometric_rate(&xs, &ys)?;
    if fit.r_squared < MIN_R_SQUARED {
        return Err(Error::PoorFit {
            r_squared: fit.r_squared,
        });
    }
    let max_root = small_roots(&limit).iter().map(Complex::abs_f64).fold(0.0, f64::max);
    Ok(RadiusEstimate {
        m,
        limit,
        distances,
        delta,
        fit,
        radius: max_root / delta,
    })
}

/// `z^2 - 1/conj(z_1 z_2)` for a period-2 schedule with zeros `z_1, z_2`.
pub fn period2_pole_polynomial(z1: &Complex, z2: &Complex) -> Result<MonicPolynomial> {
    let product = z1 * z2;
    if product.is_zero() {
        return Err(Error::InvalidArgument("period-2 zeros must both be nonzero".into()));
    }
    let prec = product.prec();
    Ok(MonicPolynomial::new(vec![-&product.conj().recip(), Complex::zero(prec)], prec))
}

/// Sample points for the remainder diagnostic: 256 equispaced points on the
/// unit circle, then 8 radii `k/9` times 8 angles offset by `pi/8`.
pub fn remainder_grid(prec: u32) -> Vec<Complex> {
    let pi = Float::with_val(prec, rug::float::Constant::Pi);
    let one = Float::with_val(prec, 1);
    let mut grid = Vec::with_capacity(320);
    for k in 0..256u32 {
        let theta = Float::with_val(prec, &pi * 2u32) * k / 256u32;
        grid.push(Complex::from_polar(&one, &theta));
    }
    for i in 1..=8u32 {
        let r = Float::with_val(prec, i) / 9u32;
        for k in 0..8u32 {
            let theta = Float::with_val(prec, &pi * (2 * k + 1)) / 8u32;
            grid.push(Complex::from_polar(&r, &theta));
        }
    }
    grid
}

/// `max over grid of |Phi_{n+1}(0)| |Phi_n^*(z) - Phi_N^*(z)|` for every `n`
/// in `ns`, with `N` the record length standing in for the limit.
pub fn critical_remainder_profile(record: &VerblunskyRecord, ns: &[usize], grid: &[Complex]) -> Result<Vec<(usize, f64)>> {
    let len = record.len();
    if let Some(&bad) = ns.iter().find(|&&n| n + 1 > len) {
        return Err(Error::InsufficientRecord {
            needed: bad + 1,
            available: len,
        });
    }
    let mut best = vec![0.0f64; ns.len()];
    for z in grid {
        let values = evaluate_sequence(record.alphas(), z);
        let limit = &values[len].1;
        for (slot, &n) in best.iter_mut().zip(ns) {
            let gap = (&values[n].1 - limit).abs_f64();
            let r = record.alpha(n + 1).abs_f64() * gap;
            *slot = slot.max(r);
        }
    }
    Ok(ns.iter().copied().zip(best).collect())
}

pub fn critical_remainder(record: &VerblunskyRecord, n: usize, grid: &[Complex]) -> Result<f64> {
    Ok(critical_remainder_profile(record, &[n], grid)?[0].1)
}

/// Geometric rate of the remainder maxima over `ns`.
pub fn critical_remainder_rate(record: &VerblunskyRecord, ns: &[usize], grid: &[Complex]) -> Result<(f64, LineFit)> {
    let profile = critical_remainder_profile(record, ns, grid)?;
    let xs: Vec<usize> = profile.iter().map(|p| p.0).collect();
    let ys: Vec<f64> = profile.iter().map(|p| p.1).collect();
    geometric_rate(&xs, &ys)
}
